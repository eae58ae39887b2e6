#include "ainf/bar.hpp"

#include "ainf/solve.hpp"

namespace ainf {

AInfStructure::AInfStructure(ChainComplex complex, std::map<int, GradedMap> mu,
                             int max_arity)
    : complex_(std::move(complex)), mu_(std::move(mu)), max_arity_(max_arity) {
  if (max_arity_ < 2)
    throw invariant_error("max arity must be at least 2");
  for (const auto& [n, m] : mu_) {
    if (n < 2 || n > max_arity_)
      throw invariant_error("mu component at arity " + std::to_string(n) +
                            " outside [2, " + std::to_string(max_arity_) + "]");
    if (!same_space(m.source(), space()) || !same_space(m.target(), space()) ||
        m.src_arity() != n || m.tgt_arity() != 1)
      throw space_mismatch("mu_" + std::to_string(n) +
                           " must map A^" + std::to_string(n) + " -> A");
    if (m.degree() != n - 2)
      throw degree_error("mu_" + std::to_string(n) + " must have degree " +
                         std::to_string(n - 2));
  }
  bar_ = suspend_space(space());
  d1_.emplace(1, to_bar(complex_.d(), bar_, bar_));
  for (const auto& [n, m] : mu_) d1_.emplace(n, to_bar(m, bar_, bar_));
}

const GradedMap* AInfStructure::mu_n(int n) const {
  auto it = mu_.find(n);
  return it == mu_.end() ? nullptr : &it->second;
}

bool same_structure(const StructurePtr& a, const StructurePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (!same_space(a->space(), b->space())) return false;
  if (a->max_arity() != b->max_arity()) return false;
  if (!map_equal(a->complex().d(), b->complex().d())) return false;
  auto nonzero = [](const std::map<int, GradedMap>& m) {
    std::map<int, const GradedMap*> out;
    for (const auto& [n, f] : m)
      if (!f.is_zero_map()) out.emplace(n, &f);
    return out;
  };
  auto ma = nonzero(a->mu()), mb = nonzero(b->mu());
  if (ma.size() != mb.size()) return false;
  for (const auto& [n, f] : ma) {
    auto it = mb.find(n);
    if (it == mb.end() || !map_equal(*f, *it->second)) return false;
  }
  return true;
}

std::vector<std::vector<Word>> reduced_diagonal(int m, const Word& w) {
  int parts = m + 1;
  int n = static_cast<int>(w.size());
  std::vector<std::vector<Word>> out;
  if (parts < 1 || n < parts) return out;
  // Choose cut positions 0 < c_1 < ... < c_m < n.
  std::vector<int> cuts(parts + 1);
  cuts[0] = 0;
  cuts[parts] = n;
  std::function<void(int, int)> rec = [&](int idx, int prev) {
    if (idx == parts) {
      std::vector<Word> blocks(parts);
      for (int i = 0; i < parts; ++i)
        blocks[i] = w.substr(cuts[i], cuts[i + 1] - cuts[i]);
      out.push_back(std::move(blocks));
      return;
    }
    for (int c = prev + 1; c <= n - (parts - idx); ++c) {
      cuts[idx] = c;
      rec(idx + 1, c);
    }
  };
  rec(1, 0);
  return out;
}

Element coder_apply(const std::map<int, GradedMap>& d1, int m, const Word& w) {
  int n = static_cast<int>(w.size());
  Element out;
  if (m < 1 || m > n) return out;
  int k = n - m + 1;  // arity of the inserted component
  auto it = d1.find(k);
  if (it == d1.end() || it->second.is_zero_map()) return out;
  const GradedSpace& src = *it->second.source();
  for (int i = 0; i + 1 <= m; ++i) {
    std::vector<Slot> slots;
    if (i > 0) slots.push_back(Slot{nullptr, i});
    slots.push_back(Slot{&it->second, k});
    if (m - 1 - i > 0) slots.push_back(Slot{nullptr, m - 1 - i});
    add_scaled(out, apply_slots(slots, src, w), 1);
  }
  return out;
}

Element coder_apply(const std::map<int, GradedMap>& d1, int m,
                    const Element& e) {
  Element out;
  for (const auto& [w, c] : e) add_scaled(out, coder_apply(d1, m, w), c);
  return out;
}

Element comorph_apply(const std::map<int, GradedMap>& f1, int m,
                      const Word& w) {
  // Components have degree 0, so the splitting sum carries no signs.
  Element out;
  for (const auto& blocks : reduced_diagonal(m - 1, w)) {
    Element acc;
    acc[Word{}] = 1;
    for (const Word& b : blocks) {
      auto it = f1.find(static_cast<int>(b.size()));
      if (it == f1.end()) {
        acc.clear();
        break;
      }
      const Element* img = it->second.entry(b);
      if (!img) {
        acc.clear();
        break;
      }
      Element next;
      for (const auto& [prefix, c] : acc)
        for (const auto& [v, x] : *img) add_term(next, prefix + v, c * x);
      acc = std::move(next);
      if (acc.empty()) break;
    }
    for (const auto& [v, c] : acc) add_term(out, v, c);
  }
  return out;
}

Element comorph_apply(const std::map<int, GradedMap>& f1, int m,
                      const Element& e) {
  Element out;
  for (const auto& [w, c] : e) add_scaled(out, comorph_apply(f1, m, w), c);
  return out;
}

GradedMap coder_component(const std::map<int, GradedMap>& d1, int m, int n,
                          const SpacePtr& bar) {
  GradedMap out(bar, n, bar, m, -1);
  auto [lo, hi] = bar->word_degree_range(n);
  bar->for_each_word(n, lo, hi, [&](const Word& w) {
    Element e = coder_apply(d1, m, w);
    if (!e.empty()) out.add(w, e);
  });
  return out;
}

GradedMap comorph_component(const std::map<int, GradedMap>& f1, int m, int n,
                            const SpacePtr& bar_src, const SpacePtr& bar_tgt) {
  GradedMap out(bar_src, n, bar_tgt, m, 0);
  auto [lo, hi] = bar_src->word_degree_range(n);
  bar_src->for_each_word(n, lo, hi, [&](const Word& w) {
    Element e = comorph_apply(f1, m, w);
    if (!e.empty()) out.add(w, e);
  });
  return out;
}

Element codiff_apply(const std::map<int, GradedMap>& d1, const Word& w) {
  int n = static_cast<int>(w.size());
  Element out;
  for (int m = 1; m <= n; ++m) {
    auto it = d1.find(m);
    if (it == d1.end()) continue;
    add_scaled(out, it->second.apply(coder_apply(d1, m, w)), 1);
  }
  return out;
}

CheckReport codiff_check(const AInfStructure& s) {
  CheckReport report;
  const SpacePtr& bar = s.bar_space();
  for (int n = 1; n <= s.max_arity(); ++n) {
    // The residual lands in arity 1 with degree deg(w) - 2; words outside
    // that window vanish term by term.
    int lo = bar->min_letter_degree() + 2;
    int hi = bar->max_letter_degree() + 2;
    bar->for_each_word(n, lo, hi, [&](const Word& w) {
      Element r = codiff_apply(s.d1(), w);
      if (!r.empty()) report.push_back({n, w, std::move(r)});
    });
  }
  return report;
}

WeakMorphism::WeakMorphism(StructurePtr source, StructurePtr target,
                           std::map<int, GradedMap> fbar)
    : src_(std::move(source)), tgt_(std::move(target)), fbar_(std::move(fbar)) {
  for (const auto& [n, f] : fbar_) {
    if (n < 1 || n > src_->max_arity())
      throw invariant_error("morphism component at arity " +
                            std::to_string(n) + " outside truncation");
    if (!same_space(f.source(), src_->bar_space()) ||
        !same_space(f.target(), tgt_->bar_space()) || f.src_arity() != n ||
        f.tgt_arity() != 1)
      throw space_mismatch("morphism component " + std::to_string(n) +
                           " on wrong spaces");
    if (f.degree() != 0 && !f.is_zero_map())
      throw degree_error("shifted morphism components must have degree 0");
  }
}

WeakMorphism WeakMorphism::from_components(StructurePtr source,
                                           StructurePtr target,
                                           const std::map<int, GradedMap>& f) {
  std::map<int, GradedMap> fbar;
  for (const auto& [n, fn] : f) {
    if (fn.degree() != n - 1 && !fn.is_zero_map())
      throw degree_error("component f_" + std::to_string(n) +
                         " must have degree " + std::to_string(n - 1));
    fbar.emplace(n, to_bar(fn, source->bar_space(), target->bar_space()));
  }
  return WeakMorphism(std::move(source), std::move(target), std::move(fbar));
}

const GradedMap* WeakMorphism::fbar_n(int n) const {
  auto it = fbar_.find(n);
  return it == fbar_.end() ? nullptr : &it->second;
}

GradedMap WeakMorphism::component(int n) const {
  const GradedMap* f = fbar_n(n);
  if (!f) return GradedMap(src_->space(), n, tgt_->space(), 1, n - 1);
  return from_bar(*f, src_->space(), tgt_->space());
}

CheckReport dgmorph_check(const WeakMorphism& f) {
  CheckReport report;
  const SpacePtr& bar = f.source()->bar_space();
  const SpacePtr& tbar = f.target()->bar_space();
  const auto& d1 = f.source()->d1();
  const auto& d1p = f.target()->d1();
  int n_max = std::min(f.source()->max_arity(), f.target()->max_arity());
  for (int n = 1; n <= n_max; ++n) {
    int lo = tbar->min_letter_degree() + 1;
    int hi = tbar->max_letter_degree() + 1;
    bar->for_each_word(n, lo, hi, [&](const Word& w) {
      Element r;
      for (int m = 1; m <= n; ++m) {
        auto itd = d1p.find(m);
        if (itd != d1p.end())
          add_scaled(r, itd->second.apply(comorph_apply(f.fbar(), m, w)), 1);
        auto itf = f.fbar().find(m);
        if (itf != f.fbar().end())
          add_scaled(r, itf->second.apply(coder_apply(d1, m, w)), -1);
      }
      if (!r.empty()) report.push_back({n, w, std::move(r)});
    });
  }
  return report;
}

WeakMorphism identity_morphism(StructurePtr s) {
  std::map<int, GradedMap> fbar;
  fbar.emplace(1, identity_map(s->bar_space()));
  StructurePtr t = s;
  return WeakMorphism(std::move(s), std::move(t), std::move(fbar));
}

WeakMorphism compose_morphisms(const WeakMorphism& g, const WeakMorphism& f) {
  if (!same_structure(f.target(), g.source()))
    throw space_mismatch("compose_morphisms: middle structures differ");
  const SpacePtr& bar = f.source()->bar_space();
  const SpacePtr& tbar = g.target()->bar_space();
  int n_max = std::min(f.source()->max_arity(), g.target()->max_arity());
  std::map<int, GradedMap> out;
  for (int n = 1; n <= n_max; ++n) {
    GradedMap comp(bar, n, tbar, 1, 0);
    int lo = tbar->min_letter_degree();
    int hi = tbar->max_letter_degree();
    bar->for_each_word(n, lo, hi, [&](const Word& w) {
      Element val;
      for (int m = 1; m <= n; ++m) {
        const GradedMap* gm = g.fbar_n(m);
        if (!gm) continue;
        add_scaled(val, gm->apply(comorph_apply(f.fbar(), m, w)), 1);
      }
      if (!val.empty()) comp.add(w, val);
    });
    if (!comp.is_zero_map()) out.emplace(n, std::move(comp));
  }
  return WeakMorphism(f.source(), g.target(), std::move(out));
}

std::map<int, GradedMap> invert_comorphism(const std::map<int, GradedMap>& f1,
                                           int max_arity) {
  auto it1 = f1.find(1);
  if (it1 == f1.end())
    throw non_invertible("family has no linear component");
  auto inv1 = invert_graded_map(it1->second);
  if (!inv1)
    throw non_invertible("linear component is not invertible");
  const SpacePtr& src = it1->second.source();  // bar A
  const SpacePtr& tgt = it1->second.target();  // bar A'

  std::map<int, GradedMap> g1;
  g1.emplace(1, *inv1);
  for (int n = 2; n <= max_arity; ++n) {
    GradedMap gn(tgt, n, src, 1, 0);
    int lo = src->min_letter_degree();
    int hi = src->max_letter_degree();
    tgt->for_each_word(n, lo, hi, [&](const Word& w) {
      // g1_n = -f1_1^{-1} sum_{m=2}^{n} f1_m G^m_n; G^m_n only uses lower
      // components, already built.
      Element val;
      for (int m = 2; m <= n; ++m) {
        auto itm = f1.find(m);
        if (itm == f1.end()) continue;
        add_scaled(val, itm->second.apply(comorph_apply(g1, m, w)), 1);
      }
      if (val.empty()) return;
      Element res = inv1->apply(val);
      if (!res.empty()) gn.add(w, res, -1);
    });
    if (!gn.is_zero_map()) g1.emplace(n, std::move(gn));
  }
  return g1;
}

WeakMorphism invert_weak_iso(const WeakMorphism& f) {
  int n_max = std::min(f.source()->max_arity(), f.target()->max_arity());
  return WeakMorphism(f.target(), f.source(),
                      invert_comorphism(f.fbar(), n_max));
}

}  // namespace ainf
