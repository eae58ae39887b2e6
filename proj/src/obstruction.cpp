#include "ainf/obstruction.hpp"

#include <string>

#include "ainf/solve.hpp"

namespace ainf {

namespace {

void check_hom(const HomElement& f) {
  if (!f.src || !f.tgt) throw space_mismatch("hom element without structures");
  const SpacePtr& bar = f.src->bar_space();
  const SpacePtr& barp = f.tgt->bar_space();
  for (const auto& [n, m] : f.comp) {
    if (n < 1 || n > f.src->max_arity())
      throw degree_error("hom component arity out of range");
    if (!same_space(m.source(), bar) || !same_space(m.target(), barp) ||
        m.src_arity() != n || m.tgt_arity() != 1)
      throw space_mismatch("hom component on wrong spaces");
    if (m.degree() != f.degree && !m.is_zero_map())
      throw degree_error("hom component of the wrong degree");
  }
}

void check_pair(const HomElement& a, const HomElement& b) {
  if (!same_structure(a.src, b.src) || !same_structure(a.tgt, b.tgt))
    throw space_mismatch("hom elements between different structures");
}

}  // namespace

int HomElement::filtration() const {
  for (const auto& [n, m] : comp)
    if (!m.is_zero_map()) return n;
  return INT_MAX;
}

const GradedMap* HomElement::comp_n(int n) const {
  auto it = comp.find(n);
  if (it == comp.end() || it->second.is_zero_map()) return nullptr;
  return &it->second;
}

HomElement zero_hom(StructurePtr src, StructurePtr tgt, int degree) {
  return HomElement{std::move(src), std::move(tgt), degree, {}};
}

HomElement hom_of(const WeakMorphism& f) {
  HomElement h{f.source(), f.target(), 0, f.fbar()};
  check_hom(h);
  return h;
}

HomElement hom_add(const HomElement& a, const HomElement& b) {
  check_pair(a, b);
  if (a.degree != b.degree && !a.is_zero() && !b.is_zero())
    throw degree_error("adding hom elements of different degrees");
  HomElement out = a;
  if (a.is_zero()) out.degree = b.degree;
  for (const auto& [n, m] : b.comp) {
    auto it = out.comp.find(n);
    if (it == out.comp.end())
      out.comp.emplace(n, m);
    else
      it->second += m;
  }
  for (auto it = out.comp.begin(); it != out.comp.end();)
    it = it->second.is_zero_map() ? out.comp.erase(it) : std::next(it);
  return out;
}

HomElement hom_scale(HomElement a, const Rational& c) {
  if (c == 0) return zero_hom(a.src, a.tgt, a.degree);
  for (auto& [n, m] : a.comp) m *= c;
  return a;
}

bool hom_equal(const HomElement& a, const HomElement& b) {
  check_pair(a, b);
  for (int n = 1; n <= a.src->max_arity(); ++n) {
    const GradedMap* ma = a.comp_n(n);
    const GradedMap* mb = b.comp_n(n);
    if (!ma && !mb) continue;
    if (!ma || !mb) return false;
    if (!map_equal(*ma, *mb)) return false;
  }
  return true;
}

HomElement del(const HomElement& f) {
  check_hom(f);
  const SpacePtr& bar = f.src->bar_space();
  const SpacePtr& barp = f.tgt->bar_space();
  const GradedMap& dp1 = f.tgt->d1().at(1);
  const auto& d1 = f.src->d1();
  Rational sgn((f.degree % 2 == 0) ? -1 : 1);  // -(-1)^{deg f}

  HomElement out = zero_hom(f.src, f.tgt, f.degree - 1);
  for (int n = 1; n <= f.src->max_arity(); ++n) {
    GradedMap on(bar, n, barp, 1, f.degree - 1);
    auto [lo, hi] = on.feasible_src_degrees();
    const GradedMap* fn = f.comp_n(n);
    bar->for_each_word(n, lo, hi, [&](const Word& w) {
      Element val;
      if (fn) add_scaled(val, dp1.apply(fn->apply(w)), 1);
      for (int k = 1; k <= n; ++k) {
        const GradedMap* fk = f.comp_n(k);
        if (!fk) continue;
        add_scaled(val, fk->apply(coder_apply(d1, k, w)), sgn);
      }
      if (!val.empty()) on.add(w, val);
    });
    if (!on.is_zero_map()) out.comp.emplace(n, std::move(on));
  }
  return out;
}

HomElement q_n(int n, const std::vector<const HomElement*>& args) {
  if (n < 2 || static_cast<int>(args.size()) != n)
    throw degree_error("q_n needs n >= 2 arguments");
  for (const auto* a : args) {
    check_hom(*a);
    check_pair(*args[0], *a);
  }
  const StructurePtr& src = args[0]->src;
  const StructurePtr& tgt = args[0]->tgt;
  int degsum = 0;
  for (const auto* a : args) degsum += a->degree;
  HomElement out = zero_hom(src, tgt, degsum - 1);

  auto itd = tgt->d1().find(n);
  if (itd == tgt->d1().end()) return out;
  const GradedMap& dpn = itd->second;
  const SpacePtr& bar = src->bar_space();

  for (int r = n; r <= src->max_arity(); ++r) {
    GradedMap orr(bar, r, tgt->bar_space(), 1, degsum - 1);
    auto [lo, hi] = orr.feasible_src_degrees();
    bar->for_each_word(r, lo, hi, [&](const Word& w) {
      Element val;
      for (const auto& blocks : reduced_diagonal(n - 1, w)) {
        std::vector<Slot> slots;
        slots.reserve(n);
        bool ok = true;
        for (int j = 0; j < n; ++j) {
          const GradedMap* fj =
              args[j]->comp_n(static_cast<int>(blocks[j].size()));
          if (!fj) {
            ok = false;
            break;
          }
          slots.push_back(Slot{fj, static_cast<int>(blocks[j].size())});
        }
        if (!ok) continue;
        Element mid = apply_slots(slots, *bar, w);
        if (!mid.empty()) add_scaled(val, dpn.apply(mid), 1);
      }
      if (!val.empty()) orr.add(w, val);
    });
    if (!orr.is_zero_map()) out.comp.emplace(r, std::move(orr));
  }
  return out;
}

HomElement curvature(const HomElement& f) {
  check_hom(f);
  if (f.degree != 0 && !f.is_zero())
    throw degree_error("curvature is defined for degree-0 elements");
  HomElement r = del(f);
  std::vector<const HomElement*> args(static_cast<size_t>(f.src->max_arity()),
                                      &f);
  for (int n = 2; n <= f.src->max_arity(); ++n)
    r = hom_add(r, q_n(n, {args.begin(), args.begin() + n}));
  return r;
}

HomElement bianchi_residual(const HomElement& f) {
  HomElement r = curvature(f);
  HomElement out = del(r);
  for (int n = 2; n <= f.src->max_arity(); ++n)
    for (int pos = 0; pos < n; ++pos) {
      std::vector<const HomElement*> args(static_cast<size_t>(n), &f);
      args[static_cast<size_t>(pos)] = &r;
      out = hom_add(out, q_n(n, args));
    }
  return out;
}

GradedMap del_bar(const GradedMap& x, const StructurePtr& src,
                  const StructurePtr& tgt, int m) {
  const SpacePtr& bar = src->bar_space();
  const SpacePtr& barp = tgt->bar_space();
  if (!same_space(x.source(), bar) || !same_space(x.target(), barp) ||
      x.src_arity() != m || x.tgt_arity() != 1)
    throw space_mismatch("del_bar argument on wrong spaces");
  const GradedMap& dp1 = tgt->d1().at(1);
  const auto& d1 = src->d1();
  Rational sgn((x.degree() % 2 == 0) ? -1 : 1);

  GradedMap out(bar, m, barp, 1, x.degree() - 1);
  auto [lo, hi] = out.feasible_src_degrees();
  bar->for_each_word(m, lo, hi, [&](const Word& w) {
    Element val = dp1.apply(x.apply(w));
    add_scaled(val, x.apply(coder_apply(d1, m, w)), sgn);
    if (!val.empty()) out.add(w, val);
  });
  return out;
}

GradedMap obstruction_cocycle(int m, const HomElement& f) {
  check_hom(f);
  if (f.degree != 0)
    throw degree_error("obstruction cocycle needs a degree-0 element");
  if (m < 2 || m > f.src->max_arity())
    throw degree_error("obstruction arity out of range");
  const SpacePtr& bar = f.src->bar_space();
  const SpacePtr& barp = f.tgt->bar_space();
  const auto& d1 = f.src->d1();
  const auto& d1p = f.tgt->d1();

  // The element must be a genuine morphism below arity m.
  for (int n = 1; n < m; ++n) {
    bool bad = false;
    int lo = barp->min_letter_degree() + 1;
    int hi = barp->max_letter_degree() + 1;
    bar->for_each_word(n, lo, hi, [&](const Word& w) {
      if (bad) return;
      Element val;
      for (int k = 1; k <= n; ++k) {
        auto it = d1p.find(k);
        if (it != d1p.end())
          add_scaled(val, it->second.apply(comorph_apply(f.comp, k, w)), 1);
        const GradedMap* fk = f.comp_n(k);
        if (fk) add_scaled(val, fk->apply(coder_apply(d1, k, w)), -1);
      }
      if (!val.empty()) bad = true;
    });
    if (bad)
      throw partial_morphism_invalid(
          "morphism identity fails at arity " + std::to_string(n) +
          " below the requested obstruction arity");
  }

  GradedMap c(bar, m, barp, 1, -1);
  auto [lo, hi] = c.feasible_src_degrees();
  bar->for_each_word(m, lo, hi, [&](const Word& w) {
    Element val;
    for (int k = 2; k <= m; ++k) {
      auto it = d1p.find(k);
      if (it == d1p.end()) continue;
      add_scaled(val, it->second.apply(comorph_apply(f.comp, k, w)), 1);
    }
    for (int k = 1; k < m; ++k) {
      const GradedMap* fk = f.comp_n(k);
      if (fk) add_scaled(val, fk->apply(coder_apply(d1, k, w)), -1);
    }
    if (!val.empty()) c.add(w, val);
  });
  return c;
}

std::optional<GradedMap> solve_extension(int m, const HomElement& f,
                                         const GradedMap& target) {
  check_hom(f);
  const SpacePtr& bar = f.src->bar_space();
  const SpacePtr& barp = f.tgt->bar_space();
  if (!same_space(target.source(), bar) || !same_space(target.target(), barp) ||
      target.src_arity() != m || target.degree() != -1)
    throw space_mismatch("extension target of the wrong shape");
  const GradedMap& dp1 = f.tgt->d1().at(1);
  const auto& d1 = f.src->d1();

  // del_bar(X) = -target for degree-0 X: dp1 . X - X . D^m_m = -target.
  GradedMap rhs = target;
  rhs *= Rational(-1);
  std::map<Word, std::vector<std::pair<Word, Rational>>> transpose;
  int lo = barp->min_letter_degree() + 1;
  int hi = barp->max_letter_degree() + 1;
  bar->for_each_word(m, lo, hi, [&](const Word& w) {
    for (const auto& [v, cf] : coder_apply(d1, m, w))
      transpose[v].emplace_back(w, cf);
  });

  MapShape shape{bar, m, barp, 1, 0};
  LinOp op = [&](const GradedMap& e) {
    GradedMap out(bar, m, barp, 1, -1);
    for (const auto& [vin, elem] : e.entries()) {
      Element img = dp1.apply(elem);
      if (!img.empty()) out.add(vin, img);
      auto it = transpose.find(vin);
      if (it != transpose.end())
        for (const auto& [w, cf] : it->second) out.add(w, elem, -cf);
    }
    return out;
  };
  return solve_map_equation(shape, op, rhs);
}

HomComplexModel hom_complex(const ChainComplex& a, int n,
                            const ChainComplex& b) {
  const GradedSpace& asp = *a.space();
  const GradedSpace& bsp = *b.space();
  if (asp.dim() == 0 || bsp.dim() == 0)
    throw space_mismatch("hom complex over an empty space");

  HomComplexModel model;
  model.arity = n;
  std::vector<std::pair<std::string, int>> basis;
  auto [wlo, whi] = asp.word_degree_range(n);
  asp.for_each_word(n, wlo, whi, [&](const Word& w) {
    int wd = asp.word_degree(w);
    for (int v = 0; v < bsp.dim(); ++v) {
      model.index.emplace(std::make_pair(w, v),
                          static_cast<int>(basis.size()));
      model.pairs.emplace_back(w, v);
      basis.emplace_back(asp.word_label(w) + "|" + bsp.label(v),
                         bsp.degree(v) - wd);
    }
  });
  model.space = std::make_shared<GradedSpace>(
      "Hom(" + asp.name() + "^" + std::to_string(n) + "," + bsp.name() + ")",
      std::move(basis));

  // D(e_{w,v}) = (w, d_B v) - (-1)^{deg e} sum_{w'} [d_leibniz w']_w (w', v).
  std::map<Word, std::vector<std::pair<Word, Rational>>> dt;  // transpose
  asp.for_each_word(n, wlo, whi, [&](const Word& w) {
    for (const auto& [w2, c] : leibniz_apply(a.d(), w))
      dt[w2].emplace_back(w, c);
  });
  GradedMap diff(model.space, 1, model.space, 1, -1, "D");
  for (int i = 0; i < model.space->dim(); ++i) {
    const auto& [w, v] = model.pairs[static_cast<size_t>(i)];
    int q = model.space->degree(i);
    Rational sgn((q % 2 == 0) ? -1 : 1);
    Element out;
    for (const auto& [v2, c] : b.d().apply(word1(v)))
      add_term(out, word1(model.index.at({w, v2[0]})), c);
    auto it = dt.find(w);
    if (it != dt.end())
      for (const auto& [w2, c] : it->second)
        add_term(out, word1(model.index.at({w2, v})), sgn * c);
    if (!out.empty()) diff.add(word1(i), out, 1);
  }
  model.complex.emplace(model.space, std::move(diff));
  return model;
}

Element HomComplexModel::to_element(const GradedMap& phi) const {
  Element e;
  for (const auto& [w, out] : phi.entries())
    for (const auto& [v, c] : out)
      add_term(e, word1(index.at({w, v[0]})), c);
  return e;
}

GradedMap HomComplexModel::to_map(const Element& e, int degree,
                                  const SpacePtr& a, const SpacePtr& b) const {
  GradedMap phi(a, arity, b, 1, degree);
  for (const auto& [i, c] : e) {
    const auto& [w, v] = pairs[static_cast<size_t>(i[0])];
    phi.add(w, word1(v), c);
  }
  return phi;
}

std::vector<ObstructionClass> obstruction_classes(const StructurePtr& s,
                                                  const StructurePtr& sp,
                                                  const GradedMap& f1,
                                                  int up_to) {
  if (!is_chain_map(f1, s->complex(), sp->complex()))
    throw invariant_error("obstruction induction needs a chain map");
  if (up_to > s->max_arity())
    throw degree_error("obstruction arity beyond the truncation");
  const SpacePtr& bar = s->bar_space();
  const SpacePtr& barp = sp->bar_space();

  HomElement f = zero_hom(s, sp, 0);
  f.comp.emplace(1, to_bar(f1, bar, barp));

  std::vector<ObstructionClass> out;
  for (int m = 2; m <= up_to; ++m) {
    ObstructionClass oc;
    oc.arity = m;
    GradedMap cbar = obstruction_cocycle(m, f);
    oc.cocycle = from_bar(cbar, s->space(), sp->space());

    HomComplexModel model = hom_complex(s->complex(), m, sp->complex());
    Homology hom(*model.complex);
    Element z = model.to_element(oc.cocycle);
    if (z.empty()) {
      oc.class_coords.assign(static_cast<size_t>(hom.betti(m - 2)), Rational(0));
    } else {
      auto coords = hom.class_coords(z);
      if (!coords)
        throw invariant_error("obstruction cocycle is not a cycle");
      oc.class_coords = std::move(*coords);
    }
    oc.vanishes = true;
    for (const auto& c : oc.class_coords)
      if (c != 0) oc.vanishes = false;

    if (!oc.vanishes) {
      out.push_back(std::move(oc));
      break;
    }
    auto sol = solve_extension(m, f, cbar);
    if (!sol)
      throw invariant_error(
          "vanishing obstruction class admits no extension");
    oc.preimage = from_bar(*sol, s->space(), sp->space());
    if (!sol->is_zero_map()) f.comp.emplace(m, std::move(*sol));
    out.push_back(std::move(oc));
  }
  return out;
}

}  // namespace ainf
