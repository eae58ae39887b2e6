#include "ainf/transfer.hpp"

#include <functional>

#include "ainf/linalg.hpp"
#include "ainf/obstruction.hpp"
#include "ainf/solve.hpp"

namespace ainf {

namespace {

void check_sides(const AInfStructure& s, const HomotopyData& hd) {
  if (!same_space(s.space(), hd.source().space()))
    throw space_mismatch("structure lives on " + s.space()->name() +
                         " but the retraction starts at " +
                         hd.source().space()->name());
  if (!map_equal(s.complex().d(), hd.source().d()))
    throw invariant_error("retraction differential disagrees with structure");
}

// All compositions of n into k ordered parts >= 1, lexicographic.
void for_each_composition(int n, int k,
                          const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> parts(k);
  std::function<void(int, int)> rec = [&](int idx, int rem) {
    if (idx == k - 1) {
      parts[idx] = rem;
      fn(parts);
      return;
    }
    for (int p = 1; p <= rem - (k - 1 - idx); ++p) {
      parts[idx] = p;
      rec(idx + 1, rem - p);
    }
  };
  rec(0, n);
}

}  // namespace

std::map<int, GradedMap> p_kernels_bar(const AInfStructure& s,
                                       const HomotopyData& hd, int edge_sign) {
  check_sides(s, hd);
  const SpacePtr& bar = s.bar_space();
  GradedMap hhat = to_bar(hd.h(), bar, bar);
  const auto& d1 = s.d1();

  std::map<int, GradedMap> phat;
  std::map<int, GradedMap> zhat;  // edge_sign * hhat . phat[m]
  int lo = bar->min_letter_degree() + 1;
  int hi = bar->max_letter_degree() + 1;
  for (int n = 2; n <= s.max_arity(); ++n) {
    GradedMap pn(bar, n, bar, 1, -1);
    for (int k = 2; k <= n; ++k) {
      auto itd = d1.find(k);
      if (itd == d1.end()) continue;
      for_each_composition(n, k, [&](const std::vector<int>& parts) {
        std::vector<Slot> slots(k);
        for (int i = 0; i < k; ++i) {
          if (parts[i] == 1)
            slots[i] = Slot{nullptr, 1};
          else
            slots[i] = Slot{&zhat.at(parts[i]), parts[i]};
        }
        bar->for_each_word(n, lo, hi, [&](const Word& w) {
          Element e = apply_slots(slots, *bar, w);
          if (e.empty()) return;
          Element val = itd->second.apply(e);
          if (!val.empty()) pn.add(w, val);
        });
      });
    }
    GradedMap zn = compose(hhat, pn);
    zn *= Rational(edge_sign);
    zhat.emplace(n, std::move(zn));
    phat.emplace(n, std::move(pn));
  }
  return phat;
}

GradedMap p_kernel(int n, const AInfStructure& s, const HomotopyData& hd,
                   int edge_sign) {
  if (n < 2 || n > s.max_arity())
    throw invariant_error("kernel arity outside [2, max]");
  auto phat = p_kernels_bar(s, hd, edge_sign);
  return from_bar(phat.at(n), s.space(), s.space());
}

namespace {

// Shifted operator of one subtree with an internal vertex at the root.
GradedMap eval_tree_bar(const PlanarTree& t, const AInfStructure& s,
                        const GradedMap& hhat, int edge_sign) {
  const SpacePtr& bar = s.bar_space();
  int k = static_cast<int>(t.children.size());
  if (k > s.max_arity())
    throw vertex_arity_exceeds_truncation(
        "tree vertex of arity " + std::to_string(k) + " exceeds truncation " +
        std::to_string(s.max_arity()));
  int n = t.leaves();
  GradedMap out(bar, n, bar, 1, -1);

  std::vector<GradedMap> child_ops;  // for non-leaf children
  std::vector<Slot> slots(k);
  for (int i = 0; i < k; ++i) {
    const PlanarTree& c = t.children[i];
    if (c.leaf()) {
      slots[i] = Slot{nullptr, 1};
    } else {
      GradedMap z = compose(hhat, eval_tree_bar(c, s, hhat, edge_sign));
      z *= Rational(edge_sign);
      child_ops.push_back(std::move(z));
      slots[i] = Slot{nullptr, c.leaves()};  // patched below
    }
  }
  {
    size_t ci = 0;
    for (int i = 0; i < k; ++i)
      if (!t.children[i].leaf()) slots[i].map = &child_ops[ci++];
  }

  auto itd = s.d1().find(k);
  if (itd == s.d1().end()) return out;  // mu_k = 0
  int lo = bar->min_letter_degree() + 1;
  int hi = bar->max_letter_degree() + 1;
  bar->for_each_word(n, lo, hi, [&](const Word& w) {
    Element e = apply_slots(slots, *bar, w);
    if (e.empty()) return;
    Element val = itd->second.apply(e);
    if (!val.empty()) out.add(w, val);
  });
  return out;
}

}  // namespace

GradedMap tree_operator(const PlanarTree& t, const AInfStructure& s,
                        const HomotopyData& hd, int edge_sign) {
  check_sides(s, hd);
  if (t.leaf()) throw invariant_error("tree operator needs an internal root");
  const SpacePtr& bar = s.bar_space();
  GradedMap hhat = to_bar(hd.h(), bar, bar);
  return from_bar(eval_tree_bar(t, s, hhat, edge_sign), s.space(), s.space());
}

StructurePtr transfer_structure(const StructurePtr& s, const HomotopyData& hd,
                                int edge_sign) {
  check_sides(*s, hd);
  const SpacePtr& bar = s->bar_space();
  SpacePtr barp = suspend_space(hd.target().space());
  GradedMap f1hat = to_bar(hd.f1(), bar, barp);
  GradedMap g1hat = to_bar(hd.g1(), barp, bar);
  auto phat = p_kernels_bar(*s, hd, edge_sign);

  std::map<int, GradedMap> nu;
  int lo = barp->min_letter_degree() + 1;
  int hi = barp->max_letter_degree() + 1;
  for (int n = 2; n <= s->max_arity(); ++n) {
    GradedMap nun(barp, n, barp, 1, -1);
    std::vector<Slot> slots(n, Slot{&g1hat, 1});
    barp->for_each_word(n, lo, hi, [&](const Word& w) {
      Element e = apply_slots(slots, *barp, w);
      if (e.empty()) return;
      Element val = f1hat.apply(phat.at(n).apply(e));
      if (!val.empty()) nun.add(w, val);
    });
    if (!nun.is_zero_map())
      nu.emplace(n, from_bar(nun, hd.target().space(), hd.target().space()));
  }
  return std::make_shared<AInfStructure>(hd.target(), std::move(nu),
                                         s->max_arity());
}

WeakMorphism extend_g(const StructurePtr& s, const HomotopyData& hd,
                      const StructurePtr& nu, int edge_sign) {
  check_sides(*s, hd);
  if (!same_space(nu->space(), hd.target().space()))
    throw space_mismatch("transferred structure lives on the wrong space");
  const SpacePtr& bar = s->bar_space();
  const SpacePtr& barp = nu->bar_space();
  GradedMap g1hat = to_bar(hd.g1(), barp, bar);
  GradedMap hhat = to_bar(hd.h(), bar, bar);
  auto phat = p_kernels_bar(*s, hd, edge_sign);

  std::map<int, GradedMap> fbar;
  fbar.emplace(1, g1hat);
  int lo = bar->min_letter_degree();
  int hi = bar->max_letter_degree();
  for (int n = 2; n <= s->max_arity(); ++n) {
    GradedMap gn(barp, n, bar, 1, 0);
    std::vector<Slot> slots(n, Slot{&g1hat, 1});
    barp->for_each_word(n, lo, hi, [&](const Word& w) {
      Element e = apply_slots(slots, *barp, w);
      if (e.empty()) return;
      Element val = hhat.apply(phat.at(n).apply(e));
      if (val.empty()) return;
      gn.add(w, val, Rational(edge_sign));
    });
    if (!gn.is_zero_map()) fbar.emplace(n, std::move(gn));
  }
  WeakMorphism g(nu, s, std::move(fbar));
  if (!dgmorph_check(g).empty())
    throw dgmorph_check_failed("extension of the section fails the morphism identities");
  return g;
}

WeakMorphism extend_f(const StructurePtr& s, const HomotopyData& hd,
                      const StructurePtr& nu) {
  check_sides(*s, hd);
  if (!same_space(nu->space(), hd.target().space()))
    throw space_mismatch("transferred structure lives on the wrong space");
  // Arity by arity: the obstruction cocycle of the partial morphism, then
  // the extension solve.  The induction cannot get stuck when nu genuinely
  // is a transferred structure.
  HomElement f = zero_hom(s, nu, 0);
  f.comp.emplace(1, to_bar(hd.f1(), s->bar_space(), nu->bar_space()));
  for (int m = 2; m <= s->max_arity(); ++m) {
    auto sol = solve_extension(m, f, obstruction_cocycle(m, f));
    if (!sol)
      throw obstruction_unsolvable("no extension at arity " +
                                   std::to_string(m));
    if (!sol->is_zero_map()) f.comp.emplace(m, std::move(*sol));
  }
  return WeakMorphism(s, nu, std::move(f.comp));
}

StructurePtr transfer_over_inclusion(const StructurePtr& s,
                                     const ChainComplex& big,
                                     const GradedMap& iota,
                                     const GradedMap& pi) {
  if (!same_space(iota.source(), s->space()) ||
      !same_space(iota.target(), big.space()) ||
      !same_space(pi.source(), big.space()) ||
      !same_space(pi.target(), s->space()))
    throw space_mismatch("inclusion/projection on wrong spaces");
  if (!map_equal(compose(pi, iota), identity_map(s->space())))
    throw not_strict_left_inverse("projection is not a left inverse");
  if (!is_chain_map(iota, s->complex(), big) ||
      !is_chain_map(pi, big, s->complex()))
    throw invariant_error("inclusion/projection must be chain maps");

  std::map<int, GradedMap> nu;
  for (const auto& [n, mun] : s->mu()) {
    std::vector<const GradedMap*> factors(n, &pi);
    GradedMap nun = compose(iota, compose(mun, tensor_maps(factors)));
    if (!nun.is_zero_map()) nu.emplace(n, std::move(nun));
  }
  return std::make_shared<AInfStructure>(big, std::move(nu), s->max_arity());
}

Retraction retract_to_homology(const ChainComplex& c) {
  const GradedSpace& sp = *c.space();
  std::map<int, std::vector<int>> by_degree;
  for (int i = 0; i < sp.dim(); ++i) by_degree[sp.degree(i)].push_back(i);

  // Per degree: pivot columns of d give the complement C of the cycles; the
  // boundary basis below is d of exactly those columns, so the inverse of
  // d restricted to C is free.
  struct Slice {
    std::vector<int> basis;
    std::vector<int> c_cols;               // indices into `basis` spanning C
    std::vector<Element> boundary_basis;   // d of the degree-above C columns
    std::vector<int> boundary_pre;        // matching space index above
    std::vector<Element> reps;             // harmonic complement of B in Z
  };
  std::map<int, Slice> slices;

  auto matrix_of = [&](const std::vector<Element>& cols,
                       std::map<int, int>& row_of) {
    for (const auto& e : cols)
      for (const auto& [w, x] : e)
        row_of.emplace(w[0], static_cast<int>(row_of.size()));
    Matrix m(std::max<int>(1, static_cast<int>(row_of.size())),
             static_cast<int>(cols.size()));
    for (size_t ci = 0; ci < cols.size(); ++ci)
      for (const auto& [w, x] : cols[ci]) m.at(row_of.at(w[0]), int(ci)) = x;
    return m;
  };

  for (const auto& [deg, basis] : by_degree) {
    Slice sl;
    sl.basis = basis;
    std::vector<Element> d_cols;
    for (int i : basis) d_cols.push_back(c.d().apply(word1(i)));
    std::map<int, int> rows;
    Matrix dm = matrix_of(d_cols, rows);
    Rref r = rref(dm);
    sl.c_cols = r.pivot_cols;
    slices[deg] = std::move(sl);
  }
  for (auto& [deg, sl] : slices) {
    auto above = slices.find(deg + 1);
    if (above != slices.end()) {
      for (int col : above->second.c_cols) {
        int idx = above->second.basis[col];
        sl.boundary_basis.push_back(c.d().apply(word1(idx)));
        sl.boundary_pre.push_back(idx);
      }
    }
    // Cycles: kernel of d on this degree.
    std::vector<Element> d_cols;
    for (int i : sl.basis) d_cols.push_back(c.d().apply(word1(i)));
    std::map<int, int> rows;
    Matrix dm = matrix_of(d_cols, rows);
    std::vector<Element> cycles;
    if (rows.empty()) {
      for (int i : sl.basis) cycles.push_back(Element{{word1(i), 1}});
    } else {
      for (auto& v : kernel_basis(rref(dm))) {
        Element z;
        for (size_t j = 0; j < sl.basis.size(); ++j)
          add_term(z, word1(sl.basis[j]), v[j]);
        cycles.push_back(std::move(z));
      }
    }
    // Representatives: cycles completing the boundaries.
    std::vector<Element> cols = sl.boundary_basis;
    for (const auto& z : cycles) cols.push_back(z);
    std::map<int, int> rows2;
    Matrix m = matrix_of(cols, rows2);
    Rref r = rref(std::move(m));
    int nb = static_cast<int>(sl.boundary_basis.size());
    for (int col : r.pivot_cols)
      if (col >= nb) sl.reps.push_back(cycles[col - nb]);
  }

  // Homology space and the four structure maps.
  std::vector<std::pair<std::string, int>> hbasis;
  std::map<int, int> first_index;  // degree -> index of its first class
  for (const auto& [deg, sl] : slices) {
    if (sl.reps.empty()) continue;
    first_index[deg] = static_cast<int>(hbasis.size());
    for (size_t i = 0; i < sl.reps.size(); ++i)
      hbasis.emplace_back("h" + std::to_string(deg) + "_" + std::to_string(i),
                          deg);
  }
  auto hsp = std::make_shared<GradedSpace>("H(" + sp.name() + ")",
                                           std::move(hbasis));
  ChainComplex hcx = zero_complex(hsp);

  GradedMap f1(c.space(), 1, hsp, 1, 0, "p");
  GradedMap g1(hsp, 1, c.space(), 1, 0, "i");
  GradedMap h(c.space(), 1, c.space(), 1, 1, "h");
  GradedMap l(hsp, 1, hsp, 1, 1, "0");

  for (const auto& [deg, sl] : slices) {
    if (!sl.reps.empty()) {
      int base = first_index.at(deg);
      for (size_t i = 0; i < sl.reps.size(); ++i)
        g1.add(word1(base + static_cast<int>(i)), sl.reps[i]);
    }
    // Decompose every basis vector over [boundaries | reps | C] and read off
    // the projection and the contraction.
    std::vector<Element> cols = sl.boundary_basis;
    for (const auto& z : sl.reps) cols.push_back(z);
    for (int col : sl.c_cols) cols.push_back(Element{{word1(sl.basis[col]), 1}});
    std::map<int, int> rows;
    Matrix m = matrix_of(cols, rows);
    int nb = static_cast<int>(sl.boundary_basis.size());
    int nr = static_cast<int>(sl.reps.size());
    for (int i : sl.basis) {
      std::vector<Rational> b(std::max<size_t>(1, rows.size()));
      b[rows.at(i)] = 1;
      auto sol = solve(m, b);
      // The three spans fill the degree slice, so this always solves.
      for (int j = 0; j < nb; ++j)
        if ((*sol)[j] != 0)
          h.add(word1(i), word1(sl.boundary_pre[j]), -(*sol)[j]);
      if (nr > 0) {
        int base = first_index.at(deg);
        for (int j = 0; j < nr; ++j)
          if ((*sol)[nb + j] != 0) f1.add(word1(i), word1(base + j), (*sol)[nb + j]);
      }
    }
  }

  HomotopyData hd(c, hcx, std::move(f1), std::move(g1), std::move(h),
                  std::move(l));
  return Retraction{std::move(hcx), std::move(hd)};
}

}  // namespace ainf
