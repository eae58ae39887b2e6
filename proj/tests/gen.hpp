#pragma once

// Random-instance helpers shared by the test binaries.  Everything is seeded
// explicitly so failures reproduce.

#include <random>
#include <vector>

#include "ainf/bar.hpp"
#include "ainf/complex.hpp"
#include "ainf/graded.hpp"
#include "ainf/solve.hpp"

namespace ainf::gen {

using Rng = std::mt19937_64;

inline Rational small_scalar(Rng& rng, bool allow_zero = true) {
  static const int nums[] = {-3, -2, -1, 0, 1, 2, 3};
  std::uniform_int_distribution<int> pick(allow_zero ? 0 : 1, 6);
  int n = nums[pick(rng)];
  if (!allow_zero && n == 0) n = 1;
  std::uniform_int_distribution<int> den(1, 3);
  return Rational(n, den(rng));
}

// Random space with `dim` basis letters, degrees in [deg_lo, deg_hi].
inline SpacePtr random_space(Rng& rng, int dim, int deg_lo, int deg_hi,
                             const std::string& name = "A") {
  std::uniform_int_distribution<int> deg(deg_lo, deg_hi);
  std::vector<std::pair<std::string, int>> basis;
  for (int i = 0; i < dim; ++i)
    basis.emplace_back(name + std::to_string(i), deg(rng));
  return std::make_shared<GradedSpace>(name, std::move(basis));
}

// Sparse random map of the given shape; roughly `density` of the
// degree-compatible entries are filled.
inline GradedMap random_map(Rng& rng, const SpacePtr& src, int src_arity,
                            const SpacePtr& tgt, int degree,
                            double density = 0.5) {
  GradedMap f(src, src_arity, tgt, 1, degree);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto [flo, fhi] = f.feasible_src_degrees();
  src->for_each_word(src_arity, flo, fhi, [&](const Word& w) {
    int want = src->word_degree(w) + degree;
    for (int j = 0; j < tgt->dim(); ++j) {
      if (tgt->degree(j) != want) continue;
      if (coin(rng) > density) continue;
      Rational c = small_scalar(rng, false);
      f.add(w, word1(j), c);
    }
  });
  return f;
}

// Random differential: nilpotent by construction.  Basis letters are split
// into d-pairs (u, du) where degrees allow; unmatched letters map to 0.
inline ChainComplex random_complex(Rng& rng, int dim, int deg_lo, int deg_hi,
                                   const std::string& name = "A") {
  SpacePtr sp = random_space(rng, dim, deg_lo, deg_hi, name);
  GradedMap d(sp, 1, sp, 1, -1, "d");
  std::vector<bool> used(dim, false);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < dim; ++i) {
    if (used[i]) continue;
    for (int j = 0; j < dim; ++j) {
      if (j == i || used[j]) continue;
      if (sp->degree(j) != sp->degree(i) - 1) continue;
      if (coin(rng) < 0.5) continue;
      d.add(word1(i), word1(j), small_scalar(rng, false));
      used[i] = used[j] = true;
      break;
    }
  }
  return ChainComplex(sp, std::move(d));
}

// Random degree-0 component family on the shifted space with identity
// linear part: an automorphism of the tensor coalgebra.
inline std::map<int, GradedMap> random_comorphism_family(Rng& rng,
                                                         const SpacePtr& bar,
                                                         int max_arity,
                                                         double density = 0.4) {
  std::map<int, GradedMap> f1;
  f1.emplace(1, identity_map(bar));
  for (int n = 2; n <= max_arity; ++n) {
    GradedMap fn = random_map(rng, bar, n, bar, 0, density);
    if (!fn.is_zero_map()) f1.emplace(n, std::move(fn));
  }
  return f1;
}

// Conjugate the component family of a valid structure by a coalgebra
// automorphism with identity linear part: the result is again a valid
// structure (sharing the differential), and `phi` is a weak isomorphism from
// the old structure to the new one.
struct ConjugatedStructure {
  StructurePtr base;    // differential only
  StructurePtr twisted;
  std::map<int, GradedMap> phi;  // shifted components, base -> twisted
};

inline ConjugatedStructure conjugate_structure(Rng& rng, ChainComplex c,
                                               int max_arity,
                                               double density = 0.4) {
  auto base =
      std::make_shared<AInfStructure>(c, std::map<int, GradedMap>{}, max_arity);
  const SpacePtr& bar = base->bar_space();
  auto f1 = random_comorphism_family(rng, bar, max_arity, density);
  auto g1 = invert_comorphism(f1, max_arity);

  // (F D F^{-1})^1_n = sum_{a <= b <= n} F1_a D^a_b G^b_n.
  std::map<int, GradedMap> mu;
  for (int n = 2; n <= max_arity; ++n) {
    GradedMap dn(bar, n, bar, 1, -1);
    int lo = bar->min_letter_degree() + 1;
    int hi = bar->max_letter_degree() + 1;
    bar->for_each_word(n, lo, hi, [&](const Word& w) {
      Element val;
      for (int b = 1; b <= n; ++b) {
        Element gb = comorph_apply(g1, b, w);
        if (gb.empty()) continue;
        for (int a = 1; a <= b; ++a) {
          auto it = f1.find(a);
          if (it == f1.end()) continue;
          add_scaled(val, it->second.apply(coder_apply(base->d1(), a, gb)), 1);
        }
      }
      if (!val.empty()) dn.add(w, val);
    });
    if (!dn.is_zero_map())
      mu.emplace(n, from_bar(dn, base->space(), base->space()));
  }
  auto twisted =
      std::make_shared<AInfStructure>(c, std::move(mu), max_arity);
  return ConjugatedStructure{std::move(base), std::move(twisted),
                             std::move(f1)};
}

inline StructurePtr random_structure(Rng& rng, int dim, int deg_lo, int deg_hi,
                                     int max_arity, double density = 0.4) {
  ChainComplex c = random_complex(rng, dim, deg_lo, deg_hi);
  return conjugate_structure(rng, std::move(c), max_arity, density).twisted;
}

// Random invertible degree-0 endomorphism: identity plus a strictly
// lower-triangular perturbation within each degree.
inline GradedMap random_unitriangular(Rng& rng, const SpacePtr& sp,
                                      double density = 0.5) {
  GradedMap phi = identity_map(sp);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < sp->dim(); ++i)
    for (int j = 0; j < i; ++j) {
      if (sp->degree(j) != sp->degree(i)) continue;
      if (coin(rng) > density) continue;
      phi.add(word1(i), word1(j), small_scalar(rng, false));
    }
  return phi;
}

// Random degree-`deg` endomorphism of a complex's space.
inline GradedMap conjugate_by(const GradedMap& phi, const GradedMap& f,
                              const GradedMap& phi_inv) {
  return compose(phi, compose(f, phi_inv));
}

// Two-sided retraction data with generic-looking maps: the big side is the
// small side plus contractible pairs, then both sides are conjugated by
// random automorphisms.  Returns the data and (optionally used) the
// structure side complex.
struct RetractInstance {
  ChainComplex big;    // A with the structure
  ChainComplex small;  // A'
  GradedMap f1, g1, h, l;

  HomotopyData data() const { return HomotopyData(big, small, f1, g1, h, l); }
};

inline RetractInstance random_retract(Rng& rng, int dim_small, int pairs,
                                      int deg_lo, int deg_hi,
                                      bool nonzero_l = true) {
  ChainComplex small = random_complex(rng, dim_small, deg_lo, deg_hi, "Ap");
  const GradedSpace& ssp = *small.space();

  std::vector<std::pair<std::string, int>> basis;
  for (int i = 0; i < ssp.dim(); ++i)
    basis.emplace_back(ssp.label(i), ssp.degree(i));
  std::uniform_int_distribution<int> deg(deg_lo, deg_hi);
  for (int p = 0; p < pairs; ++p) {
    int dlow = deg(rng);
    basis.emplace_back("w" + std::to_string(p), dlow);      // index dim+2p
    basis.emplace_back("u" + std::to_string(p), dlow + 1);  // index dim+2p+1
  }
  auto bsp = std::make_shared<GradedSpace>("A", std::move(basis));

  GradedMap d(bsp, 1, bsp, 1, -1, "d");
  for (const auto& [w, e] : small.d().entries()) d.add(w, e);
  for (int p = 0; p < pairs; ++p)
    d.add(word1(ssp.dim() + 2 * p + 1), word1(ssp.dim() + 2 * p), 1);
  ChainComplex big(bsp, d);

  GradedMap f1(bsp, 1, small.space(), 1, 0, "f1");
  GradedMap g1(small.space(), 1, bsp, 1, 0, "g1");
  for (int i = 0; i < ssp.dim(); ++i) {
    f1.add(word1(i), word1(i), 1);
    g1.add(word1(i), word1(i), 1);
  }
  GradedMap h(bsp, 1, bsp, 1, 1, "h");
  for (int p = 0; p < pairs; ++p)
    h.add(word1(ssp.dim() + 2 * p), word1(ssp.dim() + 2 * p + 1), -1);

  // l must anticommute into zero: take l = d' xi - xi d' for random xi.
  GradedMap l(small.space(), 1, small.space(), 1, 1, "l");
  if (nonzero_l) {
    GradedMap xi = random_map(rng, small.space(), 1, small.space(), 2, 0.5);
    l += compose(small.d(), xi);
    GradedMap xd = compose(xi, small.d());
    xd *= Rational(-1);
    l += xd;
  }

  // Conjugate both sides to hide the direct-sum shape.
  GradedMap phi = random_unitriangular(rng, bsp);
  GradedMap phi_inv = *invert_graded_map(phi);
  GradedMap psi = random_unitriangular(rng, small.space());
  GradedMap psi_inv = *invert_graded_map(psi);

  ChainComplex big2(bsp, conjugate_by(phi, big.d(), phi_inv));
  ChainComplex small2(small.space(), conjugate_by(psi, small.d(), psi_inv));
  GradedMap f1c = compose(psi, compose(f1, phi_inv));
  GradedMap g1c = compose(phi, compose(g1, psi_inv));
  GradedMap hc = conjugate_by(phi, h, phi_inv);
  GradedMap lc = conjugate_by(psi, l, psi_inv);
  return RetractInstance{std::move(big2), std::move(small2), std::move(f1c),
                         std::move(g1c), std::move(hc), std::move(lc)};
}

// Random valid structure on the big side of a retract instance.
struct TransferInstance {
  RetractInstance retract;
  StructurePtr s;
};

inline TransferInstance random_transfer_instance(Rng& rng, int dim_small,
                                                 int pairs, int deg_lo,
                                                 int deg_hi, int max_arity,
                                                 double density = 0.4) {
  RetractInstance r = random_retract(rng, dim_small, pairs, deg_lo, deg_hi);
  StructurePtr s =
      conjugate_structure(rng, r.big, max_arity, density).twisted;
  return TransferInstance{std::move(r), std::move(s)};
}

}  // namespace ainf::gen
