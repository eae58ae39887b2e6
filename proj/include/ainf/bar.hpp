#pragma once

// Truncated bar calculus: structures as families of degree -1 components on
// the shifted space, morphisms as degree-0 component families, and the
// identity checks phrased entirely on tensor words of the shifted space.

#include <map>
#include <memory>

#include "ainf/complex.hpp"
#include "ainf/graded.hpp"

namespace ainf {

// Truncated homotopy-associative structure (A, d, mu_2..mu_N), deg mu_n = n-2.
// Construction validates degrees and builds the shifted components; whether
// the higher-associativity identities hold is a separate check
// (codiff_check), so deliberately broken structures can be built for tests.
class AInfStructure {
 public:
  AInfStructure(ChainComplex complex, std::map<int, GradedMap> mu,
                int max_arity);

  const ChainComplex& complex() const { return complex_; }
  const SpacePtr& space() const { return complex_.space(); }
  const SpacePtr& bar_space() const { return bar_; }
  int max_arity() const { return max_arity_; }

  const std::map<int, GradedMap>& mu() const { return mu_; }
  const GradedMap* mu_n(int n) const;

  // Shifted components: d1().at(1) is the conjugated differential, d1().at(n)
  // the conjugated mu_n, all of degree -1 on bar_space() words.
  const std::map<int, GradedMap>& d1() const { return d1_; }

 private:
  ChainComplex complex_;
  std::map<int, GradedMap> mu_;
  int max_arity_;
  SpacePtr bar_;
  std::map<int, GradedMap> d1_;
};

using StructurePtr = std::shared_ptr<const AInfStructure>;

bool same_structure(const StructurePtr& a, const StructurePtr& b);

// All splittings of w into m+1 consecutive nonempty blocks (the m-fold
// reduced comultiplication on a basis word; coefficient +1 on each).
// Empty result when len(w) < m+1.
std::vector<std::vector<Word>> reduced_diagonal(int m, const Word& w);

// Component family calculus.  `d1` maps arity k to a degree -1 map
// (bar)^k -> bar; `f1` maps arity k to a degree 0 map (bar)^k -> bar'.

// D^m_n applied to a word of length n: sum over positions of
// id^i (x) D1_{n-m+1} (x) id^j with the mechanical sign.
Element coder_apply(const std::map<int, GradedMap>& d1, int m, const Word& w);
Element coder_apply(const std::map<int, GradedMap>& d1, int m,
                    const Element& e);

// F^m_n applied to a word of length n: sum over splittings into m blocks of
// the blockwise images (components have degree 0, so no signs).
Element comorph_apply(const std::map<int, GradedMap>& f1, int m,
                      const Word& w);
Element comorph_apply(const std::map<int, GradedMap>& f1, int m,
                      const Element& e);

// Materialized components, for small spaces and tests.
GradedMap coder_component(const std::map<int, GradedMap>& d1, int m, int n,
                          const SpacePtr& bar);
GradedMap comorph_component(const std::map<int, GradedMap>& f1, int m, int n,
                            const SpacePtr& bar_src, const SpacePtr& bar_tgt);

// sum_k D1_k(D^k_n(w)): the arity-n piece of the squared coderivation.
Element codiff_apply(const std::map<int, GradedMap>& d1, const Word& w);

struct IdentityFailure {
  int arity;
  Word word;
  Element residual;
};
using CheckReport = std::vector<IdentityFailure>;

// Evaluates the squared-coderivation residual on every relevant basis word
// up to max_arity; empty report means the truncated structure identities
// hold.
CheckReport codiff_check(const AInfStructure& s);

// Weak morphism between structures, stored by its shifted degree-0
// components fbar[n] : (bar A)^n -> bar A', n = 1..N.
class WeakMorphism {
 public:
  WeakMorphism(StructurePtr source, StructurePtr target,
               std::map<int, GradedMap> fbar);

  // From unshifted components f_n : A^n -> A' of degree n-1.
  static WeakMorphism from_components(StructurePtr source, StructurePtr target,
                                      const std::map<int, GradedMap>& f);

  const StructurePtr& source() const { return src_; }
  const StructurePtr& target() const { return tgt_; }
  const std::map<int, GradedMap>& fbar() const { return fbar_; }
  const GradedMap* fbar_n(int n) const;

  // Unshifted component f_n of degree n-1 (zero map when absent).
  GradedMap component(int n) const;

 private:
  StructurePtr src_, tgt_;
  std::map<int, GradedMap> fbar_;
};

// Residuals of sum_k D'1_k F^k_n - sum_k F1_k D^k_n for n up to max_arity.
CheckReport dgmorph_check(const WeakMorphism& f);

WeakMorphism identity_morphism(StructurePtr s);

// (G o F)1_n = sum_m G1_m F^m_n.  Requires target(F) = source(G).
WeakMorphism compose_morphisms(const WeakMorphism& g, const WeakMorphism& f);

// Inverse of a component family with invertible linear part, as a family on
// the same spaces: g1_1 = f1_1^{-1}, g1_n = -f1_1^{-1} sum_{m>=2} f1_m G^m_n.
// Throws non_invertible when the linear part has no inverse.
std::map<int, GradedMap> invert_comorphism(const std::map<int, GradedMap>& f1,
                                           int max_arity);

// Weak-morphism wrapper around invert_comorphism; the result maps
// target(F) -> source(F) and satisfies both composition identities up to N.
WeakMorphism invert_weak_iso(const WeakMorphism& f);

}  // namespace ainf
