#pragma once

// Obstruction calculus on the truncated hom module between the shifted
// tensor coalgebras of two structures: the differential, the higher
// brackets, curvature, obstruction cocycles, and homology obstruction
// classes for extending a chain map to a weak morphism.

#include <climits>
#include <optional>

#include "ainf/bar.hpp"
#include "ainf/homology.hpp"

namespace ainf {

// Homogeneous element of Hom(C(A), ^A') truncated at the source truncation:
// components comp[n] : (bar A)^n -> bar A' of the common degree.
struct HomElement {
  StructurePtr src, tgt;
  int degree = 0;
  std::map<int, GradedMap> comp;

  // min arity with a nonzero component; INT_MAX for zero.
  int filtration() const;
  const GradedMap* comp_n(int n) const;
  bool is_zero() const { return filtration() == INT_MAX; }
};

HomElement zero_hom(StructurePtr src, StructurePtr tgt, int degree);
HomElement hom_of(const WeakMorphism& f);  // degree-0 element of a morphism

HomElement hom_add(const HomElement& a, const HomElement& b);
HomElement hom_scale(HomElement a, const Rational& c);
bool hom_equal(const HomElement& a, const HomElement& b);

// del F = d'1_1 . F - (-1)^{deg F} F . delta, componentwise; degree -1.
HomElement del(const HomElement& f);

// Q1_n(F(1) x ... x F(n)) = d'1_n . (F(1) (x) ... (x) F(n)) . diagonal,
// with mechanical signs; n >= 2 (n = 1 is del).
HomElement q_n(int n, const std::vector<const HomElement*>& args);

// R(F) = del F + sum_{n>=2} Q1_n(F,...,F) for degree-0 F; zero up to the
// truncation iff F is a morphism.
HomElement curvature(const HomElement& f);

// del R(F) + sum_{n>=2} sum over positions of Q1_n(F,...,R(F),...,F);
// identically zero.
HomElement bianchi_residual(const HomElement& f);

// The quotient differential on a lone arity-m component:
//   d'1_1 . x - (-1)^{deg x} x . D^m_m.
GradedMap del_bar(const GradedMap& x, const StructurePtr& src,
                  const StructurePtr& tgt, int m);

// c_m(F) = sum_{k=2}^{m} d'1_k F^k_m - sum_{k=1}^{m-1} F1_k delta^k_m for a
// degree-0 F valid to arity m-1 (validated; throws partial_morphism_invalid).
GradedMap obstruction_cocycle(int m, const HomElement& f);

// Solves del_bar(X) = -target for a degree-0 arity-m component; nullopt iff
// the class of target is nonzero.
std::optional<GradedMap> solve_extension(int m, const HomElement& f,
                                         const GradedMap& target);

// Materialized model of the complex Hom(A^{(x)n}, A') with the induced
// differential, as a synthetic based complex; used to reduce obstruction
// cocycles to homology classes.
struct HomComplexModel {
  int arity = 1;
  SpacePtr space;  // one basis letter per (source word, target letter) pair
  std::vector<std::pair<Word, int>> pairs;
  std::map<std::pair<Word, int>, int> index;
  std::optional<ChainComplex> complex;

  Element to_element(const GradedMap& phi) const;
  GradedMap to_map(const Element& e, int degree, const SpacePtr& a,
                   const SpacePtr& b) const;
};
HomComplexModel hom_complex(const ChainComplex& a, int n,
                            const ChainComplex& b);

struct ObstructionClass {
  int arity = 0;
  GradedMap cocycle;                  // unshifted, A^{(x)n} -> A', deg n-2
  std::vector<Rational> class_coords; // in the chosen homology basis
  bool vanishes = false;
  GradedMap preimage;                 // unshifted chosen component if it does
};

// Runs the extension induction for a chain map f1 : A -> A', reporting the
// obstruction class at each arity up to `up_to`; stops after the first
// nonvanishing class.
std::vector<ObstructionClass> obstruction_classes(const StructurePtr& s,
                                                  const StructurePtr& sp,
                                                  const GradedMap& f1,
                                                  int up_to);

}  // namespace ainf
