#pragma once

// Homotopy transfer along two-sided retraction data: kernels summed over
// planar trees, the transferred structure, and the weak-morphism extensions
// of both linear maps.

#include "ainf/bar.hpp"
#include "ainf/complex.hpp"
#include "ainf/tree.hpp"

namespace ainf {

// Sign carried by each internal (homotopy-decorated) edge when trees are
// evaluated at the shifted level.  Exactly one of -1/+1 makes the
// transferred structure satisfy the structure identities; the pinned value
// is enforced by a dedicated self-test.
inline constexpr int kEdgeSign = 1;

// The operator of a single tree: mu_k at each k-ary vertex, h on each
// internal edge, composed at the shifted level with mechanical signs and
// conjugated back.  Result maps A^{(x)n} -> A with degree n-2.
GradedMap tree_operator(const PlanarTree& t, const AInfStructure& s,
                        const HomotopyData& hd, int edge_sign = kEdgeSign);

// Kernels at the shifted level, indexed by arity 2..max_arity: the signed
// sum over all trees, computed by the root-splitting recursion (no explicit
// tree enumeration).
std::map<int, GradedMap> p_kernels_bar(const AInfStructure& s,
                                       const HomotopyData& hd,
                                       int edge_sign = kEdgeSign);

// Unshifted kernel p_n : A^{(x)n} -> A of degree n-2.
GradedMap p_kernel(int n, const AInfStructure& s, const HomotopyData& hd,
                   int edge_sign = kEdgeSign);

// Transferred structure on the retract: nu_n = f1 . p_n . g1^{(x)n}.
StructurePtr transfer_structure(const StructurePtr& s, const HomotopyData& hd,
                                int edge_sign = kEdgeSign);

// Extension of g1 to a weak morphism (A', nu) -> (A, mu): the n-th shifted
// component is edge_sign * h^ . p^_n . g1^^{(x)n}.  The result is validated
// against the morphism identities; failure throws dgmorph_check_failed.
WeakMorphism extend_g(const StructurePtr& s, const HomotopyData& hd,
                      const StructurePtr& nu, int edge_sign = kEdgeSign);

// Extension of f1 to a weak morphism (A, mu) -> (A', nu), built
// arity-by-arity by solving the morphism identity for the top component.
// Throws obstruction_unsolvable if a stage has no solution (impossible when
// nu genuinely is the transferred structure).
WeakMorphism extend_f(const StructurePtr& s, const HomotopyData& hd,
                      const StructurePtr& nu);

// nu_n := iota . mu_n . pi^{(x)n} for a strict left inverse pi of iota; the
// result restricts to mu on the subcomplex.
StructurePtr transfer_over_inclusion(const StructurePtr& s,
                                     const ChainComplex& big,
                                     const GradedMap& iota,
                                     const GradedMap& pi);

// Retraction of a complex onto its homology (zero differential), with exact
// side conditions f1 g1 = id and l = 0.
struct Retraction {
  ChainComplex homology;
  HomotopyData data;  // source: the input complex, target: homology
};
Retraction retract_to_homology(const ChainComplex& c);

}  // namespace ainf
