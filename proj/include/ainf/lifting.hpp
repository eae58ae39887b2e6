#pragma once

// Cylinder objects and the lifting machinery: the algebraic interval, tensor
// product of a structure with a dg algebra, lifting a morphism along a chain
// homotopy of its linear part, isotopy construction, and quasi-inverses.

#include "ainf/bar.hpp"
#include "ainf/obstruction.hpp"

namespace ainf {

// A unital dg associative algebra J together with two augmentations and a
// unit section, as needed to model the interval.
struct IntervalModel {
  SpacePtr space;
  SpacePtr ground;  // one-dimensional degree-0 coefficient model
  GradedMap d;      // degree -1 differential on J
  GradedMap cup;    // associative product J (x) J -> J, degree 0
  Element unit;
  GradedMap eps0, eps1;  // J -> ground, dg algebra maps
  GradedMap junit;       // ground -> J, 1 -> unit
};

// Normalized cochains of the 1-simplex: phi0, phi1 in degree 0, phiI in
// degree -1, with the front/back-face cup table frozen as constants.
IntervalModel interval_NI();

// J = the ground field itself; tensoring with it changes nothing.
IntervalModel trivial_interval();

// The structure on A' (x) J with d (x) id + id (x) d_J and
// mu_k (x) (k-fold cup), Koszul signs mechanical, plus the strict morphisms
// induced by the augmentations and the unit section.
struct Cylinder {
  IntervalModel model;
  StructurePtr base;       // the input structure
  StructurePtr structure;  // on base (x) J
  std::vector<std::pair<int, int>> pairs;  // cylinder letter -> (base, J)
  std::map<std::pair<int, int>, int> index;
  GradedMap e0_lin, e1_lin, j_lin;  // unshifted chain maps
  WeakMorphism e0, e1, j;           // strict: e_i out of, j into, the cylinder
};
Cylinder tensor_with_dga(const StructurePtr& s, const IntervalModel& j);

// For chain maps f, g : V -> W with g - f = d h + h d, the chain map
//   v |-> f(v) (x) phi0 + g(v) (x) phi1 + (-1)^{deg v} h(v) (x) phiI
// into the cylinder over W; composing with the augmentations recovers f and
// g.  Throws homotopy_identity_fails when the homotopy identity is violated.
GradedMap homotopy_to_cylinder(const GradedMap& f, const GradedMap& g,
                               const GradedMap& h, const ChainComplex& v,
                               const Cylinder& cyl);

// Degree +1 contraction on the cylinder space: a (x) phiI |->
// (-1)^{deg a} a (x) phi1, zero on the other components.  Together with
// j . e0 it contracts the cylinder onto its base.
GradedMap cylinder_contraction(const Cylinder& cyl);

// Given a morphism Theta and a chain map psi homotopic to its linear part
// (psi - theta_1 = d' h + h d), produces a morphism with linear part psi by
// the cylinder induction.  Throws kernel_solve_failed if a stage's linear
// system is unsolvable (a bug signal: the relevant kernel is acyclic).
WeakMorphism lift_homotopic_chain_map(const WeakMorphism& theta,
                                      const GradedMap& psi, const GradedMap& h);

// Isotopy with identity linear part from the transfer of s along hd to the
// target of F, for any morphism F out of s extending hd's projection.
WeakMorphism construct_isotopy(const StructurePtr& s, const HomotopyData& hd,
                               const WeakMorphism& f);

// phi . f for an isotopy phi: the composite extends the linear part of f.
WeakMorphism converse_isotopy_to_extension(const WeakMorphism& phi,
                                           const WeakMorphism& f);

// Conjugated structure phi^{-1} . mu_n . phi^{(x)n} on the same complex;
// phi must be an invertible chain-map endomorphism.
StructurePtr twist_structure(const StructurePtr& s, const GradedMap& phi);

// Morphism with the single component f1 (validated for degree only; run
// dgmorph_check for the full identity).
WeakMorphism strict_morphism(const StructurePtr& src, const StructurePtr& tgt,
                             const GradedMap& f1);

// Variant of construct_isotopy for a morphism F extending phi1 . f1: twists
// the target structure by phi1^{-1} and lifts there.  The returned morphism
// lands in the twisted structure; composing with strict phi1 returns to the
// original target.
WeakMorphism weak_iso_variant(const StructurePtr& s, const HomotopyData& hd,
                              const GradedMap& phi1, const WeakMorphism& f);

// Weak morphism in the opposite direction inducing the inverse isomorphism
// on homology: both sides are retracted onto their homology, the retracted
// morphism is inverted there, and the result is conjugated back.
WeakMorphism quasi_inverse(const WeakMorphism& alpha);

}  // namespace ainf
