#pragma once

#include "ainf/graded.hpp"

namespace ainf {

// (A, d) with d of degree -1 and d . d = 0, validated on construction.
class ChainComplex {
 public:
  ChainComplex(SpacePtr space, GradedMap d);

  const SpacePtr& space() const { return space_; }
  const GradedMap& d() const { return d_; }

 private:
  SpacePtr space_;
  GradedMap d_;
};

// Zero differential on a space.
ChainComplex zero_complex(SpacePtr space);

// Degree-shifted complex with the conjugated differential ^ . d . v.
ChainComplex suspend(const ChainComplex& c);

bool is_chain_map(const GradedMap& f, const ChainComplex& src,
                  const ChainComplex& tgt);

// Two-sided chain homotopy equivalence data between (A,d) and (A',d'):
//   f1, g1 chain maps, g1 f1 - id_A = d h + h d, f1 g1 - id_A' = d' l + l d'.
// All four identities are validated on construction.
class HomotopyData {
 public:
  HomotopyData(ChainComplex a, ChainComplex b, GradedMap f1, GradedMap g1,
               GradedMap h, GradedMap l);

  const ChainComplex& source() const { return a_; }
  const ChainComplex& target() const { return b_; }
  const GradedMap& f1() const { return f1_; }
  const GradedMap& g1() const { return g1_; }
  const GradedMap& h() const { return h_; }
  const GradedMap& l() const { return l_; }

 private:
  ChainComplex a_, b_;
  GradedMap f1_, g1_, h_, l_;
};

// Checks g - f = d_tgt h + h d_src exactly.
bool is_chain_homotopy(const GradedMap& h, const GradedMap& f,
                       const GradedMap& g, const ChainComplex& src,
                       const ChainComplex& tgt);

// Hom-complex differential on maps phi : A^{(x)n} -> B:
//   del phi = d_B . phi - (-1)^{deg phi} phi . d_{A^{(x)n}},
// where d_{A^{(x)n}} is the Koszul-signed Leibniz extension of d_A.
GradedMap hom_differential(const GradedMap& phi, const ChainComplex& a,
                           const ChainComplex& b);

}  // namespace ainf
