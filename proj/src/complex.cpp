#include "ainf/complex.hpp"

namespace ainf {

ChainComplex::ChainComplex(SpacePtr space, GradedMap d)
    : space_(std::move(space)), d_(std::move(d)) {
  if (!same_space(d_.source(), space_) || !same_space(d_.target(), space_) ||
      d_.src_arity() != 1 || d_.tgt_arity() != 1)
    throw space_mismatch("differential must be an endomorphism of " +
                         space_->name());
  if (d_.degree() != -1)
    throw degree_error("differential must have degree -1, got " +
                       std::to_string(d_.degree()));
  for (const auto& [w, e] : d_.entries()) {
    if (!d_.apply(e).empty())
      throw invariant_error("d^2 != 0 on " + space_->name() + " at basis " +
                            space_->word_label(w));
  }
}

ChainComplex zero_complex(SpacePtr space) {
  GradedMap d(space, 1, space, 1, -1, "0");
  return ChainComplex(std::move(space), std::move(d));
}

ChainComplex suspend(const ChainComplex& c) {
  SpacePtr up = suspend_space(c.space());
  return ChainComplex(up, to_bar(c.d(), up, up));
}

bool is_chain_map(const GradedMap& f, const ChainComplex& src,
                  const ChainComplex& tgt) {
  if (!same_space(f.source(), src.space()) ||
      !same_space(f.target(), tgt.space()))
    return false;
  // f d = (-1)^{deg f} d f on every basis element (for deg f even: f d = d f;
  // a chain map of odd degree anticommutes).  The engine only calls this for
  // degree-0 maps; use the plain commutation.
  for (int i = 0; i < src.space()->dim(); ++i) {
    Word w = word1(i);
    Element lhs = f.apply(src.d().apply(w));
    Element rhs = tgt.d().apply(f.apply(w));
    if (lhs != rhs) return false;
  }
  return true;
}

bool is_chain_homotopy(const GradedMap& h, const GradedMap& f,
                       const GradedMap& g, const ChainComplex& src,
                       const ChainComplex& tgt) {
  for (int i = 0; i < src.space()->dim(); ++i) {
    Word w = word1(i);
    Element lhs = g.apply(w);
    add_scaled(lhs, f.apply(w), Rational(-1));
    Element rhs = tgt.d().apply(h.apply(w));
    add_scaled(rhs, h.apply(src.d().apply(w)), 1);
    if (lhs != rhs) return false;
  }
  return true;
}

HomotopyData::HomotopyData(ChainComplex a, ChainComplex b, GradedMap f1,
                           GradedMap g1, GradedMap h, GradedMap l)
    : a_(std::move(a)),
      b_(std::move(b)),
      f1_(std::move(f1)),
      g1_(std::move(g1)),
      h_(std::move(h)),
      l_(std::move(l)) {
  if (f1_.degree() != 0 || g1_.degree() != 0)
    throw degree_error("f1, g1 must have degree 0");
  if (h_.degree() != 1 || l_.degree() != 1)
    throw degree_error("h, l must have degree +1");
  if (!is_chain_map(f1_, a_, b_))
    throw invariant_error("f1 is not a chain map");
  if (!is_chain_map(g1_, b_, a_))
    throw invariant_error("g1 is not a chain map");
  GradedMap g1f1 = compose(g1_, f1_);
  if (!is_chain_homotopy(h_, identity_map(a_.space()), g1f1, a_, a_))
    throw invariant_error("g1 f1 - id != d h + h d");
  GradedMap f1g1 = compose(f1_, g1_);
  if (!is_chain_homotopy(l_, identity_map(b_.space()), f1g1, b_, b_))
    throw invariant_error("f1 g1 - id != d' l + l d'");
}

GradedMap hom_differential(const GradedMap& phi, const ChainComplex& a,
                           const ChainComplex& b) {
  if (!same_space(phi.source(), a.space()) ||
      !same_space(phi.target(), b.space()) || phi.tgt_arity() != 1)
    throw space_mismatch("hom_differential: phi must map " +
                         a.space()->name() + "^n -> " + b.space()->name());
  int n = phi.src_arity();
  GradedMap out(a.space(), n, b.space(), 1, phi.degree() - 1);
  Rational sgn((phi.degree() % 2 == 0) ? -1 : 1);  // -(-1)^{deg phi}
  auto [flo, fhi] = out.feasible_src_degrees();
  a.space()->for_each_word(n, flo, fhi, [&](const Word& w) {
    Element val = b.d().apply(phi.apply(w));
    add_scaled(val, phi.apply(leibniz_apply(a.d(), w)), sgn);
    if (!val.empty()) out.add(w, val);
  });
  return out;
}

}  // namespace ainf
