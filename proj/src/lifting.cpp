#include "ainf/lifting.hpp"

#include <string>

#include "ainf/homology.hpp"
#include "ainf/solve.hpp"
#include "ainf/transfer.hpp"

namespace ainf {

IntervalModel interval_NI() {
  auto sp = std::make_shared<GradedSpace>(
      "N(I)", std::vector<std::pair<std::string, int>>{
                  {"phi0", 0}, {"phi1", 0}, {"phiI", -1}});
  auto ground = std::make_shared<GradedSpace>(
      "R", std::vector<std::pair<std::string, int>>{{"1", 0}});

  GradedMap d(sp, 1, sp, 1, -1, "dN");
  d.add(word1(0), word1(2), 1);
  d.add(word1(1), word1(2), -1);

  GradedMap cup(sp, 2, sp, 1, 0, "cup");
  auto pair_word = [](int a, int b) {
    Word w;
    w.push_back(static_cast<char16_t>(a));
    w.push_back(static_cast<char16_t>(b));
    return w;
  };
  cup.add(pair_word(0, 0), word1(0), 1);
  cup.add(pair_word(1, 1), word1(1), 1);
  cup.add(pair_word(0, 2), word1(2), 1);
  cup.add(pair_word(2, 1), word1(2), 1);

  Element unit;
  add_term(unit, word1(0), 1);
  add_term(unit, word1(1), 1);

  GradedMap eps0(sp, 1, ground, 1, 0, "eps0");
  eps0.add(word1(0), word1(0), 1);
  GradedMap eps1(sp, 1, ground, 1, 0, "eps1");
  eps1.add(word1(1), word1(0), 1);
  GradedMap junit(ground, 1, sp, 1, 0, "junit");
  junit.add(word1(0), unit, 1);

  return IntervalModel{sp,   ground, std::move(d),    std::move(cup), unit,
                       std::move(eps0), std::move(eps1), std::move(junit)};
}

IntervalModel trivial_interval() {
  auto ground = std::make_shared<GradedSpace>(
      "R", std::vector<std::pair<std::string, int>>{{"1", 0}});
  GradedMap d(ground, 1, ground, 1, -1, "d");
  GradedMap cup(ground, 2, ground, 1, 0, "cup");
  Word w11;
  w11.push_back(0);
  w11.push_back(0);
  cup.add(w11, word1(0), 1);
  Element unit;
  add_term(unit, word1(0), 1);
  GradedMap id = identity_map(ground);
  return IntervalModel{ground, ground, std::move(d), std::move(cup),
                       unit,   id,     id,           id};
}

Cylinder tensor_with_dga(const StructurePtr& s, const IntervalModel& jm) {
  const GradedSpace& asp = *s->space();
  const GradedSpace& jsp = *jm.space;

  std::vector<std::pair<std::string, int>> basis;
  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, int> index;
  for (int a = 0; a < asp.dim(); ++a)
    for (int b = 0; b < jsp.dim(); ++b) {
      index.emplace(std::make_pair(a, b), static_cast<int>(basis.size()));
      pairs.emplace_back(a, b);
      basis.emplace_back(asp.label(a) + "*" + jsp.label(b),
                         asp.degree(a) + jsp.degree(b));
    }
  auto csp = std::make_shared<GradedSpace>(asp.name() + "(x)" + jsp.name(),
                                           std::move(basis));

  // d (x) id + id (x) d_J, with the sign of moving d past the first factor.
  GradedMap dcyl(csp, 1, csp, 1, -1, "d");
  for (int i = 0; i < csp->dim(); ++i) {
    auto [a, b] = pairs[static_cast<size_t>(i)];
    Element out;
    for (const auto& [y, c] : s->complex().d().apply(word1(a)))
      add_term(out, word1(index.at({y[0], b})), c);
    Rational sa(asp.degree(a) % 2 ? -1 : 1);
    for (const auto& [u, c] : jm.d.apply(word1(b)))
      add_term(out, word1(index.at({a, u[0]})), sa * c);
    if (!out.empty()) dcyl.add(word1(i), out, 1);
  }
  ChainComplex ccplx(csp, std::move(dcyl));

  // mu_k (x) (k-fold cup): sign of moving each J-letter past the later
  // base letters.
  std::map<int, GradedMap> mu;
  for (const auto& [k, muk] : s->mu()) {
    GradedMap mk(csp, k, csp, 1, k - 2);
    auto [lo, hi] = mk.feasible_src_degrees();
    csp->for_each_word(k, lo, hi, [&](const Word& w) {
      Word xw;
      int sgn = 0, jdeg_seen = 0;
      for (int i = 0; i < k; ++i) {
        auto [a, b] = pairs[static_cast<size_t>(w[static_cast<size_t>(i)])];
        sgn += jdeg_seen * asp.degree(a);
        jdeg_seen += jsp.degree(b);
        xw.push_back(static_cast<char16_t>(a));
      }
      Element mx = muk.apply(xw);
      if (mx.empty()) return;
      Element cb;
      add_term(cb, word1(pairs[static_cast<size_t>(w[0])].second), 1);
      for (int i = 1; i < k; ++i) {
        int b = pairs[static_cast<size_t>(w[static_cast<size_t>(i)])].second;
        Element next;
        for (const auto& [u, c] : cb) {
          Word uw;
          uw.push_back(u[0]);
          uw.push_back(static_cast<char16_t>(b));
          add_scaled(next, jm.cup.apply(uw), c);
        }
        cb = std::move(next);
      }
      if (cb.empty()) return;
      Element out;
      for (const auto& [y, cy] : mx)
        for (const auto& [u, cu] : cb)
          add_term(out, word1(index.at({y[0], u[0]})), cy * cu);
      if (!out.empty()) mk.add(w, out, Rational(sgn % 2 ? -1 : 1));
    });
    if (!mk.is_zero_map()) mu.emplace(k, std::move(mk));
  }
  auto cylS = std::make_shared<AInfStructure>(std::move(ccplx), std::move(mu),
                                              s->max_arity());

  GradedMap e0(csp, 1, s->space(), 1, 0, "e0");
  GradedMap e1(csp, 1, s->space(), 1, 0, "e1");
  for (int i = 0; i < csp->dim(); ++i) {
    auto [a, b] = pairs[static_cast<size_t>(i)];
    for (const auto& [one, c] : jm.eps0.apply(word1(b)))
      e0.add(word1(i), word1(a), c);
    for (const auto& [one, c] : jm.eps1.apply(word1(b)))
      e1.add(word1(i), word1(a), c);
  }
  GradedMap jl(s->space(), 1, csp, 1, 0, "j");
  for (int a = 0; a < asp.dim(); ++a) {
    Element out;
    for (const auto& [u, c] : jm.unit)
      add_term(out, word1(index.at({a, u[0]})), c);
    jl.add(word1(a), out, 1);
  }

  const SpacePtr& barc = cylS->bar_space();
  const SpacePtr& bara = s->bar_space();
  WeakMorphism e0m(cylS, s,
                   std::map<int, GradedMap>{{1, to_bar(e0, barc, bara)}});
  WeakMorphism e1m(cylS, s,
                   std::map<int, GradedMap>{{1, to_bar(e1, barc, bara)}});
  WeakMorphism jmorph(s, cylS,
                      std::map<int, GradedMap>{{1, to_bar(jl, bara, barc)}});
  return Cylinder{jm,
                  s,
                  std::move(cylS),
                  std::move(pairs),
                  std::move(index),
                  std::move(e0),
                  std::move(e1),
                  std::move(jl),
                  std::move(e0m),
                  std::move(e1m),
                  std::move(jmorph)};
}

GradedMap homotopy_to_cylinder(const GradedMap& f, const GradedMap& g,
                               const GradedMap& h, const ChainComplex& v,
                               const Cylinder& cyl) {
  const ChainComplex& w = cyl.base->complex();
  if (!is_chain_map(f, v, w) || !is_chain_map(g, v, w))
    throw invariant_error("cylinder lift needs chain maps at the endpoints");
  if (!is_chain_homotopy(h, f, g, v, w))
    throw homotopy_identity_fails("g - f = d h + h d does not hold");
  int i0 = cyl.model.space->index_of("phi0");
  int i1 = cyl.model.space->index_of("phi1");
  int iI = cyl.model.space->index_of("phiI");
  if (i0 < 0 || i1 < 0 || iI < 0)
    throw space_mismatch("cylinder was not built over the interval model");

  const SpacePtr& vsp = v.space();
  GradedMap ht(vsp, 1, cyl.structure->space(), 1, 0, "htilde");
  for (int x = 0; x < vsp->dim(); ++x) {
    Element out;
    for (const auto& [y, c] : f.apply(word1(x)))
      add_term(out, word1(cyl.index.at({y[0], i0})), c);
    for (const auto& [y, c] : g.apply(word1(x)))
      add_term(out, word1(cyl.index.at({y[0], i1})), c);
    Rational sx(vsp->degree(x) % 2 ? -1 : 1);
    for (const auto& [y, c] : h.apply(word1(x)))
      add_term(out, word1(cyl.index.at({y[0], iI})), sx * c);
    if (!out.empty()) ht.add(word1(x), out, 1);
  }
  return ht;
}

GradedMap cylinder_contraction(const Cylinder& cyl) {
  int i1 = cyl.model.space->index_of("phi1");
  int iI = cyl.model.space->index_of("phiI");
  if (i1 < 0 || iI < 0)
    throw space_mismatch("contraction needs the interval model");
  const SpacePtr& csp = cyl.structure->space();
  const GradedSpace& asp = *cyl.base->space();
  GradedMap lam(csp, 1, csp, 1, 1, "lambda");
  for (int i = 0; i < csp->dim(); ++i) {
    auto [a, b] = cyl.pairs[static_cast<size_t>(i)];
    if (b != iI) continue;
    lam.add(word1(i), word1(cyl.index.at({a, i1})),
            Rational(asp.degree(a) % 2 ? -1 : 1));
  }
  return lam;
}

WeakMorphism lift_homotopic_chain_map(const WeakMorphism& theta,
                                      const GradedMap& psi,
                                      const GradedMap& h) {
  const StructurePtr& src = theta.source();
  const StructurePtr& tgt = theta.target();
  if (!dgmorph_check(theta).empty())
    throw invariant_error("lift input fails the morphism identities");
  GradedMap theta1 = theta.component(1);

  Cylinder cyl = tensor_with_dga(tgt, interval_NI());
  GradedMap ht =
      homotopy_to_cylinder(theta1, psi, h, src->complex(), cyl);

  const SpacePtr& bar = src->bar_space();
  const SpacePtr& barc = cyl.structure->bar_space();
  GradedMap lam_bar = to_bar(cylinder_contraction(cyl), barc, barc);
  const GradedMap& jbar = *cyl.j.fbar_n(1);
  const GradedMap& e0bar = *cyl.e0.fbar_n(1);

  // The augmentation kernel: letters with no phi0 part.  Solutions are
  // sought as maps into this subspace.
  std::vector<std::pair<std::string, int>> kbasis;
  std::vector<int> korig;
  for (int i = 0; i < cyl.structure->space()->dim(); ++i)
    if (cyl.e0_lin.apply(word1(i)).empty()) {
      kbasis.emplace_back(cyl.structure->space()->label(i),
                          cyl.structure->space()->degree(i));
      korig.push_back(i);
    }
  auto ksp = std::make_shared<GradedSpace>("kerE0", std::move(kbasis));
  GradedMap incl(ksp, 1, cyl.structure->space(), 1, 0, "incl");
  for (size_t t = 0; t < korig.size(); ++t)
    incl.add(word1(static_cast<int>(t)), word1(korig[t]), 1);
  SpacePtr bark = suspend_space(ksp);
  GradedMap incl_bar = to_bar(incl, bark, barc);

  const GradedMap& dc1 = cyl.structure->d1().at(1);
  const auto& d1 = src->d1();

  HomElement bigH = zero_hom(src, cyl.structure, 0);
  bigH.comp.emplace(1, to_bar(ht, bar, barc));

  for (int m = 2; m <= src->max_arity(); ++m) {
    GradedMap c = obstruction_cocycle(m, bigH);
    GradedMap k = compose(lam_bar, c);
    GradedMap rhs = del_bar(k, src, cyl.structure, m);

    std::map<Word, std::vector<std::pair<Word, Rational>>> transpose;
    int lo = barc->min_letter_degree() + 1;
    int hi = barc->max_letter_degree() + 1;
    bar->for_each_word(m, lo, hi, [&](const Word& w) {
      for (const auto& [v, cf] : coder_apply(d1, m, w))
        transpose[v].emplace_back(w, cf);
    });
    MapShape shape{bar, m, bark, 1, 0};
    LinOp op = [&](const GradedMap& e) {
      GradedMap out(bar, m, barc, 1, -1);
      for (const auto& [vin, elem] : e.entries()) {
        Element img = dc1.apply(incl_bar.apply(elem));
        if (!img.empty()) out.add(vin, img);
        auto it = transpose.find(vin);
        if (it != transpose.end())
          for (const auto& [w, cf] : it->second)
            out.add(w, incl_bar.apply(elem), -cf);
      }
      return out;
    };
    auto sol = solve_map_equation(shape, op, rhs);
    if (!sol)
      throw kernel_solve_failed("cylinder stage " + std::to_string(m) +
                                " has no solution in the kernel");
    GradedMap ktilde = compose(incl_bar, *sol);

    GradedMap hm(bar, m, barc, 1, 0);
    const GradedMap* thm = theta.fbar_n(m);
    if (thm) hm += compose(jbar, *thm);
    hm += ktilde;

    // Shadow invariant: projecting the new component to the base recovers
    // the input morphism's component.
    GradedMap shadow = compose(e0bar, hm);
    if (thm ? !map_equal(shadow, *thm) : !shadow.is_zero_map())
      throw kernel_solve_failed("cylinder stage lost the base shadow");
    if (!hm.is_zero_map()) bigH.comp.emplace(m, std::move(hm));
  }

  WeakMorphism bigHm(src, cyl.structure, std::move(bigH.comp));
  WeakMorphism out = compose_morphisms(cyl.e1, bigHm);
  if (!dgmorph_check(out).empty())
    throw dgmorph_check_failed("lifted morphism fails the identities");
  if (!map_equal(out.component(1), psi))
    throw invariant_error("lift has the wrong linear part");
  return out;
}

WeakMorphism construct_isotopy(const StructurePtr& s, const HomotopyData& hd,
                               const WeakMorphism& f) {
  if (!same_structure(f.source(), s))
    throw space_mismatch("morphism does not start at the given structure");
  if (!map_equal(f.component(1), hd.f1()))
    throw invariant_error("morphism does not extend the projection");

  StructurePtr nu = transfer_structure(s, hd);
  WeakMorphism g = extend_g(s, hd, nu);
  WeakMorphism theta = compose_morphisms(f, g);

  // id - f1 g1 = d'(-l) + (-l) d'.
  GradedMap minus_l = hd.l();
  minus_l *= Rational(-1);
  GradedMap id = identity_map(hd.target().space());
  return lift_homotopic_chain_map(theta, id, minus_l);
}

WeakMorphism converse_isotopy_to_extension(const WeakMorphism& phi,
                                           const WeakMorphism& f) {
  if (!map_equal(phi.component(1), identity_map(phi.source()->space())))
    throw invariant_error("isotopy must have identity linear part");
  return compose_morphisms(phi, f);
}

StructurePtr twist_structure(const StructurePtr& s, const GradedMap& phi) {
  if (!same_space(phi.source(), s->space()) ||
      !same_space(phi.target(), s->space()) || phi.degree() != 0)
    throw space_mismatch("twist needs a degree-0 endomorphism");
  auto inv = invert_graded_map(phi);
  if (!inv) throw non_invertible("twisting map is not invertible");
  if (!is_chain_map(phi, s->complex(), s->complex()))
    throw invariant_error("twisting map must be a chain map");

  std::map<int, GradedMap> mu;
  for (const auto& [n, mun] : s->mu()) {
    std::vector<const GradedMap*> factors(static_cast<size_t>(n), &phi);
    GradedMap m = compose(*inv, compose(mun, tensor_maps(factors)));
    if (!m.is_zero_map()) mu.emplace(n, std::move(m));
  }
  return std::make_shared<AInfStructure>(s->complex(), std::move(mu),
                                         s->max_arity());
}

WeakMorphism strict_morphism(const StructurePtr& src, const StructurePtr& tgt,
                             const GradedMap& f1) {
  GradedMap fb = to_bar(f1, src->bar_space(), tgt->bar_space());
  std::map<int, GradedMap> fbar;
  if (!fb.is_zero_map()) fbar.emplace(1, std::move(fb));
  return WeakMorphism(src, tgt, std::move(fbar));
}

WeakMorphism weak_iso_variant(const StructurePtr& s, const HomotopyData& hd,
                              const GradedMap& phi1, const WeakMorphism& f) {
  auto inv = invert_graded_map(phi1);
  if (!inv) throw non_invertible("linear twist is not invertible");
  StructurePtr twisted = twist_structure(f.target(), phi1);
  WeakMorphism untwist = strict_morphism(f.target(), twisted, *inv);
  WeakMorphism f2 = compose_morphisms(untwist, f);
  return construct_isotopy(s, hd, f2);
}

WeakMorphism quasi_inverse(const WeakMorphism& alpha) {
  const StructurePtr& src = alpha.source();
  const StructurePtr& tgt = alpha.target();
  GradedMap a1 = alpha.component(1);
  Homology hs(src->complex());
  Homology ht(tgt->complex());
  auto ind = induced_homology_map(a1, hs, ht);
  if (!ind || !ind->isomorphism)
    throw not_quasi_iso("linear part does not invert homology");

  Retraction rs = retract_to_homology(src->complex());
  Retraction rt = retract_to_homology(tgt->complex());
  StructurePtr so = transfer_structure(src, rs.data);
  StructurePtr to = transfer_structure(tgt, rt.data);
  WeakMorphism q = extend_g(src, rs.data, so);
  WeakMorphism pp = extend_f(tgt, rt.data, to);

  WeakMorphism alpha_o =
      compose_morphisms(pp, compose_morphisms(alpha, q));
  WeakMorphism alpha_o_inv = invert_weak_iso(alpha_o);
  WeakMorphism beta =
      compose_morphisms(q, compose_morphisms(alpha_o_inv, pp));
  if (!dgmorph_check(beta).empty())
    throw dgmorph_check_failed("quasi-inverse fails the identities");
  return beta;
}

}  // namespace ainf
