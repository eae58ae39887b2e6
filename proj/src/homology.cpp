#include "ainf/homology.hpp"

namespace ainf {

namespace {

// Column vectors of `elems` expressed in the index basis `basis`.
Matrix to_matrix(const std::vector<int>& rows_basis,
                 const std::vector<Element>& cols) {
  std::map<int, int> row_of;
  for (size_t i = 0; i < rows_basis.size(); ++i)
    row_of[rows_basis[i]] = static_cast<int>(i);
  Matrix m(static_cast<int>(rows_basis.size()), static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (const auto& [w, x] : cols[c]) m.at(row_of.at(w[0]), int(c)) = x;
  return m;
}

}  // namespace

Homology::Homology(const ChainComplex& c) : c_(c) {
  const GradedSpace& sp = *c.space();
  std::map<int, std::vector<int>> by_degree;
  for (int i = 0; i < sp.dim(); ++i) by_degree[sp.degree(i)].push_back(i);

  for (auto& [deg, basis] : by_degree) {
    DegreeData dd;
    dd.basis = basis;

    // Boundaries: images of d from degree + 1.
    auto above = by_degree.find(deg + 1);
    if (above != by_degree.end()) {
      for (int i : above->second) {
        Element img = c.d().apply(word1(i));
        if (!img.empty()) dd.boundary_gens.push_back(std::move(img));
      }
    }

    // Cycles: kernel of d restricted to this degree.
    std::vector<Element> d_cols;
    std::vector<int> below;
    if (auto it = by_degree.find(deg - 1); it != by_degree.end())
      below = it->second;
    for (int i : basis) d_cols.push_back(c.d().apply(word1(i)));
    std::vector<Element> cycles;
    if (below.empty()) {
      for (int i : basis) cycles.push_back(Element{{word1(i), 1}});
    } else {
      Matrix dm = to_matrix(below, d_cols);
      for (auto& v : kernel_basis(rref(dm))) {
        Element z;
        for (size_t j = 0; j < basis.size(); ++j)
          add_term(z, word1(basis[j]), v[j]);
        cycles.push_back(std::move(z));
      }
    }

    // Representatives: cycles completing the boundaries to a basis of Z.
    // Run elimination over [boundaries | cycles] and keep the cycles whose
    // column carries a pivot.
    {
      std::vector<Element> cols = dd.boundary_gens;
      for (const auto& z : cycles) cols.push_back(z);
      Matrix m = to_matrix(basis, cols);
      Rref r = rref(std::move(m));
      int nb = static_cast<int>(dd.boundary_gens.size());
      for (int col : r.pivot_cols)
        if (col >= nb)
          dd.slice.representatives.push_back(cycles[col - nb]);
      dd.slice.betti = static_cast<int>(dd.slice.representatives.size());
    }

    if (dd.slice.betti > 0) slices_[deg] = dd.slice;
    data_[deg] = std::move(dd);
  }
}

int Homology::betti(int degree) const {
  auto it = slices_.find(degree);
  return it == slices_.end() ? 0 : it->second.betti;
}

int Homology::total_rank() const {
  int t = 0;
  for (const auto& [deg, s] : slices_) t += s.betti;
  return t;
}

std::optional<std::vector<Rational>> Homology::class_coords(
    const Element& z) const {
  if (z.empty()) return std::vector<Rational>{};
  const GradedSpace& sp = *c_.space();
  int deg = sp.degree(z.begin()->first[0]);
  for (const auto& [w, x] : z)
    if (sp.degree(w[0]) != deg) return std::nullopt;
  if (!c_.d().apply(z).empty()) return std::nullopt;  // not a cycle
  auto it = data_.find(deg);
  if (it == data_.end()) return std::nullopt;
  const DegreeData& dd = it->second;

  // Solve [reps | boundaries] x = z; the first block gives the coordinates.
  std::vector<Element> cols = dd.slice.representatives;
  for (const auto& b : dd.boundary_gens) cols.push_back(b);
  Matrix m = to_matrix(dd.basis, cols);
  std::vector<Rational> rhs(dd.basis.size());
  {
    std::map<int, int> row_of;
    for (size_t i = 0; i < dd.basis.size(); ++i)
      row_of[dd.basis[i]] = static_cast<int>(i);
    for (const auto& [w, x] : z) rhs[row_of.at(w[0])] = x;
  }
  auto sol = solve(m, rhs);
  if (!sol) return std::nullopt;
  return std::vector<Rational>(sol->begin(),
                               sol->begin() + dd.slice.representatives.size());
}

std::optional<InducedMap> induced_homology_map(const GradedMap& f1,
                                               const Homology& src,
                                               const Homology& tgt) {
  if (!is_chain_map(f1, src.complex(), tgt.complex())) return std::nullopt;
  InducedMap out;
  out.isomorphism = true;
  std::set<int> degrees;
  for (const auto& [deg, s] : src.slices()) degrees.insert(deg);
  for (const auto& [deg, s] : tgt.slices()) degrees.insert(deg);
  for (int deg : degrees) {
    int ns = src.betti(deg), nt = tgt.betti(deg);
    Matrix m(nt, ns);
    if (ns > 0) {
      const auto& reps = src.slices().at(deg).representatives;
      for (int c = 0; c < ns; ++c) {
        Element img = f1.apply(reps[c]);
        if (img.empty()) continue;  // zero column
        auto coords = tgt.class_coords(img);
        if (!coords) return std::nullopt;
        for (int r = 0; r < nt; ++r) m.at(r, c) = (*coords)[r];
      }
    }
    if (ns != nt || (ns > 0 && !invert(m)))
      out.isomorphism = false;
    out.blocks.emplace(deg, std::move(m));
  }
  return out;
}

}  // namespace ainf
