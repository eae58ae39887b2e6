#include "ainf/solve.hpp"

#include <map>
#include <numeric>

namespace ainf {

std::optional<Element> solve_linear(const GradedMap& L, const Element& b) {
  if (b.empty()) return Element{};
  int bdeg = L.target()->word_degree(b.begin()->first);
  for (const auto& [w, c] : b)
    if (L.target()->word_degree(w) != bdeg) return std::nullopt;

  std::vector<Word> domain;
  L.source()->for_each_word(L.src_arity(), bdeg - L.degree(), bdeg - L.degree(),
                            [&](const Word& w) { domain.push_back(w); });
  std::map<Word, int> row_of;
  std::vector<Element> cols;
  for (const Word& w : domain) {
    Element img = L.apply(w);
    for (const auto& [v, c] : img)
      row_of.emplace(v, static_cast<int>(row_of.size()));
    cols.push_back(std::move(img));
  }
  for (const auto& [v, c] : b) row_of.emplace(v, static_cast<int>(row_of.size()));

  Matrix m(static_cast<int>(row_of.size()), static_cast<int>(domain.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (const auto& [v, x] : cols[c]) m.at(row_of.at(v), int(c)) = x;
  std::vector<Rational> rhs(row_of.size());
  for (const auto& [v, x] : b) rhs[row_of.at(v)] = x;

  auto sol = solve(m, rhs);
  if (!sol) return std::nullopt;
  Element x;
  for (size_t i = 0; i < domain.size(); ++i) add_term(x, domain[i], (*sol)[i]);
  return x;
}

std::optional<GradedMap> invert_graded_map(const GradedMap& f) {
  if (f.degree() != 0 || f.src_arity() != 1 || f.tgt_arity() != 1)
    return std::nullopt;
  const GradedSpace& src = *f.source();
  const GradedSpace& tgt = *f.target();
  std::map<int, std::vector<int>> sdeg, tdeg;
  for (int i = 0; i < src.dim(); ++i) sdeg[src.degree(i)].push_back(i);
  for (int i = 0; i < tgt.dim(); ++i) tdeg[tgt.degree(i)].push_back(i);
  if (sdeg.size() != tdeg.size()) return std::nullopt;

  GradedMap inv(f.target(), 1, f.source(), 1, 0,
                f.name().empty() ? "" : f.name() + "^-1");
  for (const auto& [deg, sbasis] : sdeg) {
    auto it = tdeg.find(deg);
    if (it == tdeg.end() || it->second.size() != sbasis.size())
      return std::nullopt;
    const auto& tbasis = it->second;
    Matrix m(static_cast<int>(tbasis.size()), static_cast<int>(sbasis.size()));
    std::map<int, int> trow;
    for (size_t i = 0; i < tbasis.size(); ++i) trow[tbasis[i]] = int(i);
    for (size_t c = 0; c < sbasis.size(); ++c)
      for (const auto& [v, x] : f.apply(word1(sbasis[c])))
        m.at(trow.at(v[0]), int(c)) = x;
    auto mi = invert(m);
    if (!mi) return std::nullopt;
    for (size_t c = 0; c < tbasis.size(); ++c)
      for (size_t r = 0; r < sbasis.size(); ++r)
        inv.add(word1(tbasis[c]), word1(sbasis[r]), mi->at(int(r), int(c)));
  }
  return inv;
}

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int i) {
    while (p[i] != i) i = p[i] = p[p[i]];
    return i;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

std::optional<GradedMap> solve_map_equation(const MapShape& shape,
                                            const LinOp& op,
                                            const GradedMap& rhs) {
  using RowKey = std::pair<Word, Word>;

  // Unknown basis: degree-matched (source word, target word) pairs.
  std::vector<RowKey> unknowns;
  {
    std::map<int, std::vector<Word>> tgt_by_deg;
    auto [tlo, thi] = shape.tgt->word_degree_range(shape.tgt_arity);
    shape.tgt->for_each_word(shape.tgt_arity, tlo, thi, [&](const Word& v) {
      tgt_by_deg[shape.tgt->word_degree(v)].push_back(v);
    });
    for (const auto& [dv, vs] : tgt_by_deg) {
      shape.src->for_each_word(shape.src_arity, dv - shape.degree,
                               dv - shape.degree, [&](const Word& w) {
                                 for (const Word& v : vs)
                                   unknowns.emplace_back(w, v);
                               });
    }
  }
  std::sort(unknowns.begin(), unknowns.end());

  // Image of each elementary unknown, and the component structure.
  int n = static_cast<int>(unknowns.size());
  std::vector<std::map<RowKey, Rational>> images(n);
  std::map<RowKey, int> row_owner;  // row -> first unknown touching it
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    GradedMap e(shape.src, shape.src_arity, shape.tgt, shape.tgt_arity,
                shape.degree);
    e.add(unknowns[i].first, unknowns[i].second, 1);
    GradedMap img = op(e);
    for (const auto& [w, elem] : img.entries())
      for (const auto& [v, c] : elem) {
        RowKey key{w, v};
        images[i][key] = c;
        auto [it, inserted] = row_owner.emplace(key, i);
        if (!inserted) uf.unite(i, it->second);
      }
  }

  // Rows present only in the rhs must be zero there.
  std::map<RowKey, Rational> rhs_rows;
  for (const auto& [w, elem] : rhs.entries())
    for (const auto& [v, c] : elem) {
      RowKey key{w, v};
      if (!row_owner.count(key)) return std::nullopt;  // unreachable row
      rhs_rows[key] = c;
    }

  // Group unknowns per component.
  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < n; ++i) comps[uf.find(i)].push_back(i);

  GradedMap x(shape.src, shape.src_arity, shape.tgt, shape.tgt_arity,
              shape.degree);
  std::map<RowKey, int> comp_of_row;
  for (const auto& [root, members] : comps)
    for (int i : members)
      for (const auto& [key, c] : images[i]) comp_of_row[key] = root;

  // Assemble and solve each component densely.
  for (const auto& [root, members] : comps) {
    std::map<RowKey, int> row_idx;
    for (int i : members)
      for (const auto& [key, c] : images[i])
        row_idx.emplace(key, static_cast<int>(row_idx.size()));
    Matrix m(static_cast<int>(row_idx.size()),
             static_cast<int>(members.size()));
    for (size_t c = 0; c < members.size(); ++c)
      for (const auto& [key, val] : images[members[c]])
        m.at(row_idx.at(key), int(c)) = val;
    std::vector<Rational> b(row_idx.size());
    bool any = false;
    for (const auto& [key, idx] : row_idx) {
      auto it = rhs_rows.find(key);
      if (it != rhs_rows.end()) {
        b[idx] = it->second;
        any = true;
        rhs_rows.erase(it);
      }
    }
    if (!any) continue;  // homogeneous component: take x = 0
    auto sol = solve(m, b);
    if (!sol) return std::nullopt;
    for (size_t c = 0; c < members.size(); ++c)
      if ((*sol)[c] != 0)
        x.add(unknowns[members[c]].first, unknowns[members[c]].second,
              (*sol)[c]);
  }
  if (!rhs_rows.empty()) return std::nullopt;  // leftover inconsistent rows
  return x;
}

}  // namespace ainf
