#include "ainf/tree.hpp"

#include <functional>

namespace ainf {

int PlanarTree::leaves() const {
  if (leaf()) return 1;
  int n = 0;
  for (const auto& c : children) n += c.leaves();
  return n;
}

int PlanarTree::internal_edges() const {
  int n = 0;
  for (const auto& c : children) {
    if (!c.leaf()) n += 1 + c.internal_edges();
  }
  return n;
}

std::vector<PlanarTree> enumerate_trees(int n) {
  if (n <= 0) return {};
  if (n == 1) return {PlanarTree{}};
  std::vector<PlanarTree> out;
  for (int k = 2; k <= n; ++k) {
    // Compositions n = n_1 + ... + n_k, each part >= 1, lexicographic.
    std::vector<int> parts(k, 1);
    std::function<void(int, int)> comp = [&](int idx, int remaining) {
      if (idx == k - 1) {
        parts[idx] = remaining;
        // Cartesian product of child choices.
        std::vector<std::vector<PlanarTree>> options(k);
        for (int i = 0; i < k; ++i) options[i] = enumerate_trees(parts[i]);
        std::vector<PlanarTree> pick(k);
        std::function<void(int)> build = [&](int i) {
          if (i == k) {
            PlanarTree t;
            t.children = pick;
            out.push_back(std::move(t));
            return;
          }
          for (const auto& c : options[i]) {
            pick[i] = c;
            build(i + 1);
          }
        };
        build(0);
        return;
      }
      for (int p = 1; p <= remaining - (k - 1 - idx); ++p) {
        parts[idx] = p;
        comp(idx + 1, remaining - p);
      }
    };
    comp(0, n);
  }
  return out;
}

std::string tree_to_string(const PlanarTree& t) {
  if (t.leaf()) return ".";
  std::string s = "(";
  for (size_t i = 0; i < t.children.size(); ++i) {
    if (i) s += ",";
    s += tree_to_string(t.children[i]);
  }
  s += ")";
  return s;
}

}  // namespace ainf
