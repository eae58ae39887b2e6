#pragma once

#include <string>
#include <vector>

namespace ainf {

// Rooted planar tree; internal vertices have >= 2 children.  A default
// constructed node is a leaf.
struct PlanarTree {
  std::vector<PlanarTree> children;

  bool leaf() const { return children.empty(); }
  int leaves() const;
  int internal_edges() const;
  bool operator==(const PlanarTree&) const = default;
};

// All planar rooted trees with n leaves whose vertices have >= 2 children.
// n = 1 yields the bare leaf.  Order: root arity ascending, then child-size
// compositions lexicographically, then child choices lexicographically.
std::vector<PlanarTree> enumerate_trees(int n);

// "(.,(.,.),.)" style rendering; "." is a leaf.
std::string tree_to_string(const PlanarTree& t);

}  // namespace ainf
