#pragma once

#include <functional>
#include <optional>

#include "ainf/graded.hpp"
#include "ainf/linalg.hpp"

namespace ainf {

// One particular exact solution x of L(x) = b, or nullopt when b is not in
// the image of L.  Deterministic: source words enumerated in lexicographic
// basis order, first-pivot elimination, free coordinates zero.
std::optional<Element> solve_linear(const GradedMap& L, const Element& b);

// Degree-wise inverse of an invertible degree-0 map between single spaces.
std::optional<GradedMap> invert_graded_map(const GradedMap& f);

struct MapShape {
  SpacePtr src;
  int src_arity = 1;
  SpacePtr tgt;
  int tgt_arity = 1;
  int degree = 0;
};

using LinOp = std::function<GradedMap(const GradedMap&)>;

// Solves op(X) = rhs for a graded map X of the given shape, where op is
// linear in X.  The system is split into connected components (unknowns
// linked through shared equation rows) and each component is eliminated
// densely, so sparse differentials stay cheap.  Returns nullopt when the
// system is inconsistent.
std::optional<GradedMap> solve_map_equation(const MapShape& shape,
                                            const LinOp& op,
                                            const GradedMap& rhs);

}  // namespace ainf
