#pragma once

#include <stdexcept>
#include <string>

namespace ainf {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two maps (or a map and a space) do not fit together.
struct space_mismatch : error {
  using error::error;
};

// An entry violates the degree bookkeeping of its map, or a declared degree
// is inconsistent.
struct degree_error : error {
  using error::error;
};

// A construction-time invariant failed (d^2 != 0, homotopy identity fails,
// Stasheff identity fails on load, ...).
struct invariant_error : error {
  using error::error;
};

// Linear part of a would-be isomorphism is not invertible.
struct non_invertible : error {
  using error::error;
};

struct not_quasi_iso : error {
  using error::error;
};

// extend_f hit a nonvanishing obstruction class on input that should admit
// an extension.
struct obstruction_unsolvable : error {
  using error::error;
};

// A morphism the engine built failed its own dg-morphism check.  Signals a
// sign-convention bug; must never occur on valid input.
struct dgmorph_check_failed : error {
  using error::error;
};

struct kernel_solve_failed : error {
  using error::error;
};

struct vertex_arity_exceeds_truncation : error {
  using error::error;
};

struct not_strict_left_inverse : error {
  using error::error;
};

struct partial_morphism_invalid : error {
  using error::error;
};

struct homotopy_identity_fails : error {
  using error::error;
};

struct parse_error : error {
  using error::error;
};

}  // namespace ainf
