#pragma once

// Line-oriented problem files: declarations of spaces, maps, complexes,
// structures, homotopy data and morphisms, with exact rational entries.
// Parsing validates every declared invariant; emission is canonical, so
// parse . emit . parse = parse.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ainf/bar.hpp"
#include "ainf/complex.hpp"

namespace ainf {

struct ProblemFile {
  int max_arity = 4;

  std::vector<std::pair<std::string, SpacePtr>> spaces;
  std::vector<std::pair<std::string, GradedMap>> maps;

  struct ComplexDecl {
    std::string name, space, dmap;
    std::optional<ChainComplex> value;
  };
  std::vector<ComplexDecl> complexes;

  struct StructureDecl {
    std::string name, complex;
    std::map<int, std::string> mu;  // arity -> map name
    StructurePtr value;
  };
  std::vector<StructureDecl> structures;

  struct HomotopyDecl {
    std::string name, src, tgt;  // complexes
    std::string f1, g1, h, l;    // maps
    std::optional<HomotopyData> value;
  };
  std::vector<HomotopyDecl> homotopies;

  struct MorphismDecl {
    std::string name, src, tgt;         // structures
    std::map<int, std::string> comp;    // arity -> map name (unshifted)
    std::optional<WeakMorphism> value;
  };
  std::vector<MorphismDecl> morphisms;

  const SpacePtr* space(const std::string& name) const;
  const GradedMap* map(const std::string& name) const;
  const ComplexDecl* complex(const std::string& name) const;
  const StructureDecl* structure(const std::string& name) const;
};

// Throws parse_error on malformed input; construction-level validation
// failures (degree errors, d^2 != 0, homotopy identities) propagate as their
// own exception types.
ProblemFile parse_problem(const std::string& text);

std::string emit_problem(const ProblemFile& p);

// The free-algebra pair: R<x> and R<x,ub,u> truncated to words of length
// <= len (product in the quotient), the forced retraction data between them
// (g1 projects onto powers of x, h = 0, l solved exactly), and the strict
// morphism sending x to x.  max_arity is the truncation of the structures.
ProblemFile free_transfer_corpus(int len, int max_arity);

}  // namespace ainf
