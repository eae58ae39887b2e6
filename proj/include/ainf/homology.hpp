#pragma once

#include <map>
#include <optional>

#include "ainf/complex.hpp"
#include "ainf/linalg.hpp"

namespace ainf {

struct HomologySlice {
  int betti = 0;
  std::vector<Element> representatives;  // cycles spanning a complement of B
};

// Exact homology of a finite complex, degree by degree, with first-pivot
// representative choices.
class Homology {
 public:
  explicit Homology(const ChainComplex& c);

  const ChainComplex& complex() const { return c_; }
  const std::map<int, HomologySlice>& slices() const { return slices_; }
  int betti(int degree) const;
  int total_rank() const;

  // Coordinates of a cycle's class in the representative basis of its
  // degree; nullopt if the element is not a cycle or not homogeneous.
  std::optional<std::vector<Rational>> class_coords(const Element& z) const;

 private:
  struct DegreeData {
    std::vector<int> basis;               // space indices in this degree
    std::vector<Element> boundary_gens;   // spanning set of B_k
    HomologySlice slice;
  };

  ChainComplex c_;
  std::map<int, HomologySlice> slices_;
  std::map<int, DegreeData> data_;
};

// The matrix of the map induced on homology by a chain map, per degree.
// Returns nullopt if f1 is not a chain map.
struct InducedMap {
  // degree -> matrix taking source-class coordinates to target-class coords.
  std::map<int, Matrix> blocks;
  bool isomorphism = false;
};
std::optional<InducedMap> induced_homology_map(const GradedMap& f1,
                                               const Homology& src,
                                               const Homology& tgt);

}  // namespace ainf
