#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ainf/errors.hpp"
#include "ainf/rational.hpp"

namespace ainf {

// A basis word in some tensor power of a graded space: the letters are basis
// indices.  Length == tensor arity; length 1 for plain space elements.
using Word = std::u16string;

inline Word word1(int i) { return Word(1, static_cast<char16_t>(i)); }

// Sparse linear combination of basis words (all of one arity, in one space).
using Element = std::map<Word, Rational>;

void add_term(Element& e, const Word& w, const Rational& c);
Element& add_scaled(Element& into, const Element& e, const Rational& c);
inline bool is_zero(const Element& e) { return e.empty(); }

// Finite ordered basis with integer degrees.  Immutable after construction.
class GradedSpace {
 public:
  GradedSpace(std::string name, std::vector<std::pair<std::string, int>> basis);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(degrees_.size()); }
  int degree(int i) const { return degrees_[i]; }
  const std::string& label(int i) const { return labels_[i]; }
  int index_of(const std::string& label) const;  // -1 if absent

  int word_degree(const Word& w) const;
  std::string word_label(const Word& w) const;  // "a.b.c"

  int min_letter_degree() const { return min_deg_; }
  int max_letter_degree() const { return max_deg_; }
  const std::set<int>& letter_degrees() const { return letter_degrees_; }

  // Degree interval [lo, hi] spanned by words of the given arity.
  std::pair<int, int> word_degree_range(int arity) const {
    return {arity * min_deg_, arity * max_deg_};
  }

  // Visit every basis word of the given arity whose degree lies in
  // [deg_lo, deg_hi], in lexicographic order of basis indices.
  void for_each_word(int arity, int deg_lo, int deg_hi,
                     const std::function<void(const Word&)>& fn) const;

  bool same_as(const GradedSpace& other) const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::map<std::string, int> index_;
  int min_deg_ = 0, max_deg_ = 0;
  std::set<int> letter_degrees_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

bool same_space(const SpacePtr& a, const SpacePtr& b);

// Homogeneous-degree sparse linear map A^{src_arity} -> B^{tgt_arity}.
// Entries absent from the table are zero.  Every inserted entry is validated
// against the degree metadata, so sign and degree bugs surface at
// construction time.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(SpacePtr src, int src_arity, SpacePtr tgt, int tgt_arity,
            int degree, std::string name = "");

  const SpacePtr& source() const { return src_; }
  const SpacePtr& target() const { return tgt_; }
  int src_arity() const { return src_arity_; }
  int tgt_arity() const { return tgt_arity_; }
  int degree() const { return degree_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  bool valid() const { return src_ != nullptr; }

  // Accumulates c * (in -> out).
  void add(const Word& in, const Word& out, const Rational& c);
  void add(const Word& in, const Element& out, const Rational& c = 1);
  // Replaces the entry for `in` (validating degrees).
  void set_entry(const Word& in, Element out);

  const Element* entry(const Word& in) const;
  const std::map<Word, Element>& entries() const { return entries_; }
  bool is_zero_map() const { return entries_.empty(); }

  Element apply(const Word& w) const;
  Element apply(const Element& e) const;

  GradedMap& operator+=(const GradedMap& other);
  GradedMap& operator*=(const Rational& c);

  // Feasible source-word degree window: degrees d such that the target has a
  // nonzero slice in d + degree().
  std::pair<int, int> feasible_src_degrees() const;

 private:
  void check_entry(const Word& in, const Word& out) const;

  SpacePtr src_, tgt_;
  int src_arity_ = 1, tgt_arity_ = 1;
  int degree_ = 0;
  std::string name_;
  std::map<Word, Element> entries_;
};

// g after f.  Requires target(f) == source(g) and matching arities.
GradedMap compose(const GradedMap& g, const GradedMap& f);

bool map_equal(const GradedMap& a, const GradedMap& b);
GradedMap map_sub(const GradedMap& a, const GradedMap& b);

// Identity on space^{arity}, fully materialized.
GradedMap identity_map(const SpacePtr& space, int arity = 1);

// Koszul-signed tensor product f_1 (x) ... (x) f_k, materialized over the
// product of the factors' entry tables:
//   (f (x) g)(x (x) y) = (-1)^{deg(g) deg(x)} f(x) (x) g(y).
GradedMap tensor_maps(const std::vector<const GradedMap*>& fs);

// One factor of a lazily evaluated tensor product: either an explicit map or
// an identity block of the given arity.
struct Slot {
  const GradedMap* map = nullptr;  // nullptr = identity
  int arity = 1;                   // arity consumed from the input word
  int degree() const { return map ? map->degree() : 0; }
};

// Apply slot_1 (x) ... (x) slot_k to a word over `src`, with the mechanical
// Koszul signs.  Result words live in the concatenated targets (all slots
// must share the target space; identity slots target `src`).
Element apply_slots(std::span<const Slot> slots, const GradedSpace& src,
                    const Word& w);

// Leibniz extension of a single-argument map to arity-n words:
//   sum_i id^{i-1} (x) f (x) id^{n-i}, evaluated on w.
Element leibniz_apply(const GradedMap& f, const Word& w);

// ---- Suspension ------------------------------------------------------------

// (^A)_n := A_{n-1}: same labels, degrees shifted by +1.
SpacePtr suspend_space(const SpacePtr& space);

// Conjugation through the bar-level shift: f : A^{(x)n} -> B becomes
// ^B . f . (v)^{(x)n} : (^A)^{(x)n} -> ^B of degree deg(f) + 1 - n, with the
// Koszul signs of moving the desuspensions past the arguments applied
// mechanically.
GradedMap to_bar(const GradedMap& f, const SpacePtr& bar_src,
                 const SpacePtr& bar_tgt);

// Inverse conjugation (same entry-wise signs; they square to one).
GradedMap from_bar(const GradedMap& fbar, const SpacePtr& src,
                   const SpacePtr& tgt);

}  // namespace ainf
