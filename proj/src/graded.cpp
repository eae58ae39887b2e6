#include "ainf/graded.hpp"

#include <algorithm>
#include <sstream>

namespace ainf {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Integer p(s);
      return Rational(p);
    }
    Integer p(s.substr(0, slash));
    Integer q(s.substr(slash + 1));
    if (q == 0) return std::nullopt;
    return Rational(p, q);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void add_term(Element& e, const Word& w, const Rational& c) {
  if (c == 0) return;
  auto it = e.find(w);
  if (it == e.end()) {
    e.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

Element& add_scaled(Element& into, const Element& e, const Rational& c) {
  if (c == 0) return into;
  for (const auto& [w, x] : e) add_term(into, w, x * c);
  return into;
}

GradedSpace::GradedSpace(std::string name,
                         std::vector<std::pair<std::string, int>> basis)
    : name_(std::move(name)) {
  labels_.reserve(basis.size());
  degrees_.reserve(basis.size());
  for (auto& [label, deg] : basis) {
    if (index_.count(label))
      throw invariant_error("duplicate basis label '" + label + "' in space " +
                            name_);
    index_[label] = static_cast<int>(labels_.size());
    labels_.push_back(label);
    degrees_.push_back(deg);
    letter_degrees_.insert(deg);
  }
  // Zero-dimensional spaces are allowed (e.g. the homology of a
  // contractible complex).
  if (!degrees_.empty()) {
    min_deg_ = *std::min_element(degrees_.begin(), degrees_.end());
    max_deg_ = *std::max_element(degrees_.begin(), degrees_.end());
  }
}

int GradedSpace::index_of(const std::string& label) const {
  auto it = index_.find(label);
  return it == index_.end() ? -1 : it->second;
}

int GradedSpace::word_degree(const Word& w) const {
  int d = 0;
  for (char16_t c : w) d += degrees_[c];
  return d;
}

std::string GradedSpace::word_label(const Word& w) const {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += labels_[w[i]];
  }
  return s;
}

void GradedSpace::for_each_word(
    int arity, int deg_lo, int deg_hi,
    const std::function<void(const Word&)>& fn) const {
  if (arity <= 0) return;
  Word w(static_cast<size_t>(arity), 0);
  // DFS over positions, pruning by the degree still achievable.
  std::function<void(int, int)> rec = [&](int pos, int deg) {
    int rest = arity - pos;
    if (deg + rest * min_deg_ > deg_hi || deg + rest * max_deg_ < deg_lo)
      return;
    if (pos == arity) {
      fn(w);
      return;
    }
    for (int i = 0; i < dim(); ++i) {
      w[pos] = static_cast<char16_t>(i);
      rec(pos + 1, deg + degrees_[i]);
    }
  };
  rec(0, 0);
}

bool GradedSpace::same_as(const GradedSpace& other) const {
  return this == &other ||
         (name_ == other.name_ && labels_ == other.labels_ &&
          degrees_ == other.degrees_);
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

GradedMap::GradedMap(SpacePtr src, int src_arity, SpacePtr tgt, int tgt_arity,
                     int degree, std::string name)
    : src_(std::move(src)),
      tgt_(std::move(tgt)),
      src_arity_(src_arity),
      tgt_arity_(tgt_arity),
      degree_(degree),
      name_(std::move(name)) {
  if (src_arity_ < 1 || tgt_arity_ < 1)
    throw invariant_error("map arity must be >= 1");
}

void GradedMap::check_entry(const Word& in, const Word& out) const {
  if (static_cast<int>(in.size()) != src_arity_ ||
      static_cast<int>(out.size()) != tgt_arity_)
    throw degree_error("entry arity mismatch in map " + name_);
  for (char16_t c : in)
    if (c >= src_->dim()) throw degree_error("bad source index in " + name_);
  for (char16_t c : out)
    if (c >= tgt_->dim()) throw degree_error("bad target index in " + name_);
  if (tgt_->word_degree(out) != src_->word_degree(in) + degree_)
    throw degree_error("degree violation in map " + name_ + ": " +
                       src_->word_label(in) + " -> " + tgt_->word_label(out) +
                       " (map degree " + std::to_string(degree_) + ")");
}

void GradedMap::add(const Word& in, const Word& out, const Rational& c) {
  if (c == 0) return;
  check_entry(in, out);
  auto& e = entries_[in];
  add_term(e, out, c);
  if (e.empty()) entries_.erase(in);
}

void GradedMap::add(const Word& in, const Element& out, const Rational& c) {
  for (const auto& [w, x] : out) add(in, w, x * c);
}

void GradedMap::set_entry(const Word& in, Element out) {
  for (const auto& [w, x] : out) {
    if (x != 0) check_entry(in, w);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  if (out.empty())
    entries_.erase(in);
  else
    entries_[in] = std::move(out);
}

const Element* GradedMap::entry(const Word& in) const {
  auto it = entries_.find(in);
  return it == entries_.end() ? nullptr : &it->second;
}

Element GradedMap::apply(const Word& w) const {
  const Element* e = entry(w);
  return e ? *e : Element{};
}

Element GradedMap::apply(const Element& e) const {
  Element out;
  for (const auto& [w, c] : e) {
    const Element* img = entry(w);
    if (img) add_scaled(out, *img, c);
  }
  return out;
}

GradedMap& GradedMap::operator+=(const GradedMap& other) {
  if (!same_space(src_, other.src_) || !same_space(tgt_, other.tgt_) ||
      src_arity_ != other.src_arity_ || tgt_arity_ != other.tgt_arity_)
    throw space_mismatch("adding maps on different spaces: " + name_ + " vs " +
                         other.name_);
  if (degree_ != other.degree_ && !other.is_zero_map() && !is_zero_map())
    throw degree_error("adding maps of different degree");
  for (const auto& [w, e] : other.entries_) add(w, e);
  return *this;
}

GradedMap& GradedMap::operator*=(const Rational& c) {
  if (c == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [w, e] : entries_)
    for (auto& [v, x] : e) x *= c;
  return *this;
}

std::pair<int, int> GradedMap::feasible_src_degrees() const {
  auto [lo, hi] = tgt_->word_degree_range(tgt_arity_);
  return {lo - degree_, hi - degree_};
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  if (!same_space(f.target(), g.source()) || f.tgt_arity() != g.src_arity())
    throw space_mismatch("compose: target of " + f.name() + " (" +
                         (f.target() ? f.target()->name() : "?") +
                         ") does not match source of " + g.name() + " (" +
                         (g.source() ? g.source()->name() : "?") + ")");
  GradedMap out(f.source(), f.src_arity(), g.target(), g.tgt_arity(),
                f.degree() + g.degree());
  for (const auto& [w, e] : f.entries()) {
    Element img = g.apply(e);
    if (!img.empty()) out.add(w, img);
  }
  return out;
}

bool map_equal(const GradedMap& a, const GradedMap& b) {
  if (!same_space(a.source(), b.source()) || !same_space(a.target(), b.target()))
    return false;
  if (a.src_arity() != b.src_arity() || a.tgt_arity() != b.tgt_arity())
    return false;
  return a.entries() == b.entries();
}

GradedMap map_sub(const GradedMap& a, const GradedMap& b) {
  GradedMap out = a;
  GradedMap nb = b;
  nb *= Rational(-1);
  out += nb;
  return out;
}

GradedMap identity_map(const SpacePtr& space, int arity) {
  GradedMap id(space, arity, space, arity, 0, "id");
  auto [lo, hi] = space->word_degree_range(arity);
  space->for_each_word(arity, lo, hi, [&](const Word& w) { id.add(w, w, 1); });
  return id;
}

namespace {

// Koszul sign for applying maps of degrees fdeg[0..k) to blocks of degrees
// bdeg[0..k): product over i < j of (-1)^{fdeg[j] * bdeg[i]}.
int koszul_sign(std::span<const int> fdeg, std::span<const int> bdeg) {
  int s = 0;
  int suffix = 0;  // sum of fdeg[j] for j > i, built from the right
  for (int i = static_cast<int>(fdeg.size()) - 1; i >= 0; --i) {
    s += suffix * bdeg[i];
    suffix += fdeg[i];
  }
  return (s % 2 == 0) ? 1 : -1;
}

}  // namespace

GradedMap tensor_maps(const std::vector<const GradedMap*>& fs) {
  if (fs.empty()) throw invariant_error("tensor_maps: no factors");
  SpacePtr src = fs[0]->source();
  SpacePtr tgt = fs[0]->target();
  int src_arity = 0, tgt_arity = 0, degree = 0;
  for (const GradedMap* f : fs) {
    if (!same_space(f->source(), src) || !same_space(f->target(), tgt))
      throw space_mismatch("tensor_maps: factors on different spaces");
    src_arity += f->src_arity();
    tgt_arity += f->tgt_arity();
    degree += f->degree();
  }
  GradedMap out(src, src_arity, tgt, tgt_arity, degree);

  const int k = static_cast<int>(fs.size());
  std::vector<int> fdeg(k);
  for (int i = 0; i < k; ++i) fdeg[i] = fs[i]->degree();

  std::vector<std::map<Word, Element>::const_iterator> its(k);
  std::function<void(int, Word&)> rec = [&](int pos, Word& in) {
    if (pos == k) {
      std::vector<int> bdeg(k);
      {
        size_t off = 0;
        for (int i = 0; i < k; ++i) {
          bdeg[i] = src->word_degree(its[i]->first);
          off += its[i]->first.size();
        }
      }
      Rational sign(koszul_sign(fdeg, bdeg));
      // Expand the product of entry images.
      Element acc;
      acc[Word{}] = sign;
      for (int i = 0; i < k; ++i) {
        Element next;
        for (const auto& [prefix, c] : acc)
          for (const auto& [w, x] : its[i]->second)
            add_term(next, prefix + w, c * x);
        acc = std::move(next);
        if (acc.empty()) return;
      }
      out.add(in, acc);
      return;
    }
    for (auto it = fs[pos]->entries().begin(); it != fs[pos]->entries().end();
         ++it) {
      its[pos] = it;
      Word saved = in;
      in += it->first;
      rec(pos + 1, in);
      in = std::move(saved);
    }
  };
  Word in;
  rec(0, in);
  return out;
}

Element apply_slots(std::span<const Slot> slots, const GradedSpace& src,
                    const Word& w) {
  // Koszul sign first: block degrees are taken before mapping.
  int total = 0;
  for (const Slot& s : slots) total += s.arity;
  if (total != static_cast<int>(w.size()))
    throw space_mismatch("apply_slots: arity mismatch");

  int sign_exp = 0;
  {
    size_t off = 0;
    int suffix_fdeg = 0;
    std::vector<int> bdeg(slots.size());
    for (size_t i = 0; i < slots.size(); ++i) {
      bdeg[i] = src.word_degree(w.substr(off, slots[i].arity));
      off += slots[i].arity;
    }
    for (int i = static_cast<int>(slots.size()) - 1; i >= 0; --i) {
      sign_exp += suffix_fdeg * bdeg[i];
      suffix_fdeg += slots[i].degree();
    }
  }

  Element acc;
  acc[Word{}] = Rational((sign_exp % 2 == 0) ? 1 : -1);
  size_t off = 0;
  for (const Slot& s : slots) {
    Word block = w.substr(off, s.arity);
    off += s.arity;
    if (!s.map) {
      Element next;
      for (auto& [prefix, c] : acc) add_term(next, prefix + block, c);
      acc = std::move(next);
    } else {
      const Element* img = s.map->entry(block);
      if (!img) return {};
      Element next;
      for (const auto& [prefix, c] : acc)
        for (const auto& [v, x] : *img) add_term(next, prefix + v, c * x);
      acc = std::move(next);
    }
    if (acc.empty()) return {};
  }
  return acc;
}

Element leibniz_apply(const GradedMap& f, const Word& w) {
  if (f.src_arity() != 1 || f.tgt_arity() != 1)
    throw invariant_error("leibniz_apply needs a unary map");
  const GradedSpace& src = *f.source();
  Element out;
  int prefix_deg = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    const Element* img = f.entry(word1(w[i]));
    if (img) {
      int s = (f.degree() * prefix_deg) % 2;
      Rational sign(s == 0 ? 1 : -1);
      for (const auto& [v, c] : *img) {
        Word res = w;
        res[i] = v[0];
        add_term(out, res, c * sign);
      }
    }
    prefix_deg += src.degree(w[i]);
  }
  return out;
}

SpacePtr suspend_space(const SpacePtr& space) {
  std::vector<std::pair<std::string, int>> basis;
  basis.reserve(space->dim());
  for (int i = 0; i < space->dim(); ++i)
    basis.emplace_back(space->label(i), space->degree(i) + 1);
  return std::make_shared<GradedSpace>("^" + space->name(), std::move(basis));
}

namespace {

// Sign of conjugating an entry keyed by word w through the shift:
// (-1)^{sum_i (n-i) * (deg_src(w_i) + 1)}, the Koszul cost of the
// desuspension block.
int conj_sign_exp(const GradedSpace& unshifted, const Word& w) {
  int n = static_cast<int>(w.size());
  int s = 0;
  for (int i = 0; i < n; ++i)
    s += (n - 1 - i) * (unshifted.degree(w[i]) + 1);
  return s;
}

}  // namespace

GradedMap to_bar(const GradedMap& f, const SpacePtr& bar_src,
                 const SpacePtr& bar_tgt) {
  if (f.tgt_arity() != 1)
    throw invariant_error("to_bar expects a map into a single factor");
  GradedMap out(bar_src, f.src_arity(), bar_tgt, 1,
                f.degree() + 1 - f.src_arity(),
                f.name().empty() ? "" : "^" + f.name());
  for (const auto& [w, e] : f.entries()) {
    int s = conj_sign_exp(*f.source(), w) % 2;
    Rational sign(s == 0 ? 1 : -1);
    for (const auto& [v, c] : e) out.add(w, v, c * sign);
  }
  return out;
}

GradedMap from_bar(const GradedMap& fbar, const SpacePtr& src,
                   const SpacePtr& tgt) {
  if (fbar.tgt_arity() != 1)
    throw invariant_error("from_bar expects a map into a single factor");
  GradedMap out(src, fbar.src_arity(), tgt, 1,
                fbar.degree() - 1 + fbar.src_arity());
  for (const auto& [w, e] : fbar.entries()) {
    int s = conj_sign_exp(*src, w) % 2;
    Rational sign(s == 0 ? 1 : -1);
    for (const auto& [v, c] : e) out.add(w, v, c * sign);
  }
  return out;
}

}  // namespace ainf
