#include "ainf/problem.hpp"

#include <sstream>

#include "ainf/errors.hpp"
#include "ainf/solve.hpp"

namespace ainf {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

[[noreturn]] void fail(size_t line_no, const std::string& msg) {
  throw parse_error("line " + std::to_string(line_no) + ": " + msg);
}

int parse_int(const std::string& t, size_t ln) {
  try {
    size_t used = 0;
    int v = std::stoi(t, &used);
    if (used != t.size()) fail(ln, "bad integer '" + t + "'");
    return v;
  } catch (const parse_error&) {
    throw;
  } catch (...) {
    fail(ln, "bad integer '" + t + "'");
  }
}

// Dot-separated labels resolved against a space; length must equal arity.
Word parse_word(const SpacePtr& sp, int arity, const std::string& t,
                size_t ln) {
  Word w;
  size_t pos = 0;
  while (pos <= t.size()) {
    size_t dot = t.find('.', pos);
    std::string label =
        t.substr(pos, dot == std::string::npos ? dot : dot - pos);
    int idx = sp->index_of(label);
    if (idx < 0) fail(ln, "unknown basis label '" + label + "'");
    w.push_back(static_cast<char16_t>(idx));
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  if (static_cast<int>(w.size()) != arity)
    fail(ln, "word '" + t + "' has the wrong arity");
  return w;
}

}  // namespace

const SpacePtr* ProblemFile::space(const std::string& name) const {
  for (const auto& [n, s] : spaces)
    if (n == name) return &s;
  return nullptr;
}

const GradedMap* ProblemFile::map(const std::string& name) const {
  for (const auto& [n, m] : maps)
    if (n == name) return &m;
  return nullptr;
}

const ProblemFile::ComplexDecl* ProblemFile::complex(
    const std::string& name) const {
  for (const auto& c : complexes)
    if (c.name == name) return &c;
  return nullptr;
}

const ProblemFile::StructureDecl* ProblemFile::structure(
    const std::string& name) const {
  for (const auto& s : structures)
    if (s.name == name) return &s;
  return nullptr;
}

ProblemFile parse_problem(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
  }

  ProblemFile p;
  size_t i = 0;

  auto next_member = [&](size_t header_ln) -> std::vector<std::string> {
    while (i < lines.size()) {
      auto toks = tokenize(lines[i]);
      ++i;
      if (toks.empty()) continue;
      return toks;
    }
    fail(header_ln, "unterminated block (missing 'end')");
  };

  auto get_space = [&](const std::string& n, size_t ln) -> const SpacePtr& {
    const SpacePtr* s = p.space(n);
    if (!s) fail(ln, "unknown space '" + n + "'");
    return *s;
  };
  auto get_map = [&](const std::string& n, size_t ln) -> const GradedMap& {
    const GradedMap* m = p.map(n);
    if (!m) fail(ln, "unknown map '" + n + "'");
    return *m;
  };
  auto get_complex = [&](const std::string& n,
                         size_t ln) -> const ProblemFile::ComplexDecl& {
    const auto* c = p.complex(n);
    if (!c) fail(ln, "unknown complex '" + n + "'");
    return *c;
  };

  while (i < lines.size()) {
    size_t ln = i + 1;
    auto toks = tokenize(lines[i]);
    ++i;
    if (toks.empty()) continue;
    const std::string& kw = toks[0];

    try {
      if (kw == "maxarity") {
        if (toks.size() != 2) fail(ln, "expected: maxarity <N>");
        int n = parse_int(toks[1], ln);
        if (n < 2 || n > 16) fail(ln, "maxarity out of range [2,16]");
        p.max_arity = n;
      } else if (kw == "space") {
        if (toks.size() != 2) fail(ln, "expected: space <name>");
        if (p.space(toks[1])) fail(ln, "duplicate space '" + toks[1] + "'");
        std::vector<std::pair<std::string, int>> basis;
        for (;;) {
          auto m = next_member(ln);
          if (m[0] == "end") break;
          if (m.size() != 2) fail(ln, "expected: <label> <degree>");
          basis.emplace_back(m[0], parse_int(m[1], ln));
        }
        p.spaces.emplace_back(
            toks[1], std::make_shared<const GradedSpace>(toks[1], basis));
      } else if (kw == "map") {
        // map <name> : <src> <k> -> <tgt> <l> deg <d>
        if (toks.size() != 10 || toks[2] != ":" || toks[5] != "->" ||
            toks[8] != "deg")
          fail(ln, "expected: map <name> : <src> <k> -> <tgt> <l> deg <d>");
        if (p.map(toks[1])) fail(ln, "duplicate map '" + toks[1] + "'");
        const SpacePtr& src = get_space(toks[3], ln);
        const SpacePtr& tgt = get_space(toks[6], ln);
        int ka = parse_int(toks[4], ln), kb = parse_int(toks[7], ln);
        if (ka < 1 || kb < 1) fail(ln, "arity must be >= 1");
        GradedMap f(src, ka, tgt, kb, parse_int(toks[9], ln), toks[1]);
        for (;;) {
          auto m = next_member(ln);
          if (m[0] == "end") break;
          // <word> => <coef> <word> [+ <coef> <word>]...
          if (m.size() < 4 || m[1] != "=>")
            fail(ln, "expected: <word> => <coef> <word> [+ ...]");
          Word in = parse_word(src, ka, m[0], ln);
          Element out;
          size_t j = 2;
          while (j < m.size()) {
            if (j + 1 >= m.size()) fail(ln, "dangling term in map entry");
            auto c = parse_rational(m[j]);
            if (!c) fail(ln, "bad rational '" + m[j] + "'");
            add_term(out, parse_word(tgt, kb, m[j + 1], ln), *c);
            j += 2;
            if (j < m.size()) {
              if (m[j] != "+") fail(ln, "expected '+' between terms");
              ++j;
            }
          }
          f.set_entry(in, std::move(out));
        }
        p.maps.emplace_back(toks[1], std::move(f));
      } else if (kw == "complex") {
        // complex <name> = <space> <dmap>
        if (toks.size() != 5 || toks[2] != "=")
          fail(ln, "expected: complex <name> = <space> <dmap>");
        if (p.complex(toks[1]))
          fail(ln, "duplicate complex '" + toks[1] + "'");
        ProblemFile::ComplexDecl c{toks[1], toks[3], toks[4], std::nullopt};
        const SpacePtr& sp = get_space(c.space, ln);
        const GradedMap& d = get_map(c.dmap, ln);
        if (!same_space(d.source(), sp) || !same_space(d.target(), sp) ||
            d.src_arity() != 1 || d.tgt_arity() != 1)
          fail(ln, "differential must be an endomap of " + c.space);
        c.value.emplace(sp, d);
        p.complexes.push_back(std::move(c));
      } else if (kw == "structure") {
        // structure <name> = <complex>  /  mu <n> <map>  /  end
        if (toks.size() != 4 || toks[2] != "=")
          fail(ln, "expected: structure <name> = <complex>");
        if (p.structure(toks[1]))
          fail(ln, "duplicate structure '" + toks[1] + "'");
        ProblemFile::StructureDecl s{toks[1], toks[3], {}, nullptr};
        const auto& c = get_complex(s.complex, ln);
        std::map<int, GradedMap> mu;
        for (;;) {
          auto m = next_member(ln);
          if (m[0] == "end") break;
          if (m.size() != 3 || m[0] != "mu")
            fail(ln, "expected: mu <arity> <map>");
          int n = parse_int(m[1], ln);
          if (n < 2 || n > p.max_arity)
            fail(ln, "operation arity out of range [2,maxarity]");
          if (s.mu.count(n)) fail(ln, "duplicate operation arity");
          s.mu.emplace(n, m[2]);
          mu.emplace(n, get_map(m[2], ln));
        }
        s.value = std::make_shared<const AInfStructure>(*c.value,
                                                        std::move(mu),
                                                        p.max_arity);
        p.structures.push_back(std::move(s));
      } else if (kw == "homotopy") {
        // homotopy <name> = <src> -> <tgt> <f1> <g1> <h> <l>
        if (toks.size() != 10 || toks[2] != "=" || toks[4] != "->")
          fail(ln, "expected: homotopy <name> = <src> -> <tgt> f1 g1 h l");
        for (const auto& hd : p.homotopies)
          if (hd.name == toks[1]) fail(ln, "duplicate homotopy");
        ProblemFile::HomotopyDecl h{toks[1], toks[3], toks[5], toks[6],
                                    toks[7], toks[8], toks[9], std::nullopt};
        const auto& ca = get_complex(h.src, ln);
        const auto& cb = get_complex(h.tgt, ln);
        h.value.emplace(*ca.value, *cb.value, get_map(h.f1, ln),
                        get_map(h.g1, ln), get_map(h.h, ln),
                        get_map(h.l, ln));
        p.homotopies.push_back(std::move(h));
      } else if (kw == "morphism") {
        // morphism <name> = <src> -> <tgt>  /  comp <n> <map>  /  end
        if (toks.size() != 6 || toks[2] != "=" || toks[4] != "->")
          fail(ln, "expected: morphism <name> = <src> -> <tgt>");
        for (const auto& m : p.morphisms)
          if (m.name == toks[1]) fail(ln, "duplicate morphism");
        ProblemFile::MorphismDecl md{toks[1], toks[3], toks[5], {},
                                     std::nullopt};
        const auto* ss = p.structure(md.src);
        const auto* st = p.structure(md.tgt);
        if (!ss || !st) fail(ln, "unknown structure in morphism header");
        std::map<int, GradedMap> comp;
        for (;;) {
          auto m = next_member(ln);
          if (m[0] == "end") break;
          if (m.size() != 3 || m[0] != "comp")
            fail(ln, "expected: comp <arity> <map>");
          int n = parse_int(m[1], ln);
          if (n < 1 || n > p.max_arity)
            fail(ln, "component arity out of range [1,maxarity]");
          if (md.comp.count(n)) fail(ln, "duplicate component arity");
          md.comp.emplace(n, m[2]);
          comp.emplace(n, get_map(m[2], ln));
        }
        md.value = WeakMorphism::from_components(ss->value, st->value, comp);
        p.morphisms.push_back(std::move(md));
      } else {
        fail(ln, "unknown directive '" + kw + "'");
      }
    } catch (const parse_error&) {
      throw;
    } catch (const error& e) {
      fail(ln, std::string("invalid declaration: ") + e.what());
    }
  }
  return p;
}

std::string emit_problem(const ProblemFile& p) {
  std::ostringstream os;
  os << "maxarity " << p.max_arity << "\n";
  for (const auto& [name, sp] : p.spaces) {
    os << "\nspace " << name << "\n";
    for (int i = 0; i < sp->dim(); ++i)
      os << "  " << sp->label(i) << " " << sp->degree(i) << "\n";
    os << "end\n";
  }
  for (const auto& [name, f] : p.maps) {
    os << "\nmap " << name << " : " << f.source()->name() << " "
       << f.src_arity() << " -> " << f.target()->name() << " "
       << f.tgt_arity() << " deg " << f.degree() << "\n";
    for (const auto& [in, out] : f.entries()) {
      if (out.empty()) continue;
      os << "  " << f.source()->word_label(in) << " =>";
      bool first = true;
      for (const auto& [w, c] : out) {
        os << (first ? " " : " + ") << to_string(c) << " "
           << f.target()->word_label(w);
        first = false;
      }
      os << "\n";
    }
    os << "end\n";
  }
  for (const auto& c : p.complexes)
    os << "\ncomplex " << c.name << " = " << c.space << " " << c.dmap << "\n";
  for (const auto& s : p.structures) {
    os << "\nstructure " << s.name << " = " << s.complex << "\n";
    for (const auto& [n, m] : s.mu) os << "  mu " << n << " " << m << "\n";
    os << "end\n";
  }
  for (const auto& h : p.homotopies)
    os << "\nhomotopy " << h.name << " = " << h.src << " -> " << h.tgt << " "
       << h.f1 << " " << h.g1 << " " << h.h << " " << h.l << "\n";
  for (const auto& m : p.morphisms) {
    os << "\nmorphism " << m.name << " = " << m.src << " -> " << m.tgt
       << "\n";
    for (const auto& [n, f] : m.comp) os << "  comp " << n << " " << f << "\n";
    os << "end\n";
  }
  return os.str();
}

ProblemFile free_transfer_corpus(int len, int max_arity) {
  if (len < 1) throw parse_error("word length must be >= 1");
  ProblemFile p;
  p.max_arity = max_arity;

  // Small side: powers of x (the empty word is the unit), all in degree 0.
  std::vector<std::pair<std::string, int>> abasis{{"e", 0}};
  for (int k = 1; k <= len; ++k)
    abasis.emplace_back(k == 1 ? "x" : "x" + std::to_string(k), 0);
  auto A = std::make_shared<const GradedSpace>("A", abasis);

  // Big side: words over x (deg 0), U (deg 1, the exact image of u) and
  // u (deg 2), of length <= len; basis ordered by length then symbol.
  auto sym_degree = [](char c) { return c == 'x' ? 0 : c == 'U' ? 1 : 2; };
  std::vector<std::string> words{""};
  {
    std::vector<std::string> layer{""};
    for (int l = 1; l <= len; ++l) {
      std::vector<std::string> next;
      for (const auto& w : layer)
        for (char c : {'x', 'u', 'U'}) next.push_back(w + c);
      words.insert(words.end(), next.begin(), next.end());
      layer = std::move(next);
    }
  }
  std::vector<std::pair<std::string, int>> bbasis;
  std::map<std::string, int> windex;
  for (const auto& w : words) {
    int deg = 0;
    for (char c : w) deg += sym_degree(c);
    windex.emplace(w, static_cast<int>(bbasis.size()));
    bbasis.emplace_back(w.empty() ? "e" : w, deg);
  }
  auto B = std::make_shared<const GradedSpace>("B", bbasis);

  GradedMap dA(A, 1, A, 1, -1, "dA");
  GradedMap muA(A, 2, A, 1, 0, "muA");
  for (int a = 0; a <= len; ++a)
    for (int b = 0; a + b <= len; ++b) {
      Word in;
      in.push_back(static_cast<char16_t>(a));
      in.push_back(static_cast<char16_t>(b));
      muA.add(in, word1(a + b), 1);
    }

  // Leibniz differential generated by u -> U, with the sign of carrying a
  // degree -1 operator past the prefix.
  GradedMap dB(B, 1, B, 1, -1, "dB");
  for (size_t i = 0; i < words.size(); ++i) {
    Element out;
    int prefix = 0;
    for (size_t j = 0; j < words[i].size(); ++j) {
      if (words[i][j] == 'u') {
        std::string w = words[i];
        w[j] = 'U';
        add_term(out, word1(windex.at(w)), prefix % 2 ? -1 : 1);
      }
      prefix += sym_degree(words[i][j]);
    }
    if (!out.empty()) dB.set_entry(word1(static_cast<int>(i)), std::move(out));
  }

  GradedMap muB(B, 2, B, 1, 0, "muB");
  for (size_t a = 0; a < words.size(); ++a)
    for (size_t b = 0; b < words.size(); ++b) {
      if (words[a].size() + words[b].size() > static_cast<size_t>(len))
        continue;
      Word in;
      in.push_back(static_cast<char16_t>(a));
      in.push_back(static_cast<char16_t>(b));
      muB.add(in, word1(windex.at(words[a] + words[b])), 1);
    }

  GradedMap f1(A, 1, B, 1, 0, "f1");
  for (int k = 0; k <= len; ++k)
    f1.add(word1(k), word1(windex.at(std::string(k, 'x'))), 1);
  GradedMap g1(B, 1, A, 1, 0, "g1");
  for (size_t i = 0; i < words.size(); ++i)
    if (words[i].find_first_not_of('x') == std::string::npos)
      g1.add(word1(static_cast<int>(i)),
             word1(static_cast<int>(words[i].size())), 1);
  GradedMap h(A, 1, A, 1, 1, "h");  // forced zero: A sits in degree 0

  // l with f1 g1 - id = dB l + l dB, solved exactly (the complement of the
  // x-power span is acyclic, so a solution exists).
  GradedMap rhs = map_sub(compose(f1, g1), identity_map(B));
  auto sol = solve_map_equation(
      MapShape{B, 1, B, 1, 1},
      [&dB](const GradedMap& x) {
        GradedMap r = compose(dB, x);
        r += compose(x, dB);
        return r;
      },
      rhs);
  if (!sol) throw invariant_error("corpus contraction has no solution");
  GradedMap l = std::move(*sol);
  l.set_name("l");

  p.spaces.emplace_back("A", A);
  p.spaces.emplace_back("B", B);
  p.maps.emplace_back("dA", dA);
  p.maps.emplace_back("muA", muA);
  p.maps.emplace_back("dB", dB);
  p.maps.emplace_back("muB", muB);
  p.maps.emplace_back("f1", f1);
  p.maps.emplace_back("g1", g1);
  p.maps.emplace_back("h", h);
  p.maps.emplace_back("l", l);

  ProblemFile::ComplexDecl ca{"CA", "A", "dA", ChainComplex(A, dA)};
  ProblemFile::ComplexDecl cb{"CB", "B", "dB", ChainComplex(B, dB)};
  p.complexes.push_back(ca);
  p.complexes.push_back(cb);

  ProblemFile::StructureDecl sa{"SA", "CA", {{2, "muA"}}, nullptr};
  sa.value = std::make_shared<const AInfStructure>(
      *ca.value, std::map<int, GradedMap>{{2, muA}}, max_arity);
  ProblemFile::StructureDecl sb{"SB", "CB", {{2, "muB"}}, nullptr};
  sb.value = std::make_shared<const AInfStructure>(
      *cb.value, std::map<int, GradedMap>{{2, muB}}, max_arity);
  p.structures.push_back(sa);
  p.structures.push_back(sb);

  ProblemFile::HomotopyDecl hd{"H", "CA", "CB", "f1", "g1",
                               "h", "l",  std::nullopt};
  hd.value.emplace(*ca.value, *cb.value, f1, g1, h, l);
  p.homotopies.push_back(std::move(hd));

  ProblemFile::MorphismDecl F{"F", "SA", "SB", {{1, "f1"}}, std::nullopt};
  F.value = WeakMorphism::from_components(sa.value, sb.value,
                                          {{1, f1}});
  p.morphisms.push_back(std::move(F));
  return p;
}

}  // namespace ainf
