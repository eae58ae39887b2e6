// Batch front end: parse a problem file, run one command, print a report.
// Exit codes: 0 success, 1 mathematical failure (residual or nonvanishing
// obstruction), 2 parse/validation error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ainf/lifting.hpp"
#include "ainf/obstruction.hpp"
#include "ainf/problem.hpp"
#include "ainf/transfer.hpp"

using json = nlohmann::ordered_json;
using namespace ainf;

namespace {

using Clock = std::chrono::steady_clock;

struct Options {
  int max_arity = 4;
  int word_length = 3;
  std::string out;
  std::string format = "text";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json failure_json(const GradedSpace& src, const GradedSpace& tgt,
                  const IdentityFailure& f) {
  json terms = json::array();
  for (const auto& [w, c] : f.residual)
    terms.push_back({{"word", tgt.word_label(w)}, {"coef", to_string(c)}});
  return {{"arity", f.arity},
          {"word", src.word_label(f.word)},
          {"residual", terms}};
}

// ---- report ---------------------------------------------------------------

struct Report {
  json j;

  explicit Report(const std::string& command) {
    j["command"] = command;
    j["checks"] = json::array();
  }

  void add_check(const std::string& what, bool pass, json detail = {}) {
    json c = {{"what", what}, {"pass", pass}};
    if (!detail.is_null()) c["detail"] = std::move(detail);
    j["checks"].push_back(std::move(c));
  }

  bool all_pass() const {
    for (const auto& c : j["checks"])
      if (!c["pass"].get<bool>()) return false;
    return true;
  }

  int finish(const Options& opt, const std::string& emitted,
             Clock::time_point start) {
    j["verdict"] = all_pass() ? "pass" : "fail";
    j["elapsed_ms"] = static_cast<long long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                              start)
            .count());
    if (!opt.out.empty() && !emitted.empty()) {
      std::ofstream os(opt.out);
      if (!os) throw parse_error("cannot write '" + opt.out + "'");
      os << emitted;
      j["out"] = opt.out;
    }
    if (opt.format == "structured") {
      if (!emitted.empty() && opt.out.empty()) j["emitted"] = emitted;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << j["command"].get<std::string>() << ": "
                << j["verdict"].get<std::string>() << " ("
                << j["elapsed_ms"].get<long long>() << " ms)\n";
      for (const auto& c : j["checks"]) {
        std::cout << "  [" << (c["pass"].get<bool>() ? "ok" : "FAIL") << "] "
                  << c["what"].get<std::string>() << "\n";
        if (c.contains("detail") && !c["pass"].get<bool>())
          std::cout << "        " << c["detail"].dump() << "\n";
      }
      if (!emitted.empty() && opt.out.empty()) std::cout << emitted;
    }
    return all_pass() ? 0 : 1;
  }
};

// ---- emission helpers -----------------------------------------------------

std::string fresh(const ProblemFile& out, const std::string& base) {
  auto taken = [&](const std::string& n) {
    if (out.space(n) || out.map(n) || out.complex(n) || out.structure(n))
      return true;
    for (const auto& h : out.homotopies)
      if (h.name == n) return true;
    for (const auto& m : out.morphisms)
      if (m.name == n) return true;
    return false;
  };
  if (!taken(base)) return base;
  for (int i = 2;; ++i) {
    std::string n = base + "_" + std::to_string(i);
    if (!taken(n)) return n;
  }
}

std::string add_space(ProblemFile& out, const SpacePtr& sp) {
  for (const auto& [n, s] : out.spaces)
    if (same_space(s, sp)) return n;
  std::string name = fresh(out, sp->name());
  out.spaces.emplace_back(name, sp);
  return name;
}

std::string add_map(ProblemFile& out, GradedMap f, const std::string& base) {
  add_space(out, f.source());
  add_space(out, f.target());
  std::string name = fresh(out, base);
  f.set_name(name);
  out.maps.emplace_back(name, std::move(f));
  return name;
}

std::string add_structure(ProblemFile& out, const StructurePtr& s,
                          const std::string& base) {
  for (const auto& d : out.structures)
    if (same_structure(d.value, s)) return d.name;
  std::string sp = add_space(out, s->space());
  std::string dm = add_map(out, s->complex().d(), "d" + base);
  std::string cx = fresh(out, "C" + base);
  out.complexes.push_back({cx, sp, dm, s->complex()});
  ProblemFile::StructureDecl decl{fresh(out, base), cx, {}, s};
  for (const auto& [n, m] : s->mu())
    decl.mu.emplace(n, add_map(out, m, base + "_mu" + std::to_string(n)));
  out.structures.push_back(decl);
  return out.structures.back().name;
}

std::string add_morphism(ProblemFile& out, const WeakMorphism& f,
                         const std::string& base) {
  std::string sn = add_structure(out, f.source(), "S");
  std::string tn = add_structure(out, f.target(), "T");
  ProblemFile::MorphismDecl decl{fresh(out, base), sn, tn, {}, f};
  for (int n = 1; n <= f.source()->max_arity(); ++n) {
    GradedMap c = f.component(n);
    if (c.is_zero_map() && n > 1) continue;
    decl.comp.emplace(n, add_map(out, c, base + std::to_string(n)));
  }
  out.morphisms.push_back(decl);
  return out.morphisms.back().name;
}

bool structures_equal(const StructurePtr& a, const StructurePtr& b) {
  if (!same_space(a->space(), b->space()) ||
      !map_equal(a->complex().d(), b->complex().d()))
    return false;
  for (int n = 2; n <= std::min(a->max_arity(), b->max_arity()); ++n) {
    const GradedMap* ma = a->mu_n(n);
    const GradedMap* mb = b->mu_n(n);
    GradedMap za(a->space(), n, a->space(), 1, n - 2);
    if (!map_equal(ma ? *ma : za, mb ? *mb : za)) return false;
  }
  return true;
}

// ---- commands -------------------------------------------------------------

// Requirements on the input file per command (also in the README):
//   check        any declarations; every structure/morphism is re-verified.
//   transfer     first structure (the source) + first homotopy out of its
//                complex.
//   obstructions two structures (source, target) + a degree-0 map named f1.
//   lift         first morphism Theta + maps named psi (degree 0) and
//                h (degree 1) on its target complex.
//   isotopy      first structure + first homotopy + second structure on the
//                homotopy target; optional morphism used as the extension F.

int cmd_check(const ProblemFile& p, const Options& opt, Clock::time_point t0) {
  Report rep("check");
  for (const auto& s : p.structures) {
    CheckReport r = codiff_check(*s.value);
    json detail;
    if (!r.empty())
      detail = failure_json(*s.value->bar_space(), *s.value->bar_space(),
                            r.front());
    rep.add_check("structure " + s.name + " identities (" +
                      std::to_string(r.size()) + " residuals)",
                  r.empty(), detail);
  }
  for (const auto& m : p.morphisms) {
    CheckReport r = dgmorph_check(*m.value);
    json detail;
    if (!r.empty())
      detail = failure_json(*m.value->source()->bar_space(),
                            *m.value->target()->bar_space(), r.front());
    rep.add_check("morphism " + m.name + " identities (" +
                      std::to_string(r.size()) + " residuals)",
                  r.empty(), detail);
  }
  // Strict-isomorphy queries are supported as plain equality plus a twist by
  // an explicitly given linear automorphism named "twist".
  if (p.structures.size() == 2) {
    const auto& a = p.structures[0].value;
    const auto& b = p.structures[1].value;
    rep.j["structures_equal"] = structures_equal(a, b);
    if (const GradedMap* tw = p.map("twist")) {
      bool twisted = false;
      try {
        twisted = structures_equal(twist_structure(a, *tw), b);
      } catch (const error&) {
      }
      rep.j["equal_after_twist"] = twisted;
    }
  }
  return rep.finish(opt, "", t0);
}

int cmd_transfer(const ProblemFile& p, const Options& opt,
                 Clock::time_point t0) {
  if (p.structures.empty() || p.homotopies.empty())
    throw parse_error("transfer needs a structure and a homotopy");
  Report rep("transfer");
  const StructurePtr& s = p.structures.front().value;
  const HomotopyData& hd = *p.homotopies.front().value;
  if (!same_space(hd.source().space(), s->space()))
    throw parse_error("homotopy source must be the structure's complex");

  StructurePtr nu = transfer_structure(s, hd);
  rep.add_check("transferred structure identities",
                codiff_check(*nu).empty());
  WeakMorphism f = extend_f(s, hd, nu);
  WeakMorphism g = extend_g(s, hd, nu);
  rep.add_check("extension of f1 is a morphism", dgmorph_check(f).empty());
  rep.add_check("extension of g1 is a morphism", dgmorph_check(g).empty());

  ProblemFile out;
  out.max_arity = s->max_arity();
  add_structure(out, nu, "NU");
  add_morphism(out, f, "f");
  add_morphism(out, g, "g");
  return rep.finish(opt, emit_problem(out), t0);
}

int cmd_obstructions(const ProblemFile& p, const Options& opt,
                     Clock::time_point t0) {
  if (p.structures.size() < 2 || !p.map("f1"))
    throw parse_error("obstructions needs two structures and a map named f1");
  Report rep("obstructions");
  const StructurePtr& s = p.structures[0].value;
  const StructurePtr& t = p.structures[1].value;
  int up_to = std::min({opt.max_arity, s->max_arity(), t->max_arity()});
  auto classes = obstruction_classes(s, t, *p.map("f1"), up_to);
  json table = json::array();
  for (const auto& c : classes) {
    json coords = json::array();
    for (const auto& x : c.class_coords) coords.push_back(to_string(x));
    table.push_back({{"arity", c.arity},
                     {"vanishes", c.vanishes},
                     {"class", coords}});
    rep.add_check("obstruction class at arity " + std::to_string(c.arity) +
                      " vanishes",
                  c.vanishes);
  }
  rep.j["classes"] = table;
  return rep.finish(opt, "", t0);
}

int cmd_lift(const ProblemFile& p, const Options& opt, Clock::time_point t0) {
  if (p.morphisms.empty() || !p.map("psi") || !p.map("h"))
    throw parse_error("lift needs a morphism and maps named psi and h");
  Report rep("lift");
  const WeakMorphism& theta = *p.morphisms.front().value;
  WeakMorphism lifted = lift_homotopic_chain_map(theta, *p.map("psi"),
                                                 *p.map("h"));
  rep.add_check("lifted morphism identities", dgmorph_check(lifted).empty());
  rep.add_check("linear part equals psi",
                map_equal(lifted.component(1), *p.map("psi")));
  ProblemFile out;
  out.max_arity = theta.source()->max_arity();
  add_morphism(out, lifted, "lift");
  return rep.finish(opt, emit_problem(out), t0);
}

int cmd_isotopy(const ProblemFile& p, const Options& opt,
                Clock::time_point t0) {
  if (p.structures.empty() || p.homotopies.empty())
    throw parse_error("isotopy needs a structure and a homotopy");
  Report rep("isotopy");
  const StructurePtr& s = p.structures.front().value;
  const HomotopyData& hd = *p.homotopies.front().value;
  if (!same_space(hd.source().space(), s->space()))
    throw parse_error("homotopy source must be the structure's complex");

  std::optional<WeakMorphism> F;
  if (!p.morphisms.empty()) {
    F = *p.morphisms.front().value;
  } else {
    // No extension given: run the obstruction induction against the second
    // structure and assemble the extension from the recorded preimages.
    if (p.structures.size() < 2)
      throw parse_error("isotopy needs a target structure or a morphism");
    const StructurePtr& t = p.structures[1].value;
    auto classes = obstruction_classes(s, t, hd.f1(), s->max_arity());
    std::map<int, GradedMap> comp{{1, hd.f1()}};
    for (const auto& c : classes) {
      if (!c.vanishes) {
        json coords = json::array();
        for (const auto& x : c.class_coords) coords.push_back(to_string(x));
        rep.add_check("obstruction class at arity " +
                          std::to_string(c.arity) + " vanishes",
                      false, {{"class", coords}});
        return rep.finish(opt, "", t0);
      }
      if (!c.preimage.is_zero_map()) comp.emplace(c.arity, c.preimage);
    }
    F = WeakMorphism::from_components(s, t, comp);
  }

  WeakMorphism phi = construct_isotopy(s, hd, *F);
  rep.add_check("isotopy identities", dgmorph_check(phi).empty());
  rep.add_check("linear part is the identity",
                map_equal(phi.component(1), identity_map(phi.source()->space())));
  ProblemFile out;
  out.max_arity = s->max_arity();
  add_morphism(out, phi, "phi");
  return rep.finish(opt, emit_problem(out), t0);
}

int cmd_corpus(const std::string& name, const Options& opt,
               Clock::time_point t0) {
  if (name != "free-transfer")
    throw parse_error("unknown corpus '" + name + "'");
  Report rep("corpus");
  ProblemFile p = free_transfer_corpus(opt.word_length, opt.max_arity);
  rep.add_check("generated instance validates", true);
  return rep.finish(opt, emit_problem(p), t0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact engine for truncated homotopy-associative structures"};
  app.require_subcommand(1);

  Options opt;
  std::string file, corpus_name;

  auto add_common = [&](CLI::App* c, bool corpus) {
    c->add_option("--max-arity", opt.max_arity, "truncation arity")
        ->default_val(4);
    c->add_option("--out", opt.out, "write emitted objects to this file");
    c->add_option("--format", opt.format, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->default_val("text");
    if (corpus) {
      c->add_option("name", corpus_name, "corpus name")->required();
      c->add_option("--word-length", opt.word_length, "truncation length")
          ->default_val(3);
    } else {
      c->add_option("file", file, "problem file")->required();
    }
  };

  add_common(app.add_subcommand("check", "verify all declared objects"),
             false);
  add_common(app.add_subcommand("transfer", "transfer along homotopy data"),
             false);
  add_common(
      app.add_subcommand("obstructions", "extension obstruction classes"),
      false);
  add_common(app.add_subcommand("lift", "lift a morphism along a homotopy"),
             false);
  add_common(app.add_subcommand("isotopy", "isotopy to a transfer"), false);
  add_common(app.add_subcommand("corpus", "generate a named corpus file"),
             true);

  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();
  Clock::time_point t0 = Clock::now();

  try {
    if (cmd == "corpus") return cmd_corpus(corpus_name, opt, t0);
    ProblemFile p;
    try {
      p = parse_problem(read_file(file));
    } catch (const error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    if (cmd == "check") return cmd_check(p, opt, t0);
    if (cmd == "transfer") return cmd_transfer(p, opt, t0);
    if (cmd == "obstructions") return cmd_obstructions(p, opt, t0);
    if (cmd == "lift") return cmd_lift(p, opt, t0);
    return cmd_isotopy(p, opt, t0);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
