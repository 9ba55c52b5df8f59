#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>

#include "tcat/kernel.hpp"
#include "test_support.hpp"

using namespace tcat;
using namespace tcat::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Cmd {
  int code;
  std::string out;  // stdout
  std::string err;  // stderr
};

std::string quote_arg(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

Cmd tcat_cmd(const std::vector<std::string>& args) {
  const fs::path err_file = fs::temp_directory_path() / "tcat_acceptance_stderr.txt";
  std::string cmd = quote_arg(TCAT_BINARY);
  for (const std::string& a : args) cmd += " " + quote_arg(a);
  cmd += " 2>" + quote_arg(err_file.string());
  Cmd r{-1, {}, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = read_file(err_file);
  return r;
}

std::vector<std::string> corpus_paths(const fs::path& dir) {
  std::vector<std::string> out;
  for (const auto& p : tt_files(dir)) out.push_back(p.string());
  return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const fs::path kCorpus = source_dir() / "corpus";
const std::string kManifest = (kCorpus / "manifest.tsv").string();

// Axiom-dependent Defs: the two theorems stated under ZAC, and the UIP-from-ZAC
// lemma (with its choice step) that the second theorem's proof relies on.
const std::set<std::string> kZacTheorems = {"selfcn", "classext"};
const std::set<std::string> kZacLemmas = {"path_choice", "zac_uip"};

GlobalEnv checked_corpus(Outcome& o) {
  CorpusReport r = check_corpus(corpus_sources(), corpus_manifest());
  o.require(r.ok(), "corpus does not check cleanly");
  return r.env;
}

GlobalEnv load(std::string_view src) {
  GlobalEnv env;
  for (const RawDecl& d : parse_file(src).decls) env = check_declaration(env, d);
  return env;
}

Outcome corpus_checks_fast() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  Cmd r = tcat_cmd(concat(concat({"check"}, corpus_paths(kCorpus)), {"--manifest", kManifest}));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(r.code == 0, "exit " + std::to_string(r.code) + ": " + r.err);
  std::size_t decls = 0;
  std::sscanf(r.out.c_str(), "ok: %zu", &decls);
  o.require(decls >= 40, "only " + std::to_string(decls) + " declarations");
  o.require(secs < 30.0, "took " + std::to_string(secs) + "s");
  if (o.ok) o.detail = std::to_string(decls) + " declarations in " + std::to_string(secs) + "s";
  return o;
}

Outcome axioms_of(const std::string& name, const std::string& expected) {
  Outcome o;
  Cmd r = tcat_cmd(concat(concat({"axioms"}, corpus_paths(kCorpus)), {name}));
  o.require(r.code == 0, name + ": exit " + std::to_string(r.code) + ": " + r.err);
  o.require(r.out == expected, name + ": printed '" + r.out + "'");
  return o;
}

Outcome aiota_h_to_uip_axiom_free() { return axioms_of("aiota_h_to_uip", ""); }

Outcome uip_to_h_and_corollary() {
  Outcome o = axioms_of("uip_to_h", "");
  Outcome c = axioms_of("corollary_all_ext_uip", "");
  o.require(c.ok, c.detail);
  return o;
}

Outcome zac_reports() {
  Outcome o = axioms_of("classext", "ZAC\n");
  Outcome s = axioms_of("selfcn", "ZAC\n");
  o.require(s.ok, s.detail);
  GlobalEnv env = checked_corpus(o);
  std::map<std::string, std::set<std::string>> expected;
  for (const ManifestEntry& e : corpus_manifest().entries) expected[e.name] = e.expected_axioms;
  for (const DeclPtr& d : env.decls()) {
    o.require(expected.count(d->name), d->name + " missing from manifest");
    o.require(d->axiom_closure == expected[d->name], d->name + " disagrees with manifest");
    if (d->kind != DeclKind::Def || d->axiom_closure.empty()) continue;
    o.require(kZacTheorems.count(d->name) || kZacLemmas.count(d->name),
              d->name + " unexpectedly depends on " + format_axioms(d->axiom_closure));
  }
  return o;
}

Outcome counterexamples_check() {
  Outcome o;
  GlobalEnv env = checked_corpus(o);
  for (const char* n : {"n2_not_univalent", "z2_not_univalent", "precat_set_to_h", "univ_set_skeletal"}) {
    o.require(env.find(n) != nullptr, std::string(n) + " did not check");
  }
  return o;
}

Outcome nbe_goldens() {
  Outcome o;
  GlobalEnv env = load(R"(
    def idb : N2 -> N2 := fun x => x;
    def pr : (x : N2) ** N2 := pair b0 b1;
    axiom C : (y : N2) -> Id N2 b0 y -> U 0;
    axiom d : C b0 (refl N2 b0);
    axiom x : N2;
    axiom y : N2;
  )");
  auto nf = [&](const char* t) { return print_core(normalize(env, parse_term(t)), {}, &env); };
  o.require(nf("idb b0") == "b0", "beta for functions");
  o.require(nf("fst pr") == "b0" && nf("snd pr") == "b1", "beta for pairs");
  o.require(nf("J N2 b0 C d b0 (refl N2 b0)") == "d", "beta for J");
  o.require(nf("elim1 (fun _ => N2) b1 star") == "b1", "beta for elim1");
  o.require(nf("elim2 (fun _ => N2) x y b1") == "y" && nf("elim2 (fun _ => N2) x y b0") == "x",
            "beta for elim2");

  const Env one = Env{}.extend(var_value(0));
  const Term v0 = make_term(core::Var{0});
  Val eta_fn = eval(one, make_term(core::Lam{"z", make_term(core::Bool{}),
                                             make_term(core::App{make_term(core::Var{1}), v0})}));
  o.require(conv(1, var_value(0), eta_fn) && conv(1, eta_fn, var_value(0)), "eta for functions");
  Val eta_pair = eval(one, make_term(core::Pair{make_term(core::Fst{v0}), make_term(core::Snd{v0})}));
  o.require(conv(1, var_value(0), eta_pair) && conv(1, eta_pair, var_value(0)), "eta for pairs");
  o.require(!conv(2, var_value(0), var_value(1)), "distinct identity proofs convertible");
  try {
    load("def bad : (p q : Id N2 b0 b0) -> Id (Id N2 b0 b0) p q := fun p q => refl (Id N2 b0 b0) p;");
    o.require(false, "kernel equated distinct identity proofs");
  } catch (const TypeError&) {
  }

  GlobalEnv corpus = checked_corpus(o);
  std::size_t bodies = 0;
  for (const DeclPtr& d : corpus.decls()) {
    if (d->kind != DeclKind::Def) continue;
    Term once = normalize(corpus, d->name);
    o.require(syntactically_equal(normalize_term(once), once), "normalize not idempotent on " + d->name);
    ++bodies;
  }
  if (o.ok) o.detail = "idempotent on " + std::to_string(bodies) + " bodies";
  return o;
}

Outcome negative_files() {
  Outcome o;
  const auto files = tt_files(source_dir() / "tests" / "negative");
  o.require(files.size() >= 12, "only " + std::to_string(files.size()) + " negative files");
  std::set<std::string> categories, names;
  for (const auto& p : files) {
    names.insert(p.stem().string());
    const std::string text = read_file(p);
    const std::string tag = "-- expect: ";
    o.require(text.rfind(tag, 0) == 0, p.filename().string() + " has no expectation");
    const std::string category = text.substr(tag.size(), text.find('\n') - tag.size());
    categories.insert(category);
    Cmd r = tcat_cmd({"check", p.string()});
    o.require(r.code == (category == "ParseError" ? 2 : 1), p.filename().string() + " exit " + std::to_string(r.code));
    o.require(r.err.find("error[" + category + "]") != std::string::npos, p.filename().string() + ": " + r.err);
  }
  for (const char* c : {"UnboundName", "NotAFunction", "NotAPair", "TypeMismatch", "UniverseError",
                        "ExpectedType", "IdEndpointMismatch", "DuplicateName"}) {
    o.require(categories.count(c), std::string("no negative file for ") + c);
  }
  for (const char* n : {"undeclared_axiom", "universe_in_itself", "id_endpoint_mismatch", "j_motive_arity"}) {
    o.require(names.count(n), std::string("missing ") + n);
  }
  return o;
}

Outcome print_parse_roundtrip() {
  Outcome o;
  std::size_t n = 0;
  for (const SourceText& s : corpus_sources()) {
    for (const RawDecl& d : parse_file(s.text, s.path).decls) {
      SourceFile again = parse_file(print_decl(d));
      o.require(again.decls.size() == 1 && again.decls[0].name == d.name && again.decls[0].kind == d.kind,
                d.name + ": declaration shape changed");
      if (again.decls.size() != 1) continue;
      const RawDecl& e = again.decls[0];
      o.require(bool(d.type_expr) == bool(e.type_expr) && (!d.type_expr || alpha_equal(d.type_expr, e.type_expr)),
                d.name + ": type changed");
      o.require(bool(d.body) == bool(e.body) && (!d.body || alpha_equal(d.body, e.body)), d.name + ": body changed");
      ++n;
    }
  }
  if (o.ok) o.detail = std::to_string(n) + " declarations";
  return o;
}

Outcome mutations() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "tcat_acceptance_mutation";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const auto& p : tt_files(kCorpus)) fs::copy_file(p, dir / p.filename());
  fs::copy_file(kManifest, dir / "manifest.tsv");

  std::string zac = read_file(dir / "zac.tt");
  const std::size_t at = zac.find("\naxiom ZAC ");
  o.require(at != std::string::npos, "no axiom ZAC line");
  if (at != std::string::npos) zac.erase(at + 1, zac.find('\n', at + 1) - at);
  write_file(dir / "zac.tt", zac);
  Cmd r = tcat_cmd(concat(concat({"check"}, corpus_paths(dir)), {"--manifest", (dir / "manifest.tsv").string()}));
  o.require(r.code == 1, "deleted axiom: exit " + std::to_string(r.code));
  o.require(r.err.find("in selfcn") != std::string::npos, "deleted axiom: selfcn not named");
  o.require(r.err.find("in classext") != std::string::npos, "deleted axiom: classext not named");

  for (const auto& p : tt_files(kCorpus)) fs::copy_file(p, dir / p.filename(), fs::copy_options::overwrite_existing);
  std::string manifest = read_file(kManifest);
  const std::size_t line = manifest.find("classext\tzac.tt\tZAC");
  o.require(line != std::string::npos, "manifest has no classext entry");
  if (line != std::string::npos) manifest.replace(line, 19, "classext\tzac.tt\t-");
  write_file(dir / "manifest.tsv", manifest);
  Cmd m = tcat_cmd(concat(concat({"check"}, corpus_paths(dir)), {"--manifest", (dir / "manifest.tsv").string()}));
  o.require(m.code == 3, "changed manifest: exit " + std::to_string(m.code));
  o.require(m.err.find("classext") != std::string::npos, "changed manifest: classext not named");
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"corpus checks against its manifest in under 30s", corpus_checks_fast},
      {"aiota_h_to_uip is axiom-free", aiota_h_to_uip_axiom_free},
      {"uip_to_h is axiom-free and the corollary checks", uip_to_h_and_corollary},
      {"ZAC dependencies match the manifest", zac_reports},
      {"precategory counterexamples check", counterexamples_check},
      {"normalization and conversion goldens", nbe_goldens},
      {"negative files fail with their categories", negative_files},
      {"print then parse is alpha identity", print_parse_roundtrip},
      {"mutations are detected", mutations},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << "\n";
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
