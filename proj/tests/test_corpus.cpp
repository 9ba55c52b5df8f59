#include <doctest.h>

#include "tcat/corpus.hpp"
#include "test_support.hpp"

using namespace tcat;
using namespace tcat::testing;

namespace {

std::set<std::string> missing_names(const CorpusReport& r) {
  std::set<std::string> out;
  for (const Failure& f : r.failures) {
    if (f.kind == FailureKind::Missing) out.insert(f.name);
  }
  return out;
}

bool failed(const CorpusReport& r, const std::string& name, const std::string& category) {
  return std::any_of(r.failures.begin(), r.failures.end(),
                     [&](const Failure& f) { return f.name == name && f.category == category; });
}

}  // namespace

TEST_CASE("manifest lines") {
  CorpusManifest m = load_manifest("uip_to_h\thcat.tt\t-\nclassext\tzac.tt\tZAC\n");
  REQUIRE(m.entries.size() == 2);
  CHECK(m.entries[0].name == "uip_to_h");
  CHECK(m.entries[0].file == "hcat.tt");
  CHECK(m.entries[0].expected_axioms.empty());
  CHECK(m.entries[1].expected_axioms == std::set<std::string>{"ZAC"});
  CHECK(m.files == std::vector<std::string>{"hcat.tt", "zac.tt"});
}

TEST_CASE("manifest comments, blanks and axiom entries") {
  CorpusManifest m = load_manifest("# header\n\nZAC\tzac.tt\tZAC  # the axiom\nx\tzac.tt\tA, B\n");
  REQUIRE(m.entries.size() == 2);
  CHECK(m.entries[0].kind == DeclKind::Axiom);
  CHECK(m.entries[0].line == 3);
  CHECK(m.entries[1].kind == DeclKind::Def);
  CHECK(m.entries[1].expected_axioms == std::set<std::string>{"A", "B"});
}

TEST_CASE("malformed manifest lines") {
  try {
    load_manifest("bad line");
    FAIL("accepted a malformed line");
  } catch (const ManifestError& e) {
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(load_manifest("a\tf.tt\t-\na\tf.tt\t-\n"), ManifestError);
  CHECK_THROWS_AS(load_manifest("a\tf.tt\tX,,Y\n"), ManifestError);
  const std::vector<std::string> known{"dir/f.tt"};
  CHECK_NOTHROW(load_manifest("a\tf.tt\t-\n", &known));
  CHECK_THROWS_AS(load_manifest("a\tg.tt\t-\n", &known), ManifestError);
}

TEST_CASE("check_sources orders files by dependency") {
  CorpusReport r = check_sources({{"b.tt", "def y : N2 := x;"}, {"a.tt", "def x : N2 := b0;"}});
  CHECK(r.ok());
  CHECK(r.file_order == std::vector<std::string>{"a.tt", "b.tt"});
  CHECK(r.checked_decls == 2);
}

TEST_CASE("check_sources keeps going after a failure") {
  CorpusReport r = check_sources({{"a.tt", "def x : N2 := star; def y : N1 := star;"}, {"b.tt", "def ("}});
  CHECK(r.checked_decls == 1);
  CHECK(r.has(FailureKind::Type));
  CHECK(r.has(FailureKind::Parse));
  CHECK(failed(r, "x", "TypeMismatch"));
}

TEST_CASE("shipped corpus matches its manifest") {
  CorpusReport r = check_corpus(corpus_sources(), corpus_manifest());
  for (const Failure& f : r.failures) INFO(f.span.to_string() << " " << f.name << ": " << f.message);
  CHECK(r.failures.empty());
  CHECK(r.axiom_mismatches.empty());
  CHECK(r.checked_decls >= 40);
  CHECK(r.checked_decls == corpus_manifest().entries.size());
}

TEST_CASE("deleting the ZAC axiom breaks its dependents") {
  std::vector<SourceText> sources = corpus_sources();
  for (SourceText& s : sources) {
    if (base_name(s.path) != "zac.tt") continue;
    SourceFile f = parse_file(s.text, s.path);
    s.text = erase_span(s.text, f.decls.at(0).span);
  }
  CorpusReport r = check_corpus(sources, corpus_manifest());
  CHECK(failed(r, "classext", "UnboundName"));
  CHECK(failed(r, "selfcn", "UnboundName"));
  CHECK(missing_names(r) == std::set<std::string>{"ZAC"});
}

TEST_CASE("an axiom set that disagrees with the manifest is a mismatch") {
  CorpusManifest m = corpus_manifest();
  for (ManifestEntry& e : m.entries) {
    if (e.name == "classext") e.expected_axioms.clear();
  }
  CorpusReport r = check_corpus(corpus_sources(), m);
  CHECK(r.failures.empty());
  REQUIRE(r.axiom_mismatches.size() == 1);
  CHECK(r.axiom_mismatches[0].name == "classext");
  CHECK(r.axiom_mismatches[0].expected.empty());
  CHECK(r.axiom_mismatches[0].actual == std::set<std::string>{"ZAC"});
}

TEST_CASE("removing any manifest entry's declaration reports exactly that entry") {
  const CorpusManifest manifest = corpus_manifest();
  const std::vector<SourceText> sources = corpus_sources();
  std::vector<SourceFile> parsed;
  for (const SourceText& s : sources) parsed.push_back(parse_file(s.text, s.path));
  for (const ManifestEntry& e : manifest.entries) {
    std::vector<SourceText> mutated = sources;
    bool removed = false;
    for (std::size_t i = 0; i < sources.size() && !removed; ++i) {
      for (const RawDecl& d : parsed[i].decls) {
        if (d.name != e.name) continue;
        mutated[i].text = erase_span(sources[i].text, d.span);
        removed = true;
        break;
      }
    }
    REQUIRE_MESSAGE(removed, e.name);
    CorpusReport r = check_corpus(mutated, manifest);
    CHECK_MESSAGE(missing_names(r) == std::set<std::string>{e.name}, e.name);
  }
}

TEST_CASE("normal forms of corpus definitions re-check") {
  CorpusReport r = check_corpus(corpus_sources(), corpus_manifest());
  REQUIRE(r.ok());
  for (const DeclPtr& d : r.env.decls()) {
    if (d->kind != DeclKind::Def) continue;
    RawDecl nf{DeclKind::Def, d->name + "_nf", to_raw(d->type, {}, &r.env),
               to_raw(normalize(r.env, d->name), {}, &r.env), {}};
    CHECK_NOTHROW_MESSAGE(check_declaration(r.env, nf), d->name);
  }
}
