#ifndef TCAT_CORPUS_HPP
#define TCAT_CORPUS_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tcat/kernel.hpp"
#include "tcat/syntax.hpp"

namespace tcat {

struct ManifestEntry {
  std::string name;
  std::string file;
  std::set<std::string> expected_axioms;
  DeclKind kind;  // Axiom exactly when the expected set is the entry's own name
  int line;
};

struct CorpusManifest {
  std::vector<std::string> files;  // dependency order, first mention first
  std::vector<ManifestEntry> entries;
};

class ManifestError : public std::runtime_error {
 public:
  ManifestError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Line format: `name <TAB> file <TAB> axiom,axiom|-`; `#` starts a comment.
// When `known_files` is given, every referenced file must be one of them
// (compared by base name).
CorpusManifest load_manifest(std::string_view text,
                             const std::vector<std::string>* known_files = nullptr);

struct SourceText {
  std::string path;
  std::string text;
};

enum class FailureKind { Parse, Type, Missing };

struct Failure {
  FailureKind kind;
  std::string name;  // declaration or manifest entry; empty for file-level errors
  SrcSpan span;
  std::string category;
  std::string message;
};

struct AxiomMismatch {
  std::string name;
  std::set<std::string> expected;
  std::set<std::string> actual;
};

struct CorpusReport {
  std::size_t checked_decls = 0;
  std::vector<std::string> file_order;
  std::vector<Failure> failures;
  std::vector<AxiomMismatch> axiom_mismatches;
  GlobalEnv env;

  bool ok() const { return failures.empty() && axiom_mismatches.empty(); }
  bool has(FailureKind kind) const;
};

std::string base_name(const std::string& path);

// Checks the files into one environment. Files are taken in the given order,
// except that a file is moved after any other given file that declares a
// name it uses. A failing declaration is skipped and checking continues.
CorpusReport check_sources(const std::vector<SourceText>& sources);

// Checks files in manifest order (unlisted files follow, in the given order)
// and compares every entry's axiom closure with its expected set.
CorpusReport check_corpus(const std::vector<SourceText>& sources, const CorpusManifest& manifest);

std::string format_axioms(const std::set<std::string>& axioms);

}  // namespace tcat

#endif
