#include "tcat/corpus.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace tcat {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, '\t')) out.push_back(field);
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \r\t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \r\t");
  return s.substr(first, last - first + 1);
}

struct Parsed {
  const SourceText* source;
  std::optional<SourceFile> file;
};

// Stable order in which every file follows the files declaring names it uses.
std::vector<std::size_t> dependency_order(const std::vector<Parsed>& parsed) {
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (!parsed[i].file) continue;
    for (const RawDecl& d : parsed[i].file->decls) owner.emplace(d.name, i);
  }
  std::vector<std::set<std::size_t>> deps(parsed.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (!parsed[i].file) continue;
    auto use = [&](const RawPtr& t) {
      if (!t) return;
      for (const std::string& n : free_names(t)) {
        auto it = owner.find(n);
        if (it != owner.end() && it->second != i) deps[i].insert(it->second);
      }
    };
    for (const RawDecl& d : parsed[i].file->decls) use(d.type_expr), use(d.body);
  }
  std::vector<std::size_t> order;
  std::vector<bool> placed(parsed.size(), false);
  while (order.size() < parsed.size()) {
    std::optional<std::size_t> next;
    for (std::size_t i = 0; i < parsed.size() && !next; ++i) {
      if (placed[i]) continue;
      if (std::all_of(deps[i].begin(), deps[i].end(), [&](std::size_t d) { return placed[d]; })) {
        next = i;
      }
    }
    if (!next) {  // cycle: keep the given order
      for (std::size_t i = 0; i < parsed.size() && !next; ++i) {
        if (!placed[i]) next = i;
      }
    }
    placed[*next] = true;
    order.push_back(*next);
  }
  return order;
}

CorpusReport check_ordered(const std::vector<Parsed>& parsed, const std::vector<std::size_t>& order) {
  CorpusReport report;
  for (std::size_t i : order) {
    const Parsed& p = parsed[i];
    report.file_order.push_back(p.source->path);
    if (!p.file) continue;
    for (const RawDecl& d : p.file->decls) {
      try {
        report.env = check_declaration(report.env, d);
        ++report.checked_decls;
      } catch (const TypeError& e) {
        report.failures.push_back({FailureKind::Type, d.name, e.span(),
                                   std::string(category_name(e.category())), e.message()});
      }
    }
  }
  return report;
}

std::vector<Parsed> parse_all(const std::vector<SourceText>& sources,
                              std::vector<Failure>& failures) {
  std::vector<Parsed> parsed;
  for (const SourceText& s : sources) {
    Parsed p{&s, std::nullopt};
    try {
      p.file = parse_file(s.text, s.path);
    } catch (const ParseError& e) {
      failures.push_back({FailureKind::Parse, {}, e.span(), "ParseError",
                          "expected " + e.expected() + ", found " + e.found()});
    }
    parsed.push_back(std::move(p));
  }
  return parsed;
}

}  // namespace

ManifestError::ManifestError(int line, const std::string& message)
    : std::runtime_error("manifest line " + std::to_string(line) + ": " + message), line_(line) {}

std::string base_name(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::string format_axioms(const std::set<std::string>& axioms) {
  if (axioms.empty()) return "-";
  std::string out;
  for (const std::string& a : axioms) out += (out.empty() ? "" : ",") + a;
  return out;
}

bool CorpusReport::has(FailureKind kind) const {
  return std::any_of(failures.begin(), failures.end(),
                     [&](const Failure& f) { return f.kind == kind; });
}

CorpusManifest load_manifest(std::string_view text, const std::vector<std::string>* known_files) {
  CorpusManifest out;
  std::set<std::string> names;
  std::istringstream in{std::string(text)};
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_tabs(line);
    for (std::string& f : fields) f = trim(f);
    if (fields.size() != 3) {
      throw ManifestError(number, "expected 3 tab-separated fields, found " +
                                      std::to_string(fields.size()));
    }
    ManifestEntry entry{fields[0], fields[1], {}, DeclKind::Def, number};
    if (entry.name.empty() || entry.file.empty()) throw ManifestError(number, "empty field");
    if (!names.insert(entry.name).second) {
      throw ManifestError(number, "duplicate entry '" + entry.name + "'");
    }
    if (fields[2] != "-") {
      std::istringstream axioms(fields[2]);
      std::string a;
      while (std::getline(axioms, a, ',')) {
        a = trim(a);
        if (a.empty()) throw ManifestError(number, "empty axiom name");
        entry.expected_axioms.insert(a);
      }
    }
    if (entry.expected_axioms == std::set<std::string>{entry.name}) entry.kind = DeclKind::Axiom;
    if (known_files) {
      const bool known = std::any_of(known_files->begin(), known_files->end(),
                                     [&](const std::string& f) { return base_name(f) == entry.file; });
      if (!known) throw ManifestError(number, "unknown file '" + entry.file + "'");
    }
    if (std::find(out.files.begin(), out.files.end(), entry.file) == out.files.end()) {
      out.files.push_back(entry.file);
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

CorpusReport check_sources(const std::vector<SourceText>& sources) {
  std::vector<Failure> parse_failures;
  std::vector<Parsed> parsed = parse_all(sources, parse_failures);
  CorpusReport report = check_ordered(parsed, dependency_order(parsed));
  report.failures.insert(report.failures.begin(), parse_failures.begin(), parse_failures.end());
  return report;
}

CorpusReport check_corpus(const std::vector<SourceText>& sources, const CorpusManifest& manifest) {
  std::vector<Failure> parse_failures;
  std::vector<Parsed> parsed = parse_all(sources, parse_failures);

  std::vector<std::size_t> order;
  std::vector<bool> used(parsed.size(), false);
  for (const std::string& f : manifest.files) {
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      if (!used[i] && base_name(parsed[i].source->path) == f) {
        used[i] = true;
        order.push_back(i);
      }
    }
  }
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (!used[i]) order.push_back(i);
  }

  CorpusReport report = check_ordered(parsed, order);
  report.failures.insert(report.failures.begin(), parse_failures.begin(), parse_failures.end());

  std::set<std::string> failed;
  for (const Failure& f : report.failures) failed.insert(f.name);
  for (const ManifestEntry& e : manifest.entries) {
    const Declaration* d = report.env.find(e.name);
    if (!d) {
      if (failed.count(e.name)) continue;  // already reported as a type error
      SrcSpan span;
      span.file = e.file;
      report.failures.push_back({FailureKind::Missing, e.name, span, "ManifestMismatch",
                                 "manifest entry '" + e.name + "' is not declared in " + e.file});
      continue;
    }
    if (base_name(d->span.file) != e.file) {
      report.failures.push_back({FailureKind::Missing, e.name, d->span, "ManifestMismatch",
                                 "manifest places '" + e.name + "' in " + e.file});
      continue;
    }
    if (d->axiom_closure != e.expected_axioms) {
      report.axiom_mismatches.push_back({e.name, e.expected_axioms, d->axiom_closure});
    }
  }
  return report;
}

}  // namespace tcat
