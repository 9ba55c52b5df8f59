#include "tcat/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tcat/corpus.hpp"

namespace tcat {

namespace {

struct Loaded {
  std::vector<SourceText> sources;
  bool ok = true;
};

bool read_file(const std::string& path, std::string& text, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << path << ": error[IoError]: cannot read file\n";
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

Loaded load(const std::vector<std::string>& paths, std::ostream& err) {
  Loaded out;
  for (const std::string& p : paths) {
    SourceText s{p, {}};
    if (read_file(p, s.text, err)) {
      out.sources.push_back(std::move(s));
    } else {
      out.ok = false;
    }
  }
  return out;
}

void print_failures(const CorpusReport& report, std::ostream& err) {
  for (const Failure& f : report.failures) {
    err << f.span.to_string() << ": error[" << f.category << "]";
    if (!f.name.empty() && f.kind == FailureKind::Type) err << " in " << f.name;
    err << ": " << f.message << "\n";
  }
  for (const AxiomMismatch& m : report.axiom_mismatches) {
    err << "manifest: error[ManifestMismatch]: " << m.name << " expects axioms "
        << format_axioms(m.expected) << " but depends on " << format_axioms(m.actual) << "\n";
  }
}

int exit_code(const CorpusReport& report) {
  if (report.has(FailureKind::Parse)) return kExitParseOrIo;
  if (report.has(FailureKind::Type)) return kExitCheckFailure;
  if (report.has(FailureKind::Missing) || !report.axiom_mismatches.empty()) {
    return kExitManifestMismatch;
  }
  return kExitOk;
}

int cmd_check(const std::vector<std::string>& files, const std::string& manifest_path,
              bool forbid_axioms, std::ostream& out, std::ostream& err) {
  Loaded loaded = load(files, err);
  if (!loaded.ok) return kExitParseOrIo;

  CorpusReport report;
  if (!manifest_path.empty()) {
    std::string text;
    if (!read_file(manifest_path, text, err)) return kExitParseOrIo;
    CorpusManifest manifest;
    try {
      manifest = load_manifest(text, &files);
    } catch (const ManifestError& e) {
      err << manifest_path << ": error[ManifestError]: " << e.what() << "\n";
      return kExitParseOrIo;
    }
    report = check_corpus(loaded.sources, manifest);
  } else {
    report = check_sources(loaded.sources);
  }
  print_failures(report, err);
  int code = exit_code(report);

  if (forbid_axioms && code == kExitOk) {
    for (const DeclPtr& d : report.env.decls()) {
      if (d->kind == DeclKind::Def && !d->axiom_closure.empty()) {
        err << d->span.to_string() << ": error[AxiomDependency] in " << d->name
            << ": depends on axioms " << format_axioms(d->axiom_closure) << "\n";
        code = kExitCheckFailure;
      }
    }
  }
  if (code == kExitOk) {
    out << "ok: " << report.checked_decls << " declarations in " << files.size() << " files\n";
  }
  return code;
}

// Shared front half of `axioms` and `normalize`: check everything first.
int checked_env(const std::vector<std::string>& files, CorpusReport& report, std::ostream& err) {
  Loaded loaded = load(files, err);
  if (!loaded.ok) return kExitParseOrIo;
  report = check_sources(loaded.sources);
  print_failures(report, err);
  return exit_code(report);
}

int cmd_axioms(const std::vector<std::string>& files, const std::string& name, std::ostream& out,
               std::ostream& err) {
  CorpusReport report;
  if (int code = checked_env(files, report, err)) return code;
  const Declaration* d = report.env.find(name);
  if (!d) {
    err << "error[UnboundName]: unknown declaration '" << name << "'\n";
    return kExitCheckFailure;
  }
  for (const std::string& a : d->axiom_closure) out << a << "\n";
  return kExitOk;
}

int cmd_normalize(const std::vector<std::string>& files, const std::string& name,
                  std::ostream& out, std::ostream& err) {
  CorpusReport report;
  if (int code = checked_env(files, report, err)) return code;
  const Declaration* d = report.env.find(name);
  if (!d) {
    err << "error[UnboundName]: unknown declaration '" << name << "'\n";
    return kExitCheckFailure;
  }
  if (d->kind == DeclKind::Axiom) {
    out << name << "\n";
    return kExitOk;
  }
  out << print_core(normalize(report.env, name), {}, &report.env) << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tcat: type checker for the category equality corpus", "tcat"};
  app.require_subcommand(1);

  std::vector<std::string> check_files;
  std::string manifest;
  bool forbid = false;
  CLI::App* check = app.add_subcommand("check", "check files, optionally against a manifest");
  check->add_option("files", check_files, "source files")->required();
  check->add_option("--manifest", manifest, "manifest of expected axiom dependencies");
  check->add_flag("--forbid-axioms", forbid, "fail if any definition depends on an axiom");

  std::vector<std::string> axioms_args;
  CLI::App* axioms = app.add_subcommand("axioms", "print the axioms a declaration depends on");
  axioms->add_option("args", axioms_args, "files followed by a declaration name")->required();

  std::vector<std::string> normalize_args;
  CLI::App* norm = app.add_subcommand("normalize", "print the normal form of a definition");
  norm->add_option("args", normalize_args, "files followed by a declaration name")->required();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  auto split = [&](std::vector<std::string> v, std::vector<std::string>& files, std::string& name) {
    if (v.size() < 2) return false;
    name = v.back();
    v.pop_back();
    files = std::move(v);
    return true;
  };

  try {
    if (check->parsed()) return cmd_check(check_files, manifest, forbid, out, err);
    std::vector<std::string> files;
    std::string name;
    if (axioms->parsed()) {
      if (!split(axioms_args, files, name)) {
        err << "usage error: tcat axioms <files...> <name>\n";
        return kExitUsage;
      }
      return cmd_axioms(files, name, out, err);
    }
    if (!split(normalize_args, files, name)) {
      err << "usage error: tcat normalize <files...> <name>\n";
      return kExitUsage;
    }
    return cmd_normalize(files, name, out, err);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tcat
