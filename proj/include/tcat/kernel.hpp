#ifndef TCAT_KERNEL_HPP
#define TCAT_KERNEL_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcat/core.hpp"
#include "tcat/syntax.hpp"
#include "tcat/value.hpp"

namespace tcat {

// Closed list of kernel error categories.
//   UnboundName        name is neither local nor a declared global
//   NotAFunction       application of, or lambda checked against, a non-Pi
//   NotAPair           projection of, or pair checked against, a non-Sigma
//   TypeMismatch       inferred type is not a subtype of the expected one
//                      (also: an eliminator motive of the wrong shape)
//   UniverseError      universe level too small, e.g. U 0 : U 0
//   ExpectedType       a type was required, or the term cannot be inferred
//                      (bare lambda or pair without annotation)
//   IdEndpointMismatch identity endpoints not in the carrier, or a proof
//                      whose endpoints differ from the ones required
//   DuplicateName      a declaration reuses an existing global name
enum class ErrorCategory {
  UnboundName,
  NotAFunction,
  NotAPair,
  TypeMismatch,
  UniverseError,
  ExpectedType,
  IdEndpointMismatch,
  DuplicateName,
};

std::string_view category_name(ErrorCategory c);

class TypeError : public std::runtime_error {
 public:
  TypeError(ErrorCategory category, SrcSpan span, std::string message, std::string expected = {},
            std::string actual = {});

  ErrorCategory category() const { return category_; }
  const SrcSpan& span() const { return span_; }
  const std::string& message() const { return message_; }
  const std::string& expected() const { return expected_; }
  const std::string& actual() const { return actual_; }

 private:
  ErrorCategory category_;
  SrcSpan span_;
  std::string message_;
  std::string expected_;
  std::string actual_;
};

// Ordered map name -> checked declaration. Entries only refer to earlier ones.
class GlobalEnv {
 public:
  const Declaration* find(const std::string& name) const;
  DeclPtr find_ptr(const std::string& name) const;
  void add(DeclPtr decl);

  const std::vector<DeclPtr>& decls() const { return order_; }
  std::size_t size() const { return order_.size(); }

 private:
  std::vector<DeclPtr> order_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Typing context: names and types of bound variables plus the evaluation
// environment holding their values.
class Context {
 public:
  Context() = default;

  Context bind(std::string name, Val type) const;

  std::uint32_t depth() const { return static_cast<std::uint32_t>(names_.size()); }
  const Env& env() const { return env_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Val>& types() const { return types_; }

 private:
  std::vector<std::string> names_;
  std::vector<Val> types_;
  Env env_;
};

struct Inferred {
  Term term;
  Val type;
};

Inferred infer(const GlobalEnv& globals, const Context& ctx, const RawPtr& term);
Term check(const GlobalEnv& globals, const Context& ctx, const RawPtr& term, const Val& expected);

// Checks and appends one declaration.
GlobalEnv check_declaration(GlobalEnv globals, const RawDecl& decl);

// Union of the axiom closures of all globals mentioned in a type and body.
std::set<std::string> referenced_axioms(const Term& type, const Term& body);

// Throws TypeError(UnboundName) when the name is not declared.
std::set<std::string> axiom_closure(const GlobalEnv& globals, const std::string& name);

// Beta-normal form with definitions unfolded and axioms left opaque.
Term normalize(const GlobalEnv& globals, const std::string& name);
Term normalize(const GlobalEnv& globals, const RawPtr& closed_term);
Term normalize_term(const Term& closed_term);

// Printing of core terms through the surface printer. `names` lists the
// bound variables outermost first; globals print folded unless unfolded by
// the caller.
RawPtr to_raw(const Term& term, std::vector<std::string> names,
              const GlobalEnv* globals = nullptr);
std::string print_core(const Term& term, const std::vector<std::string>& names = {},
                       const GlobalEnv* globals = nullptr);
std::string print_value(const Val& v, const std::vector<std::string>& names,
                        const GlobalEnv* globals = nullptr);

}  // namespace tcat

#endif
