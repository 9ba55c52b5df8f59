#ifndef TCAT_VALUE_HPP
#define TCAT_VALUE_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tcat/core.hpp"
#include "tcat/syntax.hpp"

namespace tcat {

struct Value;
using Val = std::shared_ptr<const Value>;

// Persistent evaluation environment; index 0 is the most recent binding.
class Env {
 public:
  Env() = default;

  Env extend(Val v) const;
  const Val& lookup(std::uint32_t index) const;
  std::uint32_t size() const { return size_; }

 private:
  struct Node {
    Val value;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
  std::uint32_t size_ = 0;
};

struct Closure {
  Env env;
  Term body;
};

// Neutral heads: a bound variable (as a de Bruijn level) or a global. A Def
// head makes the neutral "glued": it stands for the unfolding of the
// definition applied to the spine, which force() computes on demand.
struct HeadVar { std::uint32_t level; };
struct HeadGlobal { DeclPtr decl; };
using Head = std::variant<HeadVar, HeadGlobal>;

namespace elim {
struct App { Val arg; };
struct Fst {};
struct Snd {};
struct J { Val type; Val base; Val motive; Val base_case; Val endpoint; };
struct Empty { Val motive; };
struct Unit { Val motive; Val star_case; };
struct Bool { Val motive; Val zero_case; Val one_case; };
}  // namespace elim

using Elim = std::variant<elim::App, elim::Fst, elim::Snd, elim::J, elim::Empty, elim::Unit,
                          elim::Bool>;

// Outermost elimination last.
using Spine = std::vector<Elim>;

namespace val {
struct Universe { std::uint32_t level; };
struct Pi { std::string name; Val domain; Closure codomain; };
struct Lam { std::string name; Val domain; Closure body; };
struct Sigma { std::string name; Val first; Closure second; };
struct Pair { Val first; Val second; };
struct IdTy { Val type; Val lhs; Val rhs; };
struct Refl { Val type; Val point; };
struct Empty {};
struct Unit {};
struct Star {};
struct Bool {};
struct BZero {};
struct BOne {};
struct Neutral { Head head; Spine spine; };
}  // namespace val

using ValueNode = std::variant<val::Universe, val::Pi, val::Lam, val::Sigma, val::Pair, val::IdTy,
                               val::Refl, val::Empty, val::Unit, val::Star, val::Bool, val::BZero,
                               val::BOne, val::Neutral>;

struct Value {
  ValueNode node;
};

template <class Node>
Val make_value(Node node) {
  return std::make_shared<const Value>(Value{ValueNode{std::move(node)}});
}

Val var_value(std::uint32_t level);

// A checked top-level entry. Axioms have no body and stay opaque forever.
struct Declaration {
  std::string name;
  DeclKind kind;
  Term type;
  Val type_value;
  Term body;       // Def only
  Val body_value;  // Def only; evaluated in the empty environment
  std::set<std::string> axiom_closure;
  SrcSpan span;
};

// ---------------------------------------------------------------------------
// Evaluation

Val eval(const Env& env, const Term& term);
Val apply_closure(const Closure& closure, Val arg);

Val do_app(const Val& fn, Val arg);
Val do_fst(const Val& pair);
Val do_snd(const Val& pair);
Val do_j(Val type, Val base, Val motive, Val base_case, Val endpoint, const Val& proof);
Val do_elim_empty(Val motive, const Val& scrutinee);
Val do_elim_unit(Val motive, Val star_case, const Val& scrutinee);
Val do_elim_bool(Val motive, Val zero_case, Val one_case, const Val& scrutinee);

// Unfolds glued definition heads until the head is canonical, a variable or an axiom.
Val force(Val v);

// Read back into a beta-normal term at binder depth `depth`. With
// unfold_defs=false glued globals are kept folded (used for messages).
Term quote(std::uint32_t depth, const Val& v, bool unfold_defs = true);

// Definitional equality: beta, eta for Pi and Sigma, lazy delta.
bool conv(std::uint32_t depth, const Val& a, const Val& b);

// conv plus universe cumulativity, covariant in Pi codomains and Sigma components.
bool subtype(std::uint32_t depth, const Val& sub, const Val& super);

}  // namespace tcat

#endif
