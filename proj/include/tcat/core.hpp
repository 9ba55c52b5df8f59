#ifndef TCAT_CORE_HPP
#define TCAT_CORE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

namespace tcat {

struct Declaration;
using DeclPtr = std::shared_ptr<const Declaration>;

struct CoreTerm;
using Term = std::shared_ptr<const CoreTerm>;

// Elaborated kernel syntax. Variables are de Bruijn indices (0 = innermost);
// every binder carries its domain; globals point at checked declarations.
namespace core {
struct Var { std::uint32_t index; };
struct Global { DeclPtr decl; };
struct Universe { std::uint32_t level; };
struct Pi { std::string name; Term domain; Term codomain; };
struct Lam { std::string name; Term domain; Term body; };
struct App { Term fn; Term arg; };
struct Sigma { std::string name; Term first; Term second; };
struct Pair { Term first; Term second; };
struct Fst { Term pair; };
struct Snd { Term pair; };
struct IdTy { Term type; Term lhs; Term rhs; };
struct Refl { Term type; Term point; };
struct J { Term type; Term base; Term motive; Term base_case; Term endpoint; Term proof; };
struct Empty {};
struct ElimEmpty { Term motive; Term scrutinee; };
struct Unit {};
struct Star {};
struct ElimUnit { Term motive; Term star_case; Term scrutinee; };
struct Bool {};
struct BZero {};
struct BOne {};
struct ElimBool { Term motive; Term zero_case; Term one_case; Term scrutinee; };
}  // namespace core

using CoreNode =
    std::variant<core::Var, core::Global, core::Universe, core::Pi, core::Lam, core::App,
                 core::Sigma, core::Pair, core::Fst, core::Snd, core::IdTy, core::Refl, core::J,
                 core::Empty, core::ElimEmpty, core::Unit, core::Star, core::ElimUnit, core::Bool,
                 core::BZero, core::BOne, core::ElimBool>;

struct CoreTerm {
  CoreNode node;
};

template <class Node>
Term make_term(Node node) {
  return std::make_shared<const CoreTerm>(CoreTerm{CoreNode{std::move(node)}});
}

// Structural equality on de Bruijn terms; binder names are ignored and globals
// compare by declaration name.
bool syntactically_equal(const Term& a, const Term& b);

}  // namespace tcat

#endif
