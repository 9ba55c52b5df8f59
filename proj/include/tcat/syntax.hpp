#ifndef TCAT_SYNTAX_HPP
#define TCAT_SYNTAX_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tcat {

// 1-based positions; columns count code points.
struct SrcSpan {
  std::string file;
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;

  std::string to_string() const;
};

SrcSpan join(const SrcSpan& a, const SrcSpan& b);

class ParseError : public std::runtime_error {
 public:
  ParseError(SrcSpan span, std::string expected, std::string found);

  const SrcSpan& span() const { return span_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  SrcSpan span_;
  std::string expected_;
  std::string found_;
};

// ---------------------------------------------------------------------------
// Tokens

enum class TokenKind {
  Ident,
  Nat,
  KwDef,
  KwAxiom,
  KwFun,
  KwU,
  KwPair,
  KwFst,
  KwSnd,
  KwId,
  KwRefl,
  KwJ,
  KwN0,
  KwElim0,
  KwN1,
  KwStar,
  KwElim1,
  KwN2,
  KwB0,
  KwB1,
  KwElim2,
  LParen,
  RParen,
  Colon,
  ColonEq,
  Semi,
  Arrow,
  FatArrow,
  StarStar,
  End,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  SrcSpan span;
};

// `--` starts a line comment. The End token is not included.
std::vector<Token> tokenize(std::string_view text, const std::string& file = "<input>");

// ---------------------------------------------------------------------------
// Raw terms

struct RawTerm;
using RawPtr = std::shared_ptr<const RawTerm>;

namespace raw {
struct Var { std::string name; };
struct Universe { std::uint32_t level; };
struct Pi { std::string name; RawPtr domain; RawPtr codomain; };
struct Lam { std::string name; RawPtr body; };
struct App { RawPtr fn; RawPtr arg; };
struct Sigma { std::string name; RawPtr first; RawPtr second; };
struct Pair { RawPtr first; RawPtr second; };
struct Fst { RawPtr pair; };
struct Snd { RawPtr pair; };
struct IdTy { RawPtr type; RawPtr lhs; RawPtr rhs; };
struct Refl { RawPtr type; RawPtr point; };
struct J {
  RawPtr type;
  RawPtr base;
  RawPtr motive;
  RawPtr base_case;
  RawPtr endpoint;
  RawPtr proof;
};
struct Empty {};
struct ElimEmpty { RawPtr motive; RawPtr scrutinee; };
struct Unit {};
struct Star {};
struct ElimUnit { RawPtr motive; RawPtr star_case; RawPtr scrutinee; };
struct Bool {};
struct BZero {};
struct BOne {};
struct ElimBool { RawPtr motive; RawPtr zero_case; RawPtr one_case; RawPtr scrutinee; };
struct Ann { RawPtr term; RawPtr type; };
}  // namespace raw

using RawNode = std::variant<raw::Var, raw::Universe, raw::Pi, raw::Lam, raw::App, raw::Sigma,
                             raw::Pair, raw::Fst, raw::Snd, raw::IdTy, raw::Refl, raw::J,
                             raw::Empty, raw::ElimEmpty, raw::Unit, raw::Star, raw::ElimUnit,
                             raw::Bool, raw::BZero, raw::BOne, raw::ElimBool, raw::Ann>;

struct RawTerm {
  RawNode node;
  SrcSpan span;
};

template <class Node>
RawPtr make_raw(Node node, SrcSpan span = {}) {
  return std::make_shared<const RawTerm>(RawTerm{RawNode{std::move(node)}, std::move(span)});
}

enum class DeclKind { Def, Axiom };

struct RawDecl {
  DeclKind kind;
  std::string name;
  RawPtr type_expr;  // null for a definition whose type is inferred
  RawPtr body;  // null for axioms
  SrcSpan span;
};

struct SourceFile {
  std::string path;
  std::vector<RawDecl> decls;
};

// Declarations are returned in source order. Name clashes are left to the
// kernel, which reports them as DuplicateName.
SourceFile parse_file(std::string_view text, const std::string& file = "<input>");

// A single term, e.g. for the CLI or tests.
RawPtr parse_term(std::string_view text, const std::string& file = "<input>");

std::string print_term(const RawPtr& term);
std::string print_decl(const RawDecl& decl);

// Equality up to renaming of bound variables; spans are ignored.
bool alpha_equal(const RawPtr& a, const RawPtr& b);

// Names occurring free in the term, in first-occurrence order.
std::vector<std::string> free_names(const RawPtr& term);

}  // namespace tcat

#endif
