#include <doctest.h>

#include "tcat/syntax.hpp"

using namespace tcat;

namespace {

std::vector<TokenKind> kinds(std::string_view text) {
  std::vector<TokenKind> out;
  for (const Token& t : tokenize(text)) out.push_back(t.kind);
  return out;
}

}  // namespace

TEST_CASE("tokenize lambda") {
  auto toks = tokenize("fun x => x");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0].kind == TokenKind::KwFun);
  CHECK(toks[1].kind == TokenKind::Ident);
  CHECK(toks[1].text == "x");
  CHECK(toks[2].kind == TokenKind::FatArrow);
  CHECK(toks[3].kind == TokenKind::Ident);
}

TEST_CASE("tokenize pi binder") {
  CHECK(kinds("(A : U 0) -> A") ==
        std::vector<TokenKind>{TokenKind::LParen, TokenKind::Ident, TokenKind::Colon, TokenKind::KwU,
                               TokenKind::Nat, TokenKind::RParen, TokenKind::Arrow, TokenKind::Ident});
}

TEST_CASE("tokenize strips line comments") {
  CHECK(kinds("def -- comment\n") == std::vector<TokenKind>{TokenKind::KwDef});
}

TEST_CASE("tokenize reports spans") {
  auto toks = tokenize("def\n  x", "f.tt");
  REQUIRE(toks.size() == 2);
  CHECK(toks[1].span.file == "f.tt");
  CHECK(toks[1].span.start_line == 2);
  CHECK(toks[1].span.start_col == 3);
}

TEST_CASE("tokenize rejects stray characters") {
  CHECK_THROWS_AS(tokenize("def x := #;"), ParseError);
}

TEST_CASE("parse_file definition") {
  SourceFile f = parse_file("def idfun : (A : U 0) -> A -> A := fun A x => x;");
  REQUIRE(f.decls.size() == 1);
  CHECK(f.decls[0].kind == DeclKind::Def);
  CHECK(f.decls[0].name == "idfun");
  REQUIRE(f.decls[0].body);
  CHECK(alpha_equal(f.decls[0].body, parse_term("fun A => fun x => x")));
}

TEST_CASE("parse_file axiom") {
  SourceFile f = parse_file("axiom ZAC : (A : U 0) -> A;");
  REQUIRE(f.decls.size() == 1);
  CHECK(f.decls[0].kind == DeclKind::Axiom);
  CHECK(f.decls[0].name == "ZAC");
  CHECK_FALSE(f.decls[0].body);
}

TEST_CASE("parse_file keeps source order") {
  SourceFile f = parse_file("def a := b0; axiom b : N2; def c := a;");
  REQUIRE(f.decls.size() == 3);
  CHECK(f.decls[0].name == "a");
  CHECK(f.decls[1].name == "b");
  CHECK(f.decls[2].name == "c");
}

TEST_CASE("missing term is a parse error at the semicolon") {
  try {
    parse_file("def x :=;");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span().start_col == 9);
    CHECK(e.found() == "';'");
  }
}

TEST_CASE("application is left-associative and arrows right-associative") {
  CHECK(alpha_equal(parse_term("f a b"), parse_term("(f a) b")));
  CHECK_FALSE(alpha_equal(parse_term("f a b"), parse_term("f (a b)")));
  CHECK(alpha_equal(parse_term("A -> B -> C"), parse_term("A -> (B -> C)")));
  CHECK_FALSE(alpha_equal(parse_term("A -> B -> C"), parse_term("(A -> B) -> C")));
}

TEST_CASE("print_term canonical forms") {
  CHECK(print_term(make_raw(raw::Lam{"x", make_raw(raw::Var{"x"})})) == "fun x => x");
  auto pi = make_raw(raw::Pi{"A", make_raw(raw::Universe{0}),
                             make_raw(raw::Pi{"_", make_raw(raw::Var{"A"}), make_raw(raw::Var{"A"})})});
  CHECK(print_term(pi) == "(A : U 0) -> A -> A");
}

TEST_CASE("print then parse is alpha identity") {
  for (const char* src : {"fun x y => x", "(x : N2) ** Id N2 x b0", "J A a (fun y p => Id A a y) (refl A a) b q",
                          "elim2 (fun _ => U 0) N1 N0 (f (g x))", "(f : (a : A) -> B a) -> C (fst p) (snd p)",
                          "pair (fun x => x) star", "elim0 C e", "elim1 C star s"}) {
    RawPtr t = parse_term(src);
    CHECK_MESSAGE(alpha_equal(parse_term(print_term(t)), t), src);
  }
}

TEST_CASE("alpha equality ignores bound names only") {
  CHECK(alpha_equal(parse_term("fun x => x"), parse_term("fun y => y")));
  CHECK_FALSE(alpha_equal(parse_term("fun x => y"), parse_term("fun y => y")));
}

TEST_CASE("free names") {
  CHECK(free_names(parse_term("fun x => f x (g y) f")) == std::vector<std::string>{"f", "g", "y"});
}
