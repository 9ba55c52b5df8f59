#include "tcat/syntax.hpp"

#include <optional>
#include <utility>

namespace tcat {

namespace {

bool starts_atom(TokenKind k) {
  switch (k) {
    case TokenKind::Ident:
    case TokenKind::LParen:
    case TokenKind::KwN0:
    case TokenKind::KwN1:
    case TokenKind::KwN2:
    case TokenKind::KwStar:
    case TokenKind::KwB0:
    case TokenKind::KwB1:
      return true;
    default:
      return false;
  }
}

struct BinderGroup {
  std::vector<std::string> names;
  RawPtr type;
  SrcSpan span;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file, std::string_view text)
      : toks_(std::move(tokens)), file_(std::move(file)) {
    // End token sits just past the last character of the input.
    int line = 1;
    int col = 1;
    for (unsigned char c : text) {
      if (c == '\n') {
        ++line;
        col = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col;
      }
    }
    toks_.push_back(Token{TokenKind::End, "", SrcSpan{file_, line, col, line, col}});
  }

  SourceFile file() {
    SourceFile out;
    out.path = file_;
    while (peek().kind != TokenKind::End) out.decls.push_back(declaration());
    return out;
  }

  RawPtr single_term() {
    RawPtr t = term();
    if (peek().kind != TokenKind::End) fail("end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }

  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found =
        t.kind == TokenKind::End ? std::string("end of input") : "'" + t.text + "'";
    throw ParseError(t.span, expected, found);
  }

  const Token& expect(TokenKind kind, const std::string& what) {
    if (peek().kind != kind) fail(what);
    return take();
  }

  const SrcSpan& prev_span() const { return toks_[pos_ == 0 ? 0 : pos_ - 1].span; }

  RawDecl declaration() {
    const Token& kw = peek();
    if (kw.kind != TokenKind::KwDef && kw.kind != TokenKind::KwAxiom) fail("'def' or 'axiom'");
    SrcSpan start = take().span;
    bool is_def = kw.kind == TokenKind::KwDef;
    std::string name = expect(TokenKind::Ident, "declaration name").text;
    RawPtr type;
    // A definition may omit its type, which is then inferred from the body.
    if (!is_def || peek().kind != TokenKind::ColonEq) {
      expect(TokenKind::Colon, "':'");
      type = term();
    }
    RawPtr body;
    if (is_def) {
      expect(TokenKind::ColonEq, "':='");
      body = term();
    }
    expect(TokenKind::Semi, "';'");
    return RawDecl{is_def ? DeclKind::Def : DeclKind::Axiom, std::move(name), std::move(type),
                   std::move(body), join(start, prev_span())};
  }

  RawPtr term() {
    if (peek().kind == TokenKind::KwFun) {
      SrcSpan start = take().span;
      std::vector<std::string> names;
      while (peek().kind == TokenKind::Ident) names.push_back(take().text);
      if (names.empty()) fail("binder name");
      expect(TokenKind::FatArrow, "'=>'");
      RawPtr body = term();
      SrcSpan span = join(start, body->span);
      for (auto it = names.rbegin(); it != names.rend(); ++it) {
        body = make_raw(raw::Lam{*it, body}, span);
      }
      return body;
    }
    return arrow();
  }

  // `(x y : A)` immediately followed by `->` or `**`; otherwise no input is consumed.
  std::optional<BinderGroup> binder_group() {
    if (peek().kind != TokenKind::LParen || peek(1).kind != TokenKind::Ident) return std::nullopt;
    const std::size_t saved = pos_;
    SrcSpan start = take().span;
    BinderGroup group;
    while (peek().kind == TokenKind::Ident) group.names.push_back(take().text);
    if (peek().kind != TokenKind::Colon) {
      pos_ = saved;
      return std::nullopt;
    }
    take();
    try {
      group.type = term();
    } catch (const ParseError&) {
      pos_ = saved;
      return std::nullopt;
    }
    if (peek().kind != TokenKind::RParen) {
      pos_ = saved;
      return std::nullopt;
    }
    take();
    if (peek().kind != TokenKind::Arrow && peek().kind != TokenKind::StarStar) {
      pos_ = saved;
      return std::nullopt;
    }
    group.span = join(start, prev_span());
    return group;
  }

  template <class Node>
  RawPtr close_group(const BinderGroup& group, RawPtr body) {
    SrcSpan span = join(group.span, body->span);
    for (auto it = group.names.rbegin(); it != group.names.rend(); ++it) {
      body = make_raw(Node{*it, group.type, body}, span);
    }
    return body;
  }

  RawPtr arrow() {
    RawPtr lhs;
    if (auto group = binder_group()) {
      if (peek().kind == TokenKind::Arrow) {
        take();
        return close_group<raw::Pi>(*group, arrow());
      }
      take();  // '**'
      lhs = close_group<raw::Sigma>(*group, sigma());
    } else {
      lhs = sigma();
    }
    if (peek().kind == TokenKind::Arrow) {
      take();
      RawPtr rhs = arrow();
      return make_raw(raw::Pi{"_", lhs, rhs}, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  RawPtr sigma() {
    if (peek().kind == TokenKind::LParen) {
      const std::size_t saved = pos_;
      if (auto group = binder_group()) {
        if (peek().kind == TokenKind::StarStar) {
          take();
          return close_group<raw::Sigma>(*group, sigma());
        }
        pos_ = saved;
      }
    }
    RawPtr lhs = application();
    if (peek().kind == TokenKind::StarStar) {
      take();
      RawPtr rhs = sigma();
      return make_raw(raw::Sigma{"_", lhs, rhs}, join(lhs->span, rhs->span));
    }
    return lhs;
  }

  RawPtr application() {
    RawPtr head = form();
    while (starts_atom(peek().kind)) {
      RawPtr arg = atom();
      head = make_raw(raw::App{head, arg}, join(head->span, arg->span));
    }
    return head;
  }

  // Keyword forms take a fixed number of atomic arguments.
  RawPtr form() {
    const Token& tok = peek();
    SrcSpan start = tok.span;
    auto args = [&](std::size_t n) {
      take();
      std::vector<RawPtr> out;
      for (std::size_t i = 0; i < n; ++i) {
        if (!starts_atom(peek().kind)) fail("term");
        out.push_back(atom());
      }
      return out;
    };
    auto span_to = [&](const RawPtr& last) { return join(start, last->span); };

    switch (tok.kind) {
      case TokenKind::KwU: {
        take();
        const Token& n = expect(TokenKind::Nat, "universe level");
        return make_raw(raw::Universe{static_cast<std::uint32_t>(std::stoul(n.text))},
                        join(start, n.span));
      }
      case TokenKind::KwPair: {
        auto a = args(2);
        return make_raw(raw::Pair{a[0], a[1]}, span_to(a[1]));
      }
      case TokenKind::KwFst: {
        auto a = args(1);
        return make_raw(raw::Fst{a[0]}, span_to(a[0]));
      }
      case TokenKind::KwSnd: {
        auto a = args(1);
        return make_raw(raw::Snd{a[0]}, span_to(a[0]));
      }
      case TokenKind::KwId: {
        auto a = args(3);
        return make_raw(raw::IdTy{a[0], a[1], a[2]}, span_to(a[2]));
      }
      case TokenKind::KwRefl: {
        auto a = args(2);
        return make_raw(raw::Refl{a[0], a[1]}, span_to(a[1]));
      }
      case TokenKind::KwJ: {
        auto a = args(6);
        return make_raw(raw::J{a[0], a[1], a[2], a[3], a[4], a[5]}, span_to(a[5]));
      }
      case TokenKind::KwElim0: {
        auto a = args(2);
        return make_raw(raw::ElimEmpty{a[0], a[1]}, span_to(a[1]));
      }
      case TokenKind::KwElim1: {
        auto a = args(3);
        return make_raw(raw::ElimUnit{a[0], a[1], a[2]}, span_to(a[2]));
      }
      case TokenKind::KwElim2: {
        auto a = args(4);
        return make_raw(raw::ElimBool{a[0], a[1], a[2], a[3]}, span_to(a[3]));
      }
      default:
        if (!starts_atom(tok.kind)) fail("term");
        return atom();
    }
  }

  RawPtr atom() {
    const Token& tok = peek();
    SrcSpan span = tok.span;
    switch (tok.kind) {
      case TokenKind::Ident: {
        std::string name = take().text;
        return make_raw(raw::Var{std::move(name)}, span);
      }
      case TokenKind::KwN0: take(); return make_raw(raw::Empty{}, span);
      case TokenKind::KwN1: take(); return make_raw(raw::Unit{}, span);
      case TokenKind::KwN2: take(); return make_raw(raw::Bool{}, span);
      case TokenKind::KwStar: take(); return make_raw(raw::Star{}, span);
      case TokenKind::KwB0: take(); return make_raw(raw::BZero{}, span);
      case TokenKind::KwB1: take(); return make_raw(raw::BOne{}, span);
      case TokenKind::LParen: {
        take();
        RawPtr inner = term();
        if (peek().kind == TokenKind::Colon) {
          take();
          RawPtr type = term();
          expect(TokenKind::RParen, "')'");
          return make_raw(raw::Ann{inner, type}, join(span, prev_span()));
        }
        expect(TokenKind::RParen, "')'");
        // Parentheses widen the span so children stay inside their parent.
        RawTerm widened = *inner;
        widened.span = join(span, prev_span());
        return std::make_shared<const RawTerm>(std::move(widened));
      }
      default:
        fail("term");
    }
  }

  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;
};

}  // namespace

SourceFile parse_file(std::string_view text, const std::string& file) {
  return Parser(tokenize(text, file), file, text).file();
}

RawPtr parse_term(std::string_view text, const std::string& file) {
  return Parser(tokenize(text, file), file, text).single_term();
}

}  // namespace tcat
