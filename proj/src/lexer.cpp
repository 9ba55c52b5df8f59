#include "tcat/syntax.hpp"

#include <array>
#include <charconv>
#include <utility>

namespace tcat {

std::string SrcSpan::to_string() const {
  return file + ":" + std::to_string(start_line) + ":" + std::to_string(start_col);
}

SrcSpan join(const SrcSpan& a, const SrcSpan& b) {
  SrcSpan out = a;
  out.end_line = b.end_line;
  out.end_col = b.end_col;
  return out;
}

ParseError::ParseError(SrcSpan span, std::string expected, std::string found)
    : std::runtime_error(span.to_string() + ": expected " + expected + ", found " + found),
      span_(std::move(span)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

struct KeywordEntry {
  std::string_view text;
  TokenKind kind;
};

constexpr std::array<KeywordEntry, 19> kKeywords{{
    {"def", TokenKind::KwDef},     {"axiom", TokenKind::KwAxiom}, {"fun", TokenKind::KwFun},
    {"U", TokenKind::KwU},         {"pair", TokenKind::KwPair},   {"fst", TokenKind::KwFst},
    {"snd", TokenKind::KwSnd},     {"Id", TokenKind::KwId},       {"refl", TokenKind::KwRefl},
    {"J", TokenKind::KwJ},         {"N0", TokenKind::KwN0},       {"elim0", TokenKind::KwElim0},
    {"N1", TokenKind::KwN1},       {"star", TokenKind::KwStar},   {"elim1", TokenKind::KwElim1},
    {"N2", TokenKind::KwN2},       {"b0", TokenKind::KwB0},       {"b1", TokenKind::KwB1},
    {"elim2", TokenKind::KwElim2},
}};

bool is_ident_start(char c) {
  return c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ident_cont(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& file) : text_(text), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    unsigned char c = static_cast<unsigned char>(text_[pos_]);
    ++pos_;
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      // continuation bytes do not start a new code point
      ++col_;
    }
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '-' && peek(1) == '-') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  SrcSpan span_from(int line, int col) const {
    // end is inclusive of the last code point
    return SrcSpan{file_, line, col, line_, col_ > 1 ? col_ - 1 : col_};
  }

  Token make(TokenKind kind, std::size_t start, int line, int col) const {
    return Token{kind, std::string(text_.substr(start, pos_ - start)), span_from(line, col)};
  }

  Token next() {
    const std::size_t start = pos_;
    const int line = line_;
    const int col = col_;
    const char c = peek();

    if (is_ident_start(c)) {
      while (pos_ < text_.size() && is_ident_cont(peek())) advance();
      std::string_view word = text_.substr(start, pos_ - start);
      for (const auto& kw : kKeywords) {
        if (kw.text == word) return make(kw.kind, start, line, col);
      }
      return make(TokenKind::Ident, start, line, col);
    }
    if (is_digit(c)) {
      while (pos_ < text_.size() && is_digit(peek())) advance();
      Token tok = make(TokenKind::Nat, start, line, col);
      std::uint32_t value = 0;
      auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
      if (ec != std::errc{}) throw ParseError(tok.span, "universe level", "'" + tok.text + "'");
      return tok;
    }

    auto two = [&](char second) -> bool {
      if (peek(1) != second) return false;
      advance();
      advance();
      return true;
    };
    switch (c) {
      case '(': advance(); return make(TokenKind::LParen, start, line, col);
      case ')': advance(); return make(TokenKind::RParen, start, line, col);
      case ';': advance(); return make(TokenKind::Semi, start, line, col);
      case ':':
        if (two('=')) return make(TokenKind::ColonEq, start, line, col);
        advance();
        return make(TokenKind::Colon, start, line, col);
      case '-':
        if (two('>')) return make(TokenKind::Arrow, start, line, col);
        break;
      case '=':
        if (two('>')) return make(TokenKind::FatArrow, start, line, col);
        break;
      case '*':
        if (two('*')) return make(TokenKind::StarStar, start, line, col);
        break;
      default:
        break;
    }

    // Illegal character: report the whole code point.
    advance();
    while (pos_ < text_.size() && (static_cast<unsigned char>(peek()) & 0xC0) == 0x80) advance();
    std::string found(text_.substr(start, pos_ - start));
    throw ParseError(span_from(line, col), "token", "'" + found + "'");
  }

  std::string_view text_;
  const std::string& file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "IDENT";
    case TokenKind::Nat: return "NAT";
    case TokenKind::KwDef: return "KW_DEF";
    case TokenKind::KwAxiom: return "KW_AXIOM";
    case TokenKind::KwFun: return "KW_FUN";
    case TokenKind::KwU: return "KW_U";
    case TokenKind::KwPair: return "KW_PAIR";
    case TokenKind::KwFst: return "KW_FST";
    case TokenKind::KwSnd: return "KW_SND";
    case TokenKind::KwId: return "KW_ID";
    case TokenKind::KwRefl: return "KW_REFL";
    case TokenKind::KwJ: return "KW_J";
    case TokenKind::KwN0: return "KW_N0";
    case TokenKind::KwElim0: return "KW_ELIM0";
    case TokenKind::KwN1: return "KW_N1";
    case TokenKind::KwStar: return "KW_STAR";
    case TokenKind::KwElim1: return "KW_ELIM1";
    case TokenKind::KwN2: return "KW_N2";
    case TokenKind::KwB0: return "KW_B0";
    case TokenKind::KwB1: return "KW_B1";
    case TokenKind::KwElim2: return "KW_ELIM2";
    case TokenKind::LParen: return "LPAREN";
    case TokenKind::RParen: return "RPAREN";
    case TokenKind::Colon: return "COLON";
    case TokenKind::ColonEq: return "COLONEQ";
    case TokenKind::Semi: return "SEMI";
    case TokenKind::Arrow: return "ARROW";
    case TokenKind::FatArrow: return "FATARROW";
    case TokenKind::StarStar: return "STARSTAR";
    case TokenKind::End: return "EOF";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text, const std::string& file) {
  return Lexer(text, file).run();
}

}  // namespace tcat
