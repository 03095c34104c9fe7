#include "commnet/parse.hpp"

#include <cctype>
#include <vector>

namespace commnet {

namespace {

enum class Tok {
  ident,
  kw_new,
  par_bar,   // ||
  arrow,     // ->
  darrow,    // =>
  lparen,
  rparen,
  lbracket,
  rbracket,
  comma,
  dot,
  question,
  plus,
  star,
  eof,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

struct Lexer {
  std::string_view src;
  size_t pos = 0;
  int line = 1;
  int column = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, column, msg); }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++pos;
  }

  static bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  }

  Token next() {
    for (;;) {
      while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\r' ||
                                  src[pos] == '\n'))
        advance();
      if (pos < src.size() && src[pos] == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      break;
    }
    int l = line, c = column;
    if (pos >= src.size()) return {Tok::eof, "", l, c};
    char ch = src[pos];
    auto one = [&](Tok t) {
      advance();
      return Token{t, std::string(1, ch), l, c};
    };
    switch (ch) {
      case '(': return one(Tok::lparen);
      case ')': return one(Tok::rparen);
      case '[': return one(Tok::lbracket);
      case ']': return one(Tok::rbracket);
      case ',': return one(Tok::comma);
      case '.': return one(Tok::dot);
      case '?': return one(Tok::question);
      case '*': return one(Tok::star);
      case '|':
        advance();
        if (pos >= src.size() || src[pos] != '|') throw ParseError(l, c, "expected '||'");
        advance();
        return {Tok::par_bar, "||", l, c};
      case '-':
        advance();
        if (pos >= src.size() || src[pos] != '>')
          throw ParseError(l, c, "expected '->'");
        advance();
        return {Tok::arrow, "->", l, c};
      case '=':
        advance();
        if (pos >= src.size() || src[pos] != '>')
          throw ParseError(l, c, "expected '=>'");
        advance();
        return {Tok::darrow, "=>", l, c};
      case '+': return one(Tok::plus);
      default: break;
    }
    if (ident_char(ch)) {
      std::string text;
      while (pos < src.size() && ident_char(src[pos])) {
        text += src[pos];
        advance();
      }
      if (text == "new") return {Tok::kw_new, std::move(text), l, c};
      return {Tok::ident, std::move(text), l, c};
    }
    throw ParseError(l, c, std::string("unexpected character '") + ch + "'");
  }
};

struct Parser {
  Lexer lexer;
  Token tok;

  explicit Parser(std::string_view src) : lexer{src} { tok = lexer.next(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(tok.line, tok.column, msg);
  }

  void bump() { tok = lexer.next(); }

  Token expect(Tok kind, const char* what) {
    if (tok.kind != kind) fail(std::string("expected ") + what);
    Token t = tok;
    bump();
    return t;
  }

  std::string expect_ident() {
    if (tok.kind != Tok::ident) fail("expected channel name");
    std::string name = tok.text;
    bump();
    return name;
  }

  // par := element ("||" par)?  -- flat n-ary composition.
  ProcessPtr parse_par() {
    ProcessPtr first = parse_element();
    if (tok.kind != Tok::par_bar) return first;
    std::vector<ProcessPtr> children;
    auto splice = [&](const ProcessPtr& p) {
      if (p->kind() == Process::Kind::par)
        for (const auto& c : p->children()) children.push_back(c);
      else
        children.push_back(p);
    };
    splice(first);
    while (tok.kind == Tok::par_bar) {
      bump();
      splice(parse_element());
    }
    return Process::par(std::move(children));
  }

  ProcessPtr parse_element() {
    switch (tok.kind) {
      case Tok::kw_new: {
        bump();
        std::string name = expect_ident();
        expect(Tok::dot, "'.' after restricted channel");
        // `new` extends to the rest of the enclosing group.
        return Process::restriction(std::move(name), parse_par());
      }
      case Tok::question: {
        bump();
        return Process::lose(expect_ident());
      }
      case Tok::plus: {
        bump();
        return Process::dup(expect_ident());
      }
      case Tok::star: {
        bump();
        return Process::duplose(expect_ident());
      }
      case Tok::lparen: {
        bump();
        ProcessPtr p = parse_par();
        expect(Tok::rparen, "')'");
        return p;
      }
      case Tok::ident: {
        std::string name = tok.text;
        bump();
        if (tok.kind == Tok::arrow) {
          bump();
          return Process::bridge(std::move(name), expect_ident());
        }
        if (tok.kind == Tok::darrow) {
          bump();
          expect(Tok::lbracket, "'['");
          std::vector<ChannelName> targets;
          if (tok.kind != Tok::rbracket) {
            targets.push_back(expect_ident());
            while (tok.kind == Tok::comma) {
              bump();
              targets.push_back(expect_ident());
            }
          }
          expect(Tok::rbracket, "']'");
          return Process::distribute(std::move(name), std::move(targets));
        }
        if (name == "0") return Process::stop();
        fail("expected '->' or '=>' after channel name (or '0' for the stop process)");
      }
      default:
        fail("expected a process");
    }
  }
};

}  // namespace

ProcessPtr parse_process(std::string_view text) {
  Parser parser(text);
  ProcessPtr p = parser.parse_par();
  if (parser.tok.kind != Tok::eof) parser.fail("trailing input after process");
  return p;
}

}  // namespace commnet
