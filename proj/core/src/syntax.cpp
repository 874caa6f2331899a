#include "syntax.hpp"

#include <cctype>

#include "ctrc/term.hpp"

namespace ctrc::syntax {

void fail(std::size_t line, const std::string& message) {
  throw Error(Errc::parse, "line " + std::to_string(line) + ": " + message);
}

namespace {

bool starts_with(std::string_view text, std::size_t i, std::string_view what) {
  return text.substr(i, what.size()) == what;
}

bool is_delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' ||
         c == '{' || c == '}' || c == '|' || c == ';';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    auto single = [&](Tok kind) {
      out.push_back({kind, std::string(1, c), line});
      ++i;
    };
    switch (c) {
      case '(': single(Tok::lparen); continue;
      case ')': single(Tok::rparen); continue;
      case ',': single(Tok::comma); continue;
      case '{': single(Tok::lbrace); continue;
      case '}': single(Tok::rbrace); continue;
      case '|': single(Tok::bar); continue;
      default: break;
    }
    if (starts_with(text, i, "->=")) {
      out.push_back({Tok::weak_arrow, "->=", line});
      i += 3;
      continue;
    }
    if (starts_with(text, i, "->")) {
      out.push_back({Tok::arrow, "->", line});
      i += 2;
      continue;
    }
    if (starts_with(text, i, "==")) {
      out.push_back({Tok::equals, "==", line});
      i += 2;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && !is_delimiter(text[i]) && !starts_with(text, i, "->") &&
           !starts_with(text, i, "==")) {
      ++i;
    }
    out.push_back({Tok::ident, std::string(text.substr(start, i - start)), line});
  }
  out.push_back({Tok::end, "", line});
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t at = pos_ + ahead;
  return at < tokens_.size() ? tokens_[at] : tokens_.back();
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::accept(Tok kind) {
  if (peek().kind != kind) return false;
  next();
  return true;
}

Token TokenStream::expect(Tok kind, const char* what) {
  if (peek().kind != kind) {
    const Token& t = peek();
    fail(t.line, std::string("expected ") + what + ", found '" +
                     (t.kind == Tok::end ? std::string("end of input") : t.text) + "'");
  }
  return next();
}

RawTerm parse_raw_term(TokenStream& in) {
  Token head = in.expect(Tok::ident, "a term");
  RawTerm term;
  term.name = head.text;
  term.line = head.line;
  if (in.accept(Tok::lbrace)) {
    std::vector<std::size_t> labels;
    if (!in.accept(Tok::rbrace)) {
      while (true) {
        Token n = in.expect(Tok::ident, "a rule index");
        std::size_t value = 0;
        for (char ch : n.text) {
          if (!std::isdigit(static_cast<unsigned char>(ch))) {
            fail(n.line, "rule index must be a positive number, found '" + n.text + "'");
          }
          value = value * 10 + static_cast<std::size_t>(ch - '0');
        }
        if (value == 0) fail(n.line, "rule indices are 1-based");
        labels.push_back(value);
        if (in.accept(Tok::rbrace)) break;
        in.expect(Tok::comma, "',' or '}'");
      }
    }
    term.labels = std::move(labels);
  }
  if (in.accept(Tok::lparen)) {
    term.has_parens = true;
    if (!in.accept(Tok::rparen)) {
      while (true) {
        term.args.push_back(parse_raw_term(in));
        if (in.accept(Tok::rparen)) break;
        in.expect(Tok::comma, "',' or ')'");
      }
    }
  }
  return term;
}

}  // namespace ctrc::syntax
