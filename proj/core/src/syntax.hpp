#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctrc::syntax {

enum class Tok { ident, lparen, rparen, comma, lbrace, rbrace, arrow, weak_arrow, equals, bar, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
};

// Tokenizes the COPS rule syntax. ';' starts a comment to end of line.
std::vector<Token> tokenize(std::string_view text);

struct RawTerm {
  std::string name;
  std::optional<std::vector<std::size_t>> labels;
  bool has_parens = false;
  std::vector<RawTerm> args;
  std::size_t line = 0;
};

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}
  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool accept(Tok kind);
  Token expect(Tok kind, const char* what);
  bool at_end() const { return peek().kind == Tok::end; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

RawTerm parse_raw_term(TokenStream& in);

[[noreturn]] void fail(std::size_t line, const std::string& message);

}  // namespace ctrc::syntax
