#pragma once

// Operator expressions: tokenizer, precedence-climbing parser and an
// evaluator into normal-ordered WeylElements.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom ['^' ['-'] INT]
//   atom   := INT ['/' INT] | IDENT | '(' expr ')'

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "weyl/weyl_element.hpp"

namespace weyl {

enum class TokenKind { integer, identifier, plus, minus, star, caret, slash, lparen, rparen, end };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t position;

    friend bool operator==(const Token&, const Token&) = default;
};

std::string to_string(TokenKind kind);

/// Throws ParseError on a character outside the grammar.
std::vector<Token> tokenize(std::string_view text);

struct Ast {
    enum class Kind { scalar, identifier, negation, sum, difference, product, power };

    Kind kind;
    std::size_t position = 0;
    /// Literal text ("3", "3/4") or identifier name.
    std::string text;
    /// Exponent of a power node.
    std::int64_t exponent = 0;
    std::vector<Ast> children;

    friend bool operator==(const Ast&, const Ast&) = default;
};

/// S-expression rendering, e.g. "sum(d, product(t, power(d, 2)))".
std::string to_string(const Ast& ast);

Ast parse(const std::vector<Token>& tokens);
inline Ast parse(std::string_view text) { return parse(tokenize(text)); }

/// Bottom-up evaluation; every product goes through w_mul. Throws UsageError
/// for unknown identifiers and for negative powers of anything other than a
/// Laurent monomial.
WeylElement eval(const Ast& ast, const Context& ctx);

inline WeylElement normalize(std::string_view text, const Context& ctx) { return eval(parse(text), ctx); }

/// Evaluates text that must denote an element of A.
AElement parse_a_element(std::string_view text, const Context& ctx);

/// True if any identifier in the tree names a derivation of ctx.
bool mentions_derivation(const Ast& ast, const Context& ctx);

}  // namespace weyl
