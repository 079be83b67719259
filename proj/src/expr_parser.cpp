#include "weyl/expr_parser.hpp"

#include <cctype>
#include <limits>

#include "weyl/error.hpp"

namespace weyl {

std::string to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::integer: return "integer";
        case TokenKind::identifier: return "identifier";
        case TokenKind::plus: return "'+'";
        case TokenKind::minus: return "'-'";
        case TokenKind::star: return "'*'";
        case TokenKind::caret: return "'^'";
        case TokenKind::slash: return "'/'";
        case TokenKind::lparen: return "'('";
        case TokenKind::rparen: return "')'";
        case TokenKind::end: return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto is_alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; };
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (is_digit(c)) {
            while (i < text.size() && is_digit(text[i])) ++i;
            out.push_back({TokenKind::integer, std::string(text.substr(start, i - start)), start});
            continue;
        }
        if (is_alpha(c)) {
            while (i < text.size() && (is_alpha(text[i]) || is_digit(text[i]) || text[i] == '_')) ++i;
            out.push_back({TokenKind::identifier, std::string(text.substr(start, i - start)), start});
            continue;
        }
        TokenKind kind;
        switch (c) {
            case '+': kind = TokenKind::plus; break;
            case '-': kind = TokenKind::minus; break;
            case '*': kind = TokenKind::star; break;
            case '^': kind = TokenKind::caret; break;
            case '/': kind = TokenKind::slash; break;
            case '(': kind = TokenKind::lparen; break;
            case ')': kind = TokenKind::rparen; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        out.push_back({kind, std::string(1, c), start});
        ++i;
    }
    out.push_back({TokenKind::end, "", text.size()});
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
        if (tokens_.empty() || tokens_.back().kind != TokenKind::end)
            throw ParseError("token stream is not terminated", 0);
    }

    Ast parse_all() {
        Ast e = parse_binary(1);
        if (peek().kind != TokenKind::end) fail("unexpected " + describe(peek()), {"'+'", "'-'", "'*'", "end of input"});
        return e;
    }

private:
    static int precedence(TokenKind k) {
        switch (k) {
            case TokenKind::plus:
            case TokenKind::minus: return 1;
            case TokenKind::star: return 2;
            default: return 0;
        }
    }

    // Precedence climbing over the left-associative binary operators.
    Ast parse_binary(int min_prec) {
        Ast lhs = parse_factor();
        for (;;) {
            const Token& op = peek();
            int prec = precedence(op.kind);
            if (prec == 0 || prec < min_prec) return lhs;
            advance();
            Ast rhs = parse_binary(prec + 1);
            Ast node;
            node.kind = op.kind == TokenKind::plus    ? Ast::Kind::sum
                        : op.kind == TokenKind::minus ? Ast::Kind::difference
                                                      : Ast::Kind::product;
            node.position = op.position;
            node.children.push_back(std::move(lhs));
            node.children.push_back(std::move(rhs));
            lhs = std::move(node);
        }
    }

    Ast parse_factor() {
        if (peek().kind == TokenKind::minus) {
            Ast node;
            node.kind = Ast::Kind::negation;
            node.position = advance().position;
            node.children.push_back(parse_factor());
            return node;
        }
        Ast base = parse_atom();
        if (peek().kind != TokenKind::caret) return base;
        std::size_t pos = advance().position;
        bool negative = false;
        if (peek().kind == TokenKind::minus) {
            advance();
            negative = true;
        }
        if (peek().kind != TokenKind::integer) fail("exponent must be an integer literal", {"integer", "'-'"});
        const Token& lit = advance();
        std::int64_t e = 0;
        for (char c : lit.text) {
            if (e > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
                throw ParseError("exponent too large", lit.position);
            e = e * 10 + (c - '0');
        }
        Ast node;
        node.kind = Ast::Kind::power;
        node.position = pos;
        node.exponent = negative ? -e : e;
        node.children.push_back(std::move(base));
        return node;
    }

    Ast parse_atom() {
        const Token& t = peek();
        Ast node;
        node.position = t.position;
        switch (t.kind) {
            case TokenKind::integer: {
                advance();
                node.kind = Ast::Kind::scalar;
                node.text = t.text;
                if (peek().kind == TokenKind::slash) {
                    advance();
                    if (peek().kind != TokenKind::integer) fail("expected denominator", {"integer"});
                    node.text += "/" + advance().text;
                }
                return node;
            }
            case TokenKind::identifier:
                advance();
                node.kind = Ast::Kind::identifier;
                node.text = t.text;
                return node;
            case TokenKind::lparen: {
                advance();
                Ast inner = parse_binary(1);
                if (peek().kind != TokenKind::rparen) fail("unbalanced parenthesis", {"')'", "'+'", "'-'", "'*'"});
                advance();
                return inner;
            }
            default:
                fail("unexpected " + describe(t), {"integer", "identifier", "'('", "'-'"});
        }
    }

    static std::string describe(const Token& t) {
        if (t.kind == TokenKind::end) return "end of input";
        return to_string(t.kind) + (t.kind == TokenKind::identifier || t.kind == TokenKind::integer
                                        ? " '" + t.text + "'"
                                        : std::string());
    }

    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const {
        throw ParseError(message, peek().position, std::move(expected));
    }

    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    const std::vector<Token>& tokens_;
    std::size_t pos_ = 0;
};

AElement invert_monomial(const Context& ctx, const WeylElement& x, std::size_t position) {
    auto where = " at offset " + std::to_string(position);
    if (x.is_zero()) throw DivisionByZero();
    if (!x.in_a()) throw UsageError("negative power of a derivation" + where);
    const AElement& u = x.terms().begin()->second;
    if (u.size() != 1) throw UsageError("negative power of a non-monomial" + where);
    const auto& [m, c] = *u.terms().begin();
    for (const auto& [v, e] : m.entries())
        if (ctx.variable(v).kind != VarKind::laurent)
            throw UsageError("negative power of polynomial-kind variable " + ctx.variable(v).name + where);
    Monomial inv;
    for (const auto& [v, e] : m.entries()) inv = inv * Monomial::variable(v, -e);
    return AElement::term(c.inverse(), inv);
}

}  // namespace

Ast parse(const std::vector<Token>& tokens) { return Parser(tokens).parse_all(); }

std::string to_string(const Ast& ast) {
    auto binary = [&](const char* name) {
        return std::string(name) + "(" + to_string(ast.children[0]) + ", " + to_string(ast.children[1]) + ")";
    };
    switch (ast.kind) {
        case Ast::Kind::scalar:
        case Ast::Kind::identifier: return ast.text;
        case Ast::Kind::negation: return "neg(" + to_string(ast.children[0]) + ")";
        case Ast::Kind::sum: return binary("sum");
        case Ast::Kind::difference: return binary("difference");
        case Ast::Kind::product: return binary("product");
        case Ast::Kind::power:
            return "power(" + to_string(ast.children[0]) + ", " + std::to_string(ast.exponent) + ")";
    }
    return "?";
}

WeylElement eval(const Ast& ast, const Context& ctx) {
    const FieldSpec& f = ctx.field();
    switch (ast.kind) {
        case Ast::Kind::scalar: {
            auto slash = ast.text.find('/');
            if (slash == std::string::npos)
                return WeylElement::from_a(AElement::constant(Scalar::from_integer(mpz_class(ast.text), f)));
            if (!f.is_rational())
                throw UsageError("rational literal " + ast.text + " in prime field " + f.to_string() +
                                 " at offset " + std::to_string(ast.position));
            mpz_class den(ast.text.substr(slash + 1));
            if (den == 0) throw DivisionByZero();
            return WeylElement::from_a(
                AElement::constant(Scalar::from_fraction(mpz_class(ast.text.substr(0, slash)), den)));
        }
        case Ast::Kind::identifier: {
            if (auto d = ctx.find_derivation(ast.text))
                return WeylElement::derivative(f, MultiIndex::unit(static_cast<std::uint32_t>(*d)));
            if (auto v = ctx.find_variable(ast.text))
                return WeylElement::from_a(AElement::term(ctx.one(), Monomial::variable(*v)));
            throw UsageError("unknown identifier '" + ast.text + "' at offset " + std::to_string(ast.position));
        }
        case Ast::Kind::negation: return -eval(ast.children[0], ctx);
        case Ast::Kind::sum: return eval(ast.children[0], ctx) + eval(ast.children[1], ctx);
        case Ast::Kind::difference: return eval(ast.children[0], ctx) - eval(ast.children[1], ctx);
        case Ast::Kind::product: return w_mul(ctx, eval(ast.children[0], ctx), eval(ast.children[1], ctx));
        case Ast::Kind::power: {
            WeylElement base = eval(ast.children[0], ctx);
            if (ast.exponent >= 0) return w_pow(ctx, base, static_cast<std::uint64_t>(ast.exponent));
            WeylElement inv = WeylElement::from_a(invert_monomial(ctx, base, ast.position));
            return w_pow(ctx, inv, static_cast<std::uint64_t>(-ast.exponent));
        }
    }
    throw InternalError("unhandled AST node");
}

AElement parse_a_element(std::string_view text, const Context& ctx) {
    Ast ast = parse(text);
    if (mentions_derivation(ast, ctx))
        throw UsageError("expected an element of A, but '" + std::string(text) + "' mentions a derivation");
    WeylElement x = eval(ast, ctx);
    return x.is_zero() ? AElement{} : x.terms().begin()->second;
}

bool mentions_derivation(const Ast& ast, const Context& ctx) {
    if (ast.kind == Ast::Kind::identifier) return ctx.find_derivation(ast.text).has_value();
    for (const auto& c : ast.children)
        if (mentions_derivation(c, ctx)) return true;
    return false;
}

}  // namespace weyl
