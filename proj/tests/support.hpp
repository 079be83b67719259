#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "weyl/coefficient_algebra.hpp"
#include "weyl/expr_parser.hpp"
#include "weyl/weyl_element.hpp"

namespace weyl::test {

struct DerivationText {
    std::string name;
    std::map<std::string, std::string> images;  // unlisted generators map to 0
};

inline std::shared_ptr<Context> make_context(FieldSpec f, const std::vector<std::pair<std::string, VarKind>>& vars,
                                             const std::vector<DerivationText>& derivations) {
    auto ctx = std::make_shared<Context>(f);
    for (const auto& [name, kind] : vars) ctx->add_variable(name, kind);
    for (const auto& d : derivations) {
        std::map<VarId, AElement> images;
        for (VarId v : declared_variables(*ctx)) images[v] = AElement{};
        for (const auto& [var, text] : d.images) images[*ctx->find_variable(var)] = parse_a_element(text, *ctx);
        ctx->add_derivation(Derivation(d.name, std::move(images)));
    }
    return ctx;
}

inline constexpr VarKind poly = VarKind::polynomial;
inline constexpr VarKind laurent = VarKind::laurent;

/// Q[t] with d1 = d/dt.
inline std::shared_ptr<Context> weyl_q() { return make_context(FieldSpec::rational(), {{"t", poly}}, {{"d1", {{"t", "1"}}}}); }
/// F_p[t] with d1 = d/dt.
inline std::shared_ptr<Context> weyl_fp(std::uint64_t p) {
    return make_context(FieldSpec::prime(p), {{"t", poly}}, {{"d1", {{"t", "1"}}}});
}
/// Q[t] or F_p[t^+-1] with the Euler derivation d1 = t*d/dt.
inline std::shared_ptr<Context> euler(FieldSpec f, VarKind kind) {
    return make_context(f, {{"t", kind}}, {{"d1", {{"t", "t"}}}});
}
/// Six generators and four commuting derivations of mixed shape.
inline std::shared_ptr<Context> mixed() {
    return make_context(FieldSpec::rational(),
                        {{"t1", poly}, {"t2", poly}, {"t3", laurent}, {"x2", laurent}, {"x3", laurent}, {"x4", laurent}},
                        {{"d1", {{"t1", "1"}}},
                         {"d2", {{"t2", "1"}, {"x2", "x2"}}},
                         {"d3", {{"t3", "1"}, {"x3", "x3"}}},
                         {"d4", {{"x4", "x4"}}}});
}
/// x1, x2, ... with d(x_i) = x_(i+1).
inline std::shared_ptr<Context> shift(FieldSpec f = FieldSpec::rational(), std::size_t cap = 16) {
    auto ctx = std::make_shared<Context>(f, cap);
    ctx->add_variable("x1", VarKind::polynomial);
    ctx->add_derivation(Derivation("d", {}, ShiftRule{"x", 1}));
    return ctx;
}

inline WeylElement W(const Context& ctx, std::string_view text) { return normalize(text, ctx); }
inline AElement A(const Context& ctx, std::string_view text) { return parse_a_element(text, ctx); }
inline std::string str(const Context& ctx, const WeylElement& x) { return to_string(ctx, x); }
inline std::string str(const Context& ctx, const AElement& u) { return to_string(ctx, u); }

}  // namespace weyl::test
