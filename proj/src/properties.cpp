#include "weyl/properties.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "weyl/error.hpp"
#include "weyl/expr_parser.hpp"
#include "weyl/probes.hpp"

namespace weyl {

namespace {

// Sampled inputs of one trial.
struct Trial {
    std::vector<WeylElement> w;
    std::vector<AElement> a;
    MultiIndex alpha;
};

// Returns a description of the violation, or nullopt when the trial holds.
using Check = std::function<std::optional<std::string>(const Trial&)>;

struct Suite {
    std::size_t elements = 0;    // WeylElements per trial
    std::size_t a_elements = 0;  // AElements per trial
    bool nonzero = false;
    bool multi_index = false;
    std::function<Check(const Context&)> make;
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string show(const Context& ctx, const WeylElement& x) { return to_string(ctx, x); }
std::string show(const Context& ctx, const AElement& u) { return to_string(ctx, u); }

std::string inputs(const Context& ctx, const Trial& t) {
    std::string s;
    auto add = [&](const std::string& label, const std::string& text) {
        if (!s.empty()) s += ", ";
        s += label + " = " + text;
    };
    const char* wn[] = {"x", "y", "z"};
    const char* an[] = {"a", "b"};
    for (std::size_t i = 0; i < t.w.size(); ++i) add(wn[i], show(ctx, t.w[i]));
    for (std::size_t i = 0; i < t.a.size(); ++i) add(an[i], show(ctx, t.a[i]));
    return s;
}

template <class T>
std::optional<std::string> differ(const Context& ctx, const T& lhs, const T& rhs, const std::string& what) {
    if (lhs == rhs) return std::nullopt;
    return what + ": " + show(ctx, lhs) + " != " + show(ctx, rhs);
}

// A small window on which F_1 is computed for the centrality suite.
Window f1_window(const Context& ctx, std::int32_t degree) {
    auto vars = declared_variables(ctx);
    std::int32_t b = std::max(degree, 1);
    auto size = [&](std::int32_t bound) {
        double n = 1;
        for (VarId v : vars) n *= ctx.variable(v).kind == VarKind::laurent ? 2 * bound + 1 : bound + 1;
        return n;
    };
    while (b > 1 && size(b) > 600) --b;
    std::map<VarId, ExponentBounds> bounds;
    for (VarId v : vars) bounds[v] = {ctx.variable(v).kind == VarKind::laurent ? -b : 0, b};
    return Window(std::move(bounds), 0);
}

const std::map<std::string, Suite>& suites() {
    static const std::map<std::string, Suite> table = [] {
        std::map<std::string, Suite> s;
        s["associativity"] = {3, 0, false, false, [](const Context& ctx) -> Check {
                                  return [&ctx](const Trial& t) {
                                      return differ(ctx, w_mul(ctx, w_mul(ctx, t.w[0], t.w[1]), t.w[2]),
                                                    w_mul(ctx, t.w[0], w_mul(ctx, t.w[1], t.w[2])),
                                                    "(xy)z != x(yz)");
                                  };
                              }};
        s["theta_homomorphism"] = {2, 1, false, false, [](const Context& ctx) -> Check {
                                       return [&ctx](const Trial& t) {
                                           return differ(ctx, act(ctx, w_mul(ctx, t.w[0], t.w[1]), t.a[0]),
                                                         act(ctx, t.w[0], act(ctx, t.w[1], t.a[0])),
                                                         "(xy).a != x.(y.a)");
                                       };
                                   }};
        s["lie_axioms"] = {3, 0, false, false, [](const Context& ctx) -> Check {
                               return [&ctx](const Trial& t) -> std::optional<std::string> {
                                   const auto &x = t.w[0], &y = t.w[1], &z = t.w[2];
                                   if (auto e = differ(ctx, lie_bracket(ctx, x, x), WeylElement{}, "[x,x] != 0")) return e;
                                   auto jac = lie_bracket(ctx, x, lie_bracket(ctx, y, z)) +
                                              lie_bracket(ctx, y, lie_bracket(ctx, z, x)) +
                                              lie_bracket(ctx, z, lie_bracket(ctx, x, y));
                                   return differ(ctx, jac, WeylElement{}, "Jacobi sum != 0");
                               };
                           }};
        s["leibniz"] = {0, 2, false, false, [](const Context& ctx) -> Check {
                            return [&ctx](const Trial& t) -> std::optional<std::string> {
                                const auto &u = t.a[0], &v = t.a[1];
                                for (std::size_t d = 0; d < ctx.derivation_count(); ++d) {
                                    auto lhs = apply_derivation(ctx, d, u * v);
                                    auto rhs = apply_derivation(ctx, d, u) * v + u * apply_derivation(ctx, d, v);
                                    if (auto e = differ(ctx, lhs, rhs, ctx.derivation(d).name() + "(ab)")) return e;
                                }
                                return std::nullopt;
                            };
                        }};
        s["commutativity"] = {0, 1, false, false, [](const Context& ctx) -> Check {
                                  return [&ctx](const Trial& t) -> std::optional<std::string> {
                                      for (std::size_t i = 0; i < ctx.derivation_count(); ++i)
                                          for (std::size_t k = i + 1; k < ctx.derivation_count(); ++k) {
                                              auto lhs = apply_derivation(ctx, i, apply_derivation(ctx, k, t.a[0]));
                                              auto rhs = apply_derivation(ctx, k, apply_derivation(ctx, i, t.a[0]));
                                              std::string what = ctx.derivation(i).name() + " " +
                                                                 ctx.derivation(k).name() + " do not commute on a";
                                              if (auto e = differ(ctx, lhs, rhs, what)) return e;
                                          }
                                      return std::nullopt;
                                  };
                              }};
        s["level_arithmetic"] = {2, 0, true, false, [](const Context& ctx) -> Check {
                                     return [&ctx](const Trial& t) -> std::optional<std::string> {
                                         auto lx = leading(t.w[0]), ly = leading(t.w[1]);
                                         auto lxy = leading(w_mul(ctx, t.w[0], t.w[1]));
                                         if (lxy.lev != Level::of(t.w[0].terms().rbegin()->first.level() +
                                                                  t.w[1].terms().rbegin()->first.level()))
                                             return "lev(xy) = " + lxy.lev.to_string() + " but lev(x) + lev(y) = " +
                                                    lx.lev.to_string() + " + " + ly.lev.to_string();
                                         if (!lxy.deg || !(*lxy.deg == *lx.deg + *ly.deg))
                                             return std::string("deg(xy) != deg(x) + deg(y)");
                                         return std::nullopt;
                                     };
                                 }};
        s["bracket_level_drop"] = {1, 1, true, false, [](const Context& ctx) -> Check {
                                       return [&ctx](const Trial& t) -> std::optional<std::string> {
                                           auto br = lie_bracket(ctx, t.w[0], WeylElement::from_a(t.a[0]));
                                           Level lx = leading(t.w[0]).lev;
                                           Level lb = leading(br).lev;
                                           auto n = t.w[0].terms().rbegin()->first.level();
                                           bool ok = br.is_zero() || (n > 0 && lb <= Level::of(n - 1));
                                           if (ok) return std::nullopt;
                                           return "lev([x,a]) = " + lb.to_string() + " exceeds lev(x) - 1 with lev(x) = " +
                                                  lx.to_string() + "; [x,a] = " + to_string(ctx, br);
                                       };
                                   }};
        s["round_trip"] = {1, 0, false, false, [](const Context& ctx) -> Check {
                               return [&ctx](const Trial& t) -> std::optional<std::string> {
                                   std::string text = to_string(ctx, t.w[0]);
                                   try {
                                       return differ(ctx, normalize(text, ctx), t.w[0], "eval(parse(print(x))) != x");
                                   } catch (const std::exception& e) {
                                       return "printed form \"" + text + "\" does not parse: " + e.what();
                                   }
                               };
                           }};
        s["derivative_order"] = {0, 1, false, true, [](const Context& ctx) -> Check {
                                     return [&ctx](const Trial& t) {
                                         return differ(ctx, apply_derivative_power(ctx, t.alpha, t.a[0], false),
                                                       apply_derivative_power(ctx, t.alpha, t.a[0], true),
                                                       "d^(" + to_string(t.alpha, derivation_names(ctx)) +
                                                           ")(a) depends on application order");
                                     };
                                 }};
        s["f1_central"] = {1, 0, false, false, [](const Context& ctx) -> Check {
                               auto f1 = std::make_shared<std::vector<WeylElement>>(
                                   compute_f1(ctx, f1_window(ctx, 4), Exec::serial).elements());
                               return [&ctx, f1](const Trial& t) -> std::optional<std::string> {
                                   for (const auto& f : *f1) {
                                       for (std::size_t d = 0; d < ctx.derivation_count(); ++d)
                                           if (!apply_derivation(ctx, d, f.terms().begin()->second).is_zero())
                                               return "constant " + to_string(ctx, f) + " not killed by " +
                                                      ctx.derivation(d).name();
                                       if (auto e = differ(ctx, lie_bracket(ctx, f, t.w[0]), WeylElement{},
                                                           "[" + to_string(ctx, f) + ", x] != 0"))
                                           return e;
                                   }
                                   return std::nullopt;
                               };
                           }};
        return s;
    }();
    return table;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"associativity",      "theta_homomorphism", "lie_axioms", "leibniz",          "commutativity",
            "level_arithmetic",   "bracket_level_drop", "round_trip", "derivative_order", "f1_central"};
}

SuiteResult run_suite(const Context& ctx, const std::string& name, const VerifyOptions& options) {
    auto it = suites().find(name);
    if (it == suites().end()) throw UsageError("unknown property suite " + name);
    const Suite& suite = it->second;
    SuiteResult result;
    result.name = name;
    result.trials = options.trials;
    if (options.trials == 0) return result;

    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(fnv1a(name)), static_cast<std::uint32_t>(fnv1a(name) >> 32)};
    std::uint64_t seed = 0;
    {
        std::mt19937_64 mix(seq);
        seed = mix();
    }
    ElementSampler sampler(ctx, seed, options.shape);
    std::vector<Trial> trials(options.trials);
    for (auto& t : trials) {
        for (std::size_t i = 0; i < suite.elements; ++i) t.w.push_back(sampler.element(suite.nonzero));
        for (std::size_t i = 0; i < suite.a_elements; ++i) t.a.push_back(sampler.a_element(suite.nonzero));
        if (suite.multi_index) t.alpha = sampler.multi_index();
    }
    Check check = suite.make(ctx);
    auto outcomes = map_indices<std::optional<std::string>>(trials.size(), stable_exec(ctx, options.exec),
                                                            [&](std::size_t i) { return check(trials[i]); });
    for (std::size_t i = 0; i < trials.size(); ++i) {
        if (!outcomes[i]) continue;
        ++result.failures;
        result.violations.push_back("trial " + std::to_string(i) + ": " + inputs(ctx, trials[i]) + ": " + *outcomes[i]);
    }
    return result;
}

std::vector<SuiteResult> run_suites(const Context& ctx, const std::vector<std::string>& names,
                                    const VerifyOptions& options) {
    std::vector<SuiteResult> out;
    for (const auto& n : names.empty() ? suite_names() : names) out.push_back(run_suite(ctx, n, options));
    return out;
}

}  // namespace weyl
