// Acceptance run: one pass/fail line per criterion, exit status 0 only when
// every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "weyl/cli.hpp"
#include "weyl/error.hpp"
#include "weyl/expr_parser.hpp"
#include "weyl/probes.hpp"
#include "weyl/properties.hpp"
#include "weyl/scenario.hpp"

using namespace weyl;

namespace {

const std::string source_dir = WEYL_SOURCE_DIR;

const std::vector<std::string> bundled = {"euler_laurent_f5", "euler_laurent_q", "euler_nonsimple", "group_algebra_z2",
                                          "mixed_weyl_type",  "shift_family",    "weyl_f2",         "weyl_f5",
                                          "weyl_laurent",     "weyl_rational"};

std::string path_of(const std::string& name) { return source_dir + "/scenarios/" + name + ".json"; }

Scenario load(const std::string& name) { return load_scenario(path_of(name)); }

// Runs criterion bodies; a body appends failure notes and its line reads
// "fail" when any note was added or it threw.
struct Report {
    int failed = 0;

    void run(int number, const std::string& title, const std::function<void(std::vector<std::string>&)>& body) {
        std::vector<std::string> notes;
        auto start = std::chrono::steady_clock::now();
        try {
            body(notes);
        } catch (const std::exception& e) {
            notes.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool ok = notes.empty();
        if (!ok) ++failed;
        std::printf("criterion %2d: %-4s %s (%.1f s)\n", number, ok ? "pass" : "fail", title.c_str(), secs);
        for (const auto& n : notes) std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
    }
};

void suite_on_all(const std::string& suite, std::size_t trials, std::vector<std::string>& notes) {
    VerifyOptions opts;
    opts.trials = trials;
    for (const auto& name : bundled) {
        Scenario sc = load(name);
        SuiteResult r = run_suite(*sc.context, suite, opts);
        if (!r.passed())
            notes.push_back(name + ": " + std::to_string(r.failures) + " failures, first " + r.violations.front());
    }
}

Window window1(std::int32_t lo, std::int32_t hi, std::uint32_t level) { return Window({{0, {lo, hi}}}, level); }

std::vector<std::string> texts(const Context& ctx, const std::vector<WeylElement>& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(to_string(ctx, x));
    return out;
}

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
    return "{" + s + "}";
}

bool in_span(const Basis& basis, const std::vector<WeylElement>& span, const WeylElement& x) {
    RowSpace rows;
    for (const auto& s : span) rows.insert(*basis.coordinates(s));
    auto c = basis.coordinates(x);
    return c && rows.contains(*c);
}

bool divisible_by_t(const WeylElement& x) {
    for (const auto& [alpha, u] : x.terms())
        for (const auto& [m, c] : u.terms())
            if (m.exponent(0) < 1) return false;
    return true;
}

std::shared_ptr<Context> one_variable(FieldSpec f, VarKind kind, const std::string& d, const std::string& image) {
    auto ctx = std::make_shared<Context>(f);
    VarId t = ctx->add_variable("t", kind);
    ctx->add_derivation(Derivation(d, {{t, parse_a_element(image, *ctx)}}));
    return ctx;
}

}  // namespace

int main() {
    Report report;

    report.run(1, "associativity, 500 triples per bundled scenario",
               [](auto& notes) { suite_on_all("associativity", 500, notes); });
    report.run(2, "action is a homomorphism, 500 triples per bundled scenario",
               [](auto& notes) { suite_on_all("theta_homomorphism", 500, notes); });
    report.run(3, "bracket is alternating and satisfies Jacobi, 500 triples per bundled scenario",
               [](auto& notes) { suite_on_all("lie_axioms", 500, notes); });
    report.run(4, "Leibniz and pairwise commutativity, 200 pairs per bundled family", [](auto& notes) {
        suite_on_all("leibniz", 200, notes);
        suite_on_all("commutativity", 200, notes);
    });
    report.run(5, "level and degree additivity, bracket level drop, 500 pairs per bundled scenario",
               [](auto& notes) {
                   suite_on_all("level_arithmetic", 500, notes);
                   suite_on_all("bracket_level_drop", 500, notes);
               });

    report.run(6, "constants regressions", [](auto& notes) {
        struct Case {
            std::shared_ptr<Context> ctx;
            Window window;
            std::vector<std::string> expect;
        };
        std::vector<Case> cases{
            {one_variable(FieldSpec::prime(5), VarKind::polynomial, "d1", "1"), window1(0, 12, 0), {"1", "t^5", "t^10"}},
            {one_variable(FieldSpec::rational(), VarKind::polynomial, "d1", "1"), window1(0, 12, 0), {"1"}},
            {one_variable(FieldSpec::rational(), VarKind::laurent, "d1", "t"), window1(-12, 12, 0), {"1"}},
            {one_variable(FieldSpec::rational(), VarKind::polynomial, "d1", "t"), window1(0, 12, 0), {"1"}},
        };
        for (const auto& c : cases) {
            auto got = texts(*c.ctx, compute_f1(*c.ctx, c.window).elements());
            if (got != c.expect) notes.push_back("got " + join(got) + ", expected " + join(c.expect));
        }
    });

    report.run(7, "faithfulness: kernels in characteristic p, none over Q", [](auto& notes) {
        auto check_kernel = [&](const std::shared_ptr<Context>& ctx, const Window& w, const std::string& element) {
            ProbeVerdict v = theta_kernel(*ctx, w);
            if (v.kind != VerdictKind::kernel_nonzero) {
                notes.push_back(element + ": verdict " + to_string(v.kind));
                return;
            }
            WeylElement x = normalize(element, *ctx);
            if (!in_span(*w.weyl_basis(*ctx), v.witness, x))
                notes.push_back(element + " not in reported kernel " + join(texts(*ctx, v.witness)));
            for (const auto& m : w.a_monomials())
                if (!act(*ctx, x, AElement::term(ctx->one(), m)).is_zero())
                    notes.push_back(element + " does not kill " + to_string(*ctx, m));
        };
        check_kernel(one_variable(FieldSpec::prime(2), VarKind::polynomial, "d1", "1"), window1(0, 4, 2), "d1^2");
        check_kernel(one_variable(FieldSpec::prime(5), VarKind::laurent, "d1", "t"), window1(-2, 2, 5), "d1^5 - d1");
        auto q = one_variable(FieldSpec::rational(), VarKind::polynomial, "d1", "1");
        ProbeVerdict v = theta_kernel(*q, window1(0, 8, 4));
        if (v.kind != VerdictKind::kernel_zero) notes.push_back("Q Weyl algebra: verdict " + to_string(v.kind));
    });

    report.run(8, "closure verdicts for the Weyl algebra and the Euler control", [](auto& notes) {
        Scenario sc = load("weyl_rational");
        const Context& q = *sc.context;
        Window w = window1(0, 6, 3);
        for (const char* seed : {"d1", "t^2", "t*d1"}) {
            ProbeVerdict v = assoc_ideal_closure_probe(q, normalize(seed, q), w);
            if (v.kind != VerdictKind::reaches_identity)
                notes.push_back(std::string("assoc seed ") + seed + ": " + to_string(v.kind));
        }
        ProbeVerdict lie = lie_ideal_closure_probe(q, normalize("t*d1", q), w, compute_f1(q, w), {Exec::parallel, {1, 2}});
        if (lie.kind != VerdictKind::full_span_mod_f1) notes.push_back("lie seed t*d1: " + to_string(lie.kind));

        auto e = one_variable(FieldSpec::rational(), VarKind::polynomial, "d1", "t");
        auto control = [&](const std::string& what, const ProbeVerdict& v) {
            if (v.kind != VerdictKind::proper_invariant_subspace) notes.push_back(what + ": " + to_string(v.kind));
            for (const auto& x : v.witness)
                if (!divisible_by_t(x)) notes.push_back(what + ": witness " + to_string(*e, x) + " not divisible by t");
        };
        control("euler d_simplicity t", d_simplicity_probe(*e, parse_a_element("t", *e), w));
        control("euler assoc t", assoc_ideal_closure_probe(*e, normalize("t", *e), w));
        control("euler lie t^2*d1", lie_ideal_closure_probe(*e, normalize("t^2*d1", *e), w, compute_f1(*e, w)));
    });

    report.run(9, "p-adic factorization recomposes, p in {2, 3, 5}, |alpha| <= 6", [](auto& notes) {
        for (std::uint64_t p : {2u, 3u, 5u}) {
            auto ctx = one_variable(FieldSpec::prime(p), VarKind::polynomial, "d1", "1");
            const FieldSpec& f = ctx->field();
            for (std::uint32_t n = 0; n <= 6; ++n) {
                MultiIndex alpha = MultiIndex::unit(0, n);
                WeylElement product = WeylElement::identity(f);
                for (const auto& fac : p_adic_factor(alpha, p)) {
                    WeylElement power = WeylElement::derivative(
                        f, MultiIndex::unit(fac.derivation, static_cast<std::uint32_t>(fac.power)));
                    product = w_mul(*ctx, product, w_pow(*ctx, power, fac.exponent));
                }
                if (product != WeylElement::derivative(f, alpha))
                    notes.push_back("p = " + std::to_string(p) + ", n = " + std::to_string(n));
            }
        }
    });

    report.run(10, "parser round trip, 500 elements per bundled scenario, normalization goldens", [](auto& notes) {
        suite_on_all("round_trip", 500, notes);
        auto q = one_variable(FieldSpec::rational(), VarKind::polynomial, "d", "1");
        auto golden = [&](const Context& ctx, const std::string& in, const std::string& out) {
            std::string got = to_string(ctx, normalize(in, ctx));
            if (got != out) notes.push_back(in + " -> " + got + ", expected " + out);
        };
        golden(*q, "d*t", "t*d + 1");
        golden(*q, "(d+t)^2", "d^2 + 2*t*d + t^2 + 1");
        golden(*one_variable(FieldSpec::rational(), VarKind::laurent, "d", "1"), "t^-1*t", "1");
        WeylElement dt = normalize("d*t", *q);
        for (int k = 0; k < 10; ++k) {
            AElement tk = parse_a_element("t^" + std::to_string(k), *q);
            if (act(*q, dt, tk) != Scalar::from_integer(k + 1, q->field()) * tk)
                notes.push_back("d*t on t^" + std::to_string(k));
        }
    });

    report.run(11, "CLI probe output is byte-identical across runs", [](auto& notes) {
        for (const auto& name : bundled) {
            std::string outs[2];
            for (auto& out : outs) {
                std::ostringstream o, e;
                int code = run_cli({"probe", "--scenario", path_of(name)}, o, e);
                if (code != exit_ok) notes.push_back(name + ": exit " + std::to_string(code) + " " + e.str());
                out = o.str();
            }
            if (outs[0] != outs[1]) notes.push_back(name + ": outputs differ");
        }
    });

    std::printf("%s: %d of 11 criteria failed\n", report.failed ? "FAIL" : "PASS", report.failed);
    return report.failed ? 1 : 0;
}
