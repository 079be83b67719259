#include "weyl/probes.hpp"

#include <algorithm>
#include <functional>

#include "weyl/error.hpp"
#include "weyl/random_elements.hpp"

namespace weyl {

std::string to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::reaches_identity: return "reaches_identity";
        case VerdictKind::full_span_mod_f1: return "full_span_mod_f1";
        case VerdictKind::proper_invariant_subspace: return "proper_invariant_subspace";
        case VerdictKind::kernel_nonzero: return "kernel_nonzero";
        case VerdictKind::kernel_zero: return "kernel_zero";
    }
    return "?";
}

std::optional<VerdictKind> parse_verdict_kind(const std::string& text) {
    for (auto k : {VerdictKind::reaches_identity, VerdictKind::full_span_mod_f1,
                   VerdictKind::proper_invariant_subspace, VerdictKind::kernel_nonzero, VerdictKind::kernel_zero})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

namespace {

// Flattens blocks of A-elements into sparse vectors over a shared column
// index (block, monomial), assigned in sorted order.
std::vector<SparseVector> flatten_blocks(const std::vector<std::vector<AElement>>& blocks) {
    struct ColumnLess {
        bool operator()(const std::pair<std::size_t, Monomial>& a, const std::pair<std::size_t, Monomial>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return MonomialOrder{}(a.second, b.second);
        }
    };
    std::map<std::pair<std::size_t, Monomial>, std::size_t, ColumnLess> columns;
    for (const auto& row : blocks)
        for (std::size_t k = 0; k < row.size(); ++k)
            for (const auto& [m, c] : row[k].terms()) columns.emplace(std::make_pair(k, m), 0);
    std::size_t next = 0;
    for (auto& [key, idx] : columns) idx = next++;
    std::vector<SparseVector> out(blocks.size());
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        for (std::size_t k = 0; k < blocks[j].size(); ++k)
            for (const auto& [m, c] : blocks[j][k].terms()) out[j].emplace_back(columns.at({k, m}), c);
        std::sort(out[j].begin(), out[j].end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return out;
}

mpq_class fraction(std::size_t num, std::size_t den) {
    if (den == 0) return mpq_class(1);
    mpq_class q(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
    q.canonicalize();
    return q;
}

WeylElement combine(const std::vector<WeylElement>& domain, const SparseVector& coords) {
    WeylElement x;
    for (const auto& [j, c] : coords) x += c * domain[j];
    return x;
}

ProbeVerdict kernel_verdict(const Context& ctx, const std::vector<WeylElement>& domain, const Window& window,
                            Exec exec) {
    std::vector<AElement> tests;
    for (auto& m : window.a_monomials()) tests.push_back(AElement::term(ctx.one(), std::move(m)));
    auto images = action_images(ctx, domain, tests, exec);
    RowSpace kernel = kernel_basis(flatten_blocks(images), ctx.field());
    ProbeVerdict v;
    v.kind = kernel.rank() == 0 ? VerdictKind::kernel_zero : VerdictKind::kernel_nonzero;
    v.window_restricted = kernel.rank() == 0;
    v.coverage = fraction(domain.size() - kernel.rank(), domain.size());
    for (const auto& [p, row] : kernel.rows()) v.witness.push_back(combine(domain, row));
    return v;
}

std::vector<WeylElement> basis_elements(const Basis& basis, const FieldSpec& f) {
    std::vector<WeylElement> out;
    out.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) out.push_back(basis.element(i, f));
    return out;
}

std::size_t count_covered(const Basis& basis, const RowSpace& span, const FieldSpec& f) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (span.contains({{i, Scalar::one(f)}})) ++n;
    return n;
}

// Fills in the verdict for probes whose success criterion is 1 in span.
ProbeVerdict identity_verdict(const Context& ctx, const Basis& basis, Closure closure) {
    const FieldSpec& f = ctx.field();
    ProbeVerdict v;
    v.coverage = fraction(count_covered(basis, closure.span, f), basis.size());
    auto one = basis.coordinates(WeylElement::identity(f));
    if (one && closure.span.contains(*one)) {
        std::vector<SparseVector> gens;
        for (const auto& g : closure.trace.generators) gens.push_back(*basis.coordinates(g));
        auto coef = express_in_span(gens, *one, f);
        if (!coef) throw InternalError("identity in span but not expressible in generators");
        v.kind = VerdictKind::reaches_identity;
        for (std::size_t k = 0; k < coef->size(); ++k)
            if (!(*coef)[k].is_zero()) v.witness.push_back(closure.trace.generators[k]);
        v.combination = std::move(*coef);
    } else {
        v.kind = VerdictKind::proper_invariant_subspace;
        v.window_restricted = true;
        for (const auto& [p, row] : closure.span.rows()) v.witness.push_back(basis.from_coordinates(row));
    }
    v.trace = std::move(closure.trace);
    return v;
}

}  // namespace

Closure close_span(const Basis& basis, const WeylElement& seed, std::vector<ClosureOp> ops, Exec exec) {
    auto seed_coords = basis.coordinates(seed);
    if (!seed_coords) throw UsageError("closure seed lies outside the window");
    Closure c;
    for (const auto& op : ops) c.trace.op_labels.push_back(op.label);
    c.span.insert(*seed_coords);
    c.trace.generators.push_back(seed);
    c.trace.steps.push_back({std::nullopt, 0});
    std::vector<std::size_t> frontier{0};
    // Breadth-first waves: candidates are generated in parallel, then
    // reduced and admitted serially in (frontier, op) order.
    while (!frontier.empty()) {
        std::vector<WeylElement> current;
        for (auto k : frontier) current.push_back(c.trace.generators[k]);
        auto candidates = apply_ops(current, ops, exec);
        auto coords = map_indices<std::optional<SparseVector>>(
            candidates.size(), exec, [&](std::size_t i) { return basis.coordinates(candidates[i]); });
        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (!coords[i] || coords[i]->empty()) continue;
            if (!c.span.insert(*coords[i])) continue;
            c.trace.generators.push_back(std::move(candidates[i]));
            c.trace.steps.push_back({frontier[i / ops.size()], i % ops.size()});
            next.push_back(c.trace.generators.size() - 1);
        }
        frontier = std::move(next);
    }
    return c;
}

SubspaceBasis compute_f1(const Context& ctx, const Window& window, Exec exec) {
    auto basis = window.a_basis();
    auto blocks = map_indices<std::vector<AElement>>(basis->size(), exec, [&](std::size_t j) {
        AElement m = AElement::term(ctx.one(), (*basis)[j].second);
        std::vector<AElement> row;
        for (std::size_t d = 0; d < ctx.derivation_count(); ++d) row.push_back(apply_derivation(ctx, d, m));
        return row;
    });
    return SubspaceBasis{basis, kernel_basis(flatten_blocks(blocks), ctx.field())};
}

bool equal_mod_f1(const WeylElement& x, const WeylElement& y, const SubspaceBasis& f1) {
    WeylElement diff = x - y;
    if (diff.is_zero()) return true;
    if (!diff.in_a()) return false;
    auto inside = f1.contains(diff);
    if (!inside) throw IndeterminateError("difference leaves the F_1 window; widen the window");
    return *inside;
}

ProbeVerdict theta_kernel(const Context& ctx, const Window& window, Exec exec) {
    auto basis = window.weyl_basis(ctx);
    return kernel_verdict(ctx, basis_elements(*basis, ctx.field()), window, exec);
}

ProbeVerdict theta_kernel_f1(const Context& ctx, const Window& window, const SubspaceBasis& f1, Exec exec) {
    std::vector<WeylElement> domain;
    auto constants = f1.elements();
    for (const auto& alpha : window.multi_indices(ctx))
        for (const auto& f : constants) {
            if (!f.in_a() || f.is_zero()) continue;
            domain.push_back(WeylElement::term(alpha, f.terms().begin()->second));
        }
    return kernel_verdict(ctx, domain, window, exec);
}

ProbeVerdict d_simplicity_probe(const Context& ctx, const AElement& seed, const Window& window, Exec exec) {
    if (seed.is_zero()) throw UsageError("d_simplicity_probe needs a nonzero seed");
    auto basis = window.a_basis();
    std::vector<ClosureOp> ops;
    for (const auto& item : basis->items()) {
        AElement m = AElement::term(ctx.one(), item.second);
        ops.push_back({"mul " + to_string(ctx, item.second), [m](const WeylElement& x) { return m * x; }});
    }
    for (std::size_t d = 0; d < ctx.derivation_count(); ++d) {
        ops.push_back({"apply " + ctx.derivation(d).name(), [&ctx, d](const WeylElement& x) {
                           return x.is_zero() ? WeylElement{}
                                              : WeylElement::from_a(apply_derivation(ctx, d, x.terms().begin()->second));
                       }});
    }
    return identity_verdict(ctx, *basis, close_span(*basis, WeylElement::from_a(seed), std::move(ops), exec));
}

ProbeVerdict lie_ideal_closure_probe(const Context& ctx, const WeylElement& seed, const Window& window,
                                     const SubspaceBasis& f1, const ProbeOptions& options) {
    const FieldSpec& f = ctx.field();
    if (seed.is_zero()) throw UsageError("lie_ideal_closure_probe needs a nonzero seed");
    if (seed.in_a()) {
        auto central = f1.contains(seed);
        if (central && *central) throw UsageError("seed lies in F_1 (central); the probe needs a seed outside F_1");
    }
    auto basis = window.weyl_basis(ctx);
    std::vector<ClosureOp> ops;
    for (std::size_t i = 0; i < basis->size(); ++i) {
        WeylElement b = basis->element(i, f);
        ops.push_back({"bracket " + to_string(ctx, b),
                       [&ctx, b](const WeylElement& x) { return lie_bracket(ctx, x, b); }});
    }
    Closure closure = close_span(*basis, seed, std::move(ops), options.exec);

    RowSpace with_f1 = closure.span;
    for (const auto& c : f1.elements())
        if (auto v = basis->coordinates(c)) with_f1.insert(*v);

    ProbeVerdict v;
    Window inner = window.interior(options.margin);
    auto inner_basis = inner.weyl_basis(ctx);
    std::size_t reached = 0;
    for (std::size_t i = 0; i < inner_basis->size(); ++i) {
        WeylElement e = inner_basis->element(i, f);
        auto coords = basis->coordinates(e);
        if (coords && with_f1.contains(*coords))
            ++reached;
        else
            v.unreached.push_back(std::move(e));
    }
    v.coverage = fraction(reached, inner_basis->size());
    if (v.unreached.empty()) {
        v.kind = VerdictKind::full_span_mod_f1;
    } else {
        v.kind = VerdictKind::proper_invariant_subspace;
        for (const auto& [p, row] : closure.span.rows()) v.witness.push_back(basis->from_coordinates(row));
    }
    v.window_restricted = true;
    v.trace = std::move(closure.trace);
    return v;
}

ProbeVerdict assoc_ideal_closure_probe(const Context& ctx, const WeylElement& seed, const Window& window, Exec exec) {
    const FieldSpec& f = ctx.field();
    if (seed.is_zero()) throw UsageError("assoc_ideal_closure_probe needs a nonzero seed");
    auto basis = window.weyl_basis(ctx);
    std::vector<ClosureOp> ops;
    for (std::size_t i = 0; i < basis->size(); ++i) {
        WeylElement b = basis->element(i, f);
        std::string text = to_string(ctx, b);
        ops.push_back({"left " + text, [&ctx, b](const WeylElement& x) { return w_mul(ctx, b, x); }});
        ops.push_back({"right " + text, [&ctx, b](const WeylElement& x) { return w_mul(ctx, x, b); }});
    }
    return identity_verdict(ctx, *basis, close_span(*basis, seed, std::move(ops), exec));
}

Derivation p_power_derivation(const Context& ctx, const Derivation& d, std::uint64_t p) {
    if (ctx.field().characteristic() != p || p == 0)
        throw UsageError("p_power_derivation needs p equal to the field characteristic");
    auto power = [&](const AElement& u) {
        AElement out = u;
        for (std::uint64_t i = 0; i < p && !out.is_zero(); ++i) out = apply_derivation(ctx, d, out);
        return out;
    };
    std::optional<ShiftRule> shift;
    auto declared = declared_variables(ctx);
    if (d.shift()) {
        for (const auto& [v, img] : d.images())
            if (ctx.variable(v).family == d.shift()->family)
                throw UsageError("p_power_derivation: explicit images on shift-family members are not supported");
        shift = ShiftRule{d.shift()->family, static_cast<std::uint32_t>(d.shift()->step * p)};
    }
    std::map<VarId, AElement> images;
    for (VarId v : declared) {
        if (shift && ctx.variable(v).family == shift->family) continue;
        images.emplace(v, power(AElement::term(ctx.one(), Monomial::variable(v))));
    }
    Derivation result(d.name() + "^" + std::to_string(p), std::move(images), shift);

    SampleShape shape;
    shape.max_degree = 3;
    shape.max_coef_terms = 2;
    ElementSampler sampler(ctx, 0x5eed + p, shape, declared);
    for (int trial = 0; trial < 20; ++trial) {
        AElement u = sampler.a_element(), w = sampler.a_element();
        AElement lhs = power(u * w);
        if (!(lhs == power(u) * w + u * power(w)))
            throw InternalError("p-th power of " + d.name() + " violates the Leibniz rule");
        if (!(apply_derivation(ctx, result, u) == power(u)))
            throw InternalError("p-th power of " + d.name() + " disagrees with its generator images");
    }
    return result;
}

AElement determinant(const std::vector<std::vector<AElement>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw UsageError("determinant of an empty matrix");
    if (n == 1) return m[0][0];
    AElement out;
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col].is_zero()) continue;
        std::vector<std::vector<AElement>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<AElement> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != col) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        AElement term = m[0][col] * determinant(minor);
        if (col % 2) out -= term; else out += term;
    }
    return out;
}

std::optional<WronskianWitness> wronskian_witness(const Context& ctx, const std::vector<Derivation>& derivations,
                                                  const std::vector<AElement>& candidates) {
    const std::size_t n = derivations.size();
    if (n == 0 || candidates.size() < n) return std::nullopt;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    for (;;) {
        std::vector<std::vector<AElement>> matrix(n, std::vector<AElement>(n));
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t r = 0; r < n; ++r)
                matrix[s][r] = apply_derivation(ctx, derivations[s], candidates[pick[r]]);
        AElement det = determinant(matrix);
        if (!det.is_zero()) {
            WronskianWitness w;
            w.indices = pick;
            for (auto i : pick) w.chosen.push_back(candidates[i]);
            w.determinant = std::move(det);
            return w;
        }
        // next combination in lexicographic order
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == candidates.size() - n + i - 1) --i;
        if (i == 0) return std::nullopt;
        ++pick[i - 1];
        for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace weyl
