#pragma once

// Truncated-window probes of the structure of A[D]: the constants F_1,
// faithfulness of the action on A, D-simplicity and ideal closures, plus
// the characteristic-p tools (p-th powers of derivations, Wronskian-type
// determinants).
//
// Closures use discard semantics: any generated element leaving the window
// is dropped, never projected. Every element of a closure span therefore
// lies in the ideal of the untruncated algebra, so "reaches identity" is a
// certificate while negative outcomes are window-restricted.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "weyl/kernels.hpp"
#include "weyl/window.hpp"

namespace weyl {

enum class VerdictKind { reaches_identity, full_span_mod_f1, proper_invariant_subspace, kernel_nonzero, kernel_zero };

std::string to_string(VerdictKind kind);
std::optional<VerdictKind> parse_verdict_kind(const std::string& text);

/// How generators[k] was produced: ops[op](generators[parent]); the seed has no parent.
struct ClosureStep {
    std::optional<std::size_t> parent;
    std::size_t op = 0;
};

struct ClosureTrace {
    std::vector<WeylElement> generators;
    std::vector<ClosureStep> steps;
    std::vector<std::string> op_labels;
};

struct ProbeVerdict {
    VerdictKind kind = VerdictKind::proper_invariant_subspace;
    /// Kernel basis, span basis, or the generators used by the identity certificate.
    std::vector<WeylElement> witness;
    /// Fraction of the relevant window basis that was attained.
    mpq_class coverage;
    /// True when the verdict is only evidence about the window, not a certificate.
    bool window_restricted = false;
    /// Interior basis monomials missing from span + F_1 (Lie probe only).
    std::vector<WeylElement> unreached;
    std::optional<ClosureTrace> trace;
    /// identity = sum_k combination[k] * trace->generators[k] when reaches_identity.
    std::vector<Scalar> combination;
};

struct ProbeOptions {
    Exec exec = Exec::parallel;
    /// Fraction by which window bounds shrink for the interior check.
    mpq_class margin{1, 2};
};

/// Joint kernel of all derivations on the window of A.
SubspaceBasis compute_f1(const Context& ctx, const Window& window, Exec exec = Exec::parallel);

/// x == y modulo F_1. Throws IndeterminateError when x - y is a degree-0
/// element that leaves the F_1 window.
bool equal_mod_f1(const WeylElement& x, const WeylElement& y, const SubspaceBasis& f1);

/// Kernel of the action on A restricted to the window of A[D], tested on the
/// window monomials of A.
ProbeVerdict theta_kernel(const Context& ctx, const Window& window, Exec exec = Exec::parallel);
/// Same, restricted to F_1[D]: elements f d^(alpha) with f in the F_1 window.
ProbeVerdict theta_kernel_f1(const Context& ctx, const Window& window, const SubspaceBasis& f1,
                             Exec exec = Exec::parallel);

ProbeVerdict d_simplicity_probe(const Context& ctx, const AElement& seed, const Window& window,
                                Exec exec = Exec::parallel);
ProbeVerdict lie_ideal_closure_probe(const Context& ctx, const WeylElement& seed, const Window& window,
                                     const SubspaceBasis& f1, const ProbeOptions& options = {});
ProbeVerdict assoc_ideal_closure_probe(const Context& ctx, const WeylElement& seed, const Window& window,
                                       Exec exec = Exec::parallel);

/// Generic discard-semantics closure of span{seed} under `ops` inside `basis`.
struct Closure {
    ClosureTrace trace;
    RowSpace span;
};
Closure close_span(const Basis& basis, const WeylElement& seed, std::vector<ClosureOp> ops, Exec exec);

/// The derivation x -> d^p(x), p the field characteristic. Leibniz is checked
/// on sampled pairs; a failure raises InternalError.
Derivation p_power_derivation(const Context& ctx, const Derivation& d, std::uint64_t p);

/// Determinant by cofactor expansion along the first row.
AElement determinant(const std::vector<std::vector<AElement>>& m);

struct WronskianWitness {
    std::vector<std::size_t> indices;  // into the candidate list
    std::vector<AElement> chosen;
    AElement determinant;
};

/// First n-subset (lexicographic) of candidates with det(d_s(a_r)) != 0.
std::optional<WronskianWitness> wronskian_witness(const Context& ctx, const std::vector<Derivation>& derivations,
                                                  const std::vector<AElement>& candidates);

}  // namespace weyl
