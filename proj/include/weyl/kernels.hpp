#pragma once

// Data-parallel kernels. Each has a serial reference path and an OpenMP
// path; both produce identical, order-stable results.

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "weyl/weyl_element.hpp"

namespace weyl {

enum class Exec { serial, parallel };

/// Number of OpenMP threads available, 1 without OpenMP.
int parallel_threads();

/// Parallel evaluation may create shift-family members from several
/// threads. With two or more families the creation order, and so the
/// variable ids, would depend on scheduling; such contexts run serially.
Exec stable_exec(const Context& ctx, Exec exec);

/// Calls body(i) for i in [0, n). Exceptions thrown by any iteration are
/// rethrown (the first one by index) after the loop.
void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body);

template <class T, class F>
std::vector<T> map_indices(std::size_t n, Exec exec, F&& f) {
    std::vector<T> out(n);
    for_each_index(n, exec, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

/// A named linear operator used to grow a closure.
struct ClosureOp {
    std::string label;
    std::function<WeylElement(const WeylElement&)> apply;
};

/// Applies every op to every frontier element; result index is
/// frontier_pos * ops.size() + op.
std::vector<WeylElement> apply_ops(const std::vector<WeylElement>& frontier, const std::vector<ClosureOp>& ops,
                                   Exec exec);

/// Images of `domain[j]` acting on each of `tests`: out[j][k] = act(domain[j], tests[k]).
std::vector<std::vector<AElement>> action_images(const Context& ctx, const std::vector<WeylElement>& domain,
                                                 const std::vector<AElement>& tests, Exec exec);

}  // namespace weyl
