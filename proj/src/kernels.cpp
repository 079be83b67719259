#include "weyl/kernels.hpp"

#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace weyl {

int parallel_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Exec stable_exec(const Context& ctx, Exec exec) {
    std::set<std::string> families;
    for (const auto& d : ctx.derivations())
        if (d.shift()) families.insert(d.shift()->family);
    return families.size() > 1 ? Exec::serial : exec;
}

void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body) {
    if (exec == Exec::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<WeylElement> apply_ops(const std::vector<WeylElement>& frontier, const std::vector<ClosureOp>& ops,
                                   Exec exec) {
    const std::size_t width = ops.size();
    return map_indices<WeylElement>(frontier.size() * width, exec, [&](std::size_t i) {
        return ops[i % width].apply(frontier[i / width]);
    });
}

std::vector<std::vector<AElement>> action_images(const Context& ctx, const std::vector<WeylElement>& domain,
                                                 const std::vector<AElement>& tests, Exec exec) {
    return map_indices<std::vector<AElement>>(domain.size(), exec, [&](std::size_t j) {
        std::vector<AElement> row;
        row.reserve(tests.size());
        for (const auto& a : tests) row.push_back(act(ctx, domain[j], a));
        return row;
    });
}

}  // namespace weyl
