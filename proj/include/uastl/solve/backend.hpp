#pragma once

// Backend selection. A backend exposes optimize() over a real objective and
// max_weighted() over weighted soft constraints. One backend instance is a
// single-threaded session; build one per concurrent solve.

#include <variant>

#include "uastl/solve/external.hpp"
#include "uastl/solve/internal.hpp"

namespace uastl::ir {

using SolverBackend = std::variant<InternalSolver, ExternalSolver>;

inline SolverModel solve_optimize(const SolverBackend& backend, const Encoding& enc,
                                  double timeout_s) {
    return std::visit([&](const auto& b) { return b.optimize(enc, timeout_s); }, backend);
}

inline SolverModel solve_max_weighted(const SolverBackend& backend, const Encoding& enc,
                                      double timeout_s, bool plain_sat = false) {
    if (const auto* ext = std::get_if<ExternalSolver>(&backend))
        return ext->max_weighted(enc, timeout_s, plain_sat);
    return std::get<InternalSolver>(backend).max_weighted(enc, timeout_s);
}

}  // namespace uastl::ir
