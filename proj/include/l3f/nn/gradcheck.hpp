#pragma once
// Central finite-difference check of reverse-mode gradients (64-bit).

#include "l3f/nn/graph.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace l3f::nn {

struct GradcheckOptions {
    double step = 1e-5;
    // 0 checks every entry; otherwise a seeded random subset per block.
    std::size_t max_entries_per_block = 0;
    std::uint64_t seed = 1;
    // relative error = |analytic - numeric| / max(|analytic|, |numeric|, floor)
    // Rounding puts the difference quotient's noise near eps * |f| / step, about
    // 1e-10 for losses of order 10, so smaller gradients are judged absolutely.
    double floor = 1e-5;
};

struct GradcheckBlock {
    std::string name;
    std::size_t checked = 0;
    // Probes whose +/- step changed a ReLU mask, sign or max/min selection.
    std::size_t skipped_nondifferentiable = 0;
    double max_rel_error = 0.0;
    double max_abs_error = 0.0;
};

struct GradcheckReport {
    std::vector<GradcheckBlock> blocks;

    double max_rel_error() const;
    bool passed(double tolerance) const { return max_rel_error() < tolerance; }
    std::string to_string() const;
};

// `fragment` must build a fresh graph that binds the given parameters and
// return a scalar. It is called once per probe, so it must be pure.
using Fragment = std::function<Var(Graph<double>&)>;

GradcheckReport gradcheck(const Fragment& fragment, std::span<Parameter<double>* const> params,
                          const GradcheckOptions& options = {});

} // namespace l3f::nn
