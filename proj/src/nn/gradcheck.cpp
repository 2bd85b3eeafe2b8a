#include "l3f/nn/gradcheck.hpp"

#include "l3f/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace l3f::nn {
namespace {

struct Probe {
    double value;
    std::uint64_t signature;
};

Probe evaluate(const Fragment& fragment) {
    Graph<double> g(true);
    const Var out = fragment(g);
    if (g.value(out).size() != 1) throw PreconditionError("gradcheck: fragment must return a scalar");
    return {g.value(out)[0], g.branch_signature()};
}

} // namespace

double GradcheckReport::max_rel_error() const {
    double worst = 0.0;
    for (const auto& b : blocks) worst = std::max(worst, b.max_rel_error);
    return worst;
}

std::string GradcheckReport::to_string() const {
    std::ostringstream os;
    for (const auto& b : blocks) {
        os << b.name << ": checked=" << b.checked << " skipped=" << b.skipped_nondifferentiable
           << " max_rel=" << b.max_rel_error << " max_abs=" << b.max_abs_error << "\n";
    }
    return os.str();
}

GradcheckReport gradcheck(const Fragment& fragment, std::span<Parameter<double>* const> params,
                          const GradcheckOptions& options) {
    for (Parameter<double>* p : params) p->grad = Tensor<double>(p->value.shape());

    std::uint64_t base_signature = 0;
    {
        Graph<double> g(true);
        const Var out = fragment(g);
        base_signature = g.branch_signature();
        g.backward(out);
    }

    std::mt19937_64 rng(options.seed);
    GradcheckReport report;
    for (Parameter<double>* p : params) {
        GradcheckBlock block;
        block.name = p->name;
        std::vector<std::size_t> entries(p->value.size());
        std::iota(entries.begin(), entries.end(), 0);
        if (options.max_entries_per_block != 0 && entries.size() > options.max_entries_per_block) {
            std::shuffle(entries.begin(), entries.end(), rng);
            entries.resize(options.max_entries_per_block);
        }
        for (std::size_t e : entries) {
            const double original = p->value[e];
            p->value[e] = original + options.step;
            const Probe plus = evaluate(fragment);
            p->value[e] = original - options.step;
            const Probe minus = evaluate(fragment);
            p->value[e] = original;
            if (plus.signature != base_signature || minus.signature != base_signature) {
                ++block.skipped_nondifferentiable;
                continue;
            }
            const double numeric = (plus.value - minus.value) / (2.0 * options.step);
            const double analytic = p->grad[e];
            const double abs_err = std::abs(analytic - numeric);
            const double denom = std::max({std::abs(analytic), std::abs(numeric), options.floor});
            block.max_abs_error = std::max(block.max_abs_error, abs_err);
            block.max_rel_error = std::max(block.max_rel_error, abs_err / denom);
            ++block.checked;
        }
        report.blocks.push_back(block);
    }
    return report;
}

} // namespace l3f::nn
