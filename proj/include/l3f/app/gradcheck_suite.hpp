#pragma once

#include "l3f/nn/gradcheck.hpp"

#include <string>
#include <utility>
#include <vector>

namespace l3f::app {

struct GradcheckSuiteOptions {
    int channels = 8;
    int s1_blocks = 2;
    int s2_blocks = 3;
    int transpose_channels = 8;
    int patch = 16;
    int grid = 2;
    int hist_bins = 8;
    std::uint64_t seed = 1;
    // 0 checks every entry of every block.
    std::size_t max_entries_per_block = 24;
};

// One report per layer kind plus the composed network with the full training
// loss (histogram gamma, both stages, L1, contextual and weight penalty).
std::vector<std::pair<std::string, nn::GradcheckReport>> run_gradcheck_suite(const GradcheckSuiteOptions& options = {});

} // namespace l3f::app
