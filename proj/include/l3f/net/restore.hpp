#pragma once

#include "l3f/lf/light_field.hpp"
#include "l3f/net/model.hpp"

#include <vector>

namespace l3f::net {

struct RestoreOptions {
    // Empty restores the whole working grid.
    std::vector<lf::ViewIndex> views;
    bool use_hist = true;
    int workers = 1;
};

struct RestoreResult {
    // Full request: grid x grid views. Subset: 1 x k views in request order.
    lf::LightField lf;
    std::vector<lf::ViewIndex> views;
    double gamma = 1.0;
};

// lf_low holds the working grid plus a one-view ring. The model is only read,
// so one instance may serve several concurrent restorations.
RestoreResult restore_lf(L3Fnet<float>& model, const lf::LightField& lf_low, const RestoreOptions& options = {});

double predict_gamma(L3Fnet<float>& model, const lf::LightField& lf);

} // namespace l3f::net
