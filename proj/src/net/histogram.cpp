#include "l3f/net/histogram.hpp"

#include "l3f/error.hpp"

#include <algorithm>
#include <cmath>

namespace l3f::net {

template <typename T>
nn::Tensor<T> rgb_histogram(const lf::LightField& lf, int bins) {
    if (bins < 2) throw PreconditionError("histogram needs at least 2 bins");
    std::vector<std::uint64_t> counts(3 * static_cast<std::size_t>(bins), 0);
    const std::size_t plane = static_cast<std::size_t>(lf.height()) * lf.width();
    for (int u = 0; u < lf.views_u(); ++u)
        for (int v = 0; v < lf.views_v(); ++v) {
            const auto view = lf.view(u, v);
            for (int c = 0; c < lf::kChannels; ++c)
                for (std::size_t i = 0; i < plane; ++i) {
                    const double x = std::clamp(static_cast<double>(view[c * plane + i]), 0.0, 1.0);
                    const int b = std::min(static_cast<int>(x * bins), bins - 1);
                    ++counts[static_cast<std::size_t>(c) * bins + b];
                }
        }
    const double total = static_cast<double>(lf.view_count() * plane);
    nn::Tensor<T> out({counts.size()});
    for (std::size_t i = 0; i < counts.size(); ++i) out[i] = static_cast<T>(total > 0 ? counts[i] / total : 0.0);
    return out;
}

lf::LightField amplify(const lf::LightField& lf, double gamma) {
    if (!(gamma > 0)) throw PreconditionError("amplification factor must be positive");
    lf::LightField out = lf;
    const float g = static_cast<float>(gamma);
    for (float& x : out.data()) x *= g;
    return out;
}

lf::LightField gamma_correct(const lf::LightField& lf, double gamma) {
    if (!(gamma > 0)) throw PreconditionError("gamma must be positive");
    lf::LightField out = lf;
    for (float& x : out.data()) x = static_cast<float>(std::pow(static_cast<double>(x), gamma));
    return out;
}

template nn::Tensor<float> rgb_histogram<float>(const lf::LightField&, int);
template nn::Tensor<double> rgb_histogram<double>(const lf::LightField&, int);

} // namespace l3f::net
