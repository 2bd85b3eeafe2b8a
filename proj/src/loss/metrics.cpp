#include "l3f/loss/metrics.hpp"

#include "l3f/error.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace l3f::loss {
namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

void check_same(const lf::Image& a, const lf::Image& b) {
    if (a.height != b.height || a.width != b.width) throw PreconditionError("metric inputs differ in size");
}

std::vector<double> luma(const lf::Image& img) {
    std::vector<double> y(img.plane_size());
    const std::size_t n = y.size();
    for (std::size_t i = 0; i < n; ++i)
        y[i] = 0.299 * img.data[i] + 0.587 * img.data[n + i] + 0.114 * img.data[2 * n + i];
    return y;
}

std::array<double, kWindow> gaussian() {
    std::array<double, kWindow> w{};
    double total = 0;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - kWindow / 2;
        w[i] = std::exp(-d * d / (2 * kSigma * kSigma));
        total += w[i];
    }
    for (double& v : w) v /= total;
    return w;
}

// Separable "valid" filtering.
std::vector<double> filter_valid(const std::vector<double>& src, int h, int w) {
    static const auto k = gaussian();
    const int oh = h - kWindow + 1, ow = w - kWindow + 1;
    std::vector<double> rows(static_cast<std::size_t>(h) * ow), out(static_cast<std::size_t>(oh) * ow);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0;
            for (int t = 0; t < kWindow; ++t) acc += k[t] * src[static_cast<std::size_t>(y) * w + x + t];
            rows[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0;
            for (int t = 0; t < kWindow; ++t) acc += k[t] * rows[static_cast<std::size_t>(y + t) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = acc;
        }
    return out;
}

} // namespace

double psnr(const lf::Image& a, const lf::Image& b, double peak) {
    check_same(a, b);
    double se = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = static_cast<double>(a.data[i]) - b.data[i];
        se += d * d;
    }
    if (se == 0) return kPsnrIdentical;
    const double mse = se / static_cast<double>(a.data.size());
    return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const lf::Image& a, const lf::Image& b) {
    check_same(a, b);
    if (a.height < kWindow || a.width < kWindow) throw PreconditionError("SSIM needs images of at least 11x11");
    const auto x = luma(a), y = luma(b);
    std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }
    const auto mx = filter_valid(x, a.height, a.width), my = filter_valid(y, a.height, a.width);
    const auto sxx = filter_valid(xx, a.height, a.width), syy = filter_valid(yy, a.height, a.width),
               sxy = filter_valid(xy, a.height, a.width);
    double total = 0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
        const double vx = sxx[i] - mx[i] * mx[i], vy = syy[i] - my[i] * my[i], cov = sxy[i] - mx[i] * my[i];
        total += ((2 * mx[i] * my[i] + kC1) * (2 * cov + kC2)) /
                 ((mx[i] * mx[i] + my[i] * my[i] + kC1) * (vx + vy + kC2));
    }
    return total / static_cast<double>(mx.size());
}

double l1_distance(const lf::Image& a, const lf::Image& b) {
    check_same(a, b);
    double acc = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) acc += std::abs(static_cast<double>(a.data[i]) - b.data[i]);
    return a.data.empty() ? 0.0 : acc / static_cast<double>(a.data.size());
}

} // namespace l3f::loss
