#include "l3f/align/features.hpp"

#include <algorithm>
#include <cmath>

namespace l3f::align {
namespace {

std::vector<double> gaussian_kernel(double sigma) {
    const int r = std::max(1, static_cast<int>(std::ceil(3 * sigma)));
    std::vector<double> k(2 * r + 1);
    double total = 0;
    for (int i = -r; i <= r; ++i) total += k[i + r] = std::exp(-0.5 * i * i / (sigma * sigma));
    for (double& v : k) v /= total;
    return k;
}

// Separable blur with clamped borders.
std::vector<double> blur(const std::vector<double>& src, int h, int w, const std::vector<double>& k) {
    const int r = static_cast<int>(k.size() / 2);
    std::vector<double> tmp(src.size()), out(src.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0;
            for (int t = -r; t <= r; ++t) acc += k[t + r] * src[static_cast<std::size_t>(y) * w + std::clamp(x + t, 0, w - 1)];
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0;
            for (int t = -r; t <= r; ++t) acc += k[t + r] * tmp[static_cast<std::size_t>(std::clamp(y + t, 0, h - 1)) * w + x];
            out[static_cast<std::size_t>(y) * w + x] = acc;
        }
    return out;
}

double bilinear(const GrayImage& g, double x, double y) {
    const int x0 = static_cast<int>(std::floor(x)), y0 = static_cast<int>(std::floor(y));
    const double fx = x - x0, fy = y - y0;
    const auto px = [&](int yy, int xx) { return g.at(std::clamp(yy, 0, g.height - 1), std::clamp(xx, 0, g.width - 1)); };
    return (1 - fy) * ((1 - fx) * px(y0, x0) + fx * px(y0, x0 + 1)) + fy * ((1 - fx) * px(y0 + 1, x0) + fx * px(y0 + 1, x0 + 1));
}

// Vertex offset of the parabola through (-1, a), (0, b), (1, c).
double parabola_peak(double a, double b, double c) {
    const double denom = a - 2 * b + c;
    if (denom >= 0) return 0.0;
    return std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
}

} // namespace

GrayImage to_gray(const lf::Image& image) {
    GrayImage g{image.height, image.width, std::vector<double>(image.plane_size())};
    const std::size_t n = g.data.size();
    for (std::size_t i = 0; i < n; ++i)
        g.data[i] = 0.299 * image.data[i] + 0.587 * image.data[n + i] + 0.114 * image.data[2 * n + i];
    return g;
}

std::vector<Keypoint> detect_corners(const GrayImage& g, const DetectorConfig& cfg) {
    const int H = g.height, W = g.width, margin = cfg.descriptor_size / 2 + 1;
    if (H <= 2 * margin || W <= 2 * margin) return {};
    const std::size_t n = static_cast<std::size_t>(H) * W;
    std::vector<double> ixx(n), iyy(n), ixy(n);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const double gx = 0.5 * (g.at(y, std::min(x + 1, W - 1)) - g.at(y, std::max(x - 1, 0)));
            const double gy = 0.5 * (g.at(std::min(y + 1, H - 1), x) - g.at(std::max(y - 1, 0), x));
            const std::size_t i = static_cast<std::size_t>(y) * W + x;
            ixx[i] = gx * gx;
            iyy[i] = gy * gy;
            ixy[i] = gx * gy;
        }
    const auto k = gaussian_kernel(cfg.smoothing_sigma);
    ixx = blur(ixx, H, W, k);
    iyy = blur(iyy, H, W, k);
    ixy = blur(ixy, H, W, k);
    std::vector<double> response(n);
    double peak = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double tr = ixx[i] + iyy[i];
        response[i] = ixx[i] * iyy[i] - ixy[i] * ixy[i] - cfg.harris_k * tr * tr;
        peak = std::max(peak, response[i]);
    }
    if (!(peak > 0)) return {};

    const double threshold = cfg.relative_threshold * peak;
    const auto R = [&](int y, int x) { return response[static_cast<std::size_t>(y) * W + x]; };
    std::vector<Keypoint> out;
    for (int y = margin; y < H - margin; ++y)
        for (int x = margin; x < W - margin; ++x) {
            const double r = R(y, x);
            if (r <= threshold) continue;
            bool is_max = true;
            for (int dy = -cfg.nms_radius; dy <= cfg.nms_radius && is_max; ++dy)
                for (int dx = -cfg.nms_radius; dx <= cfg.nms_radius; ++dx) {
                    const int yy = y + dy, xx = x + dx;
                    if ((dy == 0 && dx == 0) || yy < 0 || xx < 0 || yy >= H || xx >= W) continue;
                    const double q = R(yy, xx);
                    // Ties go to the first pixel in raster order.
                    if (q > r || (q == r && (dy < 0 || (dy == 0 && dx < 0)))) {
                        is_max = false;
                        break;
                    }
                }
            if (!is_max) continue;
            out.push_back({x + parabola_peak(R(y, x - 1), r, R(y, x + 1)),
                           y + parabola_peak(R(y - 1, x), r, R(y + 1, x)), r});
        }
    std::stable_sort(out.begin(), out.end(), [](const Keypoint& a, const Keypoint& b) { return a.score > b.score; });
    if (out.size() > static_cast<std::size_t>(cfg.max_keypoints)) out.resize(cfg.max_keypoints);
    return out;
}

FeatureSet describe(const GrayImage& g, const std::vector<Keypoint>& kps, const DetectorConfig& cfg) {
    FeatureSet fs;
    fs.dim = cfg.descriptor_size * cfg.descriptor_size;
    fs.keypoints = kps;
    fs.descriptors.resize(kps.size() * fs.dim);
    const double half = (cfg.descriptor_size - 1) / 2.0;
    std::vector<double> patch(fs.dim);
    for (std::size_t i = 0; i < kps.size(); ++i) {
        double mean = 0;
        for (int r = 0; r < cfg.descriptor_size; ++r)
            for (int c = 0; c < cfg.descriptor_size; ++c)
                mean += patch[r * cfg.descriptor_size + c] = bilinear(g, kps[i].x - half + c, kps[i].y - half + r);
        mean /= fs.dim;
        double var = 0;
        for (double& v : patch) var += (v - mean) * (v - mean);
        const double sd = std::sqrt(var / fs.dim);
        for (int p = 0; p < fs.dim; ++p)
            fs.descriptors[i * fs.dim + p] = static_cast<float>(sd > 0 ? (patch[p] - mean) / sd : 0.0);
    }
    return fs;
}

FeatureSet detect_and_describe(const GrayImage& gray, const DetectorConfig& cfg) {
    return describe(gray, detect_corners(gray, cfg), cfg);
}

FeatureSet detect_and_describe(const lf::Image& image, const DetectorConfig& cfg) {
    return detect_and_describe(to_gray(image), cfg);
}

} // namespace l3f::align
