#include "l3f/loss/contextual.hpp"

#include "l3f/error.hpp"
#include "l3f/nn/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace l3f::loss {

void CxConfig::validate() const {
    if (patch < 1 || patch % 2 == 0) throw PreconditionError("contextual patch size must be odd");
    if (grid_stride < 1 || out_stride < 1) throw PreconditionError("contextual strides must be positive");
    if (!(bandwidth > 0)) throw PreconditionError("contextual bandwidth must be positive");
    if (!(epsilon > 0)) throw PreconditionError("contextual epsilon must be positive");
}

namespace {

constexpr double kNormFloor = 1e-12;
constexpr std::size_t kRowChunk = 256;

struct Lattice {
    std::size_t rows = 0, cols = 0, stride = 1;
    std::size_t count() const { return rows * cols; }
};

Lattice lattice(std::size_t extent_h, std::size_t extent_w, std::size_t patch, std::size_t stride) {
    Lattice l;
    l.stride = stride;
    if (extent_h >= patch && extent_w >= patch) {
        l.rows = (extent_h - patch) / stride + 1;
        l.cols = (extent_w - patch) / stride + 1;
    }
    return l;
}

// Flat HWC indices of every feature component, feature-major.
std::vector<std::uint32_t> patch_indices(const Lattice& l, std::size_t width, std::size_t patch) {
    std::vector<std::uint32_t> idx;
    idx.reserve(l.count() * patch * patch * 3);
    for (std::size_t r = 0; r < l.rows; ++r)
        for (std::size_t c = 0; c < l.cols; ++c)
            for (std::size_t dy = 0; dy < patch; ++dy)
                for (std::size_t dx = 0; dx < patch; ++dx)
                    for (std::size_t ch = 0; ch < 3; ++ch)
                        idx.push_back(static_cast<std::uint32_t>(((r * l.stride + dy) * width + c * l.stride + dx) * 3 + ch));
    return idx;
}

struct Features {
    std::size_t count = 0, dim = 0;
    std::vector<double> unit;  // normalized, count x dim
    std::vector<double> norm;  // pre-normalization length
};

template <typename T>
Features extract(const nn::Tensor<T>& img, const std::vector<std::uint32_t>& idx, std::size_t dim, const std::vector<double>& mean) {
    Features f;
    f.dim = dim;
    f.count = idx.size() / dim;
    f.unit.resize(idx.size());
    f.norm.resize(f.count);
    for (std::size_t i = 0; i < f.count; ++i) {
        double ss = 0;
        for (std::size_t p = 0; p < dim; ++p) {
            const double z = static_cast<double>(img[idx[i * dim + p]]) - mean[p];
            f.unit[i * dim + p] = z;
            ss += z * z;
        }
        const double n = std::sqrt(ss + kNormFloor);
        f.norm[i] = n;
        for (std::size_t p = 0; p < dim; ++p) f.unit[i * dim + p] /= n;
    }
    return f;
}

struct RowStats {
    std::size_t argmin = 0;
    double min = 0;
};

// For one row of distances: softmax affinities over target features.
RowStats affinities(const double* d, std::size_t n, double h, double eps, double* cx) {
    RowStats s;
    s.min = d[0];
    for (std::size_t k = 1; k < n; ++k)
        if (d[k] < s.min) {
            s.min = d[k];
            s.argmin = k;
        }
    const double denom = s.min + eps;
    double amax = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        cx[k] = (1.0 - d[k] / denom) / h;
        amax = std::max(amax, cx[k]);
    }
    double total = 0;
    for (std::size_t k = 0; k < n; ++k) {
        cx[k] = std::exp(cx[k] - amax);
        total += cx[k];
    }
    for (std::size_t k = 0; k < n; ++k) cx[k] /= total;
    return s;
}

struct CxState {
    CxConfig cfg;
    std::vector<std::uint32_t> out_idx;
    Features x, y;
    std::vector<double> yt;  // dim x target count
    std::vector<std::size_t> best_row;  // argmax_i CX_ij per target j
    std::vector<double> best_value;
    double score = 0;
};

void similarity_rows(const CxState& s, std::size_t i0, std::size_t i1, std::vector<double>& d) {
    const std::size_t n = s.y.count;
    d.assign((i1 - i0) * n, 0.0);
    nn::kernels::GemmArgs<double> a;
    a.m = i1 - i0;
    a.n = n;
    a.k = s.x.dim;
    a.a = s.x.unit.data() + i0 * s.x.dim;
    a.a_row_stride = s.x.dim;
    a.a_col_stride = 1;
    a.b = s.yt.data();
    a.ldb = n;
    a.c = d.data();
    a.ldc = n;
    nn::kernels::gemm(a);
    for (double& v : d) v = std::max(0.0, 1.0 - v);
}

} // namespace

template <typename T>
nn::Var contextual_loss(nn::Graph<T>& g, nn::Var out, nn::Var gt, const CxConfig& cfg) {
    cfg.validate();
    const auto& ov = g.value(out);
    const auto& tv = g.value(gt);
    if (ov.shape() != tv.shape() || ov.rank() != 3 || ov.dim(2) != 3)
        throw PreconditionError("contextual loss needs two H x W x 3 images of equal size, got " +
                                nn::to_string(ov.shape()) + " and " + nn::to_string(tv.shape()));
    const std::size_t H = ov.dim(0), W = ov.dim(1), P = static_cast<std::size_t>(cfg.patch);
    const std::size_t dim = P * P * 3;
    const Lattice tl = lattice(H, W, P, cfg.grid_stride);
    const Lattice ol = lattice(H, W, P, cfg.out_stride);
    if (tl.count() < 2 || ol.count() < 2) throw PreconditionError("contextual loss needs at least 2 features per image");

    auto s = std::make_shared<CxState>();
    s->cfg = cfg;
    const auto gt_idx = patch_indices(tl, W, P);
    s->out_idx = patch_indices(ol, W, P);

    std::vector<double> mean(dim, 0.0);
    for (std::size_t j = 0; j < tl.count(); ++j)
        for (std::size_t p = 0; p < dim; ++p) mean[p] += static_cast<double>(tv[gt_idx[j * dim + p]]);
    for (double& m : mean) m /= static_cast<double>(tl.count());
    s->y = extract(tv, gt_idx, dim, mean);
    s->x = extract(ov, s->out_idx, dim, mean);
    const std::size_t N = s->y.count, M = s->x.count;
    s->yt.resize(dim * N);
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t p = 0; p < dim; ++p) s->yt[p * N + j] = s->y.unit[j * dim + p];

    s->best_row.assign(N, 0);
    s->best_value.assign(N, -1.0);
    std::vector<double> d, cx(N);
    std::uint64_t branches = 0;
    for (std::size_t i0 = 0; i0 < M; i0 += kRowChunk) {
        const std::size_t i1 = std::min(M, i0 + kRowChunk);
        similarity_rows(*s, i0, i1, d);
        for (std::size_t i = i0; i < i1; ++i) {
            const RowStats rs = affinities(d.data() + (i - i0) * N, N, cfg.bandwidth, cfg.epsilon, cx.data());
            branches = branches * 1099511628211ull + rs.argmin;
            for (std::size_t j = 0; j < N; ++j)
                if (cx[j] > s->best_value[j]) {
                    s->best_value[j] = cx[j];
                    s->best_row[j] = i;
                }
        }
    }
    double total = 0;
    for (std::size_t j = 0; j < N; ++j) {
        total += s->best_value[j];
        branches = branches * 1099511628211ull + s->best_row[j];
    }
    s->score = total / static_cast<double>(N);
    if (g.recording()) g.mix_branch(branches);
    const double loss = -std::log(std::max(s->score, std::numeric_limits<double>::min()));

    return g.record(nn::Tensor<T>({1}, {static_cast<T>(loss)}), {out, gt}, [out, s](nn::Graph<T>& gr, nn::Var self) {
        nn::Tensor<T>* go = gr.grad_buffer(out);
        if (!go) return;
        const std::size_t N = s->y.count, dim = s->x.dim;
        const double dL_dcx = -static_cast<double>(gr.out_grad(self)[0]) / (static_cast<double>(N) * s->score);

        // Group targets by the output row that wins them.
        std::vector<std::pair<std::size_t, std::size_t>> wins;  // (row, target)
        for (std::size_t j = 0; j < N; ++j) wins.emplace_back(s->best_row[j], j);
        std::sort(wins.begin(), wins.end());

        const double h = s->cfg.bandwidth, eps = s->cfg.epsilon;
        std::vector<double> d, cx(N), gcx(N), gd(N), gx(dim);
        for (std::size_t w = 0; w < wins.size();) {
            const std::size_t i = wins[w].first;
            std::fill(gcx.begin(), gcx.end(), 0.0);
            for (; w < wins.size() && wins[w].first == i; ++w) gcx[wins[w].second] += dL_dcx;

            similarity_rows(*s, i, i + 1, d);
            const RowStats rs = affinities(d.data(), N, h, eps, cx.data());
            double dot = 0;
            for (std::size_t k = 0; k < N; ++k) dot += gcx[k] * cx[k];
            const double denom = rs.min + eps;
            double through_min = 0;
            for (std::size_t k = 0; k < N; ++k) {
                const double ga = cx[k] * (gcx[k] - dot);
                gd[k] = -ga / (h * denom);
                through_min += ga * d[k] / (h * denom * denom);
            }
            gd[rs.argmin] += through_min;

            std::fill(gx.begin(), gx.end(), 0.0);
            for (std::size_t k = 0; k < N; ++k) {
                if (gd[k] == 0.0) continue;
                const double* yk = s->y.unit.data() + k * dim;
                for (std::size_t p = 0; p < dim; ++p) gx[p] -= gd[k] * yk[p];
            }
            const double* xi = s->x.unit.data() + i * dim;
            double proj = 0;
            for (std::size_t p = 0; p < dim; ++p) proj += xi[p] * gx[p];
            const double inv = 1.0 / s->x.norm[i];
            for (std::size_t p = 0; p < dim; ++p)
                (*go)[s->out_idx[i * dim + p]] += static_cast<T>((gx[p] - xi[p] * proj) * inv);
        }
    });
}

double contextual_loss_value(const nn::Tensor<float>& out, const nn::Tensor<float>& gt, const CxConfig& cfg) {
    nn::Graph<float> g(false);
    return g.value(contextual_loss(g, g.constant(out), g.constant(gt), cfg))[0];
}

template nn::Var contextual_loss<float>(nn::Graph<float>&, nn::Var, nn::Var, const CxConfig&);
template nn::Var contextual_loss<double>(nn::Graph<double>&, nn::Var, nn::Var, const CxConfig&);

} // namespace l3f::loss
