#include "l3f/lf/views.hpp"

#include "l3f/error.hpp"

#include <algorithm>
#include <string>

namespace l3f::lf {

template <typename T>
nn::Tensor<T> stack_views(const LightField& lf) {
    const int H = lf.height(), W = lf.width();
    const std::size_t C = 3 * lf.view_count();
    nn::Tensor<T> out({static_cast<std::size_t>(H), static_cast<std::size_t>(W), C});
    std::size_t k = 0;
    for (int u = 0; u < lf.views_u(); ++u)
        for (int v = 0; v < lf.views_v(); ++v, ++k)
            for (int c = 0; c < kChannels; ++c)
                for (int y = 0; y < H; ++y)
                    for (int x = 0; x < W; ++x) out.at(y, x, 3 * k + c) = static_cast<T>(lf.at(u, v, c, y, x));
    return out;
}

template <typename T>
nn::Tensor<T> view_tensor(const LightField& lf, int u, int v) {
    const auto src = lf.view(u, v);
    const std::size_t H = lf.height(), W = lf.width(), plane = H * W;
    nn::Tensor<T> out({H, W, 3});
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < plane; ++i) out[i * 3 + c] = static_cast<T>(src[c * plane + i]);
    return out;
}

Image tensor_to_image(const nn::Tensor<float>& hwc) {
    if (hwc.rank() != 3 || hwc.dim(2) != 3) throw PreconditionError("expected an H x W x 3 tensor, got " + nn::to_string(hwc.shape()));
    Image img(static_cast<int>(hwc.dim(0)), static_cast<int>(hwc.dim(1)));
    const std::size_t plane = img.plane_size();
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < plane; ++i) img.data[c * plane + i] = hwc[i * 3 + c];
    return img;
}

template <typename T>
nn::Tensor<T> neighbor_stack(const LightField& lf, ViewIndex at, int ring) {
    if (ring < 0) throw PreconditionError("ring must be non-negative");
    const int rows = lf.views_u() - 2 * ring, cols = lf.views_v() - 2 * ring;
    if (at.u < 0 || at.v < 0 || at.u >= rows || at.v >= cols)
        throw PreconditionError("view (" + std::to_string(at.u) + "," + std::to_string(at.v) + ") outside " +
                                std::to_string(rows) + "x" + std::to_string(cols) + " working grid");
    const int cu = at.u + ring, cv = at.v + ring;
    const int offsets[5][2] = {{0, 0}, {0, -1}, {-1, 0}, {0, 1}, {1, 0}};
    const std::size_t H = lf.height(), W = lf.width(), plane = H * W;
    nn::Tensor<T> out({H, W, 15});
    for (int n = 0; n < 5; ++n) {
        const int u = cu + offsets[n][0], v = cv + offsets[n][1];
        if (u < 0 || v < 0 || u >= lf.views_u() || v >= lf.views_v())
            throw PreconditionError("view (" + std::to_string(at.u) + "," + std::to_string(at.v) +
                                    ") needs a border ring that the light field does not carry");
        const auto src = lf.view(u, v);
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < plane; ++i) out[i * 15 + 3 * n + c] = static_cast<T>(src[c * plane + i]);
    }
    return out;
}

LightField select_views(const LightField& lf, int u0, int v0, int rows, int cols) {
    if (u0 < 0 || v0 < 0 || rows < 1 || cols < 1 || u0 + rows > lf.views_u() || v0 + cols > lf.views_v())
        throw PreconditionError("view selection outside the angular grid");
    LightField out(rows, cols, lf.height(), lf.width());
    for (int u = 0; u < rows; ++u)
        for (int v = 0; v < cols; ++v) {
            const auto src = lf.view(u0 + u, v0 + v);
            const auto dst = out.view(u, v);
            std::copy(src.begin(), src.end(), dst.begin());
        }
    return out;
}

LightField crop_central_grid(const LightField& lf, int n) {
    if (n < 1) throw PreconditionError("working grid size must be positive");
    if (lf.views_u() < n + 2 || lf.views_v() < n + 2)
        throw PreconditionError("grid " + std::to_string(lf.views_u()) + "x" + std::to_string(lf.views_v()) +
                                " too small for a " + std::to_string(n) + "x" + std::to_string(n) +
                                " working grid with ring");
    const int ou = (lf.views_u() - n + 1) / 2, ov = (lf.views_v() - n + 1) / 2;
    return select_views(lf, ou - 1, ov - 1, n + 2, n + 2);
}

LightField strip_ring(const LightField& lf, int ring) {
    return select_views(lf, ring, ring, lf.views_u() - 2 * ring, lf.views_v() - 2 * ring);
}

LightField crop_spatial(const LightField& lf, const PatchWindow& w) {
    if (w.y < 0 || w.x < 0 || w.size < 1 || w.y + w.size > lf.height() || w.x + w.size > lf.width())
        throw PreconditionError("patch window crosses the image boundary");
    LightField out(lf.views_u(), lf.views_v(), w.size, w.size);
    for (int u = 0; u < lf.views_u(); ++u)
        for (int v = 0; v < lf.views_v(); ++v)
            for (int c = 0; c < kChannels; ++c)
                for (int y = 0; y < w.size; ++y)
                    for (int x = 0; x < w.size; ++x) out.at(u, v, c, y, x) = lf.at(u, v, c, w.y + y, w.x + x);
    return out;
}

PatchWindow sample_patch(int height, int width, int size, std::mt19937_64& rng) {
    if (size < 2 || size % 2 != 0) throw PreconditionError("patch size must be even and positive, got " + std::to_string(size));
    if (size > height || size > width)
        throw PreconditionError("patch size " + std::to_string(size) + " exceeds " + std::to_string(height) + "x" +
                                std::to_string(width));
    std::uniform_int_distribution<int> dy(0, height - size), dx(0, width - size);
    PatchWindow w;
    w.y = dy(rng);
    w.x = dx(rng);
    w.size = size;
    return w;
}

PatchWindow sample_patch(const LightField& lf, int size, std::mt19937_64& rng) {
    return sample_patch(lf.height(), lf.width(), size, rng);
}

Epi extract_epi(const LightField& lf, EpiOrientation orientation, int fixed_view_coord, int fixed_spatial_coord) {
    Epi epi;
    epi.orientation = orientation;
    epi.fixed_view_coord = fixed_view_coord;
    epi.fixed_spatial_coord = fixed_spatial_coord;
    if (orientation == EpiOrientation::horizontal) {
        if (fixed_view_coord < 0 || fixed_view_coord >= lf.views_u() || fixed_spatial_coord < 0 ||
            fixed_spatial_coord >= lf.height())
            throw PreconditionError("horizontal EPI index out of range");
        epi.image = Image(lf.views_v(), lf.width());
        for (int j = 0; j < lf.views_v(); ++j)
            for (int c = 0; c < kChannels; ++c)
                for (int x = 0; x < lf.width(); ++x)
                    epi.image.at(c, j, x) = lf.at(fixed_view_coord, j, c, fixed_spatial_coord, x);
    } else {
        if (fixed_view_coord < 0 || fixed_view_coord >= lf.views_v() || fixed_spatial_coord < 0 ||
            fixed_spatial_coord >= lf.width())
            throw PreconditionError("vertical EPI index out of range");
        epi.image = Image(lf.views_u(), lf.height());
        for (int i = 0; i < lf.views_u(); ++i)
            for (int c = 0; c < kChannels; ++c)
                for (int y = 0; y < lf.height(); ++y)
                    epi.image.at(c, i, y) = lf.at(i, fixed_view_coord, c, y, fixed_spatial_coord);
    }
    return epi;
}

template nn::Tensor<float> stack_views<float>(const LightField&);
template nn::Tensor<double> stack_views<double>(const LightField&);
template nn::Tensor<float> view_tensor<float>(const LightField&, int, int);
template nn::Tensor<double> view_tensor<double>(const LightField&, int, int);
template nn::Tensor<float> neighbor_stack<float>(const LightField&, ViewIndex, int);
template nn::Tensor<double> neighbor_stack<double>(const LightField&, ViewIndex, int);

} // namespace l3f::lf
