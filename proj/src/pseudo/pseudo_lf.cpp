#include "l3f/pseudo/pseudo_lf.hpp"

#include "l3f/error.hpp"

#include <algorithm>
#include <memory>
#include <string>

namespace l3f::pseudo {
namespace {

void check_divisible(int height, int width, int block) {
    if (block < 1) throw PreconditionError("block size must be >= 1");
    if (height % block != 0 || width % block != 0)
        throw PreconditionError("image " + std::to_string(height) + "x" + std::to_string(width) +
                                " is not divisible by block " + std::to_string(block));
}

} // namespace

PseudoLF pack(const lf::Image& image, int block) {
    check_divisible(image.height, image.width, block);
    PseudoLF p;
    p.block = block;
    p.source_height = image.height;
    p.source_width = image.width;
    const int h = image.height / block, w = image.width / block;
    p.views = lf::LightField(block, block, h, w);
    for (int r = 0; r < block; ++r)
        for (int c = 0; c < block; ++c)
            for (int ch = 0; ch < lf::kChannels; ++ch)
                for (int y = 0; y < h; ++y)
                    for (int x = 0; x < w; ++x)
                        p.views.at(r, c, ch, y, x) = image.at(ch, y * block + r, x * block + c);
    return p;
}

lf::Image unpack(const PseudoLF& p) {
    const int B = p.block;
    if (B < 1 || p.views.views_u() != B || p.views.views_v() != B)
        throw PreconditionError("pseudo light field must hold exactly B x B views");
    check_divisible(p.source_height, p.source_width, B);
    if (p.views.height() * B != p.source_height || p.views.width() * B != p.source_width)
        throw PreconditionError("pseudo light field views do not match the source size");
    lf::Image img(p.source_height, p.source_width);
    for (int r = 0; r < B; ++r)
        for (int c = 0; c < B; ++c)
            for (int ch = 0; ch < lf::kChannels; ++ch)
                for (int y = 0; y < p.views.height(); ++y)
                    for (int x = 0; x < p.views.width(); ++x)
                        img.at(ch, y * B + r, x * B + c) = p.views.at(r, c, ch, y, x);
    return img;
}

PseudoLF from_light_field(const lf::LightField& lf) {
    if (lf.views_u() != lf.views_v()) throw PreconditionError("pseudo light field needs a square view grid");
    PseudoLF p;
    p.block = lf.views_u();
    p.source_height = lf.height() * p.block;
    p.source_width = lf.width() * p.block;
    p.views = lf;
    return p;
}

lf::Image crop_to_multiple(const lf::Image& image, int block) {
    if (block < 1) throw PreconditionError("block size must be >= 1");
    const int h = image.height / block * block, w = image.width / block * block;
    lf::Image out(h, w);
    for (int c = 0; c < lf::kChannels; ++c)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) out.at(c, y, x) = image.at(c, y, x);
    return out;
}

lf::LightField with_replicated_ring(const lf::LightField& grid) {
    const int U = grid.views_u(), V = grid.views_v();
    lf::LightField out(U + 2, V + 2, grid.height(), grid.width());
    for (int u = 0; u < U + 2; ++u)
        for (int v = 0; v < V + 2; ++v) {
            const auto src = grid.view(std::clamp(u - 1, 0, U - 1), std::clamp(v - 1, 0, V - 1));
            const auto dst = out.view(u, v);
            std::copy(src.begin(), src.end(), dst.begin());
        }
    return out;
}

namespace {

// Flat HWC source index of channel ch of pixel (y, x) in view (r, c).
std::uint32_t source_index(int width, int block, int r, int c, int y, int x, int ch) {
    const std::size_t sy = static_cast<std::size_t>(y) * block + r, sx = static_cast<std::size_t>(x) * block + c;
    return static_cast<std::uint32_t>((sy * width + sx) * 3 + ch);
}

} // namespace

nn::IndexMap stacked_index_map(int height, int width, int block) {
    check_divisible(height, width, block);
    const int h = height / block, w = width / block, views = block * block;
    auto map = std::make_shared<std::vector<std::uint32_t>>();
    map->reserve(static_cast<std::size_t>(h) * w * 3 * views);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int k = 0; k < views; ++k)
                for (int ch = 0; ch < 3; ++ch) map->push_back(source_index(width, block, k / block, k % block, y, x, ch));
    return map;
}

nn::IndexMap neighbor_index_map(int height, int width, int block, lf::ViewIndex at) {
    check_divisible(height, width, block);
    if (at.u < 0 || at.v < 0 || at.u >= block || at.v >= block) throw PreconditionError("view outside the B x B grid");
    const int h = height / block, w = width / block;
    const int offsets[5][2] = {{0, 0}, {0, -1}, {-1, 0}, {0, 1}, {1, 0}};
    auto map = std::make_shared<std::vector<std::uint32_t>>();
    map->reserve(static_cast<std::size_t>(h) * w * 15);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (const auto& o : offsets) {
                const int r = std::clamp(at.u + o[0], 0, block - 1), c = std::clamp(at.v + o[1], 0, block - 1);
                for (int ch = 0; ch < 3; ++ch) map->push_back(source_index(width, block, r, c, y, x, ch));
            }
    return map;
}

nn::IndexMap view_index_map(int height, int width, int block, lf::ViewIndex at) {
    check_divisible(height, width, block);
    const int h = height / block, w = width / block;
    auto map = std::make_shared<std::vector<std::uint32_t>>();
    map->reserve(static_cast<std::size_t>(h) * w * 3);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int ch = 0; ch < 3; ++ch) map->push_back(source_index(width, block, at.u, at.v, y, x, ch));
    return map;
}

} // namespace l3f::pseudo
