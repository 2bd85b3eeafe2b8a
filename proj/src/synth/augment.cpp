#include "l3f/synth/augment.hpp"

#include "l3f/error.hpp"

#include <algorithm>

namespace l3f::synth {
namespace {

std::array<std::array<int, 3>, 6> all_permutations() {
    std::array<std::array<int, 3>, 6> out{};
    std::array<int, 3> p{0, 1, 2};
    for (auto& slot : out) {
        slot = p;
        std::next_permutation(p.begin(), p.end());
    }
    return out;
}

} // namespace

Augmentation draw_augmentation(std::mt19937_64& rng) {
    static const auto perms = all_permutations();
    std::uniform_int_distribution<int> coin(0, 1), perm(0, 5);
    Augmentation a;
    a.flip_horizontal = coin(rng) == 1;
    a.flip_vertical = coin(rng) == 1;
    a.permutation = perms[perm(rng)];
    return a;
}

int permutation_index(const std::array<int, 3>& permutation) {
    static const auto perms = all_permutations();
    for (int i = 0; i < 6; ++i)
        if (perms[i] == permutation) return i;
    throw PreconditionError("not a permutation of three channels");
}

lf::LightField apply_augmentation(const lf::LightField& lf, const Augmentation& aug) {
    permutation_index(aug.permutation);
    const int U = lf.views_u(), V = lf.views_v(), H = lf.height(), W = lf.width();
    lf::LightField out(U, V, H, W);
    for (int u = 0; u < U; ++u)
        for (int v = 0; v < V; ++v) {
            const int su = aug.flip_vertical ? U - 1 - u : u, sv = aug.flip_horizontal ? V - 1 - v : v;
            for (int c = 0; c < 3; ++c)
                for (int y = 0; y < H; ++y) {
                    const int sy = aug.flip_vertical ? H - 1 - y : y;
                    for (int x = 0; x < W; ++x) {
                        const int sx = aug.flip_horizontal ? W - 1 - x : x;
                        out.at(u, v, c, y, x) = lf.at(su, sv, aug.permutation[c], sy, sx);
                    }
                }
        }
    return out;
}

nn::Tensor<float> apply_augmentation(const nn::Tensor<float>& hist, const Augmentation& aug) {
    permutation_index(aug.permutation);
    if (hist.size() % 3 != 0) throw PreconditionError("histogram length must be a multiple of 3");
    const std::size_t L = hist.size() / 3;
    nn::Tensor<float> out(hist.shape());
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t b = 0; b < L; ++b) out[c * L + b] = hist[static_cast<std::size_t>(aug.permutation[c]) * L + b];
    return out;
}

std::pair<lf::LightField, lf::LightField> augment(const lf::LightField& low, const lf::LightField& gt,
                                                  std::mt19937_64& rng) {
    if (low.views_u() != gt.views_u() || low.views_v() != gt.views_v() || low.height() != gt.height() ||
        low.width() != gt.width())
        throw PreconditionError("augment needs a low/gt pair of identical dimensions");
    const Augmentation a = draw_augmentation(rng);
    return {apply_augmentation(low, a), apply_augmentation(gt, a)};
}

} // namespace l3f::synth
