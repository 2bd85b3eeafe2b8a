#pragma once

#include "l3f/lf/light_field.hpp"
#include "l3f/nn/tensor.hpp"

#include <random>

namespace l3f::lf {

// H x W x 3UV, view k = u * V + v occupies channels 3k..3k+2.
template <typename T>
nn::Tensor<T> stack_views(const LightField& lf);

// Single view (u, v) of the stored grid as H x W x 3.
template <typename T>
nn::Tensor<T> view_tensor(const LightField& lf, int u, int v);

Image tensor_to_image(const nn::Tensor<float>& hwc);

// `lf` is a working grid surrounded by `ring` extra views on every side; `at`
// indexes the working grid. Channels: [center, left, up, right, down] x RGB.
// An edge view whose neighbor falls outside the stored grid throws
// PreconditionError.
template <typename T>
nn::Tensor<T> neighbor_stack(const LightField& lf, ViewIndex at, int ring = 1);

// Central n x n grid plus a one-view ring, i.e. (n + 2) x (n + 2) views.
// The working grid starts at offset (U - n + 1) / 2, which is row 4 for U = 15, n = 8.
LightField crop_central_grid(const LightField& lf, int n);

// Drops `ring` views from every side of the angular grid.
LightField strip_ring(const LightField& lf, int ring = 1);

LightField select_views(const LightField& lf, int u0, int v0, int rows, int cols);

struct PatchWindow {
    int y = 0;
    int x = 0;
    int size = 0;
    bool operator==(const PatchWindow&) const = default;
};

LightField crop_spatial(const LightField& lf, const PatchWindow& window);

// Uniform top-left corner of a size x size window shared by every view.
PatchWindow sample_patch(const LightField& lf, int size, std::mt19937_64& rng);
PatchWindow sample_patch(int height, int width, int size, std::mt19937_64& rng);

enum class EpiOrientation { horizontal, vertical };

struct Epi {
    EpiOrientation orientation = EpiOrientation::horizontal;
    int fixed_view_coord = 0;
    int fixed_spatial_coord = 0;
    // horizontal: V rows x W columns; vertical: U rows x H columns.
    Image image;
};

// Horizontal: row j is image row `fixed_spatial_coord` of view (fixed_view_coord, j).
// Vertical: row i is image column `fixed_spatial_coord` of view (i, fixed_view_coord).
Epi extract_epi(const LightField& lf, EpiOrientation orientation, int fixed_view_coord, int fixed_spatial_coord);

} // namespace l3f::lf
