#pragma once
// Block-shuffle codec between a single image and a B x B grid of subsampled
// views: view (r, c) holds source pixels at rows = r, cols = c (mod B).

#include "l3f/lf/light_field.hpp"
#include "l3f/nn/ops.hpp"

namespace l3f::pseudo {

struct PseudoLF {
    int block = 1;
    int source_height = 0;
    int source_width = 0;
    // block x block views of (H / B) x (W / B).
    lf::LightField views;
};

PseudoLF pack(const lf::Image& image, int block);
lf::Image unpack(const PseudoLF& p);

// Reads an .lf4 with U = V: block B = U, source size (H * B) x (W * B).
PseudoLF from_light_field(const lf::LightField& lf);

// Crops the bottom/right remainder so both extents are multiples of `block`.
lf::Image crop_to_multiple(const lf::Image& image, int block);

// B x B grid surrounded by one ring of edge-replicated views, the layout
// restore_lf consumes.
lf::LightField with_replicated_ring(const lf::LightField& grid);

// Index maps from an H x W x 3 source tensor (HWC) to network inputs, for
// gradient probes through the codec. `ring` replicates edge views.
nn::IndexMap stacked_index_map(int height, int width, int block);
nn::IndexMap neighbor_index_map(int height, int width, int block, lf::ViewIndex at);
nn::IndexMap view_index_map(int height, int width, int block, lf::ViewIndex at);

} // namespace l3f::pseudo
