#pragma once
// .lf4 container:
//   "LF4\0" | u16 version=1 | u16 U, V, H, W, C | u8 dtype=0 (f32) | u8 reserved=0
//   payload: little-endian f32, planar [u][v][c][y][x]
// Per-view PNG directories hold 8-bit RGB files named view_UU_VV.png.

#include "l3f/lf/light_field.hpp"

#include <filesystem>
#include <iosfwd>

namespace l3f::lf {

void write_lf4(std::ostream& os, const LightField& lf);
LightField read_lf4(std::istream& is);

void save_lf4(const std::filesystem::path& path, const LightField& lf);
LightField load_lf4(const std::filesystem::path& path);

Image load_png(const std::filesystem::path& path);
void save_png(const std::filesystem::path& path, const Image& image);

std::string view_file_name(int u, int v);
LightField load_view_directory(const std::filesystem::path& dir);
void save_view_directory(const std::filesystem::path& dir, const LightField& lf);

} // namespace l3f::lf
