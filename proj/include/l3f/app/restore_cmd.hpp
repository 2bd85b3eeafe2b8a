#pragma once

#include "l3f/lf/light_field.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace l3f::app {

struct RestoreCommand {
    std::filesystem::path checkpoint;
    std::filesystem::path input;
    std::filesystem::path output;
    // Optional per-view PNG export of the restored views.
    std::filesystem::path png_dir;
    std::vector<lf::ViewIndex> views;
    bool use_hist = true;
    int workers = 1;
};

// "u,v" entries separated by ';' or whitespace.
std::vector<lf::ViewIndex> parse_views(const std::string& text);

// Inputs larger than the model's grid plus ring are cropped to it first.
// Returns the amplification factor used.
double run_restore(const RestoreCommand& command);

} // namespace l3f::app
