#pragma once

#include "l3f/lf/light_field.hpp"

#include <json.hpp>

namespace l3f::app {

// {"views": [{"u", "v", "psnr", "ssim"}...], "mean_psnr", "mean_ssim", "dims"}.
// Infinite PSNR (identical views) is written as the string "inf".
nlohmann::ordered_json metrics_report(const lf::LightField& a, const lf::LightField& b);

} // namespace l3f::app
