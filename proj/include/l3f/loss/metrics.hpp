#pragma once

#include "l3f/lf/light_field.hpp"

#include <limits>

namespace l3f::loss {

inline constexpr double kPsnrIdentical = std::numeric_limits<double>::infinity();

// 10 log10(peak^2 / MSE); identical inputs give kPsnrIdentical.
double psnr(const lf::Image& a, const lf::Image& b, double peak = 1.0);

// Mean SSIM over every 11 x 11 window (Gaussian weights, sigma 1.5) of the
// luma images (0.299 R + 0.587 G + 0.114 B), C1 = 0.01^2, C2 = 0.03^2.
double ssim(const lf::Image& a, const lf::Image& b);

double l1_distance(const lf::Image& a, const lf::Image& b);

} // namespace l3f::loss
