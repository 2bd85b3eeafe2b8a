#pragma once

#include "l3f/align/features.hpp"
#include "l3f/align/matching.hpp"
#include "l3f/align/ransac.hpp"
#include "l3f/error.hpp"

#include <string>

namespace l3f::align {

class AlignmentError : public Error {
public:
    AlignmentError(std::string stage, const std::string& message)
        : Error(stage + ": " + message), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct AlignConfig {
    DetectorConfig detector;
    double ratio = 0.70;
    RansacConfig ransac;
    std::uint64_t seed = 1;
};

struct MisalignmentReport {
    double tx = 0;
    double ty = 0;
    double theta_deg = 0;
    std::size_t inliers = 0;
    std::size_t matches = 0;
    std::size_t gt_keypoints = 0;
    std::size_t dark_keypoints = 0;
};

// Scales the dark view by `preamp` (no clamping), then detect, cross-check,
// ratio test and RANSAC. Any failing stage throws AlignmentError naming it.
MisalignmentReport estimate_misalignment(const lf::Image& gt_view, const lf::Image& dark_view, double preamp,
                                         const AlignConfig& config = {});

} // namespace l3f::align
