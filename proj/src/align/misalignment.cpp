#include "l3f/align/misalignment.hpp"

#include <numbers>

namespace l3f::align {

MisalignmentReport estimate_misalignment(const lf::Image& gt_view, const lf::Image& dark_view, double preamp,
                                         const AlignConfig& cfg) {
    if (gt_view.height != dark_view.height || gt_view.width != dark_view.width)
        throw AlignmentError("input", "views differ in size");
    if (!(preamp > 0)) throw AlignmentError("input", "preamplification must be positive");
    GrayImage dark = to_gray(dark_view);
    for (double& v : dark.data) v *= preamp;

    const FeatureSet g = detect_and_describe(to_gray(gt_view), cfg.detector);
    const FeatureSet d = detect_and_describe(dark, cfg.detector);
    MisalignmentReport report;
    report.gt_keypoints = g.size();
    report.dark_keypoints = d.size();
    if (g.size() < 2 || d.size() < 2) throw AlignmentError("detect", "fewer than 2 keypoints in a view");

    const auto pairs = ratio_test(match_crosscheck(g, d), cfg.ratio);
    report.matches = pairs.size();
    if (pairs.size() < 2) throw AlignmentError("match", "fewer than 2 matches survive cross-check and ratio test");

    std::vector<Correspondence> corr;
    for (const auto& p : pairs)
        corr.push_back({{g.keypoints[p.g].x, g.keypoints[p.g].y}, {d.keypoints[p.d].x, d.keypoints[p.d].y}});
    std::mt19937_64 rng(cfg.seed);
    RansacResult r;
    try {
        r = ransac_rigid(corr, cfg.ransac, rng);
    } catch (const PreconditionError& e) {
        throw AlignmentError("ransac", e.what());
    }
    if (!r.success)
        throw AlignmentError("ransac", "only " + std::to_string(r.inlier_count) + " inliers among " +
                                           std::to_string(corr.size()) + " matches");
    report.tx = r.transform.tx;
    report.ty = r.transform.ty;
    report.theta_deg = r.transform.theta * 180.0 / std::numbers::pi;
    report.inliers = r.inlier_count;
    return report;
}

} // namespace l3f::align
