#pragma once

#include "l3f/lf/light_field.hpp"

#include <vector>

namespace l3f::align {

// Single-channel image, row-major.
struct GrayImage {
    int height = 0;
    int width = 0;
    std::vector<double> data;

    double at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }
    double& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
};

GrayImage to_gray(const lf::Image& image);

struct Keypoint {
    double x = 0;
    double y = 0;
    double score = 0;
};

struct DetectorConfig {
    double harris_k = 0.04;
    double smoothing_sigma = 1.5;
    // Keep responses above this fraction of the strongest one.
    double relative_threshold = 0.01;
    int nms_radius = 3;
    int max_keypoints = 500;
    int descriptor_size = 16;
};

struct FeatureSet {
    std::vector<Keypoint> keypoints;
    int dim = 0;
    // keypoints.size() x dim, each row zero-mean and unit-variance.
    std::vector<float> descriptors;

    std::size_t size() const noexcept { return keypoints.size(); }
    const float* descriptor(std::size_t i) const { return descriptors.data() + i * dim; }
};

std::vector<Keypoint> detect_corners(const GrayImage& gray, const DetectorConfig& config = {});
FeatureSet describe(const GrayImage& gray, const std::vector<Keypoint>& keypoints, const DetectorConfig& config = {});
FeatureSet detect_and_describe(const GrayImage& gray, const DetectorConfig& config = {});
FeatureSet detect_and_describe(const lf::Image& image, const DetectorConfig& config = {});

} // namespace l3f::align
