#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace l3f::lf {

inline constexpr int kChannels = 3;

// Planar RGB image, layout [c][y][x].
struct Image {
    int height = 0;
    int width = 0;
    std::vector<float> data;

    Image() = default;
    Image(int h, int w, float fill = 0.0f);

    float& at(int c, int y, int x) { return data[(static_cast<std::size_t>(c) * height + y) * width + x]; }
    float at(int c, int y, int x) const { return data[(static_cast<std::size_t>(c) * height + y) * width + x]; }
    std::size_t plane_size() const noexcept { return static_cast<std::size_t>(height) * width; }

    bool operator==(const Image&) const = default;
};

struct ViewIndex {
    int u = 0;
    int v = 0;
    bool operator==(const ViewIndex&) const = default;
};

// U x V grid of RGB sub-aperture views, stored planar [u][v][c][y][x].
class LightField {
public:
    LightField() = default;
    LightField(int views_u, int views_v, int height, int width, float fill = 0.0f);

    int views_u() const noexcept { return u_; }
    int views_v() const noexcept { return v_; }
    int height() const noexcept { return h_; }
    int width() const noexcept { return w_; }
    static constexpr int channels() noexcept { return kChannels; }
    std::size_t view_count() const noexcept { return static_cast<std::size_t>(u_) * v_; }
    std::size_t view_size() const noexcept { return static_cast<std::size_t>(kChannels) * h_ * w_; }

    float& at(int u, int v, int c, int y, int x) { return data_[offset(u, v, c, y, x)]; }
    float at(int u, int v, int c, int y, int x) const { return data_[offset(u, v, c, y, x)]; }

    std::span<float> view(int u, int v);
    std::span<const float> view(int u, int v) const;
    Image view_image(int u, int v) const;
    void set_view(int u, int v, const Image& image);

    std::span<float> data() noexcept { return data_; }
    std::span<const float> data() const noexcept { return data_; }

    // Clamps every sample to [0, 1]; throws IoError on non-finite samples.
    void clamp_unit();

    bool operator==(const LightField&) const = default;

private:
    std::size_t offset(int u, int v, int c, int y, int x) const noexcept {
        return ((((static_cast<std::size_t>(u) * v_ + v) * kChannels + c) * h_ + y) * w_) + x;
    }
    void check_view(int u, int v) const;

    int u_ = 0, v_ = 0, h_ = 0, w_ = 0;
    std::vector<float> data_;
};

} // namespace l3f::lf
