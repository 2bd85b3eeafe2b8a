#include "l3f/lf/light_field.hpp"

#include "l3f/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace l3f::lf {

Image::Image(int h, int w, float fill)
    : height(h), width(w), data(static_cast<std::size_t>(kChannels) * h * w, fill) {
    if (h < 0 || w < 0) throw PreconditionError("image dimensions must be non-negative");
}

LightField::LightField(int views_u, int views_v, int height, int width, float fill)
    : u_(views_u), v_(views_v), h_(height), w_(width) {
    if (views_u < 1 || views_v < 1) throw PreconditionError("light field needs at least one view per axis");
    if (height < 0 || width < 0) throw PreconditionError("light field spatial size must be non-negative");
    data_.assign(view_count() * view_size(), fill);
}

void LightField::check_view(int u, int v) const {
    if (u < 0 || v < 0 || u >= u_ || v >= v_) {
        throw PreconditionError("view (" + std::to_string(u) + "," + std::to_string(v) + ") outside " +
                                std::to_string(u_) + "x" + std::to_string(v_) + " grid");
    }
}

std::span<float> LightField::view(int u, int v) {
    check_view(u, v);
    return std::span<float>(data_).subspan(offset(u, v, 0, 0, 0), view_size());
}

std::span<const float> LightField::view(int u, int v) const {
    check_view(u, v);
    return std::span<const float>(data_).subspan(offset(u, v, 0, 0, 0), view_size());
}

Image LightField::view_image(int u, int v) const {
    Image img(h_, w_);
    const auto src = view(u, v);
    std::copy(src.begin(), src.end(), img.data.begin());
    return img;
}

void LightField::set_view(int u, int v, const Image& image) {
    if (image.height != h_ || image.width != w_) throw PreconditionError("set_view: image size mismatch");
    const auto dst = view(u, v);
    std::copy(image.data.begin(), image.data.end(), dst.begin());
}

void LightField::clamp_unit() {
    for (float& x : data_) {
        if (!std::isfinite(x)) throw IoError("light field holds a non-finite sample");
        x = std::clamp(x, 0.0f, 1.0f);
    }
}

} // namespace l3f::lf
