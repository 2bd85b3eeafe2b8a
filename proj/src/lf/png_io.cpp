#include "l3f/error.hpp"
#include "l3f/lf/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <regex>
#include <utility>

namespace l3f::lf {

Image load_png(const std::filesystem::path& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.string().c_str()))
        throw IoError("cannot read PNG " + path.string() + ": " + png.message);
    png.format = PNG_FORMAT_RGB;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
        png_image_free(&png);
        throw IoError("cannot decode PNG " + path.string() + ": " + png.message);
    }
    Image img(static_cast<int>(png.height), static_cast<int>(png.width));
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < kChannels; ++c)
                img.at(c, y, x) = buffer[(static_cast<std::size_t>(y) * img.width + x) * 3 + c] / 255.0f;
    return img;
}

void save_png(const std::filesystem::path& path, const Image& image) {
    std::vector<png_byte> buffer(static_cast<std::size_t>(image.height) * image.width * 3);
    for (int y = 0; y < image.height; ++y)
        for (int x = 0; x < image.width; ++x)
            for (int c = 0; c < kChannels; ++c) {
                const float v = std::clamp(image.at(c, y, x), 0.0f, 1.0f);
                buffer[(static_cast<std::size_t>(y) * image.width + x) * 3 + c] =
                    static_cast<png_byte>(std::lround(v * 255.0f));
            }
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(image.width);
    png.height = static_cast<png_uint_32>(image.height);
    png.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&png, path.string().c_str(), 0, buffer.data(), 0, nullptr))
        throw IoError("cannot write PNG " + path.string() + ": " + png.message);
}

std::string view_file_name(int u, int v) {
    char name[32];
    std::snprintf(name, sizeof(name), "view_%02d_%02d.png", u, v);
    return name;
}

LightField load_view_directory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    static const std::regex pattern(R"(view_(\d+)_(\d+)\.png)");
    std::map<std::pair<int, int>, std::filesystem::path> files;
    int max_u = -1, max_v = -1;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::smatch m;
        const std::string name = entry.path().filename().string();
        if (!std::regex_match(name, m, pattern)) continue;
        const int u = std::stoi(m[1]), v = std::stoi(m[2]);
        files[{u, v}] = entry.path();
        max_u = std::max(max_u, u);
        max_v = std::max(max_v, v);
    }
    if (files.empty()) throw IoError("no view_UU_VV.png files in " + dir.string());
    const int U = max_u + 1, V = max_v + 1;
    if (files.size() != static_cast<std::size_t>(U) * V)
        throw IoError("view directory " + dir.string() + " does not hold a complete " + std::to_string(U) + "x" +
                      std::to_string(V) + " grid");

    LightField lf;
    for (const auto& [key, path] : files) {
        const Image img = load_png(path);
        if (lf.data().empty()) lf = LightField(U, V, img.height, img.width);
        if (img.height != lf.height() || img.width != lf.width())
            throw IoError("view " + path.string() + " has a different size");
        lf.set_view(key.first, key.second, img);
    }
    return lf;
}

void save_view_directory(const std::filesystem::path& dir, const LightField& lf) {
    std::filesystem::create_directories(dir);
    for (int u = 0; u < lf.views_u(); ++u)
        for (int v = 0; v < lf.views_v(); ++v) save_png(dir / view_file_name(u, v), lf.view_image(u, v));
}

} // namespace l3f::lf
