#include "l3f/binary_io.hpp"
#include "l3f/error.hpp"
#include "l3f/lf/io.hpp"

#include <fstream>
#include <limits>

namespace l3f::lf {
namespace {

constexpr char kMagic[4] = {'L', 'F', '4', '\0'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint8_t kDtypeF32 = 0;
constexpr std::size_t kMaxSamples = std::size_t{1} << 32;

} // namespace

void write_lf4(std::ostream& os, const LightField& lf) {
    constexpr int kMax = std::numeric_limits<std::uint16_t>::max();
    if (lf.views_u() > kMax || lf.views_v() > kMax || lf.height() > kMax || lf.width() > kMax)
        throw PreconditionError("light field too large for the lf4 container");
    os.write(kMagic, 4);
    binary::put<std::uint16_t>(os, kVersion);
    binary::put<std::uint16_t>(os, static_cast<std::uint16_t>(lf.views_u()));
    binary::put<std::uint16_t>(os, static_cast<std::uint16_t>(lf.views_v()));
    binary::put<std::uint16_t>(os, static_cast<std::uint16_t>(lf.height()));
    binary::put<std::uint16_t>(os, static_cast<std::uint16_t>(lf.width()));
    binary::put<std::uint16_t>(os, static_cast<std::uint16_t>(lf.channels()));
    binary::put<std::uint8_t>(os, kDtypeF32);
    binary::put<std::uint8_t>(os, 0);
    binary::put_floats(os, lf.data().data(), lf.data().size());
    if (!os) throw IoError("failed writing lf4 payload");
}

LightField read_lf4(std::istream& is) {
    using Kind = DecodeError::Kind;
    char magic[4] = {};
    is.read(magic, 4);
    if (is.gcount() != 4) throw DecodeError(Kind::truncated_payload, "header");
    if (std::string(magic, 4) != std::string(kMagic, 4)) throw DecodeError(Kind::bad_magic, "");

    std::uint16_t version = 0, u = 0, v = 0, h = 0, w = 0, c = 0;
    std::uint8_t dtype = 0, reserved = 0;
    if (!binary::get(is, version) || !binary::get(is, u) || !binary::get(is, v) || !binary::get(is, h) ||
        !binary::get(is, w) || !binary::get(is, c) || !binary::get(is, dtype) || !binary::get(is, reserved))
        throw DecodeError(Kind::truncated_payload, "header");
    if (version != kVersion) throw DecodeError(Kind::unsupported_version, std::to_string(version));
    if (dtype != kDtypeF32) throw DecodeError(Kind::unsupported_dtype, std::to_string(dtype));
    if (c != kChannels || u == 0 || v == 0)
        throw DecodeError(Kind::dimension_overflow, "U=" + std::to_string(u) + " V=" + std::to_string(v) +
                                                        " C=" + std::to_string(c));
    std::size_t samples = c;
    for (std::size_t d : {std::size_t{u}, std::size_t{v}, std::size_t{h}, std::size_t{w}}) {
        samples *= d;
        if (samples > kMaxSamples)
            throw DecodeError(Kind::dimension_overflow, std::to_string(u) + "x" + std::to_string(v) + "x" +
                                                            std::to_string(h) + "x" + std::to_string(w) + " exceeds 2^32 samples");
    }

    LightField lf(u, v, h, w);
    if (!binary::get_floats(is, lf.data().data(), lf.data().size()))
        throw DecodeError(Kind::truncated_payload, "expected " + std::to_string(samples) + " samples");
    lf.clamp_unit();
    return lf;
}

void save_lf4(const std::filesystem::path& path, const LightField& lf) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path.string());
    write_lf4(os, lf);
}

LightField load_lf4(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path.string());
    return read_lf4(is);
}

} // namespace l3f::lf
