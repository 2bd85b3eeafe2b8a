#include "l3f/nn/checkpoint.hpp"

#include "l3f/binary_io.hpp"
#include "l3f/error.hpp"

#include <fstream>
#include <sstream>

namespace l3f::nn {
namespace {

constexpr char kMagic[4] = {'L', '3', 'F', 'C'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint32_t kMaxManifest = 1u << 24;
constexpr std::size_t kMaxElements = std::size_t{1} << 31;

} // namespace

const std::string* Checkpoint::find(const std::string& key) const {
    for (const auto& [k, v] : manifest)
        if (k == key) return &v;
    return nullptr;
}

const Tensor<float>* Checkpoint::block(const std::string& name) const {
    for (const auto& [k, t] : blocks)
        if (k == name) return &t;
    return nullptr;
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open checkpoint for writing: " + path.string());

    std::string manifest;
    for (const auto& [k, v] : checkpoint.manifest) {
        if (k.find_first_of("=\n") != std::string::npos || v.find('\n') != std::string::npos)
            throw PreconditionError("checkpoint manifest entries must be single-line key=value");
        manifest += k + "=" + v + "\n";
    }

    os.write(kMagic, 4);
    binary::put<std::uint16_t>(os, kVersion);
    binary::put<std::uint16_t>(os, 0);
    binary::put<std::uint32_t>(os, static_cast<std::uint32_t>(manifest.size()));
    os.write(manifest.data(), static_cast<std::streamsize>(manifest.size()));
    binary::put<std::uint32_t>(os, static_cast<std::uint32_t>(checkpoint.blocks.size()));
    for (const auto& [name, tensor] : checkpoint.blocks) {
        binary::put<std::uint16_t>(os, static_cast<std::uint16_t>(name.size()));
        os.write(name.data(), static_cast<std::streamsize>(name.size()));
        binary::put<std::uint8_t>(os, static_cast<std::uint8_t>(tensor.rank()));
        for (std::size_t d : tensor.shape()) binary::put<std::uint32_t>(os, static_cast<std::uint32_t>(d));
        binary::put_floats(os, tensor.ptr(), tensor.size());
    }
    if (!os) throw IoError("failed writing checkpoint: " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open checkpoint: " + path.string());
    using Kind = DecodeError::Kind;

    char magic[4] = {};
    is.read(magic, 4);
    if (is.gcount() != 4) throw DecodeError(Kind::truncated_payload, "header");
    if (std::string(magic, 4) != std::string(kMagic, 4)) throw DecodeError(Kind::bad_magic, path.string());
    std::uint16_t version = 0, reserved = 0;
    std::uint32_t manifest_len = 0;
    if (!binary::get(is, version) || !binary::get(is, reserved) || !binary::get(is, manifest_len))
        throw DecodeError(Kind::truncated_payload, "header");
    if (version != kVersion) throw DecodeError(Kind::unsupported_version, std::to_string(version));
    if (manifest_len > kMaxManifest) throw DecodeError(Kind::dimension_overflow, "manifest length");

    Checkpoint ck;
    std::string manifest(manifest_len, '\0');
    is.read(manifest.data(), manifest_len);
    if (is.gcount() != static_cast<std::streamsize>(manifest_len)) throw DecodeError(Kind::truncated_payload, "manifest");
    std::istringstream lines(manifest);
    for (std::string line; std::getline(lines, line);) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw DecodeError(Kind::truncated_payload, "malformed manifest line");
        ck.manifest.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }

    std::uint32_t count = 0;
    if (!binary::get(is, count)) throw DecodeError(Kind::truncated_payload, "block count");
    for (std::uint32_t b = 0; b < count; ++b) {
        std::uint16_t name_len = 0;
        if (!binary::get(is, name_len)) throw DecodeError(Kind::truncated_payload, "block name");
        std::string name(name_len, '\0');
        is.read(name.data(), name_len);
        std::uint8_t rank = 0;
        if (is.gcount() != name_len || !binary::get(is, rank)) throw DecodeError(Kind::truncated_payload, "block header");
        Shape shape(rank);
        std::size_t elements = 1;
        for (auto& d : shape) {
            std::uint32_t dim = 0;
            if (!binary::get(is, dim)) throw DecodeError(Kind::truncated_payload, "block dims");
            d = dim;
            if (dim != 0 && elements > kMaxElements / dim) throw DecodeError(Kind::dimension_overflow, name);
            elements *= dim;
        }
        Tensor<float> t(shape);
        if (!binary::get_floats(is, t.ptr(), t.size())) throw DecodeError(Kind::truncated_payload, name);
        ck.blocks.emplace_back(std::move(name), std::move(t));
    }
    return ck;
}

} // namespace l3f::nn
