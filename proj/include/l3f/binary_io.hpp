#pragma once
// Little-endian primitive encoding shared by the container formats.

#include "l3f/error.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <type_traits>

namespace l3f::binary {

template <typename T>
T to_little(T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    if constexpr (std::endian::native == std::endian::little || sizeof(T) == 1) {
        return v;
    } else {
        unsigned char bytes[sizeof(T)];
        std::memcpy(bytes, &v, sizeof(T));
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
        std::memcpy(&v, bytes, sizeof(T));
        return v;
    }
}

template <typename T>
void put(std::ostream& os, T v) {
    v = to_little(v);
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

// Returns false on a short read.
template <typename T>
bool get(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (is.gcount() != static_cast<std::streamsize>(sizeof(T))) return false;
    v = to_little(v);
    return true;
}

inline void put_floats(std::ostream& os, const float* data, std::size_t n) {
    if constexpr (std::endian::native == std::endian::little) {
        os.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * sizeof(float)));
    } else {
        for (std::size_t i = 0; i < n; ++i) put(os, data[i]);
    }
}

inline bool get_floats(std::istream& is, float* data, std::size_t n) {
    is.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(n * sizeof(float)));
    if (is.gcount() != static_cast<std::streamsize>(n * sizeof(float))) return false;
    if constexpr (std::endian::native != std::endian::little) {
        for (std::size_t i = 0; i < n; ++i) data[i] = to_little(data[i]);
    }
    return true;
}

} // namespace l3f::binary
