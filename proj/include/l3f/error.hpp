#pragma once

#include <stdexcept>
#include <string>

namespace l3f {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller violated an operation's contract (bad index, wrong shape, odd patch size).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Non-finite gradients, losses or parameters.
class NumericError : public Error {
public:
    using Error::Error;
};

class DecodeError : public IoError {
public:
    enum class Kind { bad_magic, unsupported_version, unsupported_dtype, dimension_overflow, truncated_payload };

    DecodeError(Kind kind, const std::string& detail)
        : IoError(std::string(describe(kind)) + (detail.empty() ? "" : ": " + detail)), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

    static const char* describe(Kind kind) noexcept {
        switch (kind) {
        case Kind::bad_magic: return "bad magic";
        case Kind::unsupported_version: return "unsupported version";
        case Kind::unsupported_dtype: return "unsupported dtype";
        case Kind::dimension_overflow: return "dimension overflow";
        case Kind::truncated_payload: return "truncated payload";
        }
        return "decode error";
    }

private:
    Kind kind_;
};

} // namespace l3f
