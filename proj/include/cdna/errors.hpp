#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cdna {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mismatched dimensions or ragged input where a rectangle is required.
class ShapeError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class PatternError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class EncodeError : public Error {
public:
    using Error::Error;
};

// An enumeration or search would exceed the caller-supplied cap.
class OverflowError : public Error {
public:
    using Error::Error;
};

enum class DecodeFailureReason {
    missing_rows,
    extra_rows,
    row_length,
    multiple_short_rows,
    syndrome_mismatch,
    out_of_range,
    uncorrectable,
    not_a_codeword,
};

inline std::string_view to_string(DecodeFailureReason reason) {
    switch (reason) {
        case DecodeFailureReason::missing_rows: return "missing_rows";
        case DecodeFailureReason::extra_rows: return "extra_rows";
        case DecodeFailureReason::row_length: return "row_length";
        case DecodeFailureReason::multiple_short_rows: return "multiple_short_rows";
        case DecodeFailureReason::syndrome_mismatch: return "syndrome_mismatch";
        case DecodeFailureReason::out_of_range: return "out_of_range";
        case DecodeFailureReason::uncorrectable: return "uncorrectable";
        case DecodeFailureReason::not_a_codeword: return "not_a_codeword";
    }
    return "unknown";
}

class DecodeFailure : public Error {
public:
    DecodeFailure(DecodeFailureReason reason, const std::string& detail)
        : Error(std::string(to_string(reason)) + ": " + detail), reason_(reason) {}

    DecodeFailureReason reason() const noexcept { return reason_; }

private:
    DecodeFailureReason reason_;
};

}  // namespace cdna
