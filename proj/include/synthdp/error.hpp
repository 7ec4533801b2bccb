#pragma once

#include <stdexcept>
#include <string>

namespace synthdp {

enum class ErrorCode {
    MissingColumn,
    UnknownCategory,
    NonNumericCell,
    EmptyTable,
    InsufficientRows,
    DimensionMismatch,
    InvalidCovariance,
    NotEnoughNeighbors,
    InvalidScale,
    InvalidSensitivity,
    CategoricalUnsupported,
    InvalidDegree,
    ZeroRawSensitivity,
    InsufficientPool,
    GeneratorFailure,
    NoLabelColumn,
    SingleClass,
    SchemaMismatch,
    InvalidSchema,
    InvalidArgument,
    IoError,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::UnknownCategory: return "UnknownCategory";
        case ErrorCode::NonNumericCell: return "NonNumericCell";
        case ErrorCode::EmptyTable: return "EmptyTable";
        case ErrorCode::InsufficientRows: return "InsufficientRows";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidCovariance: return "InvalidCovariance";
        case ErrorCode::NotEnoughNeighbors: return "NotEnoughNeighbors";
        case ErrorCode::InvalidScale: return "InvalidScale";
        case ErrorCode::InvalidSensitivity: return "InvalidSensitivity";
        case ErrorCode::CategoricalUnsupported: return "CategoricalUnsupported";
        case ErrorCode::InvalidDegree: return "InvalidDegree";
        case ErrorCode::ZeroRawSensitivity: return "ZeroRawSensitivity";
        case ErrorCode::InsufficientPool: return "InsufficientPool";
        case ErrorCode::GeneratorFailure: return "GeneratorFailure";
        case ErrorCode::NoLabelColumn: return "NoLabelColumn";
        case ErrorCode::SingleClass: return "SingleClass";
        case ErrorCode::SchemaMismatch: return "SchemaMismatch";
        case ErrorCode::InvalidSchema: return "InvalidSchema";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Exception carrying a stable error code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) raise(code, message);
}

}  // namespace synthdp
