#pragma once

#include <stdexcept>
#include <string>

namespace fabricphys {

enum class ErrorCode {
    // tag parsing
    UnrecognizedFiber,
    MalformedPercentage,
    SumViolation,
    UnknownFamily,
    // dataset
    SchemaError,
    ValidationError,
    IoError,
    MissingScalar,
    EmptyDataset,
    // forest
    EmptyTraining,
    NonFiniteInput,
    DimensionMismatch,
    EmptySpace,
    ModelVocabMismatch,
    // physics assembly
    InvalidBounds,
    // metrics
    LengthMismatch,
    UnknownLabel,
    EmptyCloud,
    EmptyMesh,
    ZeroProbability,
    ZeroCount,
    // simulation
    InvalidSpec,
    InvalidParams,
    UnstableConfig,
    NumericalBlowup,
    // cli
    UsageError,
};

const char* error_code_name(ErrorCode code);

/// Single exception type carrying a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

    /// I/O and usage map to CLI exit 2, everything else to exit 1.
    bool is_io_or_usage() const { return code_ == ErrorCode::IoError || code_ == ErrorCode::UsageError; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace fabricphys
