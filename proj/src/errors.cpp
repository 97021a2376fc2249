#include "fabricphys/errors.hpp"

namespace fabricphys {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnrecognizedFiber: return "UnrecognizedFiber";
        case ErrorCode::MalformedPercentage: return "MalformedPercentage";
        case ErrorCode::SumViolation: return "SumViolation";
        case ErrorCode::UnknownFamily: return "UnknownFamily";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::MissingScalar: return "MissingScalar";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::EmptyTraining: return "EmptyTraining";
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::EmptySpace: return "EmptySpace";
        case ErrorCode::ModelVocabMismatch: return "ModelVocabMismatch";
        case ErrorCode::InvalidBounds: return "InvalidBounds";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::UnknownLabel: return "UnknownLabel";
        case ErrorCode::EmptyCloud: return "EmptyCloud";
        case ErrorCode::EmptyMesh: return "EmptyMesh";
        case ErrorCode::ZeroProbability: return "ZeroProbability";
        case ErrorCode::ZeroCount: return "ZeroCount";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::UnstableConfig: return "UnstableConfig";
        case ErrorCode::NumericalBlowup: return "NumericalBlowup";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "Error";
}

} // namespace fabricphys
