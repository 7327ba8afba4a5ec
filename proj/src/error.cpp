#include "devlab/error.hpp"

namespace devlab {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::RejectReducible: return "RejectReducible";
        case ErrorCode::RejectNonPositive: return "RejectNonPositive";
        case ErrorCode::KeaneViolation: return "KeaneViolation";
        case ErrorCode::NonRecurrent: return "NonRecurrent";
        case ErrorCode::InconsistentSignature: return "InconsistentSignature";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::RationalAlpha: return "RationalAlpha";
        case ErrorCode::NonZeroMean: return "NonZeroMean";
        case ErrorCode::DegenerateSeries: return "DegenerateSeries";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

} // namespace devlab
