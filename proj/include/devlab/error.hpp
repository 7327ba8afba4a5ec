#ifndef DEVLAB_ERROR_HPP
#define DEVLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace devlab {

enum class ErrorCode {
    RejectReducible,
    RejectNonPositive,
    KeaneViolation,
    NonRecurrent,
    InconsistentSignature,
    Overflow,
    RationalAlpha,
    NonZeroMean,
    DegenerateSeries,
    InvalidConfig,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace devlab

#endif
