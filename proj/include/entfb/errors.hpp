#pragma once

#include <stdexcept>
#include <string>

namespace entfb {

enum class ErrorCode {
    EtaOutOfRange,
    NegativeChi,
    FeedbackWithoutDetection,
    UnstableMeans,
    UnstableSystem,
    NotConverged,
    NotPositiveDefinite,
    StructureViolation,
    BranchViolation,
    StepTooLarge,
    CurrentUndefined,
    InvalidConfig,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-readable code; the CLI maps codes to exit status.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace entfb
