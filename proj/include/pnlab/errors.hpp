#pragma once

#include <stdexcept>
#include <string>

namespace pnlab {

enum class Err {
    NearZeroDivision,
    BudgetExceeded,
    BoundaryZero,
    PhaseJump,
    SigmaOnDivisor,
    InvalidLevel,
    DerivativeUnavailable,
    NotRealAnalytic,
    NonpositiveT,
    DivergentRegularization,
    OutOfRange,
    PoleAtQ,
    DecayHypothesisViolated,
    NotRamanujanClass,
    PoleAtNonPositiveInteger,
    PoleAtSigma,
    QuadratureFailure,
    NearPole,
    NonConstantDiscrepancy,
    UnsupportedM,
    ParseError,
    MonotonicityError,
    SanityGateError,
    UsageError,
    IoError,
};

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

const char* err_name(Err code);

}  // namespace pnlab
