#pragma once

#include <stdexcept>
#include <string>

namespace vfb {

enum class Errc {
    InvalidArgument,
    PointNotZero,
    NotExact,
    DepthLimitExceeded,
    BoundaryZero,
    InvalidRegion,
    CertificationFailed,
    DegenerateField,
    Escape,
    StepUnderflow,
    ZeroAtBasePoint,
    FoldDetected,
    OrderEstimateAmbiguous,
    PreconditionViolated,
    InsufficientPower,
    FactorVanishes,
    SamplingTooCoarse,
    NotClosed,
    DependentBasis,
    NumericalAmbiguity,
    SchemaError,
    IOError,
};

const char* errc_name(Errc e) noexcept;

// Every failure raised by the library carries one of the codes above so that
// the scenario runner can embed it into reports verbatim.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace vfb
