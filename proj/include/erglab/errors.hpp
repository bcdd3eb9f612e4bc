#pragma once

#include <stdexcept>
#include <string>

namespace erglab {

// Every failure the library can signal. All of these are input, validation,
// or size problems; property violations are reported in-band as verdicts.
enum class ErrKind {
    NonPositiveWeight,
    WeightsDontSumToOne,
    SpaceMismatch,
    NegativeObservable,
    ObservableOutOfRange,
    NotBijective,
    NotMeasurePreserving,
    DoesNotCommute,
    NotAFactorMap,
    EmptySet,
    NonPositiveEpsilon,
    ZeroShift,
    OutOfRange,
    UnknownSuite,
    ParseError,
    ValidationError,
    SizeLimitExceeded,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    ErrKind kind;
};

const char* err_kind_name(ErrKind k);

} // namespace erglab
