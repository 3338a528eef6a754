#pragma once

#include <stdexcept>
#include <string>

namespace phaseforge {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A value that must be finite / in range was not (NaN, Inf, or a
/// probability outside the sanity window).
class InvalidValue : public Error {
public:
    using Error::Error;
};

/// Operand shapes do not agree.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A pivot fell below the relative singularity threshold.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// An intermediate magnitude left the representable range.
class Overflow : public Error {
public:
    using Error::Error;
};

/// An iteration failed to reach its tolerance within the step budget.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// Distribution evaluator called with a negative time argument.
class NegativeTime : public Error {
public:
    using Error::Error;
};

/// Sample count outside the accepted range.
class InvalidCount : public Error {
public:
    using Error::Error;
};

/// Normalization requested for a vector with (numerically) zero mass.
class ZeroMass : public Error {
public:
    using Error::Error;
};

/// The point-mass output formulas require 0 < psi < 1.
class PsiOutOfRange : public Error {
public:
    using Error::Error;
};

/// Continuous point-mass formula divides by f(0), which vanished.
class ZeroDensityAtOrigin : public Error {
public:
    using Error::Error;
};

/// A scenario rate parameter violates its bounds.
class InvalidRates : public Error {
public:
    using Error::Error;
};

/// Input document could not be parsed into a valid object.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Base for the transform hypothesis failures. Each hypothesis has its own
/// type so callers can report exactly which assumption broke.
class HypothesisError : public Error {
public:
    HypothesisError(const std::string& hypothesis, const std::string& what)
        : Error(what), hypothesis_(hypothesis) {}
    const std::string& hypothesis() const { return hypothesis_; }

private:
    std::string hypothesis_;
};

class NotMetzler : public HypothesisError {
public:
    explicit NotMetzler(const std::string& what) : HypothesisError("metzler", what) {}
};

class NotNonnegative : public HypothesisError {
public:
    explicit NotNonnegative(const std::string& what) : HypothesisError("nonneg", what) {}
};

class NotExcitable : public HypothesisError {
public:
    explicit NotExcitable(const std::string& what) : HypothesisError("excitable", what) {}
};

class NotStable : public HypothesisError {
public:
    explicit NotStable(const std::string& what) : HypothesisError("stable", what) {}
};

/// The diagonal scaling vector came out nonpositive, so no similarity exists.
class NonpositiveZ : public HypothesisError {
public:
    explicit NonpositiveZ(const std::string& what) : HypothesisError("positive-scaling", what) {}
};

}  // namespace phaseforge
