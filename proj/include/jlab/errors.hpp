#pragma once

#include <stdexcept>
#include <string>

namespace jlab {

/// Bad caller input: dimension mismatches, out-of-range parameters.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iteration (Newton, Aberth) failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Continuation of a singular point failed or two tracked points collided.
/// Carries the 1-based index of the offending singularity.
class TrackingError : public NumericalError {
public:
    TrackingError(int index, const std::string& what)
        : NumericalError("singular point m=" + std::to_string(index) + ": " + what), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

/// An identity that must hold for the family was violated numerically,
/// e.g. a pushforward that does not factor back into the family.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A closed-form value from the theory disagreed with its numerical check.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace jlab
