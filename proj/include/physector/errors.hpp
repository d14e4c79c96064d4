#pragma once

#include <stdexcept>
#include <string>

namespace physector {

// Dimension / size mismatches between inputs.
class ShapeError : public std::invalid_argument {
public:
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// Content violates a documented invariant (negative weight, bad index,
// unparseable file, ...).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// The requested subspace test is not representable within the field of view
// of the measured outcomes: rank deficiency, unsolvable target diagonal, or
// loss of positivity outside the tested subspace.
class FovError : public std::runtime_error {
public:
    explicit FovError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace physector
