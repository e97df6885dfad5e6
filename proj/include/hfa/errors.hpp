#pragma once

#include <stdexcept>
#include <string>

namespace hfa {

// Base class for every failure this library reports deliberately.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A quantity required to be purely imaginary carries a real part above tolerance.
struct NotImaginary : Error {
    explicit NotImaginary(const std::string& what) : Error(what) {}
};

// Evaluation requested at (or too close to) a pole of the field.
struct PoleError : Error {
    explicit PoleError(const std::string& what) : Error(what) {}
};

// Evaluation requested on the cut of a fractional power.
struct BranchCutError : Error {
    explicit BranchCutError(const std::string& what) : Error(what) {}
};

// Gauge transformation value too close to zero to normalize.
struct SingularGauge : Error {
    explicit SingularGauge(const std::string& what) : Error(what) {}
};

// Gauge factor degenerates (e.g. exp(2*i*chi) = 1) where a pair is requested.
struct DegenerateGauge : Error {
    explicit DegenerateGauge(const std::string& what) : Error(what) {}
};

// Connection is not invariant under the assumed rotational symmetry.
struct NotSymmetric : Error {
    explicit NotSymmetric(const std::string& what) : Error(what) {}
};

// Symmetric reduction evaluated on the axis r = 0 where the frame degenerates.
struct AxisError : Error {
    explicit AxisError(const std::string& what) : Error(what) {}
};

// Adaptive quadrature failed to reach its target within budget.
struct QuadratureNotConverged : Error {
    explicit QuadratureNotConverged(const std::string& what) : Error(what) {}
};

// Iterative solve (Newton search, fit) failed to converge.
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error(what) {}
};

// Jet requested beyond the order a family supports.
struct OrderUnsupported : Error {
    explicit OrderUnsupported(const std::string& what) : Error(what) {}
};

// Malformed descriptor, config file, or report.
struct SpecError : Error {
    explicit SpecError(const std::string& what) : Error(what) {}
};

}  // namespace hfa
