// Shared scalar aliases, tolerances and error types for the polytube library.
#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace polytube {

// One geometric tolerance drives every membership / consistency test.
// Comparisons are absolute, scaled by max(1, |value|) at the call site.
template <typename Scalar>
constexpr Scalar geom_tol() {
  return Scalar(1e-9);
}

// Relative width target for sup-norm brackets.
template <typename Scalar>
constexpr Scalar norm_tol() {
  return Scalar(1e-3);
}

// H-form <-> V-form conversion runs the double description method, which is
// exponential in the dimension; conversions are refused above this bound.
inline constexpr Eigen::Index kMaxConversionDim = 4;

template <typename Scalar>
constexpr Scalar plus_inf() {
  return std::numeric_limits<Scalar>::infinity();
}

template <typename Scalar>
constexpr Scalar minus_inf() {
  return -std::numeric_limits<Scalar>::infinity();
}

template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : InvalidInput {
  using InvalidInput::InvalidInput;
};

// Raised when an operation needs a representation conversion in a dimension
// above kMaxConversionDim.
struct UnsupportedDimension : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by minimize_linear when the objective is unbounded below; carries a
// recession direction certifying it.
template <typename Scalar>
struct UnboundedBelow : std::runtime_error {
  VecX<Scalar> certificate;
  explicit UnboundedBelow(VecX<Scalar> ray)
      : std::runtime_error("linear functional unbounded below; a recession "
                           "direction certifies it"),
        certificate(std::move(ray)) {}
};

// Raised when a tube point's imaginary part leaves the open cone.
struct OutsideSemigroup : InvalidInput {
  using InvalidInput::InvalidInput;
};

// Raised when B(C) has empty interior and an interior direction is required.
struct DegenerateCone : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a functional is evaluated outside the character domain C.
struct DomainError : InvalidInput {
  using InvalidInput::InvalidInput;
};

namespace detail {

template <typename Scalar>
Scalar scaled_tol(Scalar tol, Scalar magnitude) {
  return tol * std::max(Scalar(1), magnitude);
}

inline void check(bool cond, const std::string& msg) {
  if (!cond) throw InvalidInput(msg);
}

}  // namespace detail

}  // namespace polytube
