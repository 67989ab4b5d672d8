#pragma once

#include <span>

#include "phase_toolkit/common.hpp"

// Dense univariate polynomials with complex coefficients, ascending degree.
namespace phase_toolkit::poly {

/// Horner evaluation.
[[nodiscard]] Complex evaluate(std::span<const Complex> coeffs, Complex z) noexcept;

/// sum_k |c_k| |z|^k, the scale of rounding errors in evaluate().
[[nodiscard]] double magnitude_bound(std::span<const Complex> coeffs, double abs_z) noexcept;

/// k-th derivative.
[[nodiscard]] ComplexVector derivative(std::span<const Complex> coeffs, std::size_t order = 1);

/// leading * prod_j (z - roots[j]).
[[nodiscard]] ComplexVector from_roots(std::span<const Complex> roots, Complex leading = Complex(1.0));

}  // namespace phase_toolkit::poly
