#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace phase_toolkit {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied something outside an operation's domain (bad index,
/// parameter out of range, malformed data).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Data that cannot be the Fourier intensity / autocorrelation of a signal.
class InvalidSpectrum : public Error {
public:
    using Error::Error;
};

/// Numerical thresholds shared by all stages of the pipeline.
///
/// Comparisons follow `|delta| <= atol + rtol * scale`, where scale is the
/// largest magnitude relevant to the quantity being compared.
struct ToleranceConfig {
    double atol = 1e-9;
    double rtol = 1e-9;
    /// Boundary samples with modulus <= trim_rel * max modulus are dropped.
    double trim_rel = 1e-12;
    /// Roots with ||r| - 1| <= circle_tol are snapped onto the unit circle.
    double circle_tol = 1e-8;
    /// Roots closer than cluster_radius * max(1, |r|) always merge.
    double cluster_radius = 1e-7;
    /// Relative distance allowed between r and 1/conj(r') when pairing roots.
    double pair_tol = 1e-6;
    /// Backward error |P(r)| / sum_k |p_k| |r|^k accepted for a root.
    double residual_tol = 1e-10;
    double criterion_tol = 1e-8;
    /// Canonical forms compare equal when max distance <= dedupe_tol * scale.
    double dedupe_tol = 1e-7;
    int max_iterations = 1000;

    [[nodiscard]] bool within(double delta, double scale) const noexcept {
        return delta <= atol + rtol * scale;
    }
    [[nodiscard]] double band(double scale) const noexcept { return atol + rtol * scale; }

    /// Throws InvalidArgument unless every tolerance is strictly positive.
    void validate() const;
};

}  // namespace phase_toolkit
