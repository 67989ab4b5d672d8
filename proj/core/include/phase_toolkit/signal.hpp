#pragma once

#include <cstddef>
#include <span>

#include "phase_toolkit/common.hpp"

namespace phase_toolkit {

/// Finite-support complex signal x[offset], ..., x[offset + N - 1].
///
/// Construction trims boundary samples whose modulus is at most
/// `trim_rel * max|x|`, so the first and last stored values are always
/// significant. An all-zero input has no support and is rejected.
class Signal {
public:
    explicit Signal(ComplexVector values, long offset = 0, double trim_rel = 1e-12);

    [[nodiscard]] long offset() const noexcept { return offset_; }
    [[nodiscard]] const ComplexVector& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    /// Sample at position `i` of the support (0 <= i < size()).
    [[nodiscard]] Complex operator[](std::size_t i) const { return values_[i]; }

    /// Sample at absolute time `n`; zero outside the support.
    [[nodiscard]] Complex at_time(long n) const noexcept;

    [[nodiscard]] double max_magnitude() const noexcept;

private:
    ComplexVector values_;
    long offset_ = 0;
};

/// Autocorrelation a[-N+1], ..., a[N-1] stored in ascending lag order.
class Autocorrelation {
public:
    /// Validates conjugate symmetry, a[0] >= 0, and nonnegativity of the
    /// trigonometric polynomial on a probe grid, then stores the exactly
    /// symmetrized coefficients. Throws InvalidSpectrum on violation.
    static Autocorrelation from_coefficients(ComplexVector coeffs, const ToleranceConfig& cfg = {});

    /// Support length N of the underlying signal.
    [[nodiscard]] std::size_t support_length() const noexcept { return (coeffs_.size() + 1) / 2; }
    [[nodiscard]] const ComplexVector& coeffs() const noexcept { return coeffs_; }

    /// a[lag] for |lag| <= N-1, zero otherwise.
    [[nodiscard]] Complex at(long lag) const noexcept;

    /// F a(omega) = sum_n a[n] e^{-i omega n}; real for a valid autocorrelation.
    [[nodiscard]] double evaluate(double omega) const noexcept;

private:
    explicit Autocorrelation(ComplexVector coeffs) : coeffs_(std::move(coeffs)) {}
    friend Autocorrelation autocorrelation(const Signal& x);

    ComplexVector coeffs_;
};

/// Representative of a signal's class under rotation and shift (and, when
/// requested, conjugate reflection).
struct CanonicalForm {
    ComplexVector values;
    bool reflected = false;
};

struct IntensitySample {
    double omega = 0.0;
    double intensity = 0.0;
};

/// a[n] = sum_k conj(x[k]) x[k+n].
[[nodiscard]] Autocorrelation autocorrelation(const Signal& x);

/// sum_n x[n] e^{-i omega n}
[[nodiscard]] Complex fourier_transform(const Signal& x, double omega);

/// |F x(omega)|^2
[[nodiscard]] double fourier_intensity(const Signal& x, double omega);

// Trivial ambiguities: every one of these preserves the Fourier intensity.

[[nodiscard]] Signal rotate(const Signal& x, double alpha);
[[nodiscard]] Signal shift(const Signal& x, long n0);
/// (conj x[-n])_n
[[nodiscard]] Signal conjugate_reflect(const Signal& x);

struct TrivialTransform {
    enum class Kind { rotate, shift, conjugate_reflect };
    Kind kind = Kind::rotate;
    double angle = 0.0;
    long steps = 0;

    static TrivialTransform rotation(double alpha) { return {Kind::rotate, alpha, 0}; }
    static TrivialTransform time_shift(long n0) { return {Kind::shift, 0.0, n0}; }
    static TrivialTransform reflection() { return {Kind::conjugate_reflect, 0.0, 0}; }
};

[[nodiscard]] Signal trivial_transform(const Signal& x, const TrivialTransform& t);

/// Drops the offset, rotates the largest-magnitude sample (lowest index on
/// ties) onto the positive real axis, and with `modulo_reflection` returns
/// the lexicographically smaller of that form and the form of the conjugate
/// reflection.
[[nodiscard]] CanonicalForm canonicalize(const Signal& x, bool modulo_reflection,
                                         const ToleranceConfig& cfg = {});

/// Largest componentwise distance; +inf when the lengths differ.
[[nodiscard]] double canonical_distance(const CanonicalForm& a, const CanonicalForm& b) noexcept;

/// Distance between the classes of x and y: zero iff they are related by
/// rotation and shift (and conjugate reflection when `modulo_reflection`).
[[nodiscard]] double class_distance(const Signal& x, const Signal& y, bool modulo_reflection,
                                    const ToleranceConfig& cfg = {});

/// Reconstructs the autocorrelation of a length-n signal from samples of
/// its Fourier intensity. Needs at least 2n-1 distinct frequencies in
/// [-pi, pi); additional samples are used as a consistency check.
[[nodiscard]] Autocorrelation acf_from_intensity_samples(std::span<const IntensitySample> samples,
                                                         std::size_t n,
                                                         const ToleranceConfig& cfg = {});

}  // namespace phase_toolkit
