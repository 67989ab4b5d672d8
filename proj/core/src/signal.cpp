#include "phase_toolkit/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

namespace phase_toolkit {

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const ComplexVector& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

// Pivot rotation only; the offset is already dropped by the caller.
ComplexVector rotate_to_pivot(ComplexVector v, const ToleranceConfig& cfg) {
    const double top = max_abs(v);
    const double cutoff = top - cfg.band(top);
    std::size_t pivot = 0;
    while (std::abs(v[pivot]) < cutoff) ++pivot;
    const Complex unit = std::conj(v[pivot]) / std::abs(v[pivot]);
    for (auto& c : v) c *= unit;
    v[pivot] = Complex(std::abs(v[pivot]), 0.0);
    return v;
}

// Lexicographic (Re, Im) comparison where differences inside the tolerance
// band count as ties.
bool lex_less(const ComplexVector& a, const ComplexVector& b, double tol) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i].real() - b[i].real()) > tol) return a[i].real() < b[i].real();
        if (std::abs(a[i].imag() - b[i].imag()) > tol) return a[i].imag() < b[i].imag();
    }
    return false;
}

ComplexVector reflect_values(const ComplexVector& v) {
    ComplexVector r(v.rbegin(), v.rend());
    for (auto& c : r) c = std::conj(c);
    return r;
}

double probe_minimum(const ComplexVector& coeffs) {
    const std::size_t n = (coeffs.size() + 1) / 2;
    const std::size_t probes = 16 * n + 64;
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < probes; ++k) {
        const double omega = -kPi + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(probes);
        double value = coeffs[n - 1].real();
        for (std::size_t lag = 1; lag < n; ++lag) {
            value += 2.0 * (coeffs[n - 1 + lag] * std::polar(1.0, -omega * static_cast<double>(lag))).real();
        }
        lowest = std::min(lowest, value);
    }
    return lowest;
}

}  // namespace

void ToleranceConfig::validate() const {
    for (double t : {atol, rtol, trim_rel, circle_tol, cluster_radius, pair_tol, residual_tol,
                     criterion_tol, dedupe_tol}) {
        if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("tolerances must be positive");
    }
    if (max_iterations <= 0) throw InvalidArgument("max_iterations must be positive");
}

Signal::Signal(ComplexVector values, long offset, double trim_rel) : offset_(offset) {
    const double top = max_abs(values);
    if (!(top > 0.0)) throw InvalidArgument("empty support");
    const double floor = trim_rel * top;
    std::size_t first = 0;
    while (std::abs(values[first]) <= floor) ++first;
    std::size_t last = values.size() - 1;
    while (std::abs(values[last]) <= floor) --last;
    values_.assign(values.begin() + static_cast<std::ptrdiff_t>(first),
                   values.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    offset_ += static_cast<long>(first);
}

Complex Signal::at_time(long n) const noexcept {
    const long i = n - offset_;
    if (i < 0 || i >= static_cast<long>(values_.size())) return {};
    return values_[static_cast<std::size_t>(i)];
}

double Signal::max_magnitude() const noexcept { return max_abs(values_); }

Autocorrelation Autocorrelation::from_coefficients(ComplexVector coeffs, const ToleranceConfig& cfg) {
    if (coeffs.empty() || coeffs.size() % 2 == 0) {
        throw InvalidSpectrum("autocorrelation needs an odd number 2N-1 of coefficients");
    }
    const std::size_t n = (coeffs.size() + 1) / 2;
    const Complex centre = coeffs[n - 1];
    const double scale = max_abs(coeffs);
    if (!(centre.real() > 0.0)) throw InvalidSpectrum("a[0] must be positive");
    if (std::abs(centre.imag()) > cfg.band(scale)) throw InvalidSpectrum("a[0] must be real");
    for (std::size_t lag = 1; lag < n; ++lag) {
        const Complex pos = coeffs[n - 1 + lag];
        const Complex neg = coeffs[n - 1 - lag];
        if (std::abs(neg - std::conj(pos)) > cfg.band(scale)) {
            throw InvalidSpectrum("autocorrelation is not conjugate symmetric");
        }
        const Complex sym = 0.5 * (pos + std::conj(neg));
        coeffs[n - 1 + lag] = sym;
        coeffs[n - 1 - lag] = std::conj(sym);
    }
    coeffs[n - 1] = Complex(centre.real(), 0.0);
    if (probe_minimum(coeffs) < -cfg.band(centre.real())) {
        throw InvalidSpectrum("not a valid intensity: trigonometric polynomial takes negative values");
    }
    return Autocorrelation(std::move(coeffs));
}

Complex Autocorrelation::at(long lag) const noexcept {
    const long n = static_cast<long>(support_length());
    if (lag <= -n || lag >= n) return {};
    return coeffs_[static_cast<std::size_t>(lag + n - 1)];
}

double Autocorrelation::evaluate(double omega) const noexcept {
    const long n = static_cast<long>(support_length());
    Complex sum{};
    for (long lag = -n + 1; lag < n; ++lag) {
        sum += at(lag) * std::polar(1.0, -omega * static_cast<double>(lag));
    }
    return sum.real();
}

Autocorrelation autocorrelation(const Signal& x) {
    const auto& v = x.values();
    const std::size_t n = v.size();
    ComplexVector coeffs(2 * n - 1);
    for (std::size_t lag = 0; lag < n; ++lag) {
        Complex sum{};
        for (std::size_t k = 0; k + lag < n; ++k) sum += std::conj(v[k]) * v[k + lag];
        coeffs[n - 1 + lag] = sum;
        coeffs[n - 1 - lag] = std::conj(sum);
    }
    coeffs[n - 1] = Complex(coeffs[n - 1].real(), 0.0);
    return Autocorrelation(std::move(coeffs));
}

Complex fourier_transform(const Signal& x, double omega) {
    Complex sum{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double n = static_cast<double>(x.offset()) + static_cast<double>(i);
        sum += x[i] * std::polar(1.0, -omega * n);
    }
    return sum;
}

double fourier_intensity(const Signal& x, double omega) { return std::norm(fourier_transform(x, omega)); }

Signal rotate(const Signal& x, double alpha) {
    ComplexVector v = x.values();
    const Complex unit = std::polar(1.0, alpha);
    for (auto& c : v) c *= unit;
    return Signal(std::move(v), x.offset(), 0.0);
}

Signal shift(const Signal& x, long n0) { return Signal(x.values(), x.offset() + n0, 0.0); }

Signal conjugate_reflect(const Signal& x) {
    // Support {o, ..., o+N-1} maps to {-(o+N-1), ..., -o}.
    const long last = x.offset() + static_cast<long>(x.size()) - 1;
    return Signal(reflect_values(x.values()), -last, 0.0);
}

Signal trivial_transform(const Signal& x, const TrivialTransform& t) {
    switch (t.kind) {
        case TrivialTransform::Kind::rotate: return rotate(x, t.angle);
        case TrivialTransform::Kind::shift: return shift(x, t.steps);
        case TrivialTransform::Kind::conjugate_reflect: return conjugate_reflect(x);
    }
    return x;
}

CanonicalForm canonicalize(const Signal& x, bool modulo_reflection, const ToleranceConfig& cfg) {
    CanonicalForm form{rotate_to_pivot(x.values(), cfg), false};
    if (!modulo_reflection) return form;
    ComplexVector mirrored = rotate_to_pivot(reflect_values(x.values()), cfg);
    if (lex_less(mirrored, form.values, cfg.band(x.max_magnitude()))) {
        form.values = std::move(mirrored);
        form.reflected = true;
    }
    return form;
}

double canonical_distance(const CanonicalForm& a, const CanonicalForm& b) noexcept {
    if (a.values.size() != b.values.size()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
    return d;
}

double class_distance(const Signal& x, const Signal& y, bool modulo_reflection, const ToleranceConfig& cfg) {
    const CanonicalForm cx = canonicalize(x, false, cfg);
    double d = canonical_distance(cx, canonicalize(y, false, cfg));
    if (modulo_reflection) d = std::min(d, canonical_distance(cx, canonicalize(conjugate_reflect(y), false, cfg)));
    return d;
}

Autocorrelation acf_from_intensity_samples(std::span<const IntensitySample> samples, std::size_t n,
                                           const ToleranceConfig& cfg) {
    if (n == 0) throw InvalidArgument("support length must be at least 1");
    std::vector<IntensitySample> sorted(samples.begin(), samples.end());
    double top = 0.0;
    for (const auto& s : sorted) {
        if (!std::isfinite(s.omega) || !std::isfinite(s.intensity)) throw InvalidArgument("non-finite sample");
        if (s.omega < -kPi || s.omega >= kPi) throw InvalidArgument("sample frequency outside [-pi, pi)");
        top = std::max(top, std::abs(s.intensity));
    }
    for (const auto& s : sorted) {
        if (s.intensity < -cfg.band(top)) throw InvalidSpectrum("not a valid intensity: negative sample");
    }
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.omega < b.omega; });
    constexpr double kSameFrequency = 1e-12;
    std::size_t distinct = sorted.empty() ? 0 : 1;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].omega - sorted[i - 1].omega > kSameFrequency) ++distinct;
    }
    if (distinct < 2 * n - 1) {
        throw InvalidArgument("underdetermined: need at least 2N-1 distinct sample frequencies");
    }

    const std::size_t m = sorted.size();
    const double step = 2.0 * kPi / static_cast<double>(m);
    bool equispaced = distinct == m;
    for (std::size_t i = 1; equispaced && i < m; ++i) {
        equispaced = std::abs(sorted[i].omega - sorted[i - 1].omega - step) <= 1e-12;
    }

    ComplexVector positive(n);  // a[0], ..., a[N-1]
    if (equispaced) {
        // Inverse DFT; no aliasing because m >= 2N-1.
        for (std::size_t lag = 0; lag < n; ++lag) {
            Complex sum{};
            for (const auto& s : sorted) sum += s.intensity * std::polar(1.0, s.omega * static_cast<double>(lag));
            positive[lag] = sum / static_cast<double>(m);
        }
    } else {
        // Unknowns: a[0], Re a[1], Im a[1], ..., Re a[N-1], Im a[N-1].
        const auto cols = static_cast<Eigen::Index>(2 * n - 1);
        Eigen::MatrixXd design(static_cast<Eigen::Index>(m), cols);
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(m));
        for (std::size_t r = 0; r < m; ++r) {
            const auto row = static_cast<Eigen::Index>(r);
            design(row, 0) = 1.0;
            for (std::size_t lag = 1; lag < n; ++lag) {
                const double phase = sorted[r].omega * static_cast<double>(lag);
                design(row, static_cast<Eigen::Index>(2 * lag - 1)) = 2.0 * std::cos(phase);
                design(row, static_cast<Eigen::Index>(2 * lag)) = 2.0 * std::sin(phase);
            }
            rhs(row) = sorted[r].intensity;
        }
        const Eigen::VectorXd sol = design.colPivHouseholderQr().solve(rhs);
        positive[0] = sol(0);
        for (std::size_t lag = 1; lag < n; ++lag) {
            positive[lag] = Complex(sol(static_cast<Eigen::Index>(2 * lag - 1)),
                                    sol(static_cast<Eigen::Index>(2 * lag)));
        }
    }

    ComplexVector coeffs(2 * n - 1);
    coeffs[n - 1] = Complex(positive[0].real(), 0.0);
    for (std::size_t lag = 1; lag < n; ++lag) {
        coeffs[n - 1 + lag] = positive[lag];
        coeffs[n - 1 - lag] = std::conj(positive[lag]);
    }

    // Surplus samples must agree with the interpolant.
    const double consistency = cfg.atol + 1e-8 * top;
    for (const auto& s : sorted) {
        double value = coeffs[n - 1].real();
        for (std::size_t lag = 1; lag < n; ++lag) {
            value += 2.0 * (coeffs[n - 1 + lag] * std::polar(1.0, -s.omega * static_cast<double>(lag))).real();
        }
        if (std::abs(value - s.intensity) > consistency) {
            throw InvalidSpectrum("samples are inconsistent with a trigonometric polynomial of degree N-1");
        }
    }
    return Autocorrelation::from_coefficients(std::move(coeffs), cfg);
}

}  // namespace phase_toolkit
