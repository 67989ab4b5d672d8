#include "phase_toolkit/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "phase_toolkit/enumeration.hpp"

namespace phase_toolkit {

namespace {

double off_axis(const Signal& s) {
    const double scale = s.max_magnitude();
    double worst = 0.0;
    for (const auto& v : s.values()) {
        worst = std::max({worst, std::abs(v.imag()) / scale, -v.real() / scale});
    }
    return worst;
}

}  // namespace

CounterexamplePair magnitude_counterexample(int n, double eta1, double eta2) {
    if (n < 4) throw InvalidArgument("magnitude counterexample needs N >= 4");
    if (!(eta1 > 1.0) || !(eta2 > 1.0) || !std::isfinite(eta1) || !std::isfinite(eta2)) {
        throw InvalidArgument("magnitude counterexample needs eta1 > 1 and eta2 > 1");
    }
    const Complex repeated(0.0, eta2);
    ComplexVector bx{eta1, -1.0 / eta1};
    ComplexVector by{1.0 / eta1, -eta1};
    for (int j = 0; j < n - 3; ++j) {
        bx.push_back(repeated);
        by.push_back(repeated);
    }
    const Complex leading(std::pow(eta2, n - 3));
    return {synthesize(bx, leading), synthesize(by, leading), {true, true, false}};
}

std::vector<CounterexamplePair> phase_counterexample(std::span<const double> zeros, const ToleranceConfig& cfg) {
    if (zeros.size() < 2) throw InvalidArgument("phase counterexample needs N >= 3");
    ComplexVector betas;
    double lead = 1.0;
    int off_circle = 0;
    for (double b : zeros) {
        if (!(b < 0.0) || !std::isfinite(b)) throw InvalidArgument("zeros must be real and negative");
        if (std::abs(std::abs(b) - 1.0) > cfg.circle_tol) ++off_circle;
        betas.emplace_back(b);
        lead *= -b;
    }
    if (off_circle < 2) throw InvalidArgument("no nontrivial ambiguity exists");

    const Signal x = synthesize(betas, Complex(lead));
    std::vector<Constraint> real_axis;
    for (std::size_t i = 0; i < x.size(); ++i) real_axis.push_back(Constraint::phase(i, 0.0));
    const SolutionSet set = recover(autocorrelation(x), real_axis, cfg, true);

    const CanonicalForm cx = canonicalize(x, true, cfg);
    std::vector<CounterexamplePair> out;
    for (const auto& cls : set.classes) {
        if (canonical_distance(cls.canonical, cx) <= cfg.dedupe_tol * x.max_magnitude()) continue;
        // Resynthesized with a[N-1] of x and alpha = 0: real, nonnegative samples.
        out.push_back({x, synthesize(cls.selection.betas, Complex(lead)), {true, false, true}});
    }
    return out;
}

PairCheck check_pair(const CounterexamplePair& pair, std::size_t probes, const ToleranceConfig& cfg) {
    PairCheck check;
    const double a0 = autocorrelation(pair.x).at(0).real();
    for (std::size_t k = 0; k < probes; ++k) {
        const double omega = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) /
                                                     static_cast<double>(probes);
        const double d = std::abs(fourier_intensity(pair.x, omega) - fourier_intensity(pair.y, omega));
        check.intensity_error = std::max(check.intensity_error, d / a0);
    }
    const double scale = pair.x.max_magnitude();
    if (pair.x.size() != pair.y.size()) {
        check.moduli_error = std::numeric_limits<double>::infinity();
    } else {
        for (std::size_t n = 0; n < pair.x.size(); ++n) {
            check.moduli_error = std::max(check.moduli_error, std::abs(std::abs(pair.x[n]) - std::abs(pair.y[n])) / scale);
        }
    }
    check.phase_error = std::max(off_axis(pair.x), off_axis(pair.y));
    check.class_distance = class_distance(pair.x, pair.y, true, cfg);
    return check;
}

}  // namespace phase_toolkit
