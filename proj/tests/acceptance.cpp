// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "phase_toolkit/counterexample.hpp"
#include "phase_toolkit/criteria.hpp"
#include "phase_toolkit/enumeration.hpp"
#include "test_support.hpp"

using namespace phase_toolkit;
using test_support::Rng;

namespace {

constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Complex signal_sample(const ComplexVector& v, std::size_t i) { return i < v.size() ? v[i] : Complex{}; }

// 1. Every enumerated class reproduces the intensity; class count bound; runtime.
Outcome enumeration_soundness() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(1001);
    double worst = 0.0;
    int bound_violations = 0;
    int missing_original = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        const Signal x(rng.signal_values(n));
        const Autocorrelation a = autocorrelation(x);
        const double a0 = a.at(0).real();
        const SolutionSet set = enumerate_solutions(factorize(a), true);
        if (set.classes.size() > (std::size_t{1} << (n - 2))) ++bound_violations;
        bool found = false;
        for (const auto& cls : set.classes) {
            const Signal y = cls.signal();
            for (std::size_t k = 0; k < 128; ++k) {
                const double w = -pi + 2.0 * pi * static_cast<double>(k) / 128.0;
                worst = std::max(worst, std::abs(fourier_intensity(y, w) - a.evaluate(w)) / a0);
            }
            found |= class_distance(y, x, true) <= 1e-6 * x.max_magnitude();
        }
        if (!found) ++missing_original;
    }
    const double elapsed = seconds_since(t0);
    return {worst <= 1e-7 && bound_violations == 0 && missing_original == 0 && elapsed < 30.0,
            fmt("200 signals N=2..8; worst intensity error %.2e*a[0] (tol 1e-7); count bound violations %d; "
                "original class missing %d; %.2f s (limit 30 s)",
                worst, bound_violations, missing_original, elapsed)};
}

// 2. Trivial ambiguities.
Outcome trivial_ambiguities() {
    Rng rng(1002);
    double worst_intensity = 0.0;
    double worst_canonical = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const Signal x(rng.signal_values(static_cast<std::size_t>(rng.integer(1, 10))), rng.integer(-5, 5));
        Signal y = x;
        bool reflected = false;
        const int steps = rng.integer(1, 4);
        for (int s = 0; s < steps; ++s) {
            switch (rng.integer(0, 2)) {
                case 0: y = rotate(y, rng.uniform(-pi, pi)); break;
                case 1: y = shift(y, rng.integer(-9, 9)); break;
                default:
                    y = conjugate_reflect(y);
                    reflected = !reflected;
            }
        }
        for (std::size_t k = 0; k < 64; ++k) {
            const double w = test_support::probe(k, 64);
            worst_intensity = std::max(worst_intensity, std::abs(fourier_intensity(x, w) - fourier_intensity(y, w)));
        }
        const double d = canonical_distance(canonicalize(x, reflected), canonicalize(y, reflected));
        worst_canonical = std::max(worst_canonical, d / (ToleranceConfig{}.dedupe_tol * x.max_magnitude()));
    }
    return {worst_intensity <= 1e-9 && worst_canonical <= 1.0,
            fmt("1000 cases; worst intensity change %.2e (tol 1e-9); worst canonical distance %.2e of dedupe tol",
                worst_intensity, worst_canonical)};
}

// 3. Analytic verdicts versus brute-force filtering.
Outcome criteria_vs_oracle() {
    Rng rng(1003);
    const ToleranceConfig cfg;
    int mismatches = 0;
    int borderline = 0;
    int nonunique = 0;
    int total = 0;

    const auto zero_set = [&](int family, std::size_t n) {
        switch (family) {
            case 0: return rng.zero_set(n - 1);
            case 1: {
                ComplexVector b;
                for (double z : rng.negative_zeros(n - 1)) b.emplace_back(z);
                return b;
            }
            default: {
                const double e1 = rng.uniform(1.2, 3.0);
                const double e2 = rng.uniform(1.2, 3.0);
                ComplexVector b{e1, -1.0 / e1};
                for (std::size_t j = 0; j + 3 < n; ++j) b.push_back(I * e2);
                return b;
            }
        }
    };
    const auto brute = [&](const ComplexVector& b, const std::vector<std::size_t>& mag,
                           const std::vector<std::size_t>& ph, Equivalence eq) {
        double lead = 1.0;
        for (const auto& z : b) lead *= std::abs(z);
        const Signal x = synthesize(b, lead);
        std::vector<Constraint> c;
        for (auto i : mag) c.push_back(Constraint::magnitude(i, std::abs(x[i])));
        for (auto i : ph) c.push_back(Constraint::phase(i, std::arg(x[i])));
        return recover(autocorrelation(x), c, cfg, eq == Equivalence::rotation_and_reflection).classes.size() == 1;
    };
    const auto tally = [&](const CriterionReport& r, bool oracle) {
        ++total;
        if (!r.unique) ++nonunique;
        if (r.borderline) {
            ++borderline;
            return;
        }
        if (r.unique != oracle) ++mismatches;
    };

    for (int t = 0; t < 100; ++t) {
        const int family = t % 3;
        const std::size_t n = family == 2 ? static_cast<std::size_t>(rng.integer(4, 7))
                                          : static_cast<std::size_t>(rng.integer(2, 7));
        const ComplexVector b = zero_set(family, n);
        const int ell = rng.integer(0, static_cast<int>(n) - 1);
        const CriterionReport r = check_magnitude_uniqueness(b, ell, cfg);
        tally(r, brute(b, {n - 1 - static_cast<std::size_t>(ell)}, {}, r.equivalence));
    }
    for (int t = 0; t < 100; ++t) {
        const int family = t % 3;
        const std::size_t n = static_cast<std::size_t>(rng.integer(family == 2 ? 4 : 3, 7));
        const ComplexVector b = zero_set(family, n);
        const int ell = rng.integer(1, static_cast<int>(n) - 2);
        const CriterionReport r = check_phase_uniqueness_endpoint(b, ell, cfg);
        tally(r, brute(b, {}, {n - 1, n - 1 - static_cast<std::size_t>(ell)}, r.equivalence));
    }
    for (int t = 0; t < 100; ++t) {
        const int family = t % 3;
        const std::size_t n = static_cast<std::size_t>(rng.integer(4, 7));
        const ComplexVector b = zero_set(family, n);
        int l1 = 0;
        int l2 = 0;
        while (l1 == l2) {
            l1 = rng.integer(1, static_cast<int>(n) - 2);
            l2 = rng.integer(1, static_cast<int>(n) - 2);
        }
        const CriterionReport r = check_phase_uniqueness_two_points(b, l1, l2, cfg);
        tally(r, brute(b, {}, {n - 1 - static_cast<std::size_t>(l1), n - 1 - static_cast<std::size_t>(l2)},
                       r.equivalence));
    }
    return {mismatches == 0, fmt("%d verdicts (100 per criterion, %d non-unique); mismatches outside borderline %d; "
                                 "borderline %d",
                                 total, nonunique, mismatches, borderline)};
}

// 4. Random signals are pinned down by one modulus or two phases.
Outcome almost_sure_uniqueness() {
    Rng rng(1004);
    int single_mag = 0;
    int single_phase = 0;
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(3, 7));
        const Signal x(rng.signal_values(n));
        int ell = 0;
        do {
            ell = rng.integer(0, static_cast<int>(n) - 1);
        } while (n % 2 == 1 && ell == static_cast<int>(n - 1) / 2);
        const std::size_t idx = n - 1 - static_cast<std::size_t>(ell);
        const std::vector<Constraint> c{Constraint::magnitude(idx, std::abs(x[idx]))};
        if (recover(autocorrelation(x), c).classes.size() == 1) ++single_mag;
    }
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(5, 7));
        const Signal x(rng.signal_values(n));
        int l1 = 0;
        int l2 = 0;
        while (l1 == l2 || l1 + l2 == static_cast<int>(n) - 1) {
            l1 = rng.integer(1, static_cast<int>(n) - 2);
            l2 = rng.integer(1, static_cast<int>(n) - 2);
        }
        const std::size_t i1 = n - 1 - static_cast<std::size_t>(l1);
        const std::size_t i2 = n - 1 - static_cast<std::size_t>(l2);
        const std::vector<Constraint> c{Constraint::phase(i1, std::arg(x[i1])), Constraint::phase(i2, std::arg(x[i2]))};
        if (recover(autocorrelation(x), c).classes.size() == 1) ++single_phase;
    }
    return {single_mag >= 499 && single_phase >= 499,
            fmt("one modulus: %d/500 single-class (N=3..7); two phases: %d/500 single-class (N=5..7); need >= 499",
                single_mag, single_phase)};
}

// 5. Modulus counterexample family.
Outcome modulus_counterexamples() {
    double worst_moduli = 0.0;
    double worst_intensity = 0.0;
    double min_distance = INFINITY;
    int cases = 0;
    for (int n = 4; n <= 8; ++n) {
        for (double e1 : {1.5, 2.0, 3.0}) {
            for (double e2 : {1.5, 2.0, 3.0}) {
                const CounterexamplePair p = magnitude_counterexample(n, e1, e2);
                for (std::size_t i = 0; i < p.x.size(); ++i) {
                    const double mx = std::abs(signal_sample(p.x.values(), i));
                    const double my = std::abs(signal_sample(p.y.values(), i));
                    worst_moduli = std::max(worst_moduli, std::abs(mx - my) / std::max(mx, my));
                }
                if (p.x.size() != p.y.size()) worst_moduli = INFINITY;
                for (std::size_t k = 0; k < 128; ++k) {
                    const double w = -pi + 2.0 * pi * static_cast<double>(k) / 128.0;
                    worst_intensity = std::max(worst_intensity,
                                               std::abs(fourier_intensity(p.x, w) - fourier_intensity(p.y, w)));
                }
                min_distance = std::min(min_distance, class_distance(p.x, p.y, true));
                ++cases;
            }
        }
    }
    return {worst_moduli <= 1e-9 && worst_intensity <= 1e-7 && min_distance >= 1e-3,
            fmt("%d pairs; worst relative modulus mismatch %.2e (tol 1e-9); worst intensity mismatch %.2e (tol 1e-7); "
                "smallest canonical distance %.3g (need >= 1e-3)",
                cases, worst_moduli, worst_intensity, min_distance)};
}

// 6. Real negative zeros: every class is real and nonnegative.
Outcome phase_counterexamples() {
    Rng rng(1006);
    double worst = 0.0;
    std::size_t fewest = SIZE_MAX;
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(t % 6);
        std::vector<double> zeros = rng.negative_zeros(n - 1);
        if (t % 4 == 3 && n >= 4) zeros[0] = -1.0;  // an on-circle zero besides two off-circle ones
        ComplexVector b(zeros.begin(), zeros.end());
        double lead = 1.0;
        for (double z : zeros) lead *= -z;
        const Signal x = synthesize(b, lead);
        const SolutionSet set = enumerate_solutions(factorize(autocorrelation(x)), true);
        fewest = std::min(fewest, set.classes.size());
        for (const auto& cls : set.classes) {
            const auto& v = cls.canonical.values;
            double scale = 0.0;
            for (const auto& c : v) scale = std::max(scale, std::abs(c));
            for (const auto& c : v) worst = std::max({worst, std::abs(c.imag()) / scale, -c.real() / scale});
        }
        // The factory reports the same family.
        if (phase_counterexample(zeros).size() + 1 != set.classes.size()) fewest = 0;
    }
    return {worst <= 1e-9 && fewest >= 2,
            fmt("20 zero sets N=3..8; worst deviation from the nonnegative axis %.2e*scale (tol 1e-9); "
                "fewest classes %zu (need >= 2)",
                worst, fewest)};
}

// 7. Vieta relation between samples and elementary symmetric functions.
Outcome vieta() {
    Rng rng(1007);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const ComplexVector b = rng.zero_set(static_cast<std::size_t>(rng.integer(1, 9)));
        const Complex lead = std::polar(rng.uniform(0.2, 5.0), rng.uniform(-pi, pi));
        const double alpha = rng.uniform(-pi, pi);
        const Signal x = synthesize(b, lead, alpha, rng.integer(-3, 3));
        double prod = 1.0;
        for (const auto& z : b) prod *= std::abs(z);
        const Complex c = std::polar(std::sqrt(std::abs(lead) / prod), alpha);
        const std::size_t n = b.size() + 1;
        for (std::size_t ell = 0; ell < n; ++ell) {
            const Complex want = (ell % 2 ? -1.0 : 1.0) * c * elementary_symmetric(b, static_cast<int>(ell));
            const Complex got = signal_sample(x.values(), n - 1 - ell);
            worst = std::max(worst, std::abs(got - want) / std::max(std::abs(want), 1e-300));
        }
    }
    return {worst <= 1e-9, fmt("100 signals, all l; worst relative error %.2e (tol 1e-9)", worst)};
}

// 8. Zero multiset survives autocorrelation -> factorization.
Outcome spectral_round_trip() {
    Rng rng(1008);
    double worst = 0.0;
    int failures = 0;
    int cases = 0;
    const auto check = [&](const ComplexVector& b) {
        ++cases;
        double lead = 1.0;
        for (const auto& z : b) lead *= std::abs(z);
        try {
            const ZeroPairSet set = factorize(autocorrelation(synthesize(b, lead)));
            if (set.support_length() != b.size() + 1) {
                ++failures;
                return;
            }
            // Match every original zero to a pair member, respecting multiplicities.
            std::vector<int> left;
            for (const auto& p : set.pairs) left.push_back(p.multiplicity);
            double case_worst = 0.0;
            for (const auto& z : b) {
                std::size_t best = set.pairs.size();
                double d = INFINITY;
                for (std::size_t j = 0; j < set.pairs.size(); ++j) {
                    if (left[j] == 0) continue;
                    const double e = std::min(std::abs(set.pairs[j].gamma - z), std::abs(set.pairs[j].reflected - z)) /
                                     std::abs(z);
                    if (e < d) {
                        d = e;
                        best = j;
                    }
                }
                if (best == set.pairs.size()) {
                    case_worst = INFINITY;
                    break;
                }
                --left[best];
                case_worst = std::max(case_worst, d);
            }
            worst = std::max(worst, case_worst);
        } catch (const Error&) {
            ++failures;
        }
    };
    for (int t = 0; t < 100; ++t) check(rng.zero_set(static_cast<std::size_t>(rng.integer(1, 9))));
    for (int n = 4; n <= 10; ++n) {
        for (double e1 : {1.5, 2.0, 3.0}) {
            for (double e2 : {1.5, 2.0, 3.0}) {
                ComplexVector b{e1, -1.0 / e1};
                for (int j = 0; j < n - 3; ++j) b.push_back(I * e2);
                check(b);
            }
        }
    }
    return {worst <= 1e-6 && failures == 0,
            fmt("%d zero sets (100 random N<=10, 63 with a zero of multiplicity N-3); worst relative error %.2e "
                "(tol 1e-6); failures %d",
                cases, worst, failures)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"enumeration soundness", enumeration_soundness},
        {"trivial ambiguities", trivial_ambiguities},
        {"criteria match brute force", criteria_vs_oracle},
        {"almost-sure uniqueness", almost_sure_uniqueness},
        {"modulus counterexamples", modulus_counterexamples},
        {"phase counterexamples", phase_counterexamples},
        {"Vieta relation", vieta},
        {"spectral round trip", spectral_round_trip},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  %zu  %-28s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
