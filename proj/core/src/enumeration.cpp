#include "phase_toolkit/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "phase_toolkit/polynomial.hpp"

namespace phase_toolkit {

namespace {

ComplexVector mirrored(const ComplexVector& v) {
    ComplexVector r(v.rbegin(), v.rend());
    for (auto& c : r) c = std::conj(c);
    return r;
}

double max_distance(const ComplexVector& a, const ComplexVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Energy centroid sum n |x[n]|^2; folded onto the smaller of itself and
// its mirror image when reflections are identified. Equal classes have
// nearly equal keys, so only a small key window needs comparing.
double dedupe_key(const ComplexVector& v, bool modulo_reflection) {
    double centroid = 0.0;
    double energy = 0.0;
    for (std::size_t n = 0; n < v.size(); ++n) {
        centroid += static_cast<double>(n) * std::norm(v[n]);
        energy += std::norm(v[n]);
    }
    if (!modulo_reflection) return centroid;
    return std::min(centroid, static_cast<double>(v.size() - 1) * energy - centroid);
}

}  // namespace

ZeroSelection select_zeros(const ZeroPairSet& pairs, std::span<const int> reflections) {
    if (reflections.size() != pairs.pairs.size()) throw InvalidArgument("one reflection count per pair expected");
    ZeroSelection sel;
    sel.reflections.assign(reflections.begin(), reflections.end());
    for (std::size_t j = 0; j < pairs.pairs.size(); ++j) {
        const ZeroPair& p = pairs.pairs[j];
        const int k = reflections[j];
        if (k < 0 || k > p.multiplicity || (p.on_circle && k != 0)) {
            throw InvalidArgument("reflection count out of range for pair");
        }
        for (int t = 0; t < p.multiplicity - k; ++t) sel.betas.push_back(p.gamma);
        for (int t = 0; t < k; ++t) sel.betas.push_back(p.reflected);
    }
    return sel;
}

Signal synthesize(std::span<const Complex> betas, Complex leading, double alpha, long n0) {
    double log_scale = std::log(std::abs(leading));
    for (const Complex& b : betas) {
        if (std::abs(b) == 0.0) throw InvalidArgument("zero set must not contain 0");
        log_scale -= std::log(std::abs(b));
    }
    const Complex c = std::polar(std::exp(0.5 * log_scale), alpha);
    return Signal(poly::from_roots(betas, c), n0, 0.0);
}

SolutionSet enumerate_solutions(const ZeroPairSet& pairs, bool modulo_reflection, const ToleranceConfig& cfg) {
    SolutionSet out;
    out.modulo_reflection = modulo_reflection;

    const std::size_t count = pairs.pairs.size();
    std::vector<int> radix(count);
    for (std::size_t j = 0; j < count; ++j) {
        radix[j] = pairs.pairs[j].on_circle ? 1 : pairs.pairs[j].multiplicity + 1;
    }

    struct Stored {
        ComplexVector plain;  // canonical form without reflection
        std::vector<int> reflections;
    };
    std::vector<Stored> stored;
    std::multimap<double, std::size_t> index;

    std::vector<int> counter(count, 0);
    for (;;) {
        ZeroSelection sel = select_zeros(pairs, counter);
        const Signal sig = synthesize(sel.betas, pairs.leading);
        ++out.total_enumerated;

        CanonicalForm plain = canonicalize(sig, false, cfg);
        ComplexVector mirror_plain;
        if (modulo_reflection) mirror_plain = canonicalize(conjugate_reflect(sig), false, cfg).values;

        const std::size_t n = plain.values.size();
        const double scale = sig.max_magnitude();
        const double tol = cfg.dedupe_tol * scale;
        double magnitude_sum = 0.0;
        for (const auto& v : plain.values) magnitude_sum += std::abs(v);
        const double key = dedupe_key(plain.values, modulo_reflection);
        const double window = 2.0 * static_cast<double>(n) * tol * (magnitude_sum + static_cast<double>(n) * tol);

        std::size_t match = stored.size();
        double best = std::numeric_limits<double>::infinity();
        for (auto it = index.lower_bound(key - window); it != index.end() && it->first <= key + window; ++it) {
            const Stored& s = stored[it->second];
            double d = max_distance(plain.values, s.plain);
            if (modulo_reflection) d = std::min(d, max_distance(mirror_plain, s.plain));
            if (d > 0.1 * tol && d <= 10.0 * tol) ++out.near_threshold;
            if (d < best) {
                best = d;
                match = it->second;
            }
        }

        if (match != stored.size() && best <= tol) {
            bool partner = false;
            if (modulo_reflection) {
                partner = true;
                for (std::size_t j = 0; j < count; ++j) {
                    const ZeroPair& p = pairs.pairs[j];
                    const int expected = p.on_circle ? 0 : p.multiplicity - counter[j];
                    if (stored[match].reflections[j] != expected) partner = false;
                }
            }
            if (!partner) ++out.collisions;
        } else {
            index.emplace(key, stored.size());
            stored.push_back({plain.values, counter});
            out.classes.push_back({std::move(sel), canonicalize(sig, modulo_reflection, cfg)});
        }

        std::size_t digit = 0;
        while (digit < count && ++counter[digit] == radix[digit]) counter[digit++] = 0;
        if (digit == count) break;
    }
    return out;
}

bool satisfies_constraints(std::span<const Complex> values, std::span<const Constraint> constraints,
                           const ToleranceConfig& cfg) {
    double scale = 0.0;
    for (const auto& v : values) scale = std::max(scale, std::abs(v));

    Complex fit{};
    for (const auto& c : constraints) {
        if (c.kind == Constraint::Kind::phase) fit += std::conj(values[c.index]) * std::polar(1.0, c.value);
    }
    const Complex rotation = std::abs(fit) > 0.0 ? fit / std::abs(fit) : Complex(1.0);

    for (const auto& c : constraints) {
        const Complex v = values[c.index];
        if (c.kind == Constraint::Kind::magnitude) {
            if (!cfg.within(std::abs(std::abs(v) - c.value), std::max(scale, std::abs(c.value)))) return false;
        } else {
            const Complex along = v * rotation * std::polar(1.0, -c.value);
            if (!cfg.within(std::abs(along.imag()), scale) || along.real() < -cfg.band(scale)) return false;
        }
    }
    return true;
}

SolutionSet filter_by_constraints(const SolutionSet& solutions, std::span<const Constraint> constraints,
                                  const ToleranceConfig& cfg) {
    SolutionSet out = solutions;
    if (constraints.empty()) return out;
    out.classes.clear();
    for (const auto& cls : solutions.classes) {
        const std::size_t n = cls.canonical.values.size();
        for (const auto& c : constraints) {
            if (c.index >= n) throw InvalidArgument("constraint index outside the support {0, ..., N-1}");
            if (!std::isfinite(c.value)) throw InvalidArgument("constraint value must be finite");
        }
        bool keep = satisfies_constraints(cls.canonical.values, constraints, cfg);
        if (!keep && solutions.modulo_reflection) {
            keep = satisfies_constraints(mirrored(cls.canonical.values), constraints, cfg);
        }
        if (keep) out.classes.push_back(cls);
    }
    return out;
}

SolutionSet recover(const Autocorrelation& a, std::span<const Constraint> constraints, const ToleranceConfig& cfg,
                    bool modulo_reflection) {
    const ZeroPairSet pairs = factorize(a, cfg);
    return filter_by_constraints(enumerate_solutions(pairs, modulo_reflection, cfg), constraints, cfg);
}

}  // namespace phase_toolkit
