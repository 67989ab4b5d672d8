#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "phase_toolkit/common.hpp"
#include "phase_toolkit/signal.hpp"
#include "phase_toolkit/spectral.hpp"

namespace phase_toolkit {

/// One member chosen per zero-pair occurrence.
///
/// `reflections[j]` counts how many of the multiplicity-m_j occurrences of
/// pair j use the reflected member 1/conj(gamma_j); on-circle pairs always
/// have 0. `betas` lists the resulting N-1 zeros.
struct ZeroSelection {
    ComplexVector betas;
    std::vector<int> reflections;
};

/// Selection obtained by taking `reflections[j]` reflected members of pair j.
[[nodiscard]] ZeroSelection select_zeros(const ZeroPairSet& pairs, std::span<const int> reflections);

/// The signal with Fourier transform
///   e^{i alpha} e^{-i omega n0} sqrt(|a[N-1]| prod |beta_j|^{-1}) prod (e^{-i omega} - beta_j)
/// i.e. x[n0 + k] is the coefficient of z^k in C prod (z - beta_j).
[[nodiscard]] Signal synthesize(std::span<const Complex> betas, Complex leading, double alpha = 0.0, long n0 = 0);

struct SolutionClass {
    ZeroSelection selection;
    CanonicalForm canonical;

    /// Canonical representative with support {0, ..., N-1}.
    [[nodiscard]] Signal signal() const { return Signal(canonical.values, 0, 0.0); }
};

struct SolutionSet {
    std::vector<SolutionClass> classes;
    std::size_t total_enumerated = 0;
    bool modulo_reflection = false;
    /// Distinct selections that produced the same class (beyond the
    /// reflection partners merged on purpose).
    std::size_t collisions = 0;
    /// Dedupe comparisons whose distance fell within a factor 10 of the
    /// dedupe threshold, either way.
    std::size_t near_threshold = 0;
};

/// Every solution of |F x|^2 = F a, one class per distinct canonical form.
/// A pair of multiplicity m contributes m+1 choices; on-circle pairs are
/// forced. Signals are synthesized with alpha = 0 and n0 = 0.
[[nodiscard]] SolutionSet enumerate_solutions(const ZeroPairSet& pairs, bool modulo_reflection,
                                              const ToleranceConfig& cfg = {});

/// A time-domain datum: |x[index]| = value or arg x[index] = value.
struct Constraint {
    enum class Kind { magnitude, phase };
    Kind kind = Kind::magnitude;
    std::size_t index = 0;
    double value = 0.0;

    static Constraint magnitude(std::size_t index, double value) { return {Kind::magnitude, index, value}; }
    static Constraint phase(std::size_t index, double value) { return {Kind::phase, index, value}; }
};

/// Whether some rotation of `values` meets every constraint. The rotation is
/// fitted to the phase constraints in closed form (magnitude-weighted
/// circular mean); a phase constraint holds when the rotated sample lies on
/// the prescribed ray within tolerance, so zero samples satisfy any phase.
[[nodiscard]] bool satisfies_constraints(std::span<const Complex> values, std::span<const Constraint> constraints,
                                         const ToleranceConfig& cfg = {});

/// Keeps classes with a trivially equivalent representative (rotation;
/// also conjugate reflection when the set was built modulo reflection)
/// that satisfies all constraints. Throws InvalidArgument for indices
/// outside the support.
[[nodiscard]] SolutionSet filter_by_constraints(const SolutionSet& solutions, std::span<const Constraint> constraints,
                                                const ToleranceConfig& cfg = {});

/// factorize -> enumerate -> filter.
[[nodiscard]] SolutionSet recover(const Autocorrelation& a, std::span<const Constraint> constraints,
                                  const ToleranceConfig& cfg = {}, bool modulo_reflection = false);

}  // namespace phase_toolkit
