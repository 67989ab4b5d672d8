#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "phase_toolkit/common.hpp"
#include "phase_toolkit/signal.hpp"

// Explicit signal pairs that share their Fourier intensity together with all
// time-domain moduli, or all time-domain phases, and are still not related
// by any trivial ambiguity.
namespace phase_toolkit {

struct SharedData {
    bool intensity = true;
    bool moduli = false;
    bool phases = false;
};

struct CounterexamplePair {
    Signal x;
    Signal y;
    SharedData shared;
};

/// x from the zeros {eta1, -1/eta1, i eta2 (N-3 times)}, y from
/// {1/eta1, -eta1, i eta2 (N-3 times)}, both with scale C = 1.
[[nodiscard]] CounterexamplePair magnitude_counterexample(int n, double eta1, double eta2);

/// x from the given negative real zeros (scale C = 1, so every sample is
/// real and positive) paired with each further class of its intensity whose
/// samples are all real and nonnegative. Classes are taken modulo
/// conjugate reflection.
[[nodiscard]] std::vector<CounterexamplePair> phase_counterexample(std::span<const double> zeros,
                                                                   const ToleranceConfig& cfg = {});

/// Measured agreement of a pair.
struct PairCheck {
    /// max_omega |I_x - I_y| over the probe grid, relative to a[0].
    double intensity_error = 0.0;
    /// max_n ||x[n]| - |y[n]||, relative to max |x|.
    double moduli_error = 0.0;
    /// Largest deviation of any sample of x or y from the nonnegative real
    /// axis, relative to the signal's max modulus.
    double phase_error = 0.0;
    /// Distance of the canonical forms modulo all trivial ambiguities.
    double class_distance = 0.0;
};

[[nodiscard]] PairCheck check_pair(const CounterexamplePair& pair, std::size_t probes = 128,
                                   const ToleranceConfig& cfg = {});

}  // namespace phase_toolkit
