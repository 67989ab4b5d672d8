#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "phase_toolkit/common.hpp"

// Uniqueness criteria for recovery from the Fourier intensity plus
// time-domain moduli or phases, decided from the zero set B of a solution
// by checking every admissible reflection subset.
namespace phase_toolkit {

/// Bit j set <=> B[j] is reflected.
using SubsetMask = std::uint64_t;

/// S_n(B): sum over all n-element sub-multisets of products. S_0 = 1;
/// S_n = 0 for n < 0 or n > |B|.
[[nodiscard]] Complex elementary_symmetric(std::span<const Complex> zeros, int n);

/// S_0(B), ..., S_{|B|}(B) in one pass.
[[nodiscard]] ComplexVector elementary_symmetric_all(std::span<const Complex> zeros);

/// B with every member in `mask` replaced by its reflection 1/conj(beta).
[[nodiscard]] ComplexVector modified_zero_set(std::span<const Complex> zeros, SubsetMask mask);

/// Non-empty subsets of B that may index a non-trivial ambiguity: no zero
/// on the unit circle and never both members of a reflected pair
/// (beta, 1/conj(beta)) contained in B.
class SubsetFamily {
public:
    /// With `exclude_full_reflection`, the one admissible subset whose
    /// modified zero set is the conjugate reflection of B is skipped.
    SubsetFamily(std::span<const Complex> zeros, bool exclude_full_reflection, double circle_tol = 1e-8);

    /// Every admissible mask, ascending.
    [[nodiscard]] std::vector<SubsetMask> masks() const;
    /// Mask of the admissible subset that realizes the full reflection.
    [[nodiscard]] SubsetMask full_reflection() const noexcept { return full_; }
    [[nodiscard]] bool admissible(SubsetMask mask) const noexcept;

private:
    std::vector<std::size_t> free_;  // off-circle positions
    std::vector<SubsetMask> pair_masks_;
    SubsetMask full_ = 0;
    bool exclude_full_ = false;
};

enum class Equivalence { rotation, rotation_and_reflection };

struct Violation {
    SubsetMask mask = 0;
    double residual = 0.0;
};

struct CriterionReport {
    bool unique = true;
    Equivalence equivalence = Equivalence::rotation;
    std::vector<Violation> violations;
    /// Some subset decided within a factor 10 of criterion_tol.
    bool borderline = false;
    /// Verdict of brute-force constraint filtering, filled in for borderline reports.
    std::optional<bool> oracle_unique;
};

/// Unique recovery from |F x| and |x[N-1-ell]|.
[[nodiscard]] CriterionReport check_magnitude_uniqueness(std::span<const Complex> zeros, int ell,
                                                         const ToleranceConfig& cfg = {});

/// Unique recovery from |F x| and all moduli |x[0]|, ..., |x[N-1]|.
[[nodiscard]] CriterionReport check_all_moduli_uniqueness(std::span<const Complex> zeros,
                                                          const ToleranceConfig& cfg = {});

/// Unique recovery from |F x|, arg x[N-1] and arg x[N-1-ell], 1 <= ell <= N-2.
[[nodiscard]] CriterionReport check_phase_uniqueness_endpoint(std::span<const Complex> zeros, int ell,
                                                              const ToleranceConfig& cfg = {});

/// Unique recovery from |F x|, arg x[N-1-ell1] and arg x[N-1-ell2].
[[nodiscard]] CriterionReport check_phase_uniqueness_two_points(std::span<const Complex> zeros, int ell1, int ell2,
                                                                const ToleranceConfig& cfg = {});

/// Positions of the members of `mask`.
[[nodiscard]] std::vector<int> mask_indices(SubsetMask mask);

}  // namespace phase_toolkit
