#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "phase_toolkit/common.hpp"
#include "phase_toolkit/signal.hpp"

namespace phase_toolkit {

/// P(z) = sum_{n=0}^{2N-2} a[n-N+1] z^n. Coefficients are conjugate
/// palindromic: coeffs[k] == conj(coeffs[2N-2-k]).
struct AssociatedPolynomial {
    ComplexVector coeffs;

    [[nodiscard]] std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    [[nodiscard]] Complex leading() const { return coeffs.back(); }
};

struct RootEstimate {
    Complex value;
    int multiplicity = 1;
};

/// Raised when the root iteration does not settle; carries whatever
/// estimates were available at that point.
class RootFindingError : public Error {
public:
    RootFindingError(const std::string& what, std::vector<RootEstimate> partial)
        : Error(what), partial_(std::move(partial)) {}
    [[nodiscard]] const std::vector<RootEstimate>& partial() const noexcept { return partial_; }

private:
    std::vector<RootEstimate> partial_;
};

/// One reflected zero pair (gamma, 1/conj(gamma)) of the associated
/// polynomial. Off-circle pairs store the representative with |gamma| > 1;
/// on-circle pairs have reflected == gamma.
struct ZeroPair {
    Complex gamma;
    Complex reflected;
    bool on_circle = false;
    int multiplicity = 1;
};

struct ZeroPairSet {
    Complex leading;  // a[N-1]
    std::vector<ZeroPair> pairs;
    /// Number of roots that were moved onto the unit circle by snapping.
    int snapped = 0;

    /// Sum of pair multiplicities, N-1.
    [[nodiscard]] std::size_t total_multiplicity() const noexcept;
    [[nodiscard]] std::size_t support_length() const noexcept { return total_multiplicity() + 1; }
};

/// Throws InvalidSpectrum when a[N-1] is negligible relative to a[0].
[[nodiscard]] AssociatedPolynomial associated_polynomial(const Autocorrelation& a, const ToleranceConfig& cfg = {});

/// All roots of a polynomial (ascending coefficients, nonzero leading
/// coefficient), with multiplicities.
///
/// Simultaneous Aberth-Ehrlich iteration, then grouping of the estimates into
/// clusters of overlapping inclusion discs (or estimates within
/// cfg.cluster_radius). A cluster of size m is reported once with
/// multiplicity m, its centre refined by Newton steps on the (m-1)-th
/// derivative; single roots are polished by Newton on the polynomial.
[[nodiscard]] std::vector<RootEstimate> find_roots(std::span<const Complex> coeffs, const ToleranceConfig& cfg = {});
[[nodiscard]] std::vector<RootEstimate> find_roots(const AssociatedPolynomial& p, const ToleranceConfig& cfg = {});

/// Groups roots of an associated polynomial into reflected pairs.
/// Throws InvalidSpectrum("input is not a valid autocorrelation spectrum")
/// when an on-circle root has odd multiplicity or a root has no partner.
[[nodiscard]] ZeroPairSet pair_roots(std::span<const RootEstimate> roots, Complex leading,
                                     const ToleranceConfig& cfg = {});

/// pair_roots(find_roots(associated_polynomial(a)))
[[nodiscard]] ZeroPairSet factorize(const Autocorrelation& a, const ToleranceConfig& cfg = {});

}  // namespace phase_toolkit
