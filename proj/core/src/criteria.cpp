#include "phase_toolkit/criteria.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "phase_toolkit/enumeration.hpp"
#include "phase_toolkit/signal.hpp"

namespace phase_toolkit {

namespace {

constexpr double kReflectedPairTol = 1e-8;

void require_nonzero(std::span<const Complex> zeros) {
    if (zeros.size() > 63) throw InvalidArgument("zero sets larger than 63 are not supported");
    for (const auto& b : zeros) {
        if (std::abs(b) == 0.0) throw InvalidArgument("zero set must not contain 0");
    }
}

double reflected_modulus_product(std::span<const Complex> zeros, SubsetMask mask) {
    double product = 1.0;
    for (std::size_t j = 0; j < zeros.size(); ++j) {
        if (mask >> j & 1U) product *= std::abs(zeros[j]);
    }
    return product;
}

struct Query {
    std::vector<std::size_t> magnitude_idx;
    std::vector<std::size_t> phase_idx;
};

// Brute-force verdict: synthesize a signal for B, enumerate every solution
// of its intensity and keep those matching the queried data.
bool filtered_unique(std::span<const Complex> zeros, Equivalence eq, const Query& query, const ToleranceConfig& cfg) {
    double lead = 1.0;
    for (const auto& b : zeros) lead *= std::abs(b);
    const Signal x = synthesize(zeros, Complex(lead));
    std::vector<Constraint> constraints;
    for (std::size_t i : query.magnitude_idx) constraints.push_back(Constraint::magnitude(i, std::abs(x[i])));
    for (std::size_t i : query.phase_idx) constraints.push_back(Constraint::phase(i, std::arg(x[i])));
    const SolutionSet set = recover(autocorrelation(x), constraints, cfg, eq == Equivalence::rotation_and_reflection);
    return set.classes.size() == 1;
}

void finish(CriterionReport& report, std::span<const Complex> zeros, const Query& query, const ToleranceConfig& cfg) {
    report.unique = report.violations.empty();
    if (report.borderline) {
        report.oracle_unique = filtered_unique(zeros, report.equivalence, query, cfg);
    }
}

// Records the subset when residual <= tol; flags decisions made within a
// factor ten of the band.
void judge(CriterionReport& report, SubsetMask mask, double residual, bool sign_ok, const ToleranceConfig& cfg) {
    const double tol = cfg.criterion_tol;
    if (residual > 0.1 * tol && residual <= 10.0 * tol) report.borderline = true;
    if (residual <= tol && sign_ok) report.violations.push_back({mask, residual});
}

double magnitude_residual(const ComplexVector& s_base, std::span<const Complex> zeros, SubsetMask mask, int ell) {
    const ComplexVector s_mod = elementary_symmetric_all(modified_zero_set(zeros, mask));
    const double lhs = std::abs(s_base[static_cast<std::size_t>(ell)]);
    const double rhs = reflected_modulus_product(zeros, mask) * std::abs(s_mod[static_cast<std::size_t>(ell)]);
    return std::abs(lhs - rhs) / std::max({lhs, rhs, 1.0});
}

// Cross and dot products of a and b, normalized by max(|a||b|, 1).
struct RayTest {
    double cross;
    double dot;
};

RayTest ray_test(Complex a, Complex b) {
    const double scale = std::max(std::abs(a) * std::abs(b), 1.0);
    return {(a.real() * b.imag() - a.imag() * b.real()) / scale, (a.real() * b.real() + a.imag() * b.imag()) / scale};
}

}  // namespace

Complex elementary_symmetric(std::span<const Complex> zeros, int n) {
    if (n < 0 || static_cast<std::size_t>(n) > zeros.size()) return {};
    return elementary_symmetric_all(zeros)[static_cast<std::size_t>(n)];
}

ComplexVector elementary_symmetric_all(std::span<const Complex> zeros) {
    ComplexVector e(zeros.size() + 1, Complex{});
    e[0] = 1.0;
    std::size_t filled = 0;
    for (const Complex& b : zeros) {
        ++filled;
        for (std::size_t k = filled; k > 0; --k) e[k] += b * e[k - 1];
    }
    return e;
}

ComplexVector modified_zero_set(std::span<const Complex> zeros, SubsetMask mask) {
    ComplexVector out(zeros.begin(), zeros.end());
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (!(mask >> j & 1U)) continue;
        if (std::abs(out[j]) == 0.0) throw InvalidArgument("cannot reflect the zero 0");
        out[j] = 1.0 / std::conj(out[j]);
    }
    return out;
}

std::vector<int> mask_indices(SubsetMask mask) {
    std::vector<int> out;
    for (int j = 0; mask != 0; ++j, mask >>= 1U) {
        if (mask & 1U) out.push_back(j);
    }
    return out;
}

SubsetFamily::SubsetFamily(std::span<const Complex> zeros, bool exclude_full_reflection, double circle_tol)
    : exclude_full_(exclude_full_reflection) {
    require_nonzero(zeros);
    for (std::size_t j = 0; j < zeros.size(); ++j) {
        if (std::abs(std::abs(zeros[j]) - 1.0) > circle_tol) free_.push_back(j);
    }
    std::vector<bool> matched(zeros.size(), false);
    for (std::size_t a = 0; a < free_.size(); ++a) {
        const std::size_t i = free_[a];
        if (matched[i]) continue;
        for (std::size_t b = a + 1; b < free_.size(); ++b) {
            const std::size_t j = free_[b];
            if (matched[j]) continue;
            if (std::abs(zeros[i] * std::conj(zeros[j]) - 1.0) <= kReflectedPairTol) {
                matched[i] = matched[j] = true;
                pair_masks_.push_back((SubsetMask{1} << i) | (SubsetMask{1} << j));
                break;
            }
        }
    }
    for (std::size_t i : free_) {
        if (!matched[i]) full_ |= SubsetMask{1} << i;
    }
}

bool SubsetFamily::admissible(SubsetMask mask) const noexcept {
    if (mask == 0) return false;
    SubsetMask allowed = 0;
    for (std::size_t i : free_) allowed |= SubsetMask{1} << i;
    if ((mask & ~allowed) != 0) return false;
    for (SubsetMask pm : pair_masks_) {
        if ((mask & pm) == pm) return false;
    }
    return !(exclude_full_ && mask == full_);
}

std::vector<SubsetMask> SubsetFamily::masks() const {
    std::vector<SubsetMask> out;
    const std::size_t k = free_.size();
    if (k >= 63) throw InvalidArgument("too many free zeros to enumerate");
    for (SubsetMask bits = 1; bits < (SubsetMask{1} << k); ++bits) {
        SubsetMask mask = 0;
        for (std::size_t t = 0; t < k; ++t) {
            if (bits >> t & 1U) mask |= SubsetMask{1} << free_[t];
        }
        if (admissible(mask)) out.push_back(mask);
    }
    std::sort(out.begin(), out.end());
    return out;
}

CriterionReport check_magnitude_uniqueness(std::span<const Complex> zeros, int ell, const ToleranceConfig& cfg) {
    const int n = static_cast<int>(zeros.size()) + 1;
    if (ell < 0 || ell > n - 1) throw InvalidArgument("ell must lie in {0, ..., N-1}");
    const bool centred = (n % 2 == 1) && ell == (n - 1) / 2;

    CriterionReport report;
    report.equivalence = centred ? Equivalence::rotation_and_reflection : Equivalence::rotation;
    const ComplexVector s_base = elementary_symmetric_all(zeros);
    for (SubsetMask mask : SubsetFamily(zeros, centred, cfg.circle_tol).masks()) {
        judge(report, mask, magnitude_residual(s_base, zeros, mask, ell), true, cfg);
    }
    finish(report, zeros, Query{{static_cast<std::size_t>(n - 1 - ell)}, {}}, cfg);
    return report;
}

CriterionReport check_all_moduli_uniqueness(std::span<const Complex> zeros, const ToleranceConfig& cfg) {
    const int n = static_cast<int>(zeros.size()) + 1;
    CriterionReport report;
    report.equivalence = Equivalence::rotation;
    const ComplexVector s_base = elementary_symmetric_all(zeros);
    for (SubsetMask mask : SubsetFamily(zeros, false, cfg.circle_tol).masks()) {
        // Ambiguous iff every modulus agrees; the worst index decides.
        double worst = 0.0;
        for (int ell = 0; ell < n; ++ell) worst = std::max(worst, magnitude_residual(s_base, zeros, mask, ell));
        judge(report, mask, worst, true, cfg);
    }
    Query all;
    for (int i = 0; i < n; ++i) all.magnitude_idx.push_back(static_cast<std::size_t>(i));
    finish(report, zeros, all, cfg);
    return report;
}

CriterionReport check_phase_uniqueness_endpoint(std::span<const Complex> zeros, int ell, const ToleranceConfig& cfg) {
    const int n = static_cast<int>(zeros.size()) + 1;
    if (ell < 1 || ell > n - 2) throw InvalidArgument("ell must lie in {1, ..., N-2}");
    CriterionReport report;
    report.equivalence = Equivalence::rotation;
    const Complex base = elementary_symmetric(zeros, ell);
    for (SubsetMask mask : SubsetFamily(zeros, false, cfg.circle_tol).masks()) {
        const Complex other = elementary_symmetric(modified_zero_set(zeros, mask), ell);
        const RayTest t = ray_test(base, other);
        judge(report, mask, std::abs(t.cross), t.dot >= -cfg.criterion_tol, cfg);
    }
    finish(report, zeros, Query{{}, {static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n - 1 - ell)}}, cfg);
    return report;
}

CriterionReport check_phase_uniqueness_two_points(std::span<const Complex> zeros, int ell1, int ell2,
                                                  const ToleranceConfig& cfg) {
    const int n = static_cast<int>(zeros.size()) + 1;
    if (ell1 < 1 || ell1 > n - 2 || ell2 < 1 || ell2 > n - 2 || ell1 == ell2) {
        throw InvalidArgument("need distinct ell1, ell2 in {1, ..., N-2}");
    }
    const bool symmetric = ell1 + ell2 == n - 1;
    CriterionReport report;
    report.equivalence = symmetric ? Equivalence::rotation_and_reflection : Equivalence::rotation;
    const ComplexVector s_base = elementary_symmetric_all(zeros);
    const Complex first = s_base[static_cast<std::size_t>(ell1)];
    const Complex second = s_base[static_cast<std::size_t>(ell2)];
    for (SubsetMask mask : SubsetFamily(zeros, symmetric, cfg.circle_tol).masks()) {
        const ComplexVector s_mod = elementary_symmetric_all(modified_zero_set(zeros, mask));
        // Rotate the candidate so the ell2 phases agree, then compare at ell1.
        const Complex aligned = std::conj(s_mod[static_cast<std::size_t>(ell2)]) * second *
                                s_mod[static_cast<std::size_t>(ell1)];
        const RayTest t = ray_test(first, aligned);
        judge(report, mask, std::abs(t.cross), t.dot >= -cfg.criterion_tol, cfg);
    }
    finish(report, zeros,
           Query{{}, {static_cast<std::size_t>(n - 1 - ell1), static_cast<std::size_t>(n - 1 - ell2)}}, cfg);
    return report;
}

}  // namespace phase_toolkit
