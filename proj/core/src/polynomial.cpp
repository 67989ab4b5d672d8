#include "phase_toolkit/polynomial.hpp"

#include <cmath>

namespace phase_toolkit::poly {

Complex evaluate(std::span<const Complex> coeffs, Complex z) noexcept {
    Complex acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double magnitude_bound(std::span<const Complex> coeffs, double abs_z) noexcept {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * abs_z + std::abs(*it);
    return acc;
}

ComplexVector derivative(std::span<const Complex> coeffs, std::size_t order) {
    ComplexVector d(coeffs.begin(), coeffs.end());
    for (std::size_t step = 0; step < order; ++step) {
        if (d.size() <= 1) return {Complex{}};
        for (std::size_t k = 1; k < d.size(); ++k) d[k - 1] = d[k] * static_cast<double>(k);
        d.pop_back();
    }
    return d;
}

ComplexVector from_roots(std::span<const Complex> roots, Complex leading) {
    ComplexVector c{leading};
    c.reserve(roots.size() + 1);
    for (const Complex& r : roots) {
        c.push_back(Complex{});
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return c;
}

}  // namespace phase_toolkit::poly
