#include "phase_toolkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

#include "phase_toolkit/polynomial.hpp"

namespace phase_toolkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Noise amplification a cluster may show before it is split.
constexpr double kNoiseFactor = 16.0;

// Error-free transformations: a + b = value + error and a * b = value + error
// hold exactly in floating point.
struct Split {
    double value;
    double error;
};

Split two_sum(double a, double b) {
    const double s = a + b;
    const double t = s - a;
    return {s, (a - (s - t)) + (b - t)};
}

Split two_product(double a, double b) {
    const double p = a * b;
#if defined(__FMA__)
    return {p, std::fma(a, b, -p)};
#else
    // Dekker's product with Veltkamp splitting.
    constexpr double kSplitter = 134217729.0;  // 2^27 + 1
    const auto halves = [](double v) {
        const double t = kSplitter * v;
        const double high = t - (t - v);
        return Split{high, v - high};
    };
    const Split x = halves(a);
    const Split y = halves(b);
    return {p, ((x.value * y.value - p) + x.value * y.error + x.error * y.value) + x.error * y.error};
#endif
}

// Coefficients held as unevaluated sums hi + lo.
struct DoubleCoeffs {
    ComplexVector hi;
    ComplexVector lo;
};

// order-th derivative; each coefficient k (k-1) ... (k-order+1) c_k is formed
// exactly while the integer factor fits in a double.
DoubleCoeffs exact_derivative(const ComplexVector& c, std::size_t order = 1) {
    DoubleCoeffs d;
    for (std::size_t k = order; k < c.size(); ++k) {
        double factor = 1.0;
        for (std::size_t j = 0; j < order; ++j) factor *= static_cast<double>(k - j);
        const Split re = two_product(factor, c[k].real());
        const Split im = two_product(factor, c[k].imag());
        d.hi.emplace_back(re.value, im.value);
        d.lo.emplace_back(re.error, im.error);
    }
    if (d.hi.empty()) {
        d.hi.emplace_back();
        d.lo.emplace_back();
    }
    return d;
}

// Compensated Horner scheme: the result is as accurate as plain Horner run
// in twice the working precision, so values far below the rounding level of
// the coefficients' magnitudes stay meaningful.
Complex compensated_horner(const DoubleCoeffs& c, Complex z) {
    Complex s = c.hi.back();
    Complex carry = c.lo.back();
    for (std::size_t k = c.hi.size() - 1; k-- > 0;) {
        const Split rr = two_product(s.real(), z.real());
        const Split ii = two_product(s.imag(), z.imag());
        const Split ri = two_product(s.real(), z.imag());
        const Split ir = two_product(s.imag(), z.real());
        const Split re = two_sum(rr.value, -ii.value);
        const Split im = two_sum(ri.value, ir.value);
        const Split sr = two_sum(re.value, c.hi[k].real());
        const Split si = two_sum(im.value, c.hi[k].imag());
        const Complex error(rr.error - ii.error + re.error + sr.error, ri.error + ir.error + im.error + si.error);
        carry = carry * z + error + c.lo[k];
        s = Complex(sr.value, si.value);
    }
    return s + carry;
}

// p(z), with the magnitude bound sum |c_k||z|^k. For |z| > 1 the
// polynomial is evaluated in reversed form at w = 1/z to avoid overflow;
// the returned values are then those of w^n p(z), which has the same
// backward error.
struct Evaluation {
    Complex value;
    Complex newton;  // p(z) / p'(z)
    double bound = 0.0;
};

class RootContext {
public:
    explicit RootContext(std::span<const Complex> coeffs)
        : forward_{ComplexVector(coeffs.begin(), coeffs.end()), ComplexVector(coeffs.size())},
          reversed_{ComplexVector(coeffs.rbegin(), coeffs.rend()), ComplexVector(coeffs.size())},
          forward_d_(exact_derivative(forward_.hi)), reversed_d_(exact_derivative(reversed_.hi)) {}

    [[nodiscard]] std::size_t degree() const noexcept { return forward_.hi.size() - 1; }
    [[nodiscard]] const ComplexVector& coeffs() const noexcept { return forward_.hi; }

    [[nodiscard]] Evaluation evaluate(Complex z) const {
        const double n = static_cast<double>(degree());
        if (std::abs(z) <= 1.0) {
            const Complex p = compensated_horner(forward_, z);
            const Complex dp = compensated_horner(forward_d_, z);
            return {p, p / dp, poly::magnitude_bound(forward_.hi, std::abs(z))};
        }
        const Complex w = 1.0 / z;
        const Complex q = compensated_horner(reversed_, w);
        const Complex dq = compensated_horner(reversed_d_, w);
        // p'/p = w (n - w q'/q)
        const Complex log_derivative = w * (n - w * dq / q);
        return {q, 1.0 / log_derivative, poly::magnitude_bound(reversed_.hi, std::abs(w))};
    }

    [[nodiscard]] double backward_error(Complex z) const {
        const Evaluation e = evaluate(z);
        return e.bound > 0.0 ? std::abs(e.value) / e.bound : 0.0;
    }

    // log (|p(z)| + slack * bound), in forward orientation: the largest
    // value a polynomial within relative coefficient distance slack can take.
    [[nodiscard]] double log_uncertain_value(Complex z, double slack) const {
        const Evaluation e = evaluate(z);
        double log_value = std::log(std::abs(e.value) + slack * e.bound);
        if (std::abs(z) > 1.0) log_value += static_cast<double>(degree()) * std::log(std::abs(z));
        return log_value;
    }

private:
    DoubleCoeffs forward_;
    DoubleCoeffs reversed_;
    DoubleCoeffs forward_d_;
    DoubleCoeffs reversed_d_;
};

// Starting points on circles given by the upper convex hull of
// (k, log|c_k|) (Newton polygon).
ComplexVector initial_guesses(const ComplexVector& c) {
    const std::size_t n = c.size() - 1;
    std::vector<std::size_t> hull;
    auto height = [&](std::size_t k) { return std::log(std::abs(c[k])); };
    for (std::size_t k = 0; k <= n; ++k) {
        if (std::abs(c[k]) == 0.0) continue;
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2];
            const std::size_t b = hull.back();
            const double cross = (static_cast<double>(b) - static_cast<double>(a)) * (height(k) - height(a)) -
                                 (height(b) - height(a)) * (static_cast<double>(k) - static_cast<double>(a));
            if (cross >= 0.0) hull.pop_back();
            else break;
        }
        hull.push_back(k);
    }
    ComplexVector z;
    z.reserve(n);
    constexpr double kTwist = 0.7;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const std::size_t lo = hull[h];
        const std::size_t hi = hull[h + 1];
        const std::size_t count = hi - lo;
        const double radius = std::exp((height(lo) - height(hi)) / static_cast<double>(count));
        for (std::size_t t = 0; t < count; ++t) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(count) +
                                 2.0 * std::numbers::pi * static_cast<double>(lo) / static_cast<double>(n) + kTwist;
            z.push_back(std::polar(radius, angle));
        }
    }
    return z;
}

std::size_t find_root_of(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

std::vector<RootEstimate> to_estimates(const ComplexVector& z) {
    std::vector<RootEstimate> out;
    for (const auto& v : z) out.push_back({v, 1});
    return out;
}

}  // namespace

std::size_t ZeroPairSet::total_multiplicity() const noexcept {
    std::size_t total = 0;
    for (const auto& p : pairs) total += static_cast<std::size_t>(p.multiplicity);
    return total;
}

AssociatedPolynomial associated_polynomial(const Autocorrelation& a, const ToleranceConfig& cfg) {
    const auto& c = a.coeffs();
    if (std::abs(c.back()) <= cfg.trim_rel * std::abs(c[a.support_length() - 1])) {
        throw InvalidSpectrum("degenerate leading coefficient; trim support first");
    }
    return AssociatedPolynomial{c};
}

std::vector<RootEstimate> find_roots(std::span<const Complex> coeffs, const ToleranceConfig& cfg) {
    if (coeffs.empty() || std::abs(coeffs.back()) == 0.0) {
        throw InvalidArgument("polynomial needs a nonzero leading coefficient");
    }
    std::vector<RootEstimate> result;
    // Exact zeros at the origin.
    std::size_t low = 0;
    while (low + 1 < coeffs.size() && std::abs(coeffs[low]) == 0.0) ++low;
    if (low > 0) result.push_back({Complex{}, static_cast<int>(low)});
    const std::span<const Complex> reduced = coeffs.subspan(low);
    const std::size_t n = reduced.size() - 1;
    if (n == 0) return result;
    if (n == 1) {
        result.push_back({-reduced[0] / reduced[1], 1});
        return result;
    }

    const RootContext ctx(reduced);
    ComplexVector z = initial_guesses(ctx.coeffs());
    // Relative coefficient uncertainty (the input is itself rounded) and the
    // level below which compensated evaluation is pure rounding.
    const double slack = 16.0 * static_cast<double>(n) * kEps;
    const double floor = slack * slack;

    std::vector<bool> settled(n, false);
    bool all_settled = false;
    for (int iter = 0; iter < cfg.max_iterations && !all_settled; ++iter) {
        all_settled = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (settled[i]) continue;
            const Evaluation e = ctx.evaluate(z[i]);
            if (std::abs(e.value) <= floor * e.bound) {
                settled[i] = true;
                continue;
            }
            Complex repulsion{};
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) repulsion += 1.0 / (z[i] - z[j]);
            }
            const Complex step = e.newton / (1.0 - e.newton * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                settled[i] = true;
                continue;
            }
            z[i] -= step;
            if (std::abs(step) <= kEps * std::abs(z[i])) settled[i] = true;
            else all_settled = false;
        }
    }
    if (!all_settled) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!settled[i] && ctx.backward_error(z[i]) > cfg.residual_tol) {
                throw RootFindingError("root iteration did not converge", to_estimates(z));
            }
        }
    }

    // A few more sweeps, each step kept only if it lowers the residual, bring
    // estimates frozen by the step-size test down to the rounding floor.
    for (int sweep = 0; sweep < 3; ++sweep) {
        for (std::size_t i = 0; i < n; ++i) {
            const Evaluation e = ctx.evaluate(z[i]);
            Complex repulsion{};
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i && z[i] != z[j]) repulsion += 1.0 / (z[i] - z[j]);
            }
            const Complex candidate = z[i] - e.newton / (1.0 - e.newton * repulsion);
            if (std::isfinite(candidate.real()) && std::isfinite(candidate.imag()) &&
                ctx.backward_error(candidate) < ctx.backward_error(z[i])) {
                z[i] = candidate;
            }
        }
    }

    // Inclusion radii: the disc of radius n |p(z_i)| / |c_n prod_{j!=i}(z_i - z_j)|
    // around z_i; connected components of overlapping discs hold as many
    // roots as they hold estimates.
    std::vector<double> radius(n, 0.0);
    const double log_lead = std::log(std::abs(ctx.coeffs().back()));
    for (std::size_t i = 0; i < n; ++i) {
        double log_r = std::log(static_cast<double>(n)) + ctx.log_uncertain_value(z[i], slack) - log_lead;
        bool coincident = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = std::abs(z[i] - z[j]);
            if (d == 0.0) coincident = true;
            else log_r -= std::log(d);
        }
        radius[i] = coincident ? std::numeric_limits<double>::infinity() : std::exp(log_r);
    }
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::abs(z[i] - z[j]);
            const double merge = cfg.cluster_radius * std::max(1.0, std::max(std::abs(z[i]), std::abs(z[j])));
            if (d <= radius[i] + radius[j] || d <= merge) parent[find_root_of(parent, i)] = find_root_of(parent, j);
        }
    }

    std::vector<std::vector<std::size_t>> clusters;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find_root_of(parent, i);
        if (slot[r] == n) {
            slot[r] = clusters.size();
            clusters.emplace_back();
        }
        clusters[slot[r]].push_back(i);
    }

    // Newton polish, keeping a step only when it lowers the residual.
    const auto polish = [&](Complex c) {
        double err = ctx.backward_error(c);
        for (int k = 0; k < 5 && err > 0.0; ++k) {
            const Complex candidate = c - ctx.evaluate(c).newton;
            const double cand_err = ctx.backward_error(candidate);
            if (!(cand_err < err)) break;
            c = candidate;
            err = cand_err;
        }
        return c;
    };
    const auto accept = [&](Complex c, std::size_t m) {
        if (ctx.backward_error(c) > cfg.residual_tol) {
            auto partial = result;
            for (const auto& v : z) partial.push_back({v, 1});
            throw RootFindingError("root residual above tolerance", std::move(partial));
        }
        result.push_back({c, static_cast<int>(m)});
    };

    // Newton on p^(m-1), which has a simple root at an m-fold root of p.
    const auto refine = [&](Complex c, std::size_t m) -> std::optional<Complex> {
        const DoubleCoeffs d0 = exact_derivative(ctx.coeffs(), m - 1);
        const DoubleCoeffs d1 = exact_derivative(ctx.coeffs(), m);
        for (int k = 0; k < 50; ++k) {
            const Complex den = compensated_horner(d1, c);
            if (std::abs(den) == 0.0) break;
            const Complex step = compensated_horner(d0, c) / den;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return std::nullopt;
            c -= step;
            if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(c))) break;
        }
        return c;
    };

    // Refined centre of a cluster, or nothing when the estimates are too far
    // apart to come from a single root of that multiplicity.
    const auto multiple_root = [&](const std::vector<std::size_t>& members) -> std::optional<Complex> {
        const std::size_t m = members.size();
        Complex centre{};
        for (std::size_t i : members) centre += z[i];
        centre /= static_cast<double>(m);

        const ComplexVector d1 = poly::derivative(ctx.coeffs(), m);
        double factorial = 1.0;
        for (std::size_t k = 2; k <= m; ++k) factorial *= static_cast<double>(k);
        const double allowance = std::pow(kNoiseFactor, 1.0 / static_cast<double>(m));

        // Coefficient rounding of relative size e splits an m-fold root into
        // roots spread over a radius of about (e B m! / |p^(m)|)^(1/m), B the
        // magnitude bound; residuals left at the estimates can only add to e.
        const auto noise_spread = [&](Complex at) {
            double noise = kEps * poly::magnitude_bound(ctx.coeffs(), std::abs(at));
            for (std::size_t i : members) {
                noise = std::max(noise, ctx.backward_error(z[i]) * poly::magnitude_bound(ctx.coeffs(), std::abs(z[i])));
            }
            return std::pow(noise * factorial / std::abs(poly::evaluate(d1, at)), 1.0 / static_cast<double>(m));
        };

        // The estimates may share a bias, so the refined centre may leave
        // their hull, but not the noise radius.
        double extent = 0.0;
        for (std::size_t i : members) extent = std::max(extent, std::abs(z[i] - centre));
        const double reach = std::max(extent, allowance * noise_spread(centre));
        if (const auto c = refine(centre, m); c && std::abs(*c - centre) <= reach) centre = *c;

        const double spread = noise_spread(centre);
        double scatter = 0.0;
        for (std::size_t i : members) scatter = std::max(scatter, std::abs(z[i] - centre));
        const double merge = cfg.cluster_radius * std::max(1.0, std::abs(centre));
        if (scatter > allowance * spread && scatter > merge) {
            return std::nullopt;
        }
        return centre;
    };

    // Clusters that fail the check are cut at the longest edge of their
    // minimum spanning tree and both halves are tried again.
    while (!clusters.empty()) {
        std::vector<std::size_t> members = std::move(clusters.back());
        clusters.pop_back();
        if (members.size() == 1) {
                accept(polish(z[members[0]]), 1);
            continue;
        }
        if (const auto centre = multiple_root(members)) {
            accept(*centre, members.size());
            continue;
        }
        const std::size_t m = members.size();
        std::vector<bool> in_tree(m, false);
        std::vector<double> link(m, std::numeric_limits<double>::infinity());
        std::vector<std::size_t> from(m, 0);
        std::size_t cut = 0;
        double cut_len = -1.0;
        link[0] = 0.0;
        for (std::size_t step = 0; step < m; ++step) {
            std::size_t u = m;
            for (std::size_t v = 0; v < m; ++v) {
                if (!in_tree[v] && (u == m || link[v] < link[u])) u = v;
            }
            in_tree[u] = true;
            if (step > 0 && link[u] > cut_len) {
                cut_len = link[u];
                cut = u;
            }
            for (std::size_t v = 0; v < m; ++v) {
                const double d = std::abs(z[members[u]] - z[members[v]]);
                if (!in_tree[v] && d < link[v]) {
                    link[v] = d;
                    from[v] = u;
                }
            }
        }
        // Removing edge (from[cut], cut) separates the subtree below `cut`;
        // vertex 0 is the root.
        std::vector<bool> below(m, false);
        for (std::size_t v = 0; v < m; ++v) {
            std::size_t w = v;
            while (w != 0 && w != cut) w = from[w];
            below[v] = w == cut;
        }
        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (std::size_t v = 0; v < m; ++v) (below[v] ? left : right).push_back(members[v]);
        clusters.push_back(std::move(left));
        clusters.push_back(std::move(right));
    }

    return result;
}

std::vector<RootEstimate> find_roots(const AssociatedPolynomial& p, const ToleranceConfig& cfg) {
    if (p.coeffs.size() <= 1) return {};
    return find_roots(std::span<const Complex>(p.coeffs), cfg);
}

ZeroPairSet pair_roots(std::span<const RootEstimate> roots, Complex leading, const ToleranceConfig& cfg) {
    static const char* const kInvalid = "input is not a valid autocorrelation spectrum";
    int total = 0;
    for (const auto& r : roots) {
        if (r.multiplicity <= 0) throw InvalidArgument("root multiplicity must be positive");
        if (std::abs(r.value) == 0.0) throw InvalidSpectrum(kInvalid);
        total += r.multiplicity;
    }
    if (total % 2 != 0) throw InvalidSpectrum(kInvalid);

    ZeroPairSet out;
    out.leading = leading;

    struct Entry {
        Complex value;
        int remaining;
    };
    std::vector<Entry> on_circle;
    std::vector<Entry> outside;
    std::vector<Entry> inside;
    for (const auto& r : roots) {
        const double modulus = std::abs(r.value);
        const double deviation = std::abs(modulus - 1.0);
        if (deviation <= cfg.circle_tol) {
            if (deviation > 4.0 * kEps) ++out.snapped;
            on_circle.push_back({r.value / modulus, r.multiplicity});
        } else if (modulus > 1.0) {
            outside.push_back({r.value, r.multiplicity});
        } else {
            inside.push_back({r.value, r.multiplicity});
        }
    }

    // A double root on the circle may come back as two nearby simple roots.
    for (std::size_t i = 0; i < on_circle.size(); ++i) {
        if (on_circle[i].remaining % 2 == 0) continue;
        std::size_t best = on_circle.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < on_circle.size(); ++j) {
            if (j == i || on_circle[j].remaining % 2 == 0) continue;
            const double d = std::abs(on_circle[i].value - on_circle[j].value);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best == on_circle.size() || best_d > cfg.pair_tol) throw InvalidSpectrum(kInvalid);
        const double wi = on_circle[i].remaining;
        const double wj = on_circle[best].remaining;
        const Complex merged = (wi * on_circle[i].value + wj * on_circle[best].value) / (wi + wj);
        on_circle[i] = {merged / std::abs(merged), on_circle[i].remaining + on_circle[best].remaining};
        on_circle.erase(on_circle.begin() + static_cast<std::ptrdiff_t>(best));
        i = static_cast<std::size_t>(-1);  // restart scan
    }
    for (const auto& e : on_circle) {
        out.pairs.push_back({e.value, e.value, true, e.remaining / 2});
    }

    for (auto& o : outside) {
        while (o.remaining > 0) {
            const Complex target = 1.0 / std::conj(o.value);
            Entry* best = nullptr;
            double best_d = std::numeric_limits<double>::infinity();
            for (auto& in : inside) {
                if (in.remaining == 0) continue;
                const double d = std::abs(in.value - target);
                if (d < best_d) {
                    best_d = d;
                    best = &in;
                }
            }
            if (best == nullptr || best_d > cfg.pair_tol * std::max(1.0, std::abs(target))) {
                throw InvalidSpectrum(kInvalid);
            }
            const int k = std::min(o.remaining, best->remaining);
            const Complex gamma = 0.5 * (o.value + 1.0 / std::conj(best->value));
            out.pairs.push_back({gamma, 1.0 / std::conj(gamma), false, k});
            o.remaining -= k;
            best->remaining -= k;
        }
    }
    for (const auto& in : inside) {
        if (in.remaining != 0) throw InvalidSpectrum(kInvalid);
    }

    // Repeated roots listed one by one end up as coincident pairs.
    std::vector<ZeroPair> merged;
    for (const auto& p : out.pairs) {
        auto same = std::find_if(merged.begin(), merged.end(), [&](const ZeroPair& q) {
            return q.on_circle == p.on_circle &&
                   std::abs(q.gamma - p.gamma) <= cfg.cluster_radius * std::max(1.0, std::abs(p.gamma));
        });
        if (same == merged.end()) {
            merged.push_back(p);
            continue;
        }
        const double wq = same->multiplicity;
        const double wp = p.multiplicity;
        Complex gamma = (wq * same->gamma + wp * p.gamma) / (wq + wp);
        if (p.on_circle) gamma /= std::abs(gamma);
        *same = {gamma, p.on_circle ? gamma : 1.0 / std::conj(gamma), p.on_circle, same->multiplicity + p.multiplicity};
    }
    out.pairs = std::move(merged);
    return out;
}

ZeroPairSet factorize(const Autocorrelation& a, const ToleranceConfig& cfg) {
    const AssociatedPolynomial p = associated_polynomial(a, cfg);
    const auto roots = find_roots(p, cfg);
    return pair_roots(roots, p.leading(), cfg);
}

}  // namespace phase_toolkit
