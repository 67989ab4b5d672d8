#include <doctest.h>

#include <numbers>

#include "phase_toolkit/counterexample.hpp"
#include "phase_toolkit/criteria.hpp"
#include "phase_toolkit/enumeration.hpp"
#include "test_support.hpp"

using namespace phase_toolkit;
using test_support::Rng;

namespace {

constexpr double pi = std::numbers::pi;
const Complex I(0.0, 1.0);

bool contains_class(const SolutionSet& set, const Signal& x) {
    for (const auto& cls : set.classes) {
        if (class_distance(cls.signal(), x, set.modulo_reflection) <= 1e-6 * x.max_magnitude()) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("synthesize") {
    const ComplexVector half{-0.5};
    CHECK(test_support::max_abs_diff(synthesize(half, 2.0).values(), {1.0, 2.0}) <= 1e-15);
    const ComplexVector two{-2.0};
    CHECK(test_support::max_abs_diff(synthesize(two, 2.0).values(), {2.0, 1.0}) <= 1e-15);
    const ComplexVector one{-1.0};
    CHECK(test_support::max_abs_diff(synthesize(one, 1.0).values(), {1.0, 1.0}) <= 1e-15);

    const Signal s = synthesize(two, 2.0, pi / 2, 4);
    CHECK(s.offset() == 4);
    CHECK(test_support::max_abs_diff(s.values(), {2.0 * I, I}) <= 1e-15);

    const ComplexVector with_zero{0.0, 1.0};
    CHECK_THROWS_AS((void)synthesize(with_zero, 1.0), InvalidArgument);
}

TEST_CASE("synthesized coefficients follow the Vieta relation") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexVector b = rng.zero_set(static_cast<std::size_t>(rng.integer(1, 8)));
        const Complex lead = std::polar(rng.uniform(0.5, 3.0), rng.uniform(-pi, pi));
        const double alpha = rng.uniform(-pi, pi);
        const Signal x = synthesize(b, lead, alpha);
        double prod = 1.0;
        for (const auto& z : b) prod *= std::abs(z);
        const Complex c = std::polar(std::sqrt(std::abs(lead) / prod), alpha);
        const std::size_t n = b.size() + 1;
        for (std::size_t ell = 0; ell < n; ++ell) {
            const Complex want = (ell % 2 ? -1.0 : 1.0) * c * test_support::subset_sum_oracle(b, static_cast<int>(ell));
            CHECK(std::abs(x[n - 1 - ell] - want) <= 1e-9 * std::max(1.0, std::abs(want)));
        }
        // The leading autocorrelation coefficient has the requested modulus.
        CHECK(std::abs(std::abs(autocorrelation(x).at(static_cast<long>(n) - 1)) - std::abs(lead)) <= 1e-9 * std::abs(lead));
    }
}

TEST_CASE("enumeration of small spectra") {
    const Signal x({1.0, 2.0});
    const ZeroPairSet pairs = factorize(autocorrelation(x));
    const SolutionSet mod = enumerate_solutions(pairs, true);
    CHECK(mod.classes.size() == 1);
    CHECK(mod.total_enumerated == 2);
    CHECK(mod.collisions == 0);
    const SolutionSet plain = enumerate_solutions(pairs, false);
    CHECK(plain.classes.size() == 2);

    // All zeros on the circle: the choice is forced.
    const SolutionSet forced = recover(autocorrelation(Signal({1.0, I, -1.0})), {});
    CHECK(forced.classes.size() == 1);

    const SolutionSet ones = recover(Autocorrelation::from_coefficients({1.0, 2.0, 1.0}), {});
    REQUIRE(ones.classes.size() == 1);
    CHECK(test_support::max_abs_diff(ones.classes[0].canonical.values, {1.0, 1.0}) <= 1e-7);

    const SolutionSet single = recover(Autocorrelation::from_coefficients({1.0}), {});
    REQUIRE(single.classes.size() == 1);
    CHECK(test_support::max_abs_diff(single.classes[0].canonical.values, {1.0}) <= 1e-15);
}

TEST_CASE("enumerated solutions share the intensity and include the original") {
    Rng rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(2, 7));
        const Signal x(rng.signal_values(n));
        const Autocorrelation a = autocorrelation(x);
        const double a0 = a.at(0).real();
        for (bool mod : {false, true}) {
            const SolutionSet set = enumerate_solutions(factorize(a), mod);
            CHECK(set.classes.size() <= (mod ? (std::size_t{1} << (n - 2)) : (std::size_t{1} << (n - 1))));
            CHECK(set.collisions == 0);
            CHECK(contains_class(set, x));
            for (const auto& cls : set.classes) {
                const Signal y = cls.signal();
                for (std::size_t k = 0; k < 128; ++k) {
                    const double w = test_support::probe(k, 128);
                    CHECK(std::abs(fourier_intensity(y, w) - a.evaluate(w)) <= 1e-7 * a0);
                }
            }
        }
    }
}

TEST_CASE("fully reflected selections give the same class modulo reflection") {
    Rng rng(33);
    for (int trial = 0; trial < 30; ++trial) {
        const ComplexVector b = rng.zero_set(static_cast<std::size_t>(rng.integer(1, 6)));
        ComplexVector r;
        for (const auto& z : b) r.push_back(1.0 / std::conj(z));
        const Signal x = synthesize(b, 1.0);
        const Signal y = synthesize(r, 1.0);
        CHECK(canonical_distance(canonicalize(x, true), canonicalize(y, true)) <= 1e-9 * x.max_magnitude());
    }
}

TEST_CASE("repeated pairs enumerate as multisets") {
    // (z - 2i)^3 (z + 0.5): pair 2i with multiplicity 3 gives 4 choices, pair -2 gives 2.
    ComplexVector b{2.0 * I, 2.0 * I, 2.0 * I, -0.5};
    const Signal x = synthesize(b, 8.0);
    const ZeroPairSet pairs = factorize(autocorrelation(x));
    REQUIRE(pairs.pairs.size() == 2);
    const SolutionSet set = enumerate_solutions(pairs, false);
    CHECK(set.total_enumerated == 8);
    CHECK(set.classes.size() == 8);
    CHECK(enumerate_solutions(pairs, true).classes.size() == 4);
}

TEST_CASE("select_zeros validates counts") {
    ZeroPairSet set;
    set.leading = 1.0;
    set.pairs.push_back({2.0, 0.5, false, 2});
    set.pairs.push_back({-1.0, -1.0, true, 1});
    const std::vector<int> ok{1, 0};
    const ZeroSelection sel = select_zeros(set, ok);
    CHECK(test_support::multiset_distance(sel.betas, {2.0, 0.5, -1.0}) == 0.0);
    const std::vector<int> too_many{3, 0};
    CHECK_THROWS_AS((void)select_zeros(set, too_many), InvalidArgument);
    const std::vector<int> on_circle{0, 1};
    CHECK_THROWS_AS((void)select_zeros(set, on_circle), InvalidArgument);
}

TEST_CASE("constraint filtering") {
    const Signal x({1.0, 2.0});
    const SolutionSet set = enumerate_solutions(factorize(autocorrelation(x)), false);

    const std::vector<Constraint> mag{Constraint::magnitude(1, 2.0)};
    const SolutionSet kept = filter_by_constraints(set, mag);
    REQUIRE(kept.classes.size() == 1);
    CHECK(test_support::max_abs_diff(kept.classes[0].canonical.values, {1.0, 2.0}) <= 1e-7);

    CHECK(filter_by_constraints(set, {}).classes.size() == set.classes.size());

    const std::vector<Constraint> inconsistent{Constraint::magnitude(1, 7.0)};
    CHECK(filter_by_constraints(set, inconsistent).classes.empty());

    const std::vector<Constraint> outside{Constraint::magnitude(2, 1.0)};
    CHECK_THROWS_AS((void)filter_by_constraints(set, outside), InvalidArgument);

    const std::vector<Constraint> rec{Constraint::magnitude(1, 2.0)};
    const SolutionSet r = recover(autocorrelation(x), rec);
    REQUIRE(r.classes.size() == 1);
    CHECK(test_support::max_abs_diff(r.classes[0].canonical.values, {1.0, 2.0}) <= 1e-7);
}

TEST_CASE("phase constraints fit the global rotation") {
    const Signal x = rotate(Signal({1.0, 2.0 * I, Complex(-1.0, 1.0)}), 0.8);
    std::vector<Constraint> c;
    for (std::size_t i = 0; i < x.size(); ++i) c.push_back(Constraint::phase(i, std::arg(x[i]) + 0.3));
    CHECK(satisfies_constraints(x.values(), c));
    c[1].value += 0.01;
    CHECK(!satisfies_constraints(x.values(), c));
    // A zero sample carries no phase information.
    const ComplexVector with_zero{1.0, 0.0, 1.0};
    const std::vector<Constraint> any{Constraint::phase(0, 0.0), Constraint::phase(1, 2.0)};
    CHECK(satisfies_constraints(with_zero, any));
}

TEST_CASE("all-real counterexample classes survive a zero-phase filter") {
    const double zeros[] = {-2.0, -3.0};
    const auto pairs = phase_counterexample(zeros);
    REQUIRE(pairs.size() == 1);
    std::vector<Constraint> real_axis;
    for (std::size_t i = 0; i < 3; ++i) real_axis.push_back(Constraint::phase(i, 0.0));
    const SolutionSet set = recover(autocorrelation(pairs[0].x), real_axis, {}, true);
    CHECK(set.classes.size() == 2);
    CHECK(contains_class(set, pairs[0].x));
    CHECK(contains_class(set, pairs[0].y));
}

TEST_CASE("random magnitude constraint almost surely isolates one class") {
    Rng rng(34);
    int single = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        const Signal x(rng.signal_values(5));
        const std::vector<Constraint> c{Constraint::magnitude(4, std::abs(x[4]))};
        const SolutionSet set = recover(autocorrelation(x), c);
        if (set.classes.size() == 1) ++single;
        CHECK(contains_class(set, x));
    }
    CHECK(single == trials);
}
