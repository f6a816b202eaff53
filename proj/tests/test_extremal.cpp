#include <cmath>
#include <random>

#include <doctest.h>

#include "madqueue/distribution.hpp"
#include "madqueue/error.hpp"
#include "madqueue/extremal.hpp"
#include "support.hpp"

using namespace madqueue;

namespace {

double expect(const DiscreteDistribution& law, auto f) {
    double s = 0.0;
    for (std::size_t i = 0; i < law.size(); ++i) s += law.probs()[i] * f(law.points()[i]);
    return s;
}

}  // namespace

TEST_CASE("distribution basics") {
    const DiscreteDistribution x({-1.0, 2.0}, {0.75, 0.25});
    CHECK(x.mean() == doctest::Approx(-0.25));
    CHECK(x.variance() == doctest::Approx(0.75 * 0.5625 + 0.25 * 5.0625));
    CHECK(x.mad() == doctest::Approx(2.0 * 0.25 * 2.25));
    CHECK(x.prob_at_or_above(2.0) == doctest::Approx(0.25));
    CHECK(std::abs(x.mgf({0.0, 0.0}) - 1.0) < 1e-15);
    CHECK_THROWS_AS(DiscreteDistribution({1.0, 0.0}, {0.5, 0.5}), Error);
    CHECK_THROWS_AS(DiscreteDistribution({0.0, 1.0}, {0.5, 0.6}), Error);
    const auto merged = DiscreteDistribution::from_atoms({1.0, 0.0, 1.0}, {0.25, 0.5, 0.25});
    CHECK(merged.size() == 2);
    CHECK(merged.probs()[1] == doctest::Approx(0.5));
}

TEST_CASE("difference of laws") {
    const DiscreteDistribution v({0.0, 2.0}, {0.5, 0.5});
    const DiscreteDistribution u({1.0}, {1.0});
    const auto x = difference(v, u);
    CHECK(x.size() == 2);
    CHECK(x.mean() == doctest::Approx(0.0));
    CHECK(x.min_point() == doctest::Approx(-1.0));
}

TEST_CASE("extremal laws sit in the set") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto s = testing::random_set(rng);
        const auto three = worst_case_three_point(s);
        CHECK(three.mean() == doctest::Approx(s.mu));
        CHECK(three.mad() == doctest::Approx(s.d));
        CHECK(three.variance() == doctest::Approx(s.d * (s.b - s.a) / 2.0));
        const auto [lo, hi] = s.beta_bracket();
        s.beta = lo + (hi - lo) * 0.37;
        const auto two = best_case_two_point(s);
        CHECK(two.mean() == doctest::Approx(s.mu));
        CHECK(two.mad() == doctest::Approx(s.d));
        CHECK(two.prob_at_or_above(s.mu) == doctest::Approx(*s.beta));
        CHECK(two.min_point() >= s.a - 1e-12);
        CHECK(two.max_point() <= s.b + 1e-12);
    }
}

TEST_CASE("extremal laws bracket convex expectations of every member") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        auto s = testing::random_set(rng);
        const auto member = testing::random_member(s, rng);
        REQUIRE(member.mean() == doctest::Approx(s.mu));
        REQUIRE(member.mad() == doctest::Approx(s.d));
        s.beta = member.prob_at_or_above(s.mu);
        const auto up = worst_case_three_point(s);
        const auto low = best_case_two_point(s);
        for (double t : {s.a, s.mu, 0.5 * (s.mu + s.b), s.b}) {
            auto hinge = [t](double x) { return std::max(x - t, 0.0); };
            const double m = expect(member, hinge);
            CHECK(m <= expect(up, hinge) + 1e-12);
            CHECK(m >= expect(low, hinge) - 1e-12);
        }
        auto sq = [](double x) { return x * x; };
        CHECK(expect(member, sq) <= expect(up, sq) + 1e-9);
        CHECK(expect(member, sq) >= expect(low, sq) - 1e-9);
    }
}

TEST_CASE("degenerate sets give a point mass") {
    const AmbiguitySet s{0.0, 1.0, 0.3, 0.0, 0.5};
    CHECK(worst_case_three_point(s).is_point_mass());
    CHECK(best_case_two_point(s).is_point_mass());
    const AmbiguitySet edge{0.0, 1.0, 0.0, 0.0, std::nullopt};
    CHECK(worst_case_three_point(edge).is_point_mass());
}

TEST_CASE("lower bound needs beta") {
    const AmbiguitySet s{0.0, 1.0, 0.5, 0.2, std::nullopt};
    CHECK_THROWS_AS(best_case_two_point(s), Error);
}

TEST_CASE("heavy-tail family keeps mean and variance") {
    for (double xi : {2.0, 8.0, 32.0}) {
        const auto law = heavy_tail_family(-1.0, 1.0, -2.0, xi);
        CHECK(law.mean() == doctest::Approx(-1.0));
        CHECK(law.variance() == doctest::Approx(1.0));
        CHECK(law.max_point() == doctest::Approx(-2.0 + xi));
    }
    CHECK_THROWS_AS(heavy_tail_family(-1.0, 1.0, -2.0, 1.0), Error);
}
