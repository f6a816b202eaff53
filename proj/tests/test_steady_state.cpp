#include <cmath>
#include <random>

#include <doctest.h>

#include "madqueue/error.hpp"
#include "madqueue/extremal.hpp"
#include "madqueue/steady_state.hpp"
#include "madqueue/transient.hpp"
#include "support.hpp"

using namespace madqueue;

TEST_CASE("Cramer root solves the Lundberg equation") {
    const DiscreteDistribution x({-2.0, 0.0, 3.0}, {0.5, 0.3, 0.2});
    const double theta = cramer_root(x);
    CHECK(theta > 0.0);
    CHECK(std::abs(x.mgf({theta, 0.0}).real() - 1.0) < 1e-12);
    CHECK(std::isinf(cramer_root(DiscreteDistribution({-2.0, 0.0}, {0.5, 0.5}))));
    try {
        cramer_root(DiscreteDistribution({-1.0, 2.0}, {0.5, 0.5}));
        FAIL("expected NoPositiveDrift");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoPositiveDrift);
    }
}

TEST_CASE("lattice detection") {
    const std::vector<double> pts{-1.5, 0.0, 2.5};
    const auto lat = detect_lattice(pts);
    REQUIRE(lat);
    CHECK(lat->span == doctest::Approx(0.5));
    CHECK(lat->index == std::vector<std::int64_t>{-3, 0, 5});
    const std::vector<double> irr{-1.0, std::sqrt(2.0)};
    CHECK(!detect_lattice(irr));
}

TEST_CASE("walk cumulants match long Spitzer sums") {
    // strong negative drift so a few hundred terms settle every digit
    const DiscreteDistribution x({-3.0, -1.0, 2.0}, {0.4, 0.4, 0.2});
    for (int m = 1; m <= 3; ++m) {
        const double series = spitzer_sum(x, 400, m);
        CHECK(max_cumulant(x, m).value == doctest::Approx(series).epsilon(1e-9));
    }
}

TEST_CASE("lattice and line paths agree") {
    const DiscreteDistribution x({-2.5, -0.5, 1.5}, {0.3, 0.5, 0.2});
    for (int m = 1; m <= 3; ++m) {
        ContourConfig lat, line;
        lat.method = ContourMethod::Lattice;
        line.method = ContourMethod::Line;
        const auto a = max_cumulant(x, m, lat);
        const auto b = max_cumulant(x, m, line);
        CHECK(a.method_used == ContourMethod::Lattice);
        CHECK(b.method_used == ContourMethod::Line);
        CHECK(std::abs(a.value - b.value) < 1e-8);
    }
}

TEST_CASE("non-lattice laws take the line path") {
    const DiscreteDistribution x({-std::sqrt(2.0), 0.0, 1.0}, {0.5, 0.3, 0.2});
    const auto r = max_cumulant(x, 1);
    CHECK(r.method_used == ContourMethod::Line);
    CHECK(r.value == doctest::Approx(spitzer_sum(x, 300)).epsilon(1e-8));
}

TEST_CASE("offset fraction does not move the result") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 10; ++i) {
        const auto s = testing::random_drift_set(rng);
        double prev = NAN;
        for (double f : {0.25, 0.5, 0.75}) {
            ContourConfig cfg;
            cfg.offset_fraction = f;
            const double v = cumulant_upper(s, 1, cfg).value;
            if (!std::isnan(prev)) CHECK(std::abs(v - prev) < 1e-7);
            prev = v;
        }
    }
}

TEST_CASE("upper bound dominates the lower bound and the members") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10; ++i) {
        auto s = testing::random_drift_set(rng);
        const auto member = testing::random_member(s, rng);
        s.beta = member.prob_at_or_above(s.mu);
        const double up = cumulant_upper(s, 1).value;
        const double low = cumulant_lower(s, 1).value;
        const double mid = max_cumulant(member, 1).value;
        CHECK(low <= mid + 1e-8);
        CHECK(mid <= up + 1e-8);
    }
}

TEST_CASE("imaginary residue is small when requested") {
    ContourConfig cfg;
    cfg.check_residue = true;
    const auto r = cumulant_upper(AmbiguitySet{-3.0, 2.0, -1.0, 1.0, std::nullopt}, 2, cfg);
    CHECK(r.imag_residue < 1e-8);
}

TEST_CASE("steady-state queue bounds") {
    const QueueSpec spec{{0.0, 10.0, 1.0, 1.0, std::nullopt}, {0.0, 10.0, 0.5, 0.1, std::nullopt}};
    CHECK(gg1_cumulant_upper(spec, 1).value == doctest::Approx(2.0313621).epsilon(1e-6));
    const QueueSpec unstable{{0.0, 10.0, 1.0, 1.0, std::nullopt}, {0.0, 10.0, 1.0, 0.1, std::nullopt}};
    try {
        gg1_cumulant_upper(unstable, 1);
        FAIL("expected Unstable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Unstable);
    }
}

TEST_CASE("config validation") {
    ContourConfig cfg;
    cfg.offset_fraction = 1.5;
    CHECK_THROWS_AS(validate(cfg), Error);
    cfg.offset_fraction = 0.5;
    cfg.tail_tol = 0.0;
    CHECK_THROWS_AS(validate(cfg), Error);
    CHECK_THROWS_AS(max_cumulant(DiscreteDistribution({-1.0, 1.0}, {0.6, 0.4}), 0), Error);
}
