#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "madqueue/ambiguity.hpp"
#include "madqueue/error.hpp"
#include "madqueue/simulate.hpp"

using namespace madqueue;

namespace {

ErrorCode code_of(const AmbiguitySet& s) {
    try {
        validate(s);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("mad cap is the two-point MAD at the ends") {
    const AmbiguitySet s{0.0, 10.0, 1.0, 0.0, std::nullopt};
    CHECK(s.mad_cap() == doctest::Approx(2.0 * 9.0 * 1.0 / 10.0));
}

TEST_CASE("validation codes") {
    CHECK(code_of({1.0, 0.0, 0.5, 0.1, std::nullopt}) == ErrorCode::BadRange);
    CHECK(code_of({0.0, 1.0, 2.0, 0.1, std::nullopt}) == ErrorCode::BadRange);
    CHECK(code_of({0.0, 1.0, 0.5, 0.6, std::nullopt}) == ErrorCode::InfeasibleMad);
    CHECK(code_of({0.0, 1.0, 0.5, -0.1, std::nullopt}) == ErrorCode::InfeasibleMad);
    CHECK(code_of({0.0, 1.0, 0.5, 0.2, 1.5}) == ErrorCode::InfeasibleBeta);
    // bracket for (0,1,0.5,0.2) is [0.2, 0.8]
    CHECK(code_of({0.0, 1.0, 0.5, 0.2, 0.1}) == ErrorCode::InfeasibleBeta);
    CHECK_NOTHROW(validate(AmbiguitySet{0.0, 1.0, 0.5, 0.2, 0.2}));
    CHECK_NOTHROW(validate(AmbiguitySet{0.0, 1.0, 0.5, 0.5, std::nullopt}));
    CHECK(code_of({0.0, NAN, 0.5, 0.2, std::nullopt}) == ErrorCode::BadParameter);
}

TEST_CASE("queue spec needs nonnegative supports") {
    const QueueSpec bad{{-1.0, 10.0, 1.0, 0.5, std::nullopt}, {0.0, 10.0, 0.5, 0.1, std::nullopt}};
    CHECK_THROWS_AS(validate(bad), Error);
    const QueueSpec ok{{0.0, 10.0, 1.0, 1.0, std::nullopt}, {0.0, 10.0, 0.5, 0.1, std::nullopt}};
    CHECK(ok.rho() == doctest::Approx(0.5));
}

TEST_CASE("beta bracket") {
    const AmbiguitySet s{0.0, 10.0, 1.0, 1.0, std::nullopt};
    const auto [lo, hi] = s.beta_bracket();
    CHECK(lo == doctest::Approx(1.0 / 18.0));
    CHECK(hi == doctest::Approx(0.5));
}

TEST_CASE("family MADs") {
    CHECK(mad_of_family(family::Uniform{0.0, 4.0}) == doctest::Approx(1.0));
    CHECK(mad_of_family(family::Normal{0.0, 2.0}) == doctest::Approx(2.0 * std::sqrt(2.0 / std::numbers::pi)));
    // exponential: MAD = 2 / (e lambda)
    CHECK(mad_of_family(family::Gamma{1.0, 2.0}) == doctest::Approx(1.0 / std::numbers::e));
    CHECK(mean_of_family(family::Gamma{3.0, 2.0}) == doctest::Approx(1.5));
    CHECK(stddev_of_family(family::Uniform{0.0, 1.0}) == doctest::Approx(std::sqrt(1.0 / 12.0)));
}

TEST_CASE("M/M/1 increment MAD agrees with sampling") {
    const double rho = 0.6;
    auto rng = replication_rng(11, 0);
    std::exponential_distribution<double> u(1.0), v(1.0 / rho);
    const int n = 2'000'000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += std::abs(v(rng) - u(rng) - (rho - 1.0));
    CHECK(acc / n == doctest::Approx(mad_of_family(family::MM1Increment{rho})).epsilon(3e-3));
}

TEST_CASE("range rule and variance bracket") {
    const auto [a, b] = range_from_rule(-0.5, 0.8, 2.0);
    CHECK(a == doctest::Approx(-2.1));
    CHECK(b == doctest::Approx(1.1));
    CHECK_THROWS_AS(range_from_rule(0.0, 1.0, 0.5), Error);

    const auto [dmin, dmax] = variance_bracket_to_mad(0.0, 1.0, -2.0, 3.0);
    CHECK(dmin == doctest::Approx(0.4));
    CHECK(dmax == doctest::Approx(1.0));
    try {
        variance_bracket_to_mad(0.0, 3.0, -1.0, 1.0);
        FAIL("expected InfeasibleVariance");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InfeasibleVariance);
    }
}

TEST_CASE("error codes map to exit codes") {
    CHECK(exit_code(ErrorCode::BadRange) == 2);
    CHECK(exit_code(ErrorCode::InfeasibleMad) == 2);
    CHECK(exit_code(ErrorCode::QuadratureFailure) == 3);
    CHECK(exit_code(ErrorCode::IoError) == 4);
    CHECK(to_string(ErrorCode::InfeasibleMad) == "InfeasibleMad");
}
