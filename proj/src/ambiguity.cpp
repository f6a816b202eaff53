#include "madqueue/ambiguity.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "madqueue/error.hpp"

namespace madqueue {

namespace {

constexpr double kRelTol = 1e-12;

double slack(double scale) { return kRelTol * std::max(1.0, std::abs(scale)); }

}  // namespace

double AmbiguitySet::mad_cap() const {
    if (!(b > a)) return 0.0;
    return 2.0 * (b - mu) * (mu - a) / (b - a);
}

std::pair<double, double> AmbiguitySet::beta_bracket() const {
    return {d / (2.0 * (b - mu)), 1.0 - d / (2.0 * (mu - a))};
}

const AmbiguitySet& validate(const AmbiguitySet& set) {
    const auto& [a, b, mu, d, beta] = set;
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(mu) || !std::isfinite(d))
        throw Error(ErrorCode::BadParameter, "ambiguity set fields must be finite");
    const double width = std::max(std::abs(a), std::abs(b));
    if (!(a < b) || mu < a - slack(width) || mu > b + slack(width))
        throw Error(ErrorCode::BadRange,
                    fmt::format("need a <= mu <= b with a < b, got a={} mu={} b={}", a, mu, b));
    const double cap = set.mad_cap();
    if (d < -slack(cap) || d > cap + slack(cap))
        throw Error(ErrorCode::InfeasibleMad,
                    fmt::format("MAD d={} outside [0, {}] for a={} mu={} b={}", d, cap, a, mu, b));
    if (beta) {
        if (!(*beta >= 0.0 && *beta <= 1.0))
            throw Error(ErrorCode::InfeasibleBeta, fmt::format("beta={} outside [0, 1]", *beta));
        // d = 0 is a point mass at mu; every beta describes it.
        if (d > slack(cap)) {
            const auto [lo, hi] = set.beta_bracket();
            if (*beta < lo - kRelTol || *beta > hi + kRelTol)
                throw Error(ErrorCode::InfeasibleBeta,
                            fmt::format("beta={} outside [{}, {}]", *beta, lo, hi));
        }
    }
    return set;
}

const QueueSpec& validate(const QueueSpec& spec) {
    validate(spec.arrival);
    validate(spec.service);
    if (spec.arrival.a < 0.0 || spec.service.a < 0.0)
        throw Error(ErrorCode::BadRange, "interarrival and service supports must be nonnegative");
    if (!(spec.arrival.mu > 0.0))
        throw Error(ErrorCode::BadParameter, "mean interarrival time must be positive");
    return spec;
}

double mad_of_family(const Family& f) {
    using namespace family;
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Uniform>) {
                if (!(p.b > p.a)) throw Error(ErrorCode::BadParameter, "uniform needs b > a");
                return (p.b - p.a) / 4.0;
            } else if constexpr (std::is_same_v<T, Normal>) {
                if (!(p.sigma > 0.0)) throw Error(ErrorCode::BadParameter, "normal needs sigma > 0");
                return std::sqrt(2.0 / std::numbers::pi) * p.sigma;
            } else if constexpr (std::is_same_v<T, Gamma>) {
                if (!(p.shape > 0.0) || !(p.rate > 0.0))
                    throw Error(ErrorCode::BadParameter, "gamma needs shape > 0 and rate > 0");
                const double k = p.shape;
                // 2 k^k / (Gamma(k) e^k lambda), evaluated in log space
                return 2.0 * std::exp(k * std::log(k) - std::lgamma(k) - k) / p.rate;
            } else {
                if (!(p.rho > 0.0 && p.rho < 1.0))
                    throw Error(ErrorCode::BadParameter, "M/M/1 increment needs 0 < rho < 1");
                return 2.0 * std::exp(p.rho - 1.0) / (p.rho + 1.0);
            }
        },
        f);
}

double mean_of_family(const Family& f) {
    using namespace family;
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Uniform>) return 0.5 * (p.a + p.b);
            else if constexpr (std::is_same_v<T, Normal>) return p.mu;
            else if constexpr (std::is_same_v<T, Gamma>) return p.shape / p.rate;
            else return p.rho - 1.0;
        },
        f);
}

double stddev_of_family(const Family& f) {
    using namespace family;
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Uniform>) return (p.b - p.a) / std::sqrt(12.0);
            else if constexpr (std::is_same_v<T, Normal>) return p.sigma;
            else if constexpr (std::is_same_v<T, Gamma>) return std::sqrt(p.shape) / p.rate;
            else return std::sqrt(1.0 + p.rho * p.rho);
        },
        f);
}

std::pair<double, double> range_from_rule(double mu, double d, double k) {
    if (!(d >= 0.0)) throw Error(ErrorCode::BadParameter, "MAD must be nonnegative");
    if (d > 0.0 && !(k > 1.0))
        throw Error(ErrorCode::BadParameter,
                    fmt::format("range multiplier k={} must exceed 1", k));
    return {mu - k * d, mu + k * d};
}

std::pair<double, double> variance_bracket_to_mad(double mu, double sigma, double a, double b) {
    if (!(b > a) || mu < a || mu > b) throw Error(ErrorCode::BadRange, "need a <= mu <= b, a < b");
    if (!(sigma >= 0.0)) throw Error(ErrorCode::BadParameter, "sigma must be nonnegative");
    const double max_var = (b - mu) * (mu - a);
    if (sigma * sigma > max_var + slack(max_var))
        throw Error(ErrorCode::InfeasibleVariance,
                    fmt::format("variance {} exceeds (b-mu)(mu-a) = {}", sigma * sigma, max_var));
    const AmbiguitySet probe{a, b, mu, 0.0, std::nullopt};
    const double d_min = 2.0 * sigma * sigma / (b - a);
    const double d_max = std::min(sigma, probe.mad_cap());
    return {std::min(d_min, d_max), d_max};
}

}  // namespace madqueue
