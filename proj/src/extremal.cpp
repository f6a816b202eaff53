#include "madqueue/extremal.hpp"

#include <cmath>

#include <fmt/format.h>

#include "madqueue/error.hpp"

namespace madqueue {

namespace {

constexpr double kClamp = 1e-12;

bool zero_mad(const AmbiguitySet& set) { return set.d <= kClamp * std::max(1.0, set.mad_cap()); }

}  // namespace

DiscreteDistribution worst_case_three_point(const AmbiguitySet& set) {
    validate(set);
    if (zero_mad(set)) return DiscreteDistribution::point_mass(set.mu);

    double p1 = set.d / (2.0 * (set.mu - set.a));
    double p3 = set.d / (2.0 * (set.b - set.mu));
    double p2 = 1.0 - p1 - p3;
    if (p2 < 0.0) {
        // d at its cap up to rounding
        p2 = 0.0;
        const double total = p1 + p3;
        p1 /= total;
        p3 /= total;
    }
    return {{set.a, set.mu, set.b}, {p1, p2, p3}};
}

DiscreteDistribution best_case_two_point(const AmbiguitySet& set) {
    if (!set.beta) throw Error(ErrorCode::BadParameter, "lower bounds need beta = P(X >= mu)");
    validate(set);
    if (zero_mad(set)) return DiscreteDistribution::point_mass(set.mu);

    const double beta = *set.beta;
    if (beta <= 0.0 || beta >= 1.0)
        throw Error(ErrorCode::InfeasibleBeta,
                    fmt::format("beta={} must lie strictly inside (0, 1) when d > 0", beta));
    const double upper = set.mu + set.d / (2.0 * beta);
    const double lower = set.mu - set.d / (2.0 * (1.0 - beta));
    return {{lower, upper}, {1.0 - beta, beta}};
}

DiscreteDistribution heavy_tail_family(double mu, double sigma, double a, double xi) {
    if (!(mu > a)) throw Error(ErrorCode::BadParameter, "need mu > a");
    if (!(xi > 1.0)) throw Error(ErrorCode::BadParameter, "need xi > 1");
    if (!(sigma >= 0.0)) throw Error(ErrorCode::BadParameter, "need sigma >= 0");
    const double scaled = sigma * sigma / ((mu - a) * (mu - a) * xi);
    const double p_low = scaled;
    const double p_high = scaled / (xi - 1.0);
    double p_mid = 1.0 - p_low - p_high;
    if (std::abs(p_mid) < kClamp) p_mid = 0.0;
    if (p_low > 1.0 || p_mid < 0.0)
        throw Error(ErrorCode::BadParameter,
                    fmt::format("xi={} gives probabilities outside [0, 1]", xi));
    return {{a, mu, a + xi * (mu - a)}, {p_low, p_mid, p_high}};
}

}  // namespace madqueue
