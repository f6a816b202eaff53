#include "madqueue/classical.hpp"

#include <cmath>

#include <fmt/format.h>

#include "madqueue/error.hpp"
#include "madqueue/extremal.hpp"
#include "madqueue/transient.hpp"

namespace madqueue {

namespace {

double common_denominator(const MomentSpec& spec) {
    if (spec.var_u < 0.0 || spec.var_v < 0.0)
        throw Error(ErrorCode::BadParameter, "variances must be nonnegative");
    if (!(spec.mean_u > 0.0) || !(spec.rho() < 1.0))
        throw Error(ErrorCode::Unstable, fmt::format("traffic intensity {} is not below 1", spec.rho()));
    return 2.0 * (spec.mean_u - spec.mean_v);
}

}  // namespace

MomentSpec moments_from_sets(const QueueSpec& spec) {
    validate(spec);
    const auto& u = spec.arrival;
    const auto& v = spec.service;
    return {u.mu, u.d * (u.b - u.a) / 2.0, v.mu, v.d * (v.b - v.a) / 2.0};
}

double kingman(const MomentSpec& spec) {
    return (spec.var_v + spec.var_u) / common_denominator(spec);
}

double daley(const MomentSpec& spec) {
    const double den = common_denominator(spec);
    const double rho = spec.rho();
    return (spec.var_v + rho * (2.0 - rho) * spec.var_u) / den;
}

double chen_whitt_delta(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorCode::Unstable, "need 0 < rho < 1");
    auto f = [rho](double x) { return x - std::exp(-(1.0 - x) / rho); };
    // f < 0 at 0 and is concave with its peak at 1 + rho ln rho, where f > 0
    double lo = 0.0, hi = 1.0 + rho * std::log(rho);
    double x = 0.5 * hi;
    for (int it = 0; it < 200; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        (fx < 0.0 ? lo : hi) = x;
        const double slope = 1.0 - std::exp(-(1.0 - x) / rho) / rho;
        double next = slope != 0.0 ? x - fx / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-16 * std::max(1.0, x) || hi - lo < 1e-300) return next;
        x = next;
    }
    return x;
}

double chen_whitt(const MomentSpec& spec) {
    const double den = common_denominator(spec);
    const double rho = spec.rho();
    if (rho <= 0.0) return spec.var_v / den;
    const double kappa = 2.0 * rho * (1.0 - rho) / (1.0 - chen_whitt_delta(rho));
    return (spec.var_v + kappa * spec.var_u) / den;
}

Envelope mad_bracket_bound(double mu, double sigma, double a, double b, std::optional<int> n, int m,
                           const ContourConfig& cfg) {
    if (!(a < mu && mu < b)) throw Error(ErrorCode::BadRange, "need a < mu < b");
    if (!(sigma >= 0.0) || sigma * sigma > (b - mu) * (mu - a) * (1.0 + 1e-12))
        throw Error(ErrorCode::InfeasibleVariance,
                    fmt::format("sigma={} is not attainable on [{}, {}] with mean {}", sigma, a, b, mu));
    Envelope env;
    std::tie(env.d_min, env.d_max) = variance_bracket_to_mad(mu, sigma, a, b);
    auto bound = [&](double d) {
        const AmbiguitySet set{a, b, mu, d, std::nullopt};
        return n ? upper_bound_spitzer(set, *n).value : cumulant_upper(set, m, cfg).value;
    };
    env.lower_env = bound(env.d_min);
    env.upper_env = bound(env.d_max);
    return env;
}

LimitReport heavy_traffic_limit_check(double mu, double sigma, double a,
                                      const std::vector<double>& xi_list, const SimConfig& sim,
                                      const ContourConfig& cfg) {
    if (!(mu < 0.0)) throw Error(ErrorCode::BadParameter, "need mu < 0");
    LimitReport report;
    report.target = sigma * sigma / (-2.0 * mu);
    for (std::size_t i = 0; i < xi_list.size(); ++i) {
        const double xi = xi_list[i];
        const auto law = heavy_tail_family(mu, sigma, a, xi);
        LimitPoint pt;
        pt.xi = xi;
        pt.exact = max_cumulant(law, 1, cfg).value;
        SimConfig c = sim;
        c.seed = sim.seed + i;
        pt.simulated = simulate_max(Sampler::discrete(law), sim.horizon, c);
        pt.gap = report.target - pt.exact;
        report.points.push_back(pt);
    }
    report.monotone = true;
    for (std::size_t i = 1; i < report.points.size(); ++i)
        if (!(std::abs(report.points[i].gap) < std::abs(report.points[i - 1].gap))) report.monotone = false;
    return report;
}

}  // namespace madqueue
