#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "madqueue/ambiguity.hpp"
#include "madqueue/simulate.hpp"
#include "madqueue/steady_state.hpp"

namespace madqueue {

/// First two moments of interarrival (U) and service (V) times.
struct MomentSpec {
    double mean_u = 1.0;
    double var_u = 0.0;
    double mean_v = 0.0;
    double var_v = 0.0;

    double rho() const { return mean_v / mean_u; }
};

/// Moments of the extremal three-point laws: variance d (b - a) / 2.
MomentSpec moments_from_sets(const QueueSpec& spec);

double kingman(const MomentSpec& spec);
double daley(const MomentSpec& spec);
/// Bound built on the two-point conjecture, with kappa = 2 rho (1 - rho) / (1 - delta).
double chen_whitt(const MomentSpec& spec);

/// Root in (0, 1) of delta = exp(-(1 - delta) / rho), for 0 < rho < 1.
double chen_whitt_delta(double rho);

struct Envelope {
    double d_min = 0.0;
    double d_max = 0.0;
    double lower_env = 0.0;
    double upper_env = 0.0;
};

/// Mean-MAD upper bounds on E[M_n] (or c_m(M) when `n` is empty) at the two
/// MADs compatible with standard deviation sigma on [a, b].
Envelope mad_bracket_bound(double mu, double sigma, double a, double b, std::optional<int> n,
                           int m = 1, const ContourConfig& cfg = {});

struct LimitPoint {
    double xi = 0.0;
    double exact = 0.0;
    SimEstimate simulated;
    double gap = 0.0;
};

struct LimitReport {
    double target = 0.0;
    std::vector<LimitPoint> points;
    /// Gaps (exact values) strictly decrease along xi_list.
    bool monotone = false;
};

/// E[M] under the heavy-tail family for each xi, from the contour integral and
/// by simulation over `horizon` steps, against the limit sigma^2 / (-2 mu).
LimitReport heavy_traffic_limit_check(double mu, double sigma, double a,
                                      const std::vector<double>& xi_list, const SimConfig& sim,
                                      const ContourConfig& cfg = {});

}  // namespace madqueue
