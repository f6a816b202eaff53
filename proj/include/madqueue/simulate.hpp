#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "madqueue/distribution.hpp"

namespace madqueue {

using Rng = std::mt19937_64;

struct SimConfig {
    std::int64_t replications = 10'000;
    /// Steps per replication (transient) or per run (steady state).
    std::int64_t horizon = 100;
    std::uint64_t seed = 1;
    int batch_count = 32;
    double warmup_fraction = 0.2;
};

struct SimEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t replications_used = 0;
};

/// An i.i.d. source of draws with a known mean.
struct Sampler {
    std::function<double(Rng&)> draw;
    double mean = 0.0;

    static Sampler discrete(const DiscreteDistribution& law);
    static Sampler uniform(double a, double b);
    static Sampler exponential(double mean);
    static Sampler constant(double value);
    /// x - y for independent draws.
    static Sampler difference(Sampler x, Sampler y);
};

/// Stream for replication `rep` of a run keyed by `seed`; independent of
/// how replications are scheduled over threads.
Rng replication_rng(std::uint64_t seed, std::uint64_t rep);

/// E[max(S_0, ..., S_n)] with S_0 = 0.
SimEstimate simulate_max(const Sampler& increments, std::int64_t n, const SimConfig& cfg);

/// Estimates of the first `orders` cumulants of M_n (k-statistics over all
/// replications); standard errors from the spread over 20 equal groups.
std::vector<SimEstimate> simulate_max_cumulants(const Sampler& increments, std::int64_t n,
                                                int orders, const SimConfig& cfg);

enum class LindleyMode { Transient, SteadyState };

/// Lindley recursion W_{k+1} = (W_k + V_k - U_k)^+ from W_0 = 0. Transient
/// mode averages W_horizon over replications. Steady-state mode discards a
/// warmup fraction of each run and uses batch means; runs at rho >= 0.95
/// are lengthened by 1/(1 - rho)^2.
SimEstimate simulate_lindley(const Sampler& arrival, const Sampler& service, const SimConfig& cfg,
                             LindleyMode mode);

}  // namespace madqueue
