#pragma once

#include <cstdint>
#include <span>

#include "madqueue/ambiguity.hpp"
#include "madqueue/distribution.hpp"
#include "madqueue/extremal.hpp"

namespace madqueue {

struct TransientBound {
    int n = 0;
    double value = 0.0;
    Direction direction = Direction::Upper;
    std::int64_t terms_evaluated = 0;
};

inline constexpr int kEnumerationHorizonCap = 12;
inline constexpr int kGg1HorizonCap = 60;

/// max{0, x1, x1 + x2, ..., x1 + ... + xn}
double walk_max(std::span<const double> increments);

/// Sum over k = 1..n of E[(S_k^+)^power] / k for i.i.d. steps from `law`,
/// summing directly over lattice compositions with log-space multinomial
/// weights. Any support size; cost grows like n^size.
double spitzer_sum(const DiscreteDistribution& law, int n, int power = 1);

/// E[M_n] by brute force over every outcome sequence. `per_period[i]` is the
/// law of step i + 1, so the steps need not be identically distributed.
/// Throws HorizonTooLarge beyond kEnumerationHorizonCap periods.
TransientBound upper_bound_enumeration(std::span<const DiscreteDistribution> per_period);
TransientBound upper_bound_enumeration(const DiscreteDistribution& law, int n);

/// Tight upper bound on E[M_n] from a law with at most three atoms.
TransientBound upper_bound_spitzer(const DiscreteDistribution& law, int n);
TransientBound upper_bound_spitzer(const AmbiguitySet& set, int n);

/// Tight lower bound on E[M_n] from a law with at most two atoms.
TransientBound lower_bound_spitzer(const DiscreteDistribution& law, int n);
TransientBound lower_bound_spitzer(const AmbiguitySet& set, int n);

/// Bounds on E[W_n] (W_0 = 0) for the GI/G/1 queue with the given service
/// and interarrival laws; each composition pair is summed once.
TransientBound gg1_transient(const DiscreteDistribution& service,
                             const DiscreteDistribution& arrival, int n,
                             int cap = kGg1HorizonCap);

/// Tight upper bound on E[W_n] from the extremal three-point laws of both sets.
TransientBound gg1_transient_upper(const QueueSpec& spec, int n, int cap = kGg1HorizonCap);
/// Tight lower bound on E[W_n] from the best-case two-point laws (needs both betas).
TransientBound gg1_transient_lower(const QueueSpec& spec, int n, int cap = kGg1HorizonCap);

/// Limit of the upper bound on E[M_n] as b -> infinity with (a, mu, d) fixed:
/// n d / 2 + sum_k (1/k) E[(S_k^+)] for the two-point law on {a, mu}.
double infinite_range_limit(double a, double mu, double d, int n);

}  // namespace madqueue
