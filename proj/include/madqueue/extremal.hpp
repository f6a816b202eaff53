#pragma once

#include "madqueue/ambiguity.hpp"
#include "madqueue/distribution.hpp"

namespace madqueue {

/// Which side of the ambiguity set a bound comes from.
enum class Direction { Upper, Lower };

inline const char* to_string(Direction d) { return d == Direction::Upper ? "upper" : "lower"; }

/// Worst-case law for the expectation of any convex function over the set:
/// atoms {a, mu, b} with masses d/(2(mu-a)), rest, d/(2(b-mu)).
/// A zero-MAD set yields a point mass at mu.
DiscreteDistribution worst_case_three_point(const AmbiguitySet& set);

/// Best-case law over the set with beta = P(X >= mu) fixed:
/// mu - d/(2(1-beta)) w.p. 1-beta and mu + d/(2 beta) w.p. beta.
/// Throws BadParameter if the set carries no beta.
DiscreteDistribution best_case_two_point(const AmbiguitySet& set);

/// Three-point law on {a, mu, a + xi (mu - a)} with mean mu and variance
/// sigma^2 for every admissible xi. Used to probe the infinite-support limit.
DiscreteDistribution heavy_tail_family(double mu, double sigma, double a, double xi);

}  // namespace madqueue
