#pragma once

// Random generators shared by the unit tests and the acceptance run.

#include <algorithm>
#include <random>
#include <vector>

#include "madqueue/ambiguity.hpp"
#include "madqueue/distribution.hpp"

namespace madqueue::testing {

/// Random set with a < mu < b and 0 < d < cap.
inline AmbiguitySet random_set(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double a = -1.0 - 9.0 * u(rng);
    const double b = 0.5 + 9.5 * u(rng);
    const double mu = a + (b - a) * (0.05 + 0.9 * u(rng));
    AmbiguitySet s{a, b, mu, 0.0, std::nullopt};
    s.d = s.mad_cap() * (0.05 + 0.9 * u(rng));
    return s;
}

/// Random set with negative mean, for walks with a maximum.
inline AmbiguitySet random_drift_set(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double a = -1.0 - 4.0 * u(rng);
    const double b = 0.5 + 4.5 * u(rng);
    const double mu = a * (0.1 + 0.6 * u(rng));
    AmbiguitySet s{a, b, mu, 0.0, std::nullopt};
    s.d = s.mad_cap() * (0.1 + 0.85 * u(rng));
    return s;
}

/// A law on [a, b] with the set's mean and MAD: two atoms on each side of mu
/// with random positions and weights, and the leftover mass at mu.
inline DiscreteDistribution random_member(const AmbiguitySet& s, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const double l1 = s.a + (s.mu - s.a) * u(rng), l2 = s.a + (s.mu - s.a) * u(rng);
        const double h1 = s.mu + (s.b - s.mu) * u(rng), h2 = s.mu + (s.b - s.mu) * u(rng);
        const double wl = u(rng), wh = u(rng);
        const double dev_low = wl * (s.mu - l1) + (1 - wl) * (s.mu - l2);
        const double dev_high = wh * (h1 - s.mu) + (1 - wh) * (h2 - s.mu);
        if (dev_low <= 0.0 || dev_high <= 0.0) continue;
        const double q = s.d / (2.0 * dev_low), r = s.d / (2.0 * dev_high);
        if (q + r > 1.0) continue;
        return DiscreteDistribution::from_atoms({l1, l2, s.mu, h1, h2},
                                                {q * wl, q * (1 - wl), 1.0 - q - r, r * wh, r * (1 - wh)});
    }
}

}  // namespace madqueue::testing
