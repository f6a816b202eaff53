#pragma once

#include <optional>
#include <utility>
#include <variant>

namespace madqueue {

/// What is known about one random variable: support [a, b], mean and mean
/// absolute deviation. `beta` = P(X >= mu) is only needed for lower bounds.
struct AmbiguitySet {
    double a = 0.0;
    double b = 0.0;
    double mu = 0.0;
    double d = 0.0;
    std::optional<double> beta;

    /// Largest MAD any law on [a, b] with mean mu can have.
    double mad_cap() const;
    /// Feasible interval for beta given (a, b, mu, d). Only meaningful for d > 0.
    std::pair<double, double> beta_bracket() const;

    friend bool operator==(const AmbiguitySet&, const AmbiguitySet&) = default;
};

/// Returns `set` unchanged, or throws BadRange / InfeasibleMad / InfeasibleBeta.
/// Boundary values are accepted with a relative slack of 1e-12.
const AmbiguitySet& validate(const AmbiguitySet& set);

/// Interarrival (U) and service (V) ambiguity for a GI/G/1 queue.
struct QueueSpec {
    AmbiguitySet arrival;
    AmbiguitySet service;

    double rho() const { return service.mu / arrival.mu; }
};

/// Validates both sets and nonnegative supports. Does not require rho < 1;
/// steady-state routines check that themselves.
const QueueSpec& validate(const QueueSpec& spec);

namespace family {
struct Uniform {
    double a;
    double b;
};
struct Normal {
    double mu;
    double sigma;
};
/// Shape k, rate lambda (mean k / lambda).
struct Gamma {
    double shape;
    double rate;
};
/// V - U with V ~ Exp(mean rho), U ~ Exp(mean 1).
struct MM1Increment {
    double rho;
};
}  // namespace family

using Family = std::variant<family::Uniform, family::Normal, family::Gamma, family::MM1Increment>;

double mad_of_family(const Family& f);
double mean_of_family(const Family& f);
double stddev_of_family(const Family& f);

/// Support [mu - k d, mu + k d].
std::pair<double, double> range_from_rule(double mu, double d, double k);

/// MAD interval compatible with standard deviation sigma on [a, b]:
/// (2 sigma^2 / (b - a), min(sigma, mad cap)).
std::pair<double, double> variance_bracket_to_mad(double mu, double sigma, double a, double b);

}  // namespace madqueue
