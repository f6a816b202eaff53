#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace madqueue {

/// Finite-support law. Points are strictly increasing and probabilities sum
/// to one within 1e-12. Zero-probability atoms are kept when given explicitly.
class DiscreteDistribution {
public:
    DiscreteDistribution() = default;

    /// Validating constructor; throws BadParameter on unsorted points,
    /// negative masses or a total mass off by more than 1e-12.
    DiscreteDistribution(std::vector<double> points, std::vector<double> probs);

    /// Sorts and merges atoms closer than 1e-12 (relative) before validating.
    static DiscreteDistribution from_atoms(std::vector<double> points, std::vector<double> probs);

    static DiscreteDistribution point_mass(double x) { return {{x}, {1.0}}; }

    std::span<const double> points() const { return points_; }
    std::span<const double> probs() const { return probs_; }
    std::size_t size() const { return points_.size(); }
    bool is_point_mass() const;

    double mean() const;
    double variance() const;
    /// E|X - E X|
    double mad() const;
    /// P(X >= x)
    double prob_at_or_above(double x) const;

    double min_point() const { return points_.front(); }
    double max_point() const { return points_.back(); }

    /// E[exp(s X)]
    std::complex<double> mgf(std::complex<double> s) const;

    friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

private:
    std::vector<double> points_;
    std::vector<double> probs_;
};

/// Law of X - Y for independent X, Y.
DiscreteDistribution difference(const DiscreteDistribution& x, const DiscreteDistribution& y);

}  // namespace madqueue
