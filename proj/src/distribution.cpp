#include "madqueue/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "madqueue/error.hpp"

namespace madqueue {

DiscreteDistribution::DiscreteDistribution(std::vector<double> points, std::vector<double> probs)
    : points_(std::move(points)), probs_(std::move(probs)) {
    if (points_.empty() || points_.size() != probs_.size())
        throw Error(ErrorCode::BadParameter, "points and probs must be nonempty and equally long");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i] > points_[i - 1]))
            throw Error(ErrorCode::BadParameter, "support points must be strictly increasing");
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) throw Error(ErrorCode::BadParameter, "probabilities must be nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw Error(ErrorCode::BadParameter, fmt::format("probabilities sum to {}", total));
}

DiscreteDistribution DiscreteDistribution::from_atoms(std::vector<double> points,
                                                      std::vector<double> probs) {
    if (points.size() != probs.size())
        throw Error(ErrorCode::BadParameter, "points and probs must be equally long");
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return points[i] < points[j]; });
    double scale = 0.0;
    for (double x : points) scale = std::max(scale, std::abs(x));
    const double merge_tol = 1e-12 * std::max(1.0, scale);

    std::vector<double> xs, ps;
    for (std::size_t i : order) {
        if (!xs.empty() && points[i] - xs.back() <= merge_tol) {
            ps.back() += probs[i];
        } else {
            xs.push_back(points[i]);
            ps.push_back(probs[i]);
        }
    }
    return {std::move(xs), std::move(ps)};
}

bool DiscreteDistribution::is_point_mass() const {
    return std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; }) <= 1;
}

double DiscreteDistribution::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) m += probs_[i] * points_[i];
    return m;
}

double DiscreteDistribution::variance() const {
    const double m = mean();
    double v = 0.0;
    for (std::size_t i = 0; i < size(); ++i) v += probs_[i] * (points_[i] - m) * (points_[i] - m);
    return v;
}

double DiscreteDistribution::mad() const {
    const double m = mean();
    double v = 0.0;
    for (std::size_t i = 0; i < size(); ++i) v += probs_[i] * std::abs(points_[i] - m);
    return v;
}

double DiscreteDistribution::prob_at_or_above(double x) const {
    double p = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        if (points_[i] >= x) p += probs_[i];
    return p;
}

std::complex<double> DiscreteDistribution::mgf(std::complex<double> s) const {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < size(); ++i) acc += probs_[i] * std::exp(s * points_[i]);
    return acc;
}

DiscreteDistribution difference(const DiscreteDistribution& x, const DiscreteDistribution& y) {
    std::vector<double> pts, prs;
    pts.reserve(x.size() * y.size());
    prs.reserve(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) {
            pts.push_back(x.points()[i] - y.points()[j]);
            prs.push_back(x.probs()[i] * y.probs()[j]);
        }
    return DiscreteDistribution::from_atoms(std::move(pts), std::move(prs));
}

}  // namespace madqueue
