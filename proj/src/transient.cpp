#include "madqueue/transient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "madqueue/error.hpp"
#include "madqueue/parallel.hpp"

namespace madqueue {

namespace {

struct WeightedSum {
    double value;
    double weight;
};

/// All compositions (c_1..c_K) of k over the atoms of `law`, as the pair
/// (sum c_i x_i, multinomial probability). Atoms with zero mass are skipped.
/// Lexicographic order in the counts, so the output is deterministic.
std::vector<WeightedSum> compositions(const DiscreteDistribution& law, int k) {
    std::vector<double> xs, logp;
    for (std::size_t i = 0; i < law.size(); ++i) {
        if (law.probs()[i] > 0.0) {
            xs.push_back(law.points()[i]);
            logp.push_back(std::log(law.probs()[i]));
        }
    }
    std::vector<WeightedSum> out;
    const double log_k_fact = std::lgamma(k + 1.0);
    const std::size_t parts = xs.size();

    auto recurse = [&](auto&& self, std::size_t idx, int remaining, double value,
                       double logw) -> void {
        if (idx + 1 == parts) {
            const double v = value + remaining * xs[idx];
            const double lw = logw + remaining * logp[idx] - std::lgamma(remaining + 1.0);
            out.push_back({v, std::exp(log_k_fact + lw)});
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            self(self, idx + 1, remaining - c, value + c * xs[idx],
                 logw + c * logp[idx] - std::lgamma(c + 1.0));
        }
    };
    recurse(recurse, 0, k, 0.0, 0.0);
    return out;
}

double positive_power(double x, int power) {
    if (x <= 0.0) return 0.0;
    return power == 1 ? x : std::pow(x, power);
}

}  // namespace

double walk_max(std::span<const double> increments) {
    double s = 0.0, best = 0.0;
    for (double x : increments) {
        s += x;
        best = std::max(best, s);
    }
    return best;
}

double spitzer_sum(const DiscreteDistribution& law, int n, int power) {
    if (n < 0) throw Error(ErrorCode::BadParameter, "horizon must be nonnegative");
    if (power < 1) throw Error(ErrorCode::BadParameter, "power must be at least 1");
    std::vector<double> per_k(static_cast<std::size_t>(n), 0.0);
    parallel_for(per_k.size(), [&](std::size_t i) {
        const int k = static_cast<int>(i) + 1;
        double acc = 0.0;
        for (const auto& [value, weight] : compositions(law, k))
            acc += positive_power(value, power) * weight;
        per_k[i] = acc / k;
    });
    double total = 0.0;
    for (double v : per_k) total += v;
    return total;
}

TransientBound upper_bound_enumeration(std::span<const DiscreteDistribution> per_period) {
    const int n = static_cast<int>(per_period.size());
    if (n > kEnumerationHorizonCap)
        throw Error(ErrorCode::HorizonTooLarge,
                    fmt::format("enumeration horizon {} exceeds {}", n, kEnumerationHorizonCap));
    TransientBound out{n, 0.0, Direction::Upper, 0};
    if (n == 0) return out;

    std::vector<std::size_t> idx(per_period.size(), 0);
    std::vector<double> steps(per_period.size());
    while (true) {
        double prob = 1.0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            steps[i] = per_period[i].points()[idx[i]];
            prob *= per_period[i].probs()[idx[i]];
        }
        out.value += walk_max(steps) * prob;
        ++out.terms_evaluated;

        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == per_period[pos].size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    return out;
}

TransientBound upper_bound_enumeration(const DiscreteDistribution& law, int n) {
    if (n > kEnumerationHorizonCap)
        throw Error(ErrorCode::HorizonTooLarge,
                    fmt::format("enumeration horizon {} exceeds {}", n, kEnumerationHorizonCap));
    std::vector<DiscreteDistribution> periods(static_cast<std::size_t>(std::max(n, 0)), law);
    return upper_bound_enumeration(periods);
}

namespace {

TransientBound spitzer_bound(const DiscreteDistribution& law, int n, Direction dir) {
    if (n < 1) throw Error(ErrorCode::BadParameter, "horizon must be at least 1");
    TransientBound out{n, spitzer_sum(law, n), dir, 0};
    const std::int64_t atoms = static_cast<std::int64_t>(law.size());
    for (std::int64_t k = 1; k <= n; ++k) {
        // number of compositions of k into `atoms` parts
        std::int64_t c = 1;
        for (std::int64_t j = 1; j < atoms; ++j) c = c * (k + j) / j;
        out.terms_evaluated += c;
    }
    return out;
}

}  // namespace

TransientBound upper_bound_spitzer(const DiscreteDistribution& law, int n) {
    if (law.size() > 3) throw Error(ErrorCode::BadParameter, "upper bound expects at most 3 atoms");
    return spitzer_bound(law, n, Direction::Upper);
}

TransientBound upper_bound_spitzer(const AmbiguitySet& set, int n) {
    return upper_bound_spitzer(worst_case_three_point(set), n);
}

TransientBound lower_bound_spitzer(const DiscreteDistribution& law, int n) {
    if (law.size() > 2) throw Error(ErrorCode::BadParameter, "lower bound expects at most 2 atoms");
    return spitzer_bound(law, n, Direction::Lower);
}

TransientBound lower_bound_spitzer(const AmbiguitySet& set, int n) {
    return lower_bound_spitzer(best_case_two_point(set), n);
}

TransientBound gg1_transient(const DiscreteDistribution& service,
                             const DiscreteDistribution& arrival, int n, int cap) {
    if (n < 1) throw Error(ErrorCode::BadParameter, "horizon must be at least 1");
    if (n > cap)
        throw Error(ErrorCode::HorizonTooLarge, fmt::format("GI/G/1 horizon {} exceeds {}", n, cap));

    std::vector<double> per_k(static_cast<std::size_t>(n), 0.0);
    std::vector<std::int64_t> terms(per_k.size(), 0);
    parallel_for(per_k.size(), [&](std::size_t i) {
        const int k = static_cast<int>(i) + 1;
        auto arr = compositions(arrival, k);
        std::sort(arr.begin(), arr.end(),
                  [](const WeightedSum& x, const WeightedSum& y) { return x.value < y.value; });
        // prefix sums of R and R * t over arrival totals sorted ascending
        std::vector<double> mass(arr.size() + 1, 0.0), moment(arr.size() + 1, 0.0);
        for (std::size_t j = 0; j < arr.size(); ++j) {
            mass[j + 1] = mass[j] + arr[j].weight;
            moment[j + 1] = moment[j] + arr[j].weight * arr[j].value;
        }
        const auto svc = compositions(service, k);
        double acc = 0.0;
        for (const auto& [s, p] : svc) {
            const auto it = std::lower_bound(
                arr.begin(), arr.end(), s,
                [](const WeightedSum& x, double v) { return x.value < v; });
            const auto cut = static_cast<std::size_t>(it - arr.begin());
            acc += p * (s * mass[cut] - moment[cut]);
        }
        per_k[i] = acc / k;
        terms[i] = static_cast<std::int64_t>(svc.size() * arr.size());
    });
    TransientBound out{n, 0.0, Direction::Upper, 0};
    for (std::size_t i = 0; i < per_k.size(); ++i) {
        out.value += per_k[i];
        out.terms_evaluated += terms[i];
    }
    out.value = std::max(out.value, 0.0);
    return out;
}

TransientBound gg1_transient_upper(const QueueSpec& spec, int n, int cap) {
    validate(spec);
    return gg1_transient(worst_case_three_point(spec.service), worst_case_three_point(spec.arrival),
                         n, cap);
}

TransientBound gg1_transient_lower(const QueueSpec& spec, int n, int cap) {
    validate(spec);
    auto out = gg1_transient(best_case_two_point(spec.service), best_case_two_point(spec.arrival),
                             n, cap);
    out.direction = Direction::Lower;
    return out;
}

double infinite_range_limit(double a, double mu, double d, int n) {
    if (!(mu > a)) throw Error(ErrorCode::BadParameter, "need mu > a");
    if (n < 1) throw Error(ErrorCode::BadParameter, "horizon must be at least 1");
    const double p_low = d / (2.0 * (mu - a));
    if (!(d >= 0.0) || p_low > 1.0)
        throw Error(ErrorCode::BadParameter,
                    fmt::format("d={} infeasible on the half line above a={}", d, a));
    const auto two_point = DiscreteDistribution::from_atoms({a, mu}, {p_low, 1.0 - p_low});
    return n * d / 2.0 + spitzer_sum(two_point, n);
}

}  // namespace madqueue
