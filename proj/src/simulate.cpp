#include "madqueue/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <fmt/format.h>

#include "madqueue/error.hpp"
#include "madqueue/parallel.hpp"

namespace madqueue {

namespace {

void check(const SimConfig& cfg) {
    if (cfg.replications < 1) throw Error(ErrorCode::BadParameter, "replications must be positive");
    if (cfg.horizon < 1) throw Error(ErrorCode::BadParameter, "horizon must be positive");
}

/// Mean and standard error of the mean, summed in index order.
SimEstimate summarize(const std::vector<double>& xs) {
    SimEstimate out;
    out.replications_used = static_cast<std::int64_t>(xs.size());
    if (xs.empty()) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
    }
    return out;
}

/// Unbiased k-statistics k1..k3 of a sample.
std::vector<double> k_statistics(const double* xs, std::size_t n, int orders) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += xs[i];
    mean /= static_cast<double>(n);
    double m2 = 0.0, m3 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = xs[i] - mean;
        m2 += c * c;
        m3 += c * c * c;
    }
    const double nn = static_cast<double>(n);
    m2 /= nn;
    m3 /= nn;
    std::vector<double> k = {mean, nn / (nn - 1.0) * m2, nn * nn / ((nn - 1.0) * (nn - 2.0)) * m3};
    k.resize(static_cast<std::size_t>(orders));
    return k;
}

double walk_max_draw(const Sampler& s, std::int64_t n, Rng& rng) {
    double sum = 0.0, best = 0.0;
    for (std::int64_t k = 0; k < n; ++k) {
        sum += s.draw(rng);
        best = std::max(best, sum);
    }
    return best;
}

std::vector<double> max_samples(const Sampler& increments, std::int64_t n, const SimConfig& cfg) {
    check(cfg);
    if (n < 1) throw Error(ErrorCode::BadParameter, "horizon must be positive");
    std::vector<double> values(static_cast<std::size_t>(cfg.replications));
    // chunk replications so each task is worth a thread hand-off
    const std::size_t chunk = 256;
    const std::size_t tasks = (values.size() + chunk - 1) / chunk;
    parallel_for(tasks, [&](std::size_t t) {
        const std::size_t end = std::min(values.size(), (t + 1) * chunk);
        for (std::size_t r = t * chunk; r < end; ++r) {
            Rng rng = replication_rng(cfg.seed, r);
            values[r] = walk_max_draw(increments, n, rng);
        }
    });
    return values;
}

}  // namespace

Sampler Sampler::discrete(const DiscreteDistribution& law) {
    auto cum = std::make_shared<std::vector<double>>();
    auto pts = std::make_shared<std::vector<double>>(law.points().begin(), law.points().end());
    double acc = 0.0;
    for (double p : law.probs()) cum->push_back(acc += p);
    cum->back() = 1.0;
    return {[cum, pts](Rng& rng) {
                const double u = std::generate_canonical<double, 53>(rng);
                const auto it = std::upper_bound(cum->begin(), cum->end(), u);
                const auto i = std::min<std::size_t>(static_cast<std::size_t>(it - cum->begin()),
                                                     pts->size() - 1);
                return (*pts)[i];
            },
            law.mean()};
}

Sampler Sampler::uniform(double a, double b) {
    return {[a, b](Rng& rng) { return a + (b - a) * std::generate_canonical<double, 53>(rng); },
            0.5 * (a + b)};
}

Sampler Sampler::exponential(double mean) {
    return {[mean](Rng& rng) {
                // 1 - u lies in (0, 1], so the log is finite
                return -mean * std::log(1.0 - std::generate_canonical<double, 53>(rng));
            },
            mean};
}

Sampler Sampler::constant(double value) {
    return {[value](Rng&) { return value; }, value};
}

Sampler Sampler::difference(Sampler x, Sampler y) {
    const double m = x.mean - y.mean;
    return {[x = std::move(x), y = std::move(y)](Rng& rng) {
                const double a = x.draw(rng);
                return a - y.draw(rng);
            },
            m};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

// seed_seq costs ~10 us per stream, which dominated short replications
Rng replication_rng(std::uint64_t seed, std::uint64_t rep) {
    return Rng(splitmix64(splitmix64(seed) ^ rep));
}

SimEstimate simulate_max(const Sampler& increments, std::int64_t n, const SimConfig& cfg) {
    return summarize(max_samples(increments, n, cfg));
}

std::vector<SimEstimate> simulate_max_cumulants(const Sampler& increments, std::int64_t n,
                                                int orders, const SimConfig& cfg) {
    if (orders < 1 || orders > 3) throw Error(ErrorCode::BadParameter, "orders must be 1, 2 or 3");
    constexpr std::size_t kGroups = 20;
    if (cfg.replications < static_cast<std::int64_t>(kGroups * 3))
        throw Error(ErrorCode::BadParameter, "need at least 60 replications");
    const auto values = max_samples(increments, n, cfg);
    const auto overall = k_statistics(values.data(), values.size(), orders);
    const std::size_t per = values.size() / kGroups;
    std::vector<std::vector<double>> by_order(static_cast<std::size_t>(orders));
    for (std::size_t g = 0; g < kGroups; ++g) {
        const auto k = k_statistics(values.data() + g * per, per, orders);
        for (int j = 0; j < orders; ++j) by_order[static_cast<std::size_t>(j)].push_back(k[static_cast<std::size_t>(j)]);
    }
    std::vector<SimEstimate> out;
    const double shrink = std::sqrt(static_cast<double>(per * kGroups) / static_cast<double>(values.size()));
    for (int j = 0; j < orders; ++j) {
        auto est = summarize(by_order[static_cast<std::size_t>(j)]);
        est.mean = overall[static_cast<std::size_t>(j)];
        est.std_error *= shrink;
        est.replications_used = static_cast<std::int64_t>(values.size());
        out.push_back(est);
    }
    return out;
}

SimEstimate simulate_lindley(const Sampler& arrival, const Sampler& service, const SimConfig& cfg,
                             LindleyMode mode) {
    check(cfg);
    std::vector<double> values;
    if (mode == LindleyMode::Transient) {
        values.resize(static_cast<std::size_t>(cfg.replications));
        parallel_for(values.size(), [&](std::size_t r) {
            Rng rng = replication_rng(cfg.seed, r);
            double w = 0.0;
            for (std::int64_t k = 0; k < cfg.horizon; ++k) {
                const double v = service.draw(rng);
                w = std::max(0.0, w + v - arrival.draw(rng));
            }
            values[r] = w;
        });
        return summarize(values);
    }

    const double rho = service.mean / arrival.mean;
    if (!(rho < 1.0))
        throw Error(ErrorCode::Unstable, fmt::format("traffic intensity {} is not below 1", rho));
    if (cfg.batch_count < 2) throw Error(ErrorCode::BadParameter, "need at least two batches");
    std::int64_t steps = cfg.horizon;
    if (rho >= 0.95) steps = static_cast<std::int64_t>(std::ceil(static_cast<double>(steps) / ((1.0 - rho) * (1.0 - rho))));
    const auto warmup = static_cast<std::int64_t>(cfg.warmup_fraction * static_cast<double>(steps));
    const std::int64_t batch_len = (steps - warmup) / cfg.batch_count;
    if (batch_len < 1) throw Error(ErrorCode::BadParameter, "horizon too short for the batch count");

    const auto batches = static_cast<std::size_t>(cfg.batch_count);
    values.resize(static_cast<std::size_t>(cfg.replications) * batches);
    parallel_for(static_cast<std::size_t>(cfg.replications), [&](std::size_t r) {
        Rng rng = replication_rng(cfg.seed, r);
        double w = 0.0;
        auto step = [&] {
            const double v = service.draw(rng);
            w = std::max(0.0, w + v - arrival.draw(rng));
        };
        for (std::int64_t k = 0; k < warmup; ++k) step();
        for (std::size_t b = 0; b < batches; ++b) {
            double acc = 0.0;
            for (std::int64_t k = 0; k < batch_len; ++k) {
                acc += w;
                step();
            }
            values[r * batches + b] = acc / static_cast<double>(batch_len);
        }
    });
    auto out = summarize(values);
    out.replications_used = cfg.replications;
    return out;
}

}  // namespace madqueue
