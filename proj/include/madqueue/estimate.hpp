#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "madqueue/ambiguity.hpp"
#include "madqueue/simulate.hpp"
#include "madqueue/steady_state.hpp"

namespace madqueue {

struct SampleSet {
    std::vector<double> values;

    std::size_t n() const { return values.size(); }
};

struct Estimates {
    double mu = 0.0;
    double d = 0.0;
    /// Fraction of observations at or above the sample mean.
    double beta = 0.0;
};

/// Throws TooFewSamples below two observations and BadParameter on non-finite values.
Estimates estimate_parameters(const SampleSet& samples);

namespace range {
struct ObservedMinMax {};
struct RuleK {
    double k;
};
struct Explicit {
    double a;
    double b;
};
}  // namespace range

using RangeMode = std::variant<range::ObservedMinMax, range::RuleK, range::Explicit>;

/// Ambiguity set with (mu, d, beta) estimated from the samples and the range
/// from `mode`. Observed ranges are widened by 1e-9 (max - min).
AmbiguitySet build_ambiguity(const SampleSet& samples, const RangeMode& mode);

/// Reads one number per line ('#' starts a comment) or, when `column` is
/// given, the named column of a CSV file with a header row.
SampleSet read_samples(const std::filesystem::path& path,
                       const std::optional<std::string>& column = std::nullopt);

struct MapeConfig {
    Sampler arrival;
    Sampler service;
    /// Ambiguity sets of the true laws (betas required).
    QueueSpec truth;
    RangeMode arrival_range = range::ObservedMinMax{};
    RangeMode service_range = range::ObservedMinMax{};
    std::vector<std::int64_t> sample_sizes = {150, 500, 2000, 10000};
    int paths = 100;
    std::uint64_t seed = 1;
    /// Percent-level errors need far less than the default contour accuracy.
    ContourConfig contour{.tail_tol = 1e-6, .quad_tol = 1e-8};
};

struct MapeRow {
    std::int64_t n = 0;
    double upper_mape = 0.0;
    double lower_mape = 0.0;
    /// Paths redrawn because the estimate was unstable or infeasible.
    std::int64_t redraws = 0;
};

struct MapeResult {
    double true_upper = 0.0;
    double true_lower = 0.0;
    std::vector<MapeRow> rows;
};

/// Mean absolute percentage error of estimated E[W] bounds against the
/// bounds of the true sets. Unstable or infeasible sample paths are redrawn.
MapeResult mape_experiment(const MapeConfig& cfg);

}  // namespace madqueue
