#include "madqueue/estimate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "madqueue/error.hpp"
#include "madqueue/parallel.hpp"

namespace madqueue {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& text, const std::filesystem::path& path, std::size_t line) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw Error(ErrorCode::IoError,
                    fmt::format("{}:{}: cannot read '{}' as a number", path.string(), line, text));
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::vector<double> draw_many(const Sampler& s, std::int64_t n, Rng& rng) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& x : out) x = s.draw(rng);
    return out;
}

}  // namespace

Estimates estimate_parameters(const SampleSet& samples) {
    if (samples.n() < 2)
        throw Error(ErrorCode::TooFewSamples, fmt::format("need at least 2 samples, got {}", samples.n()));
    double sum = 0.0;
    for (double x : samples.values) {
        if (!std::isfinite(x)) throw Error(ErrorCode::BadParameter, "samples must be finite");
        sum += x;
    }
    const double n = static_cast<double>(samples.n());
    Estimates est;
    est.mu = sum / n;
    double dev = 0.0;
    std::size_t above = 0;
    for (double x : samples.values) {
        dev += std::abs(x - est.mu);
        if (x >= est.mu) ++above;
    }
    est.d = dev / n;
    est.beta = static_cast<double>(above) / n;
    return est;
}

AmbiguitySet build_ambiguity(const SampleSet& samples, const RangeMode& mode) {
    const auto est = estimate_parameters(samples);
    AmbiguitySet set{0.0, 0.0, est.mu, est.d, est.beta};
    if (std::holds_alternative<range::ObservedMinMax>(mode)) {
        const auto [lo, hi] = std::minmax_element(samples.values.begin(), samples.values.end());
        const double pad = 1e-9 * (*hi - *lo);
        set.a = *lo - pad;
        set.b = *hi + pad;
    } else if (const auto* rule = std::get_if<range::RuleK>(&mode)) {
        std::tie(set.a, set.b) = range_from_rule(est.mu, est.d, rule->k);
    } else {
        const auto& ex = std::get<range::Explicit>(mode);
        set.a = ex.a;
        set.b = ex.b;
    }
    validate(set);
    return set;
}

SampleSet read_samples(const std::filesystem::path& path, const std::optional<std::string>& column) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open {}", path.string()));
    SampleSet out;
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::size_t> col_index;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (!column) {
            out.values.push_back(parse_number(line, path, line_no));
            continue;
        }
        const auto cells = split_csv(line);
        if (!col_index) {
            const auto it = std::find(cells.begin(), cells.end(), *column);
            if (it == cells.end())
                throw Error(ErrorCode::IoError,
                            fmt::format("{}: no column named '{}'", path.string(), *column));
            col_index = static_cast<std::size_t>(it - cells.begin());
            continue;
        }
        if (*col_index >= cells.size())
            throw Error(ErrorCode::IoError, fmt::format("{}:{}: missing column", path.string(), line_no));
        out.values.push_back(parse_number(cells[*col_index], path, line_no));
    }
    if (in.bad()) throw Error(ErrorCode::IoError, fmt::format("read error on {}", path.string()));
    return out;
}

MapeResult mape_experiment(const MapeConfig& cfg) {
    if (cfg.paths < 1) throw Error(ErrorCode::BadParameter, "paths must be positive");
    MapeResult result;
    result.true_upper = gg1_cumulant_upper(cfg.truth, 1, cfg.contour).value;
    result.true_lower = gg1_cumulant_lower(cfg.truth, 1, cfg.contour).value;

    for (std::size_t si = 0; si < cfg.sample_sizes.size(); ++si) {
        const std::int64_t n = cfg.sample_sizes[si];
        std::vector<double> up(static_cast<std::size_t>(cfg.paths)), lo(up.size());
        std::vector<std::int64_t> redraws(up.size(), 0);
        parallel_for(up.size(), [&](std::size_t p) {
            for (std::uint64_t attempt = 0;; ++attempt) {
                const std::uint64_t stream = (static_cast<std::uint64_t>(si) << 48) ^
                                             (static_cast<std::uint64_t>(p) << 20) ^ attempt;
                Rng rng = replication_rng(cfg.seed, stream);
                const SampleSet u{draw_many(cfg.arrival, n, rng)};
                const SampleSet v{draw_many(cfg.service, n, rng)};
                try {
                    const QueueSpec spec{build_ambiguity(u, cfg.arrival_range),
                                         build_ambiguity(v, cfg.service_range)};
                    if (!(spec.rho() < 1.0)) throw Error(ErrorCode::Unstable, "estimated rho >= 1");
                    up[p] = std::abs(gg1_cumulant_upper(spec, 1, cfg.contour).value - result.true_upper) /
                            result.true_upper;
                    lo[p] = std::abs(gg1_cumulant_lower(spec, 1, cfg.contour).value - result.true_lower) /
                            result.true_lower;
                    return;
                } catch (const Error& e) {
                    switch (e.code()) {
                        case ErrorCode::Unstable:
                        case ErrorCode::BadRange:
                        case ErrorCode::InfeasibleMad:
                        case ErrorCode::InfeasibleBeta:
                            ++redraws[p];
                            if (attempt > 1000) throw;
                            break;
                        default: throw;
                    }
                }
            }
        });
        MapeRow row;
        row.n = n;
        for (std::size_t p = 0; p < up.size(); ++p) {
            row.upper_mape += up[p];
            row.lower_mape += lo[p];
            row.redraws += redraws[p];
        }
        row.upper_mape *= 100.0 / static_cast<double>(up.size());
        row.lower_mape *= 100.0 / static_cast<double>(up.size());
        result.rows.push_back(row);
    }
    return result;
}

}  // namespace madqueue
