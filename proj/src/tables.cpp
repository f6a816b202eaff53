#include "madqueue/tables.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "madqueue/classical.hpp"
#include "madqueue/parallel.hpp"

namespace madqueue {

namespace {

std::string contour_note(const ContourConfig& cfg) {
    return fmt::format("contour offset_fraction={} tail_tol={} quad_tol={} max_height={} method={}",
                       cfg.offset_fraction, cfg.tail_tol, cfg.quad_tol, cfg.max_height,
                       to_string(cfg.method));
}

std::string sim_note(const SimConfig& sim) {
    return fmt::format("simulation replications={} horizon={} seed={} batch_count={} warmup={}",
                       sim.replications, sim.horizon, sim.seed, sim.batch_count, sim.warmup_fraction);
}

Table grid_table(const std::vector<QueueSpec>& specs, bool scaled, const ContourConfig& cfg) {
    Table t;
    t.header = {"rho", "tight", "chen_whitt", "daley", "kingman"};
    std::vector<GridRow> rows(specs.size());
    parallel_for(specs.size(), [&](std::size_t i) { rows[i] = bound_row(specs[i], scaled, cfg); });
    for (const auto& r : rows) t.rows.push_back({r.rho, r.tight, r.chen_whitt, r.daley, r.kingman});
    t.provenance.push_back(scaled ? "quantity (1-rho) E[W] / rho" : "quantity E[W]");
    t.provenance.push_back("tight: contour integral over the extremal three-point laws; classical bounds use variances d (b - a) / 2");
    t.provenance.push_back(contour_note(cfg));
    return t;
}

}  // namespace

void write_csv(const Table& table, std::ostream& out, int precision) {
    for (const auto& line : table.provenance) out << "# " << line << '\n';
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << fmt::format("{:.{}f}", row[i], precision);
        out << '\n';
    }
}

QueueSpec bounded_queue(double rho, double d_u, double d_v, double b_u, double b_v) {
    return {{0.0, b_u, 1.0, d_u, std::nullopt}, {0.0, b_v, rho, d_v, std::nullopt}};
}

QueueSpec cov_queue(double rho, double cu2, double cv2) {
    return bounded_queue(rho, 2.0 * cu2 / 10.0, 2.0 * rho * rho * cv2 / 10.0);
}

GridRow bound_row(const QueueSpec& spec, bool scaled, const ContourConfig& cfg) {
    const auto moments = moments_from_sets(spec);
    const double rho = spec.rho();
    const double f = scaled ? (1.0 - rho) / rho : 1.0;
    return {rho, f * gg1_cumulant_upper(spec, 1, cfg).value, f * chen_whitt(moments),
            f * daley(moments), f * kingman(moments)};
}

Table gg1_main_table(const std::vector<double>& rhos, bool scaled, const ContourConfig& cfg) {
    std::vector<QueueSpec> specs;
    for (double rho : rhos) specs.push_back(bounded_queue(rho, 1.0, 0.1));
    auto t = grid_table(specs, scaled, cfg);
    t.provenance.insert(t.provenance.begin(), "arrival (mu,d,a,b)=(1,1,0,10); service (rho,0.1,0,10)");
    return t;
}

Table ec_cov_table(double cu2, double cv2, bool scaled, const std::vector<double>& rhos,
                   const ContourConfig& cfg) {
    std::vector<QueueSpec> specs;
    for (double rho : rhos) specs.push_back(cov_queue(rho, cu2, cv2));
    auto t = grid_table(specs, scaled, cfg);
    t.provenance.insert(t.provenance.begin(),
                        fmt::format("arrival (1,2cu2/10,0,10); service (rho,2rho^2cv2/10,0,10); cu2={} cv2={}",
                                    cu2, cv2));
    return t;
}

double mm1_increment_mad(double rho) { return mad_of_family(family::MM1Increment{rho}); }

AmbiguitySet mm1_rule_set(double rho, double k) {
    const double mu = rho - 1.0;
    const double d = mm1_increment_mad(rho);
    const auto [a, b] = range_from_rule(mu, d, k);
    return {a, b, mu, d, std::nullopt};
}

Table trunc_table(const std::vector<double>& rhos, const std::vector<double>& ks,
                  const std::optional<SimConfig>& sim, const ContourConfig& cfg) {
    Table t;
    t.provenance.push_back("M/M/1 increment V - U, mu = rho - 1, d = 2 exp(rho - 1) / (rho + 1), range mu +- k d");
    t.provenance.push_back(contour_note(cfg));
    t.header = {"rho", "EW"};
    for (double k : ks) t.header.push_back(fmt::format("k={}", k));
    if (sim) {
        t.header.push_back("EW_sim");
        t.header.push_back("EW_sim_se");
        t.provenance.push_back(sim_note(*sim));
    }
    const std::size_t cols = ks.size();
    std::vector<double> cells(rhos.size() * cols);
    parallel_for(cells.size(), [&](std::size_t i) {
        cells[i] = cumulant_upper(mm1_rule_set(rhos[i / cols], ks[i % cols]), 1, cfg).value;
    });
    for (std::size_t r = 0; r < rhos.size(); ++r) {
        const double rho = rhos[r];
        std::vector<double> row = {rho, rho * rho / (1.0 - rho)};
        row.insert(row.end(), cells.begin() + static_cast<std::ptrdiff_t>(r * cols),
                   cells.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
        if (sim) {
            SimConfig c = *sim;
            c.seed = sim->seed + r;
            const auto est = simulate_lindley(Sampler::exponential(1.0), Sampler::exponential(rho), c,
                                              LindleyMode::SteadyState);
            row.push_back(est.mean);
            row.push_back(est.std_error);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table mape_table(const MapeConfig& cfg) {
    const auto res = mape_experiment(cfg);
    Table t;
    t.provenance.push_back(fmt::format("MAPE of estimated E[W] bounds; paths={} seed={}", cfg.paths, cfg.seed));
    t.provenance.push_back(fmt::format("true upper={:.6f} true lower={:.6f}", res.true_upper, res.true_lower));
    t.provenance.push_back(contour_note(cfg.contour));
    t.header = {"n", "ub_mape_pct", "lb_mape_pct", "redraws"};
    for (const auto& r : res.rows)
        t.rows.push_back({static_cast<double>(r.n), r.upper_mape, r.lower_mape, static_cast<double>(r.redraws)});
    return t;
}

}  // namespace madqueue
