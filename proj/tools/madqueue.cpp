// Command-line front end: bounds, tables, simulation, estimation, cross-checks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "madqueue/classical.hpp"
#include "madqueue/error.hpp"
#include "madqueue/estimate.hpp"
#include "madqueue/extremal.hpp"
#include "madqueue/lattice_oracle.hpp"
#include "madqueue/parallel.hpp"
#include "madqueue/serialize.hpp"
#include "madqueue/simulate.hpp"
#include "madqueue/steady_state.hpp"
#include "madqueue/tables.hpp"
#include "madqueue/transient.hpp"

using namespace madqueue;

namespace {

struct SetFlags {
    std::optional<double> a, b, mu, mad, beta;
    std::string json;

    void attach(CLI::App* cmd) {
        cmd->add_option("--a", a, "Lower end of the support");
        cmd->add_option("--b", b, "Upper end of the support");
        cmd->add_option("--mu", mu, "Mean");
        cmd->add_option("--mad", mad, "Mean absolute deviation");
        cmd->add_option("--beta", beta, "P(X >= mu), lower bounds only");
        cmd->add_option("--set", json, "Ambiguity set as JSON");
    }

    AmbiguitySet get() const {
        if (!json.empty()) return parse_ambiguity(json);
        if (!a || !b || !mu || !mad)
            throw Error(ErrorCode::BadParameter, "give --set or all of --a --b --mu --mad");
        return {*a, *b, *mu, *mad, beta};
    }
};

struct ContourFlags {
    ContourConfig cfg;
    std::string method = "auto";

    void attach(CLI::App* cmd) {
        cmd->add_option("--offset", cfg.offset_fraction, "Contour abscissa as a fraction of the Cramer root");
        cmd->add_option("--tail-tol", cfg.tail_tol, "Tolerance on growing the contour height");
        cmd->add_option("--quad-tol", cfg.quad_tol, "Absolute quadrature tolerance");
        cmd->add_option("--max-height", cfg.max_height, "Largest contour height");
        cmd->add_option("--method", method, "auto, lattice or line")
            ->check(CLI::IsMember({"auto", "lattice", "line"}));
    }

    ContourConfig get() const {
        ContourConfig c = cfg;
        c.method = method == "lattice" ? ContourMethod::Lattice
                   : method == "line"  ? ContourMethod::Line
                                       : ContourMethod::Auto;
        return validate(c);
    }
};

struct SimFlags {
    SimConfig cfg;

    void attach(CLI::App* cmd, std::int64_t reps, std::int64_t horizon) {
        cfg.replications = reps;
        cfg.horizon = horizon;
        cmd->add_option("--reps", cfg.replications, "Replications")->capture_default_str();
        cmd->add_option("--horizon", cfg.horizon, "Steps per replication")->capture_default_str();
        cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
        cmd->add_option("--batches", cfg.batch_count, "Batches for steady-state estimates")->capture_default_str();
    }
};

std::string contour_note(const ContourConfig& c) {
    return fmt::format("offset_fraction={} tail_tol={} quad_tol={} max_height={}", c.offset_fraction,
                       c.tail_tol, c.quad_tol, c.max_height);
}

std::string sim_note(const SimConfig& s) {
    return fmt::format("replications={} horizon={} seed={} batch_count={} warmup={}", s.replications,
                       s.horizon, s.seed, s.batch_count, s.warmup_fraction);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::BadParameter, fmt::format("cannot read '{}' as a number", item));
        }
    }
    return out;
}

RangeMode parse_range(const std::string& text) {
    if (text == "observed") return range::ObservedMinMax{};
    if (text.rfind("k=", 0) == 0) return range::RuleK{parse_list(text.substr(2)).at(0)};
    const auto v = parse_list(text);
    if (v.size() != 2) throw Error(ErrorCode::BadParameter, "range must be 'observed', 'k=<k>' or 'a,b'");
    return range::Explicit{v[0], v[1]};
}

void print_value(const std::vector<std::string>& notes, double value, int precision) {
    for (const auto& n : notes) std::cout << "# " << n << '\n';
    std::cout << fmt::format("{:.{}f}", value, precision) << '\n';
}

void emit_table(const Table& t, const std::string& path, int precision) {
    if (path.empty() || path == "-") {
        write_csv(t, std::cout, precision);
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, fmt::format("cannot write {}", path));
    write_csv(t, out, precision);
    if (!out) throw Error(ErrorCode::IoError, fmt::format("write to {} failed", path));
}

int fail(std::string_view code, const std::string& message, int status) {
    std::cerr << "error: " << code << ": " << message << '\n';
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mean-MAD tight bounds for random-walk maxima and GI/G/1 waiting times"};
    app.require_subcommand(1);
    app.fallthrough();
    std::optional<std::size_t> threads;
    app.add_option("--threads", threads, "Worker threads (default: MADQUEUE_THREADS or all cores)");
    int precision = 5;
    app.add_option("--precision", precision, "Decimals in printed values")->capture_default_str();

    // bound
    auto* bound = app.add_subcommand("bound", "Evaluate one bound");
    std::string mode;
    bound->add_option("mode", mode, "rw-upper, rw-lower, gg1-upper, gg1-lower, kingman, daley, chen-whitt, bracket")
        ->required()
        ->check(CLI::IsMember({"rw-upper", "rw-lower", "gg1-upper", "gg1-lower", "kingman", "daley",
                               "chen-whitt", "bracket"}));
    SetFlags walk_set;
    walk_set.attach(bound);
    std::string arrival_json, service_json;
    bound->add_option("--arrival", arrival_json, "Interarrival ambiguity set as JSON");
    bound->add_option("--service", service_json, "Service ambiguity set as JSON");
    std::optional<int> horizon;
    bool steady = false;
    int order = 1;
    std::optional<double> sigma;
    bound->add_option("--n", horizon, "Transient horizon");
    bound->add_flag("--steady", steady, "Steady state");
    bound->add_option("--m", order, "Cumulant order for steady-state bounds")->capture_default_str();
    bound->add_option("--sigma", sigma, "Standard deviation (bracket mode)");
    ContourFlags bound_contour;
    bound_contour.attach(bound);

    // table
    auto* table = app.add_subcommand("table", "Regenerate a table as CSV");
    std::string table_id;
    table->add_option("id", table_id, "trunc, gg1_main, ec_unscaled, ec_cov_grid, mape, or ec2..ec9")
        ->required()
        ->check(CLI::IsMember({"trunc", "gg1_main", "ec_unscaled", "ec_cov_grid", "mape", "ec2", "ec3",
                               "ec4", "ec5", "ec6", "ec7", "ec8", "ec9"}));
    std::string out_path, rho_list, k_list = "1.5,1.75,2,2.25,2.5,3", size_list = "150,500,2000,10000";
    double cu2 = 0.5, cv2 = 0.5, service_top = 5.0;
    bool scaled = false, with_sim = false;
    int paths = 100;
    std::string range_mode = "known";
    table->add_option("--out", out_path, "Output file (default stdout)");
    table->add_option("--rho", rho_list, "Comma-separated traffic intensities");
    table->add_option("--k", k_list, "Range multipliers (trunc)")->capture_default_str();
    table->add_option("--cu2", cu2, "Squared CoV of interarrival times (ec_cov_grid)")->capture_default_str();
    table->add_option("--cv2", cv2, "Squared CoV of service times (ec_cov_grid)")->capture_default_str();
    table->add_flag("--scaled", scaled, "Report (1 - rho) E[W] / rho (ec_cov_grid)");
    table->add_flag("--simulate", with_sim, "Add simulated E[W] (trunc)");
    table->add_option("--service-max", service_top, "Service times U(0, x) (mape)")->capture_default_str();
    table->add_option("--paths", paths, "Sample paths per size (mape)")->capture_default_str();
    table->add_option("--sizes", size_list, "Sample sizes (mape)")->capture_default_str();
    table->add_option("--range-mode", range_mode, "known or observed (mape)")
        ->check(CLI::IsMember({"known", "observed"}));
    ContourFlags table_contour;
    table_contour.attach(table);
    SimFlags table_sim;
    table_sim.attach(table, 4, 2'000'000);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates");
    std::string sim_kind;
    simulate->add_option("kind", sim_kind, "mm1, walk or lindley")->required()->check(CLI::IsMember({"mm1", "walk", "lindley"}));
    double sim_rho = 0.5;
    std::string law_json, arrival_law, service_law, extremal;
    std::optional<int> sim_n;
    simulate->add_option("--rho", sim_rho, "Traffic intensity (mm1)")->capture_default_str();
    simulate->add_option("--law", law_json, "Step law as JSON {points, probs} (walk)");
    simulate->add_option("--extremal", extremal, "upper or lower: use the extremal law of the set (walk)")
        ->check(CLI::IsMember({"upper", "lower"}));
    simulate->add_option("--arrival-law", arrival_law, "Interarrival law as JSON (lindley)");
    simulate->add_option("--service-law", service_law, "Service law as JSON (lindley)");
    simulate->add_option("--n", sim_n, "Horizon for walk maxima or transient waiting times");
    SetFlags sim_set;
    sim_set.attach(simulate);
    SimFlags sim_flags;
    sim_flags.attach(simulate, 4, 2'000'000);

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Fit ambiguity sets to samples and bound E[W]");
    std::string arrivals_file, services_file, column, range_all = "observed", arrival_range, service_range;
    estimate->add_option("--arrivals", arrivals_file, "Interarrival samples")->required();
    estimate->add_option("--services", services_file, "Service samples")->required();
    estimate->add_option("--column", column, "CSV column holding the samples");
    estimate->add_option("--range", range_all, "observed, k=<k> or a,b")->capture_default_str();
    estimate->add_option("--arrival-range", arrival_range, "Override --range for interarrival times");
    estimate->add_option("--service-range", service_range, "Override --range for service times");
    ContourFlags est_contour;
    est_contour.attach(estimate);

    // crosscheck
    auto* crosscheck = app.add_subcommand("crosscheck", "Compare the root-finding oracle with the contour integral");
    double xa = 0, xb = 0, xmu = 0, xmad = 0;
    int xm = 1;
    crosscheck->add_option("--a", xa, "Lower end, a multiple of mu")->required();
    crosscheck->add_option("--b", xb, "Upper end, a multiple of -mu")->required();
    crosscheck->add_option("--mu", xmu, "Negative mean")->required();
    crosscheck->add_option("--mad", xmad, "Mean absolute deviation")->required();
    crosscheck->add_option("--m", xm, "Cumulant order")->capture_default_str();
    ContourFlags cross_contour;
    cross_contour.attach(crosscheck);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("UsageError", e.what(), 2);
    }

    try {
        if (threads) set_thread_count(*threads);

        if (bound->parsed()) {
            const auto cfg = bound_contour.get();
            const std::string cfg_note = "contour " + contour_note(cfg);
            auto queue = [&] {
                if (arrival_json.empty() || service_json.empty())
                    throw Error(ErrorCode::BadParameter, "give --arrival and --service");
                return QueueSpec{parse_ambiguity(arrival_json), parse_ambiguity(service_json)};
            };
            auto need_horizon = [&] {
                if (!horizon && !steady) throw Error(ErrorCode::BadParameter, "give --n or --steady");
                if (horizon && steady) throw Error(ErrorCode::BadParameter, "--n and --steady exclude each other");
            };
            if (mode == "rw-upper" || mode == "rw-lower") {
                need_horizon();
                const auto set = walk_set.get();
                const bool up = mode == "rw-upper";
                if (horizon) {
                    const auto r = up ? upper_bound_spitzer(set, *horizon) : lower_bound_spitzer(set, *horizon);
                    print_value({fmt::format("{} bound on E[M_n], n={}, Spitzer sum over the {} law", to_string(r.direction),
                                             *horizon, up ? "three-point" : "two-point")},
                                r.value, precision);
                } else {
                    const auto r = up ? cumulant_upper(set, order, cfg) : cumulant_lower(set, order, cfg);
                    print_value({fmt::format("{} bound on c_{}(M), contour method={}", to_string(r.direction), order,
                                             to_string(r.method_used)),
                                 cfg_note},
                                r.value, precision);
                }
            } else if (mode == "gg1-upper" || mode == "gg1-lower") {
                need_horizon();
                const auto spec = queue();
                const bool up = mode == "gg1-upper";
                if (horizon) {
                    const auto r = up ? gg1_transient_upper(spec, *horizon) : gg1_transient_lower(spec, *horizon);
                    print_value({fmt::format("{} bound on E[W_n], n={}", to_string(r.direction), *horizon)}, r.value,
                                precision);
                } else {
                    const auto r = up ? gg1_cumulant_upper(spec, order, cfg) : gg1_cumulant_lower(spec, order, cfg);
                    print_value({fmt::format("{} bound on c_{}(W), rho={}, contour method={}", to_string(r.direction),
                                             order, spec.rho(), to_string(r.method_used)),
                                 cfg_note},
                                r.value, precision);
                }
            } else if (mode == "kingman" || mode == "daley" || mode == "chen-whitt") {
                const auto m = moments_from_sets(queue());
                const double v = mode == "kingman" ? kingman(m) : mode == "daley" ? daley(m) : chen_whitt(m);
                print_value({fmt::format("{} bound on E[W] with variances d (b - a) / 2: var_u={} var_v={}", mode,
                                         m.var_u, m.var_v)},
                            v, precision);
            } else {
                if (!walk_set.a || !walk_set.b || !walk_set.mu || !sigma)
                    throw Error(ErrorCode::BadParameter, "bracket needs --a --b --mu --sigma");
                const auto env = mad_bracket_bound(*walk_set.mu, *sigma, *walk_set.a, *walk_set.b,
                                                   horizon ? std::optional<int>(*horizon) : std::nullopt, order, cfg);
                std::cout << fmt::format("# mean-MAD envelopes at d_min={} and d_max={}\n", env.d_min, env.d_max);
                std::cout << "lower_env,upper_env\n"
                          << fmt::format("{:.{}f},{:.{}f}\n", env.lower_env, precision, env.upper_env, precision);
            }
        } else if (table->parsed()) {
            const auto cfg = table_contour.get();
            const auto rhos = rho_list.empty() ? kDefaultRhos : parse_list(rho_list);
            Table t;
            if (table_id == "gg1_main") {
                t = gg1_main_table(rhos, true, cfg);
            } else if (table_id == "ec_unscaled") {
                t = gg1_main_table(rhos, false, cfg);
            } else if (table_id == "ec_cov_grid" || table_id.size() == 3) {
                if (table_id != "ec_cov_grid") {
                    // ec2-ec5 unscaled, ec6-ec9 scaled, cycling (0.5,0.5) (4,4) (4,0.5) (0.5,4)
                    const int idx = table_id[2] - '2';
                    static const double cu[] = {0.5, 4.0, 4.0, 0.5};
                    static const double cv[] = {0.5, 4.0, 0.5, 4.0};
                    cu2 = cu[idx % 4];
                    cv2 = cv[idx % 4];
                    scaled = idx >= 4;
                }
                t = ec_cov_table(cu2, cv2, scaled, rhos, cfg);
            } else if (table_id == "trunc") {
                const auto trunc_rhos = rho_list.empty() ? std::vector<double>{0.1, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99}
                                                         : rhos;
                t = trunc_table(trunc_rhos, parse_list(k_list),
                                with_sim ? std::optional<SimConfig>(table_sim.cfg) : std::nullopt, cfg);
            } else {
                MapeConfig m;
                m.arrival = Sampler::uniform(0.0, 10.0);
                m.service = Sampler::uniform(0.0, service_top);
                m.truth = {{0.0, 10.0, 5.0, 2.5, 0.5}, {0.0, service_top, service_top / 2, service_top / 4, 0.5}};
                if (range_mode == "known") {
                    m.arrival_range = range::Explicit{0.0, 10.0};
                    m.service_range = range::Explicit{0.0, service_top};
                }
                m.sample_sizes.clear();
                for (double n : parse_list(size_list)) m.sample_sizes.push_back(static_cast<std::int64_t>(n));
                m.paths = paths;
                m.seed = table_sim.cfg.seed;
                t = mape_table(m);
                t.provenance.insert(t.provenance.begin(),
                                    fmt::format("interarrival U(0,10), service U(0,{}), range mode {}", service_top,
                                                range_mode));
            }
            emit_table(t, out_path, precision);
        } else if (simulate->parsed()) {
            SimConfig cfg = sim_flags.cfg;
            SimEstimate est;
            std::string note;
            if (sim_kind == "mm1") {
                est = simulate_lindley(Sampler::exponential(1.0), Sampler::exponential(sim_rho), cfg,
                                       LindleyMode::SteadyState);
                note = fmt::format("M/M/1 steady-state E[W], rho={}, exact {}", sim_rho,
                                   sim_rho * sim_rho / (1.0 - sim_rho));
            } else if (sim_kind == "walk") {
                if (!sim_n) throw Error(ErrorCode::BadParameter, "walk needs --n");
                DiscreteDistribution law;
                if (!law_json.empty()) {
                    law = parse_distribution(law_json);
                } else {
                    const auto set = sim_set.get();
                    law = extremal == "lower" ? best_case_two_point(set) : worst_case_three_point(set);
                }
                cfg.horizon = *sim_n;
                est = simulate_max(Sampler::discrete(law), *sim_n, cfg);
                note = fmt::format("E[M_n], n={}", *sim_n);
            } else {
                if (arrival_law.empty() || service_law.empty())
                    throw Error(ErrorCode::BadParameter, "lindley needs --arrival-law and --service-law");
                const auto u = Sampler::discrete(parse_distribution(arrival_law));
                const auto v = Sampler::discrete(parse_distribution(service_law));
                if (sim_n) {
                    cfg.horizon = *sim_n;
                    est = simulate_lindley(u, v, cfg, LindleyMode::Transient);
                    note = fmt::format("E[W_n], n={}", *sim_n);
                } else {
                    est = simulate_lindley(u, v, cfg, LindleyMode::SteadyState);
                    note = "steady-state E[W] by batch means";
                }
            }
            std::cout << "# " << note << '\n' << "# " << sim_note(cfg) << '\n';
            std::cout << "mean,std_error,replications\n"
                      << fmt::format("{:.{}f},{:.{}f},{}\n", est.mean, precision, est.std_error, precision,
                                     est.replications_used);
        } else if (estimate->parsed()) {
            const auto cfg = est_contour.get();
            const std::optional<std::string> col = column.empty() ? std::nullopt : std::optional(column);
            const auto u = read_samples(arrivals_file, col);
            const auto v = read_samples(services_file, col);
            const QueueSpec spec{build_ambiguity(u, parse_range(arrival_range.empty() ? range_all : arrival_range)),
                                 build_ambiguity(v, parse_range(service_range.empty() ? range_all : service_range))};
            nlohmann::json out;
            out["arrival"] = spec.arrival;
            out["service"] = spec.service;
            out["rho"] = spec.rho();
            out["upper"] = gg1_cumulant_upper(spec, 1, cfg).value;
            out["lower"] = gg1_cumulant_lower(spec, 1, cfg).value;
            std::cout << out.dump(2) << '\n';
        } else if (crosscheck->parsed()) {
            const auto r = cross_check(xa, xmu, xb, xmad, xm, cross_contour.get());
            std::cout << fmt::format("# c_{}(M) from unit-disk roots vs contour integral\n", xm)
                      << "oracle,contour,abs_diff\n"
                      << fmt::format("{:.12f},{:.12f},{:.3e}\n", r.oracle, r.contour, r.abs_diff);
        }
    } catch (const Error& e) {
        return fail(to_string(e.code()), e.what(), exit_code(e.code()));
    } catch (const std::exception& e) {
        return fail("Internal", e.what(), 3);
    }
    return 0;
}
