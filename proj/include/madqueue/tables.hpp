#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "madqueue/estimate.hpp"
#include "madqueue/simulate.hpp"
#include "madqueue/steady_state.hpp"

namespace madqueue {

struct Table {
    /// Written as '#'-prefixed lines ahead of the header.
    std::vector<std::string> provenance;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Fixed-point CSV with `precision` decimals.
void write_csv(const Table& table, std::ostream& out, int precision = 5);

inline const std::vector<double> kDefaultRhos = {0.1, 0.2, 0.5, 0.7, 0.8, 0.9, 0.95, 0.99};

/// Queue with arrival (1, d_u, 0, b_u) and service (rho, d_v, 0, b_v).
QueueSpec bounded_queue(double rho, double d_u, double d_v, double b_u = 10.0, double b_v = 10.0);

/// MADs giving squared coefficients of variation cu2, cv2 for the extremal laws on [0, 10].
QueueSpec cov_queue(double rho, double cu2, double cv2);

struct GridRow {
    double rho;
    double tight;
    double chen_whitt;
    double daley;
    double kingman;
};

/// Tight E[W] bound and the three classical bounds; `scaled` multiplies
/// every column by (1 - rho) / rho.
GridRow bound_row(const QueueSpec& spec, bool scaled, const ContourConfig& cfg = {});

/// rho, tight, C&W, Daley, Kingman for arrival (1,1,0,10), service (rho,0.1,0,10).
Table gg1_main_table(const std::vector<double>& rhos, bool scaled, const ContourConfig& cfg = {});

/// Same columns with MADs fixed by squared coefficients of variation.
Table ec_cov_table(double cu2, double cv2, bool scaled, const std::vector<double>& rhos,
                   const ContourConfig& cfg = {});

/// MAD of V - U for the M/M/1 queue with unit mean interarrival times.
double mm1_increment_mad(double rho);

/// M/M/1 increment set: mu = rho - 1, MAD as above, range mu +- k d.
AmbiguitySet mm1_rule_set(double rho, double k);

/// rho, exact E[W], one column per k; plus simulated E[W] and its standard
/// error when `sim` is given.
Table trunc_table(const std::vector<double>& rhos, const std::vector<double>& ks,
                  const std::optional<SimConfig>& sim, const ContourConfig& cfg = {});

/// n, UB MAPE (%), LB MAPE (%), redraws.
Table mape_table(const MapeConfig& cfg);

}  // namespace madqueue
