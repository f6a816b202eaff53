#pragma once

#include <complex>
#include <vector>

#include "madqueue/steady_state.hpp"

namespace madqueue {

/// Walk with steps in {-s, -1, m} (times beta_scale) seen as a bulk-service
/// queue whose arrivals per slot are A = X + s with pgf p_a + p_mu z^(s-1) + p_b z^(m+s).
struct BulkServiceInstance {
    int s = 2;
    int m_big = 1;
    double beta_scale = 1.0;
    /// MAD of the normalised step law (support {-s, -1, m}).
    double d = 0.0;
    double p_a = 0.0;
    double p_mu = 1.0;
    double p_b = 0.0;

    /// Coefficients of E[z^A] indexed by power, length m + s + 1.
    std::vector<double> pgf_coeffs() const;
    double mean_arrivals() const { return (s - 1) * p_mu + (m_big + s) * p_b; }
};

/// Throws NotCommensurate unless a = -s |mu| and b = m |mu| for integers
/// s >= 2, m >= 1 (within 1e-9). Requires mu < 0.
BulkServiceInstance from_three_point(double a, double mu, double b, double d);

/// The s - 1 zeros of z^s - E[z^A] inside the open unit disk, polished by
/// Newton steps. Throws RootCountMismatch if the count is wrong.
std::vector<std::complex<double>> unit_disk_roots(const BulkServiceInstance& inst);

/// Smallest real zero above 1, or 0 if there is none (diagnostic only).
double outer_real_root(const BulkServiceInstance& inst);

/// c_order(M) for the original (unnormalised) walk, from the product formula
/// for the pgf of M differentiated as a power series at w = 1.
double waiting_pgf_cumulant(const BulkServiceInstance& inst, int order);

struct CrossCheck {
    double oracle = 0.0;
    double contour = 0.0;
    double abs_diff = 0.0;
};

CrossCheck cross_check(double a, double mu, double b, double d, int order,
                       const ContourConfig& cfg = {});

}  // namespace madqueue
