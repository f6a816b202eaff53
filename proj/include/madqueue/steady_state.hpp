#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "madqueue/ambiguity.hpp"
#include "madqueue/distribution.hpp"
#include "madqueue/extremal.hpp"

namespace madqueue {

enum class ContourMethod { Auto, Lattice, Line };

const char* to_string(ContourMethod m);

struct ContourConfig {
    /// Contour abscissa as a fraction of the Cramer root.
    double offset_fraction = 0.5;
    /// Stop growing the line height once successive values agree to this.
    double tail_tol = 1e-9;
    /// Absolute quadrature tolerance on the raw integral.
    double quad_tol = 1e-9;
    /// Hard cap on |Im u| for the vertical line.
    double max_height = 1e6;
    ContourMethod method = ContourMethod::Auto;
    /// Also integrate over negative heights and report the imaginary residue.
    bool check_residue = false;
};

/// Throws BadParameter unless 0 < offset_fraction < 1 and tolerances are positive.
const ContourConfig& validate(const ContourConfig& cfg);

struct CumulantBound {
    int m = 1;
    double value = 0.0;
    Direction direction = Direction::Upper;
    ContourConfig contour;
    ContourMethod method_used = ContourMethod::Auto;
    double cramer_root = 0.0;
    /// Lattice span h, or zero on the line path.
    double span = 0.0;
    /// Final line height, or pi / h on the lattice path.
    double height = 0.0;
    double quad_error = 0.0;
    double imag_residue = 0.0;
    std::size_t panels = 0;
};

std::complex<double> mgf(const DiscreteDistribution& dist, std::complex<double> s);

/// Unique theta > 0 with E[exp(theta X)] = 1. Returns +infinity when X <= 0
/// almost surely. Throws NoPositiveDrift when E[X] >= 0.
double cramer_root(const DiscreteDistribution& dist);

struct Lattice {
    double span;
    std::vector<std::int64_t> index;
};

/// Finds h > 0 with every point an integer multiple of h (within ~1e-11
/// relative), using continued fractions on ratios to the smallest nonzero
/// point. Empty when the points are not commensurate with a modest index.
std::optional<Lattice> detect_lattice(std::span<const double> points);

/// m-th cumulant of M = sup_n S_n for i.i.d. steps from `law` (negative mean).
/// Lattice laws are integrated over one period of the periodised kernel;
/// others on a truncated vertical line with the mean of log(1 - phi)
/// subtracted and a smooth taper.
CumulantBound max_cumulant(const DiscreteDistribution& law, int m, const ContourConfig& cfg = {});

CumulantBound cumulant_upper(const AmbiguitySet& set, int m, const ContourConfig& cfg = {});
CumulantBound cumulant_lower(const AmbiguitySet& set, int m, const ContourConfig& cfg = {});

/// Cumulants of the steady-state GI/G/1 waiting time; throws Unstable if rho >= 1.
CumulantBound gg1_cumulant_upper(const QueueSpec& spec, int m, const ContourConfig& cfg = {});
CumulantBound gg1_cumulant_lower(const QueueSpec& spec, int m, const ContourConfig& cfg = {});

}  // namespace madqueue
