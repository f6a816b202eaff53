#include "madqueue/lattice_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "madqueue/error.hpp"
#include "madqueue/extremal.hpp"

namespace madqueue {

using Cplx = std::complex<double>;

namespace {

int integer_ratio(double num, double den, const char* what) {
    const double r = num / den;
    const double n = std::round(r);
    if (std::abs(r - n) > 1e-9 * std::max(1.0, std::abs(r)))
        throw Error(ErrorCode::NotCommensurate,
                    fmt::format("{} / |mu| = {} is not an integer", what, r));
    return static_cast<int>(n);
}

/// z^s - A(z), coefficients by ascending power.
std::vector<double> characteristic(const BulkServiceInstance& inst) {
    auto c = inst.pgf_coeffs();
    for (double& x : c) x = -x;
    c[static_cast<std::size_t>(inst.s)] += 1.0;
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    return c;
}

/// Divides by (z - 1); the remainder is dropped (it is zero up to rounding).
std::vector<double> deflate_at_one(const std::vector<double>& c) {
    const std::size_t deg = c.size() - 1;
    std::vector<double> q(deg, 0.0);
    double carry = 0.0;
    for (std::size_t k = deg; k-- > 0;) {
        carry = c[k + 1] + carry;
        q[k] = carry;
    }
    return q;
}

Cplx horner(const std::vector<double>& c, Cplx z) {
    Cplx acc{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

Cplx horner_deriv(const std::vector<double>& c, Cplx z) {
    Cplx acc{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
    return acc;
}

std::vector<Cplx> all_roots(const std::vector<double>& c) {
    const auto deg = static_cast<Eigen::Index>(c.size() - 1);
    if (deg < 1) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (Eigen::Index i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::RootCountMismatch, "companion eigenvalue solve failed");
    std::vector<Cplx> roots;
    for (Eigen::Index i = 0; i < deg; ++i) roots.push_back(solver.eigenvalues()[i]);
    return roots;
}

using Series = std::vector<Cplx>;

/// log(f / f[0]) as a truncated power series.
Series series_log(const Series& f) {
    const std::size_t n = f.size();
    Series out(n, Cplx{0.0, 0.0});
    for (std::size_t k = 1; k < n; ++k) {
        Cplx acc = static_cast<double>(k) * f[k];
        for (std::size_t j = 1; j < k; ++j) acc -= static_cast<double>(j) * out[j] * f[k - j];
        out[k] = acc / (static_cast<double>(k) * f[0]);
    }
    return out;
}

}  // namespace

std::vector<double> BulkServiceInstance::pgf_coeffs() const {
    std::vector<double> c(static_cast<std::size_t>(m_big + s + 1), 0.0);
    c[0] += p_a;
    c[static_cast<std::size_t>(s - 1)] += p_mu;
    c[static_cast<std::size_t>(m_big + s)] += p_b;
    return c;
}

BulkServiceInstance from_three_point(double a, double mu, double b, double d) {
    if (!(mu < 0.0)) throw Error(ErrorCode::BadParameter, "the oracle needs mu < 0");
    const double scale = -mu;
    const int s = integer_ratio(-a, scale, "-a");
    const int m = integer_ratio(b, scale, "b");
    if (s < 2 || m < 1)
        throw Error(ErrorCode::NotCommensurate,
                    fmt::format("need a = -s|mu| with s >= 2 and b = m|mu| with m >= 1, got s={} m={}",
                                s, m));
    validate(AmbiguitySet{a, b, mu, d, std::nullopt});
    BulkServiceInstance inst;
    inst.s = s;
    inst.m_big = m;
    inst.beta_scale = scale;
    inst.d = d / scale;
    inst.p_a = inst.d / (2.0 * (s - 1));
    inst.p_b = inst.d / (2.0 * (m + 1));
    inst.p_mu = 1.0 - inst.p_a - inst.p_b;
    if (inst.p_mu < 1e-12) inst.p_mu = 0.0;
    return inst;
}

std::vector<Cplx> unit_disk_roots(const BulkServiceInstance& inst) {
    const auto want = static_cast<std::size_t>(inst.s - 1);
    if (inst.d == 0.0) return std::vector<Cplx>(want, Cplx{0.0, 0.0});
    const auto full = characteristic(inst);
    auto roots = all_roots(deflate_at_one(full));
    // With no mass at -1 the steps {-s, m} can share a period g > 1; the
    // nontrivial g-th roots of unity then sit on the circle and belong to the set.
    const int period = std::gcd(inst.s, inst.m_big);
    const bool periodic = inst.p_mu == 0.0 && period > 1;
    std::vector<Cplx> inside;
    for (Cplx z : roots) {
        for (int it = 0; it < 4; ++it) {
            const Cplx dp = horner_deriv(full, z);
            if (std::abs(dp) == 0.0) break;
            const Cplx step = horner(full, z) / dp;
            z -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
        }
        if (std::abs(z) < 1.0 - 1e-10 || (periodic && std::abs(std::pow(z, period) - 1.0) < 1e-8))
            inside.push_back(z);
    }
    if (inside.size() != want)
        throw Error(ErrorCode::RootCountMismatch,
                    fmt::format("found {} roots inside the unit disk, expected {}", inside.size(), want));
    std::sort(inside.begin(), inside.end(), [](Cplx x, Cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return inside;
}

double outer_real_root(const BulkServiceInstance& inst) {
    if (inst.d == 0.0 || inst.p_b == 0.0) return 0.0;
    double best = 0.0;
    for (Cplx z : all_roots(deflate_at_one(characteristic(inst))))
        if (std::abs(z.imag()) < 1e-9 && z.real() > 1.0 + 1e-12 && (best == 0.0 || z.real() < best))
            best = z.real();
    return best;
}

double waiting_pgf_cumulant(const BulkServiceInstance& inst, int order) {
    if (order < 1) throw Error(ErrorCode::BadParameter, "cumulant order must be at least 1");
    if (inst.d == 0.0) return 0.0;
    const auto roots = unit_disk_roots(inst);
    const auto n = static_cast<std::size_t>(order + 1);

    // log of (w - z_k)/(1 - z_k) = log(1 + (e^t - 1)/(1 - z_k))
    Series total(n, Cplx{0.0, 0.0});
    for (Cplx z : roots) {
        Series f(n, Cplx{0.0, 0.0});
        f[0] = 1.0;
        double fact = 1.0;
        for (std::size_t k = 1; k < n; ++k) {
            fact *= static_cast<double>(k);
            f[k] = 1.0 / (fact * (1.0 - z));
        }
        const auto lf = series_log(f);
        for (std::size_t k = 0; k < n; ++k) total[k] += lf[k];
    }
    // minus log Q(e^t)/Q(1) with Q(w) = (w^s - A(w)) / (w - 1)
    const auto q = deflate_at_one(characteristic(inst));
    Series qs(n, Cplx{0.0, 0.0});
    for (std::size_t j = 0; j < q.size(); ++j) {
        double term = q[j];
        for (std::size_t k = 0; k < n; ++k) {
            qs[k] += term;
            term *= static_cast<double>(j) / static_cast<double>(k + 1);
        }
    }
    const auto lq = series_log(qs);
    for (std::size_t k = 0; k < n; ++k) total[k] -= lq[k];

    double fact = 1.0;
    for (int k = 2; k <= order; ++k) fact *= k;
    const double c_beta = total[static_cast<std::size_t>(order)].real() * fact;
    return std::pow(inst.beta_scale, order) * c_beta;
}

CrossCheck cross_check(double a, double mu, double b, double d, int order, const ContourConfig& cfg) {
    const auto inst = from_three_point(a, mu, b, d);
    CrossCheck out;
    if (d == 0.0) return out;
    out.oracle = waiting_pgf_cumulant(inst, order);
    out.contour = cumulant_upper(AmbiguitySet{a, b, mu, d, std::nullopt}, order, cfg).value;
    out.abs_diff = std::abs(out.oracle - out.contour);
    return out;
}

}  // namespace madqueue
