#include "madqueue/steady_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "madqueue/error.hpp"
#include "quadrature.hpp"

namespace madqueue {

using detail::Cplx;

namespace {

constexpr std::size_t kMaxPanels = 2'000'000;
constexpr std::int64_t kMaxLatticeIndex = 100'000;
constexpr std::int64_t kMaxDenominator = 10'000;
constexpr double kLatticeRelTol = 1e-11;

/// Drops zero-mass atoms; they play no part in the transform.
DiscreteDistribution charged_atoms(const DiscreteDistribution& law) {
    std::vector<double> xs, ps;
    for (std::size_t i = 0; i < law.size(); ++i) {
        if (law.probs()[i] > 0.0) {
            xs.push_back(law.points()[i]);
            ps.push_back(law.probs()[i]);
        }
    }
    return {xs, ps};
}

std::optional<std::pair<std::int64_t, std::int64_t>> best_rational(double r) {
    const double sign = r < 0 ? -1.0 : 1.0;
    const double target = std::abs(r);
    double x = target;
    std::int64_t p0 = 0, p1 = 1, q0 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(x);
        if (a > 1e12) return std::nullopt;
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t p = ai * p1 + p0;
        const std::int64_t q = ai * q1 + q0;
        if (q > kMaxDenominator) return std::nullopt;
        if (std::abs(target - static_cast<double>(p) / static_cast<double>(q)) <=
            kLatticeRelTol * std::max(1.0, target))
            return std::pair{static_cast<std::int64_t>(sign) * p, q};
        const double frac = x - a;
        if (frac <= 0.0) return std::nullopt;
        x = 1.0 / frac;
        p0 = p1;
        p1 = p;
        q0 = q1;
        q1 = q;
    }
    return std::nullopt;
}

/// Coefficients of P_m with d^m/dy^m coth(y) = P_m(coth(y)).
std::vector<double> coth_derivative_poly(int m) {
    std::vector<double> p = {0.0, 1.0};
    for (int k = 0; k < m; ++k) {
        std::vector<double> deriv(p.size() > 1 ? p.size() - 1 : 1, 0.0);
        for (std::size_t j = 1; j < p.size(); ++j) deriv[j - 1] = static_cast<double>(j) * p[j];
        // multiply by (1 - C^2)
        std::vector<double> next(deriv.size() + 2, 0.0);
        for (std::size_t j = 0; j < deriv.size(); ++j) {
            next[j] += deriv[j];
            next[j + 2] -= deriv[j];
        }
        p = std::move(next);
    }
    return p;
}

double taper(double x) {
    if (x <= 0.5) return 1.0;
    if (x >= 1.0) return 0.0;
    const double y = 2.0 * x - 1.0;
    const double up = std::exp(-1.0 / (1.0 - y));
    const double down = std::exp(-1.0 / y);
    return up / (up + down);
}

double bump(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return std::exp(-1.0 / (x * (1.0 - x)));
}

double bump_integral() {
    static const double value = [] {
        const std::vector<double> br = {0.0, 0.25, 0.5, 0.75, 1.0};
        return detail::integrate<Cplx>([](double x) { return Cplx{bump(x), 0.0}; }, br, 1e-16,
                                       1e-14, 10'000)
            .value.real();
    }();
    return value;
}

/// Evaluates log(1 - phi(c - i t)) for the law, with a_j = p_j exp(c x_j) precomputed.
struct LogTransform {
    std::vector<double> x;
    std::vector<double> a;

    LogTransform(const DiscreteDistribution& law, double c) {
        for (std::size_t j = 0; j < law.size(); ++j) {
            x.push_back(law.points()[j]);
            a.push_back(law.probs()[j] * std::exp(c * law.points()[j]));
        }
    }

    Cplx operator()(double t) const {
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double arg = t * x[j];
            re += a[j] * std::cos(arg);
            im -= a[j] * std::sin(arg);
        }
        return std::log(Cplx{1.0 - re, -im});
    }
};

/// Panel breaks on [0, L]: geometric near the peak at t = 0 (width ~ c),
/// then uniform panels of half an oscillation period.
std::vector<double> panel_breaks(double c, double max_freq, double L) {
    const double w = max_freq > 0.0 ? std::numbers::pi / max_freq : L;
    std::vector<double> br = {0.0};
    for (double t = c / 8.0; t < std::min(w, L); t *= 2.0) br.push_back(t);
    double t = br.back();
    const double step = std::min(w, L);
    while (t + step < L) {
        t += step;
        br.push_back(t);
    }
    if (br.back() < L) br.push_back(L);
    return br;
}

struct RawIntegral {
    Cplx value;
    double error;
    std::size_t panels;
    bool converged;
};

/// (-1)^m m! / (2 pi) * integral over [-L, L] of f, from the half line [0, L].
/// The m! turns the Taylor coefficient of the log transform into the cumulant.
template <typename F>
RawIntegral symmetric_integral(const F& f, int m, const std::vector<double>& breaks, double tol,
                               bool residue) {
    auto folded = [&](double t) -> Cplx {
        if (residue) return f(t) + f(-t);
        return {2.0 * f(t).real(), 0.0};
    };
    const double scale = std::tgamma(m + 1.0) / (2.0 * std::numbers::pi);
    const auto q = detail::integrate<Cplx>(folded, breaks, tol / scale, 1e-13, kMaxPanels);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return {sign * scale * q.value, scale * q.error, q.panels, q.converged};
}

CumulantBound lattice_cumulant(const DiscreteDistribution& law, int m, double c,
                               const Lattice& lat, const ContourConfig& cfg) {
    const double h = lat.span;
    std::vector<double> snapped;
    for (auto n : lat.index) snapped.push_back(static_cast<double>(n) * h);
    const DiscreteDistribution on_grid({snapped}, {law.probs().begin(), law.probs().end()});
    const LogTransform g(on_grid, c);

    const auto poly = coth_derivative_poly(m);
    const double factor = std::pow(0.5 * h, m + 1) * ((m % 2 == 0) ? 1.0 : -1.0) /
                          std::tgamma(static_cast<double>(m) + 1.0);
    auto kernel = [&](double t) {
        const Cplx y = 0.5 * h * Cplx{-c, t};
        const Cplx C = 1.0 / std::tanh(y);
        Cplx acc{0.0, 0.0};
        for (std::size_t j = poly.size(); j-- > 0;) acc = acc * C + poly[j];
        return factor * acc;
    };
    auto f = [&](double t) { return g(t) * kernel(t); };

    std::int64_t nmax = 0;
    for (auto n : lat.index) nmax = std::max(nmax, std::abs(n));
    const double L = std::numbers::pi / h;
    const auto br = panel_breaks(c, static_cast<double>(nmax) * h, L);
    const auto raw = symmetric_integral(f, m, br, cfg.quad_tol, cfg.check_residue);
    if (!raw.converged)
        throw Error(ErrorCode::QuadratureFailure,
                    fmt::format("lattice contour error {:.3g} above tolerance", raw.error));

    CumulantBound out;
    out.m = m;
    out.value = raw.value.real();
    out.contour = cfg;
    out.method_used = ContourMethod::Lattice;
    out.span = h;
    out.height = L;
    out.quad_error = raw.error;
    out.imag_residue = raw.value.imag();
    out.panels = raw.panels;
    return out;
}

CumulantBound line_cumulant(const DiscreteDistribution& law, int m, double c,
                            const ContourConfig& cfg) {
    const LogTransform g(law, c);
    double max_freq = 0.0;
    for (double x : law.points()) max_freq = std::max(max_freq, std::abs(x));

    const double scale = std::tgamma(m + 1.0) / (2.0 * std::numbers::pi);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    auto kernel = [&](double t) {
        const Cplx inv = 1.0 / Cplx{-c, t};
        Cplx k = inv;
        for (int j = 0; j < m; ++j) k *= inv;
        return k;
    };
    // One pass yields int g K taper, int K taper and the window mean of Re g;
    // the mean enters linearly, so subtracting it afterwards is exact.
    using Triple = std::array<Cplx, 3>;
    auto evaluate = [&](double T) {
        const auto br = panel_breaks(c, max_freq, T);
        const double window = 1.0 / (T * bump_integral());
        auto folded = [&](double t) -> Triple {
            const double w = taper(t / T);
            const Cplx gp = g(t), kp = kernel(t) * w;
            const double mean_part = gp.real() * bump(t / T) * window;
            if (!cfg.check_residue)
                return {Cplx{2.0 * (gp * kp).real(), 0.0}, Cplx{2.0 * kp.real(), 0.0},
                        Cplx{mean_part, 0.0}};
            const Cplx gm = g(-t), km = kernel(-t) * w;
            return {gp * kp + gm * km, kp + km, Cplx{mean_part, 0.0}};
        };
        const auto q = detail::integrate<Triple>(folded, br, cfg.quad_tol / scale, 1e-13, kMaxPanels);
        const double g_bar = q.value[2].real();
        const Cplx raw = q.value[0] - g_bar * q.value[1];
        return RawIntegral{sign * scale * raw, scale * q.error, q.panels, q.converged};
    };

    double T = std::min(256.0, cfg.max_height);
    auto prev = evaluate(T);
    bool settled = false;
    while (T < cfg.max_height) {
        T = std::min(2.0 * T, cfg.max_height);
        auto cur = evaluate(T);
        const double change = std::abs(cur.value.real() - prev.value.real());
        prev = cur;
        if (change <= std::max(cfg.tail_tol, 1e-12 * std::abs(cur.value.real()))) {
            settled = true;
            break;
        }
    }
    if (!settled || !prev.converged)
        throw Error(ErrorCode::QuadratureFailure,
                    fmt::format("line contour did not settle below height {}", cfg.max_height));

    CumulantBound out;
    out.m = m;
    out.value = prev.value.real();
    out.contour = cfg;
    out.method_used = ContourMethod::Line;
    out.height = T;
    out.quad_error = prev.error;
    out.imag_residue = prev.value.imag();
    out.panels = prev.panels;
    return out;
}

}  // namespace

const char* to_string(ContourMethod m) {
    switch (m) {
        case ContourMethod::Auto: return "auto";
        case ContourMethod::Lattice: return "lattice";
        case ContourMethod::Line: return "line";
    }
    return "?";
}

const ContourConfig& validate(const ContourConfig& cfg) {
    if (!(cfg.offset_fraction > 0.0 && cfg.offset_fraction < 1.0))
        throw Error(ErrorCode::BadParameter, "offset_fraction must lie in (0, 1)");
    if (!(cfg.tail_tol > 0.0) || !(cfg.quad_tol > 0.0))
        throw Error(ErrorCode::BadParameter, "tolerances must be positive");
    if (!(cfg.max_height > 0.0)) throw Error(ErrorCode::BadParameter, "max_height must be positive");
    return cfg;
}

std::complex<double> mgf(const DiscreteDistribution& dist, std::complex<double> s) {
    return dist.mgf(s);
}

double cramer_root(const DiscreteDistribution& dist) {
    if (dist.mean() >= 0.0)
        throw Error(ErrorCode::NoPositiveDrift,
                    fmt::format("increment mean {} is not negative", dist.mean()));
    double top = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist.probs()[i] > 0.0) top = std::max(top, dist.points()[i]);
    if (top <= 0.0) return std::numeric_limits<double>::infinity();

    auto f = [&](double theta) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dist.size(); ++i)
            acc += dist.probs()[i] * std::expm1(theta * dist.points()[i]);
        return acc;
    };
    double hi = 1.0 / top;
    while (f(hi) <= 0.0) hi *= 2.0;
    double lo = hi;
    while (f(lo) >= 0.0) lo *= 0.5;
    while (hi - lo > 1e-15 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::optional<Lattice> detect_lattice(std::span<const double> points) {
    double smallest = 0.0, largest = 0.0;
    for (double x : points) {
        if (x != 0.0 && (smallest == 0.0 || std::abs(x) < smallest)) smallest = std::abs(x);
        largest = std::max(largest, std::abs(x));
    }
    if (smallest == 0.0) return std::nullopt;

    std::int64_t denom = 1;
    for (double x : points) {
        const auto frac = best_rational(x / smallest);
        if (!frac) return std::nullopt;
        denom = std::lcm(denom, frac->second);
        if (denom > kMaxDenominator) return std::nullopt;
    }
    double h = smallest / static_cast<double>(denom);
    std::vector<std::int64_t> idx;
    std::int64_t common = 0;
    for (double x : points) {
        idx.push_back(std::llround(x / h));
        common = std::gcd(common, std::abs(idx.back()));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        idx[j] /= common;
        num += static_cast<double>(idx[j]) * points[j];
        den += static_cast<double>(idx[j]) * static_cast<double>(idx[j]);
    }
    h = num / den;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (std::abs(idx[j]) > kMaxLatticeIndex) return std::nullopt;
        if (std::abs(points[j] - static_cast<double>(idx[j]) * h) > 1e-10 * largest)
            return std::nullopt;
    }
    return Lattice{h, std::move(idx)};
}

CumulantBound max_cumulant(const DiscreteDistribution& law_in, int m, const ContourConfig& cfg) {
    validate(cfg);
    if (m < 1) throw Error(ErrorCode::BadParameter, "cumulant order must be at least 1");
    const auto law = charged_atoms(law_in);
    const double theta = cramer_root(law);

    CumulantBound out;
    out.m = m;
    out.contour = cfg;
    out.cramer_root = theta;
    if (std::isinf(theta)) return out;  // M = 0 almost surely

    const double c = cfg.offset_fraction * theta;
    std::optional<Lattice> lat;
    if (cfg.method != ContourMethod::Line) lat = detect_lattice(law.points());
    if (cfg.method == ContourMethod::Lattice && !lat)
        throw Error(ErrorCode::NotCommensurate, "support is not on a usable lattice");

    out = lat ? lattice_cumulant(law, m, c, *lat, cfg) : line_cumulant(law, m, c, cfg);
    out.cramer_root = theta;
    if (cfg.check_residue && std::abs(out.imag_residue) > 10.0 * cfg.quad_tol)
        throw Error(ErrorCode::QuadratureFailure,
                    fmt::format("imaginary residue {:.3g} too large", out.imag_residue));
    return out;
}

CumulantBound cumulant_upper(const AmbiguitySet& set, int m, const ContourConfig& cfg) {
    validate(set);
    auto out = max_cumulant(worst_case_three_point(set), m, cfg);
    out.direction = Direction::Upper;
    return out;
}

CumulantBound cumulant_lower(const AmbiguitySet& set, int m, const ContourConfig& cfg) {
    validate(set);
    auto out = max_cumulant(best_case_two_point(set), m, cfg);
    out.direction = Direction::Lower;
    return out;
}

namespace {

void require_stable(const QueueSpec& spec) {
    validate(spec);
    if (!(spec.rho() < 1.0))
        throw Error(ErrorCode::Unstable, fmt::format("traffic intensity {} is not below 1", spec.rho()));
}

}  // namespace

CumulantBound gg1_cumulant_upper(const QueueSpec& spec, int m, const ContourConfig& cfg) {
    require_stable(spec);
    auto out = max_cumulant(
        difference(worst_case_three_point(spec.service), worst_case_three_point(spec.arrival)), m,
        cfg);
    out.direction = Direction::Upper;
    return out;
}

CumulantBound gg1_cumulant_lower(const QueueSpec& spec, int m, const ContourConfig& cfg) {
    require_stable(spec);
    auto out = max_cumulant(
        difference(best_case_two_point(spec.service), best_case_two_point(spec.arrival)), m, cfg);
    out.direction = Direction::Lower;
    return out;
}

}  // namespace madqueue
