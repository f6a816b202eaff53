#pragma once

// Globally adaptive 15-point Gauss-Kronrod quadrature. Values may be complex
// or small fixed-size vectors; `norm` measures errors.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace madqueue::detail {

using Cplx = std::complex<double>;

template <typename V>
struct QuadResult {
    V value{};
    double error = 0.0;
    std::size_t panels = 0;
    bool converged = false;
};

inline double norm_of(const Cplx& z) { return std::abs(z); }

template <std::size_t N>
double norm_of(const std::array<Cplx, N>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::abs(z);
    return s;
}

template <std::size_t N>
std::array<Cplx, N> operator+(std::array<Cplx, N> a, const std::array<Cplx, N>& b) {
    for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
    return a;
}

template <std::size_t N>
std::array<Cplx, N> operator-(std::array<Cplx, N> a, const std::array<Cplx, N>& b) {
    for (std::size_t i = 0; i < N; ++i) a[i] -= b[i];
    return a;
}

template <std::size_t N>
std::array<Cplx, N> operator*(double s, std::array<Cplx, N> a) {
    for (auto& z : a) z *= s;
    return a;
}

namespace gk {

// Kronrod abscissae (positive half, descending) and weights; Gauss weights
// belong to the odd-indexed Kronrod nodes plus the centre.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename V>
struct Panel {
    double lo;
    double hi;
    V value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename V, typename F>
Panel<V> rule(const F& f, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const V fc = f(centre);
    V kronrod = kWgk[7] * fc;
    V gauss = kWg[3] * fc;
    std::array<V, 7> f1{}, f2{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(centre - dx);
        f2[j] = f(centre + dx);
        kronrod = kronrod + kWgk[j] * (f1[j] + f2[j]);
        if (j % 2 == 1) gauss = gauss + kWg[j / 2] * (f1[j] + f2[j]);
    }
    // QUADPACK-style error scaling against the integrand's variation
    const V mean = 0.5 * kronrod;
    double resasc = kWgk[7] * norm_of(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
        resasc += kWgk[j] * (norm_of(f1[j] - mean) + norm_of(f2[j] - mean));
    resasc *= std::abs(half);
    double err = norm_of(half * (kronrod - gauss));
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {lo, hi, half * kronrod, err};
}

}  // namespace gk

/// Integrates f over consecutive intervals [breaks[i], breaks[i+1]], bisecting
/// the panel with the largest error estimate until the summed estimate drops
/// below max(abs_tol, rel_tol * |integral|) or max_panels is reached.
template <typename V, typename F>
QuadResult<V> integrate(const F& f, std::span<const double> breaks, double abs_tol, double rel_tol,
                        std::size_t max_panels) {
    QuadResult<V> out;
    if (breaks.size() < 2) {
        out.converged = true;
        return out;
    }
    using P = gk::Panel<V>;
    std::vector<P> heap;
    heap.reserve(breaks.size() * 2);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (breaks[i + 1] > breaks[i]) heap.push_back(gk::rule<V>(f, breaks[i], breaks[i + 1]));
    std::make_heap(heap.begin(), heap.end());

    auto totals = [&] {
        V v{};
        double e = 0.0;
        for (const auto& p : heap) {
            v = v + p.value;
            e += p.error;
        }
        return std::pair{v, e};
    };
    auto [value, error] = totals();
    std::size_t since_resum = 0;
    while (error > std::max(abs_tol, rel_tol * norm_of(value)) && heap.size() < max_panels) {
        std::pop_heap(heap.begin(), heap.end());
        const P worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // cannot split further in floating point
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end());
            break;
        }
        const P left = gk::rule<V>(f, worst.lo, mid);
        const P right = gk::rule<V>(f, mid, worst.hi);
        value = value + (left.value + right.value) - worst.value;
        error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        // running sums drift; recompute now and then
        if (++since_resum == 4096) {
            std::tie(value, error) = totals();
            since_resum = 0;
        }
    }
    // final sum in interval order for reproducibility
    std::sort(heap.begin(), heap.end(), [](const P& x, const P& y) { return x.lo < y.lo; });
    out.value = V{};
    for (const auto& p : heap) {
        out.value = out.value + p.value;
        out.error += p.error;
    }
    out.panels = heap.size();
    out.converged = out.error <= std::max(abs_tol, rel_tol * norm_of(out.value));
    return out;
}

}  // namespace madqueue::detail
