#ifndef WITLOC_LATTICE_FUNCTIONS_HPP
#define WITLOC_LATTICE_FUNCTIONS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <witloc/lattice.hpp>
#include <witloc/scalar.hpp>
#include <witloc/series.hpp>

namespace witloc
{

// How a lattice sum is cut off at a radius R.
//  - sharp:  plain sum over 0 < |lambda| <= R.
//  - smooth: the same points, weighted by a C-infinity radial taper that equals 1
//            for |lambda| <= R * taper_start and vanishes at |lambda| = R. The taper
//            suppresses the lattice-point boundary discrepancy, so the sum converges
//            faster than any power of R instead of roughly like R^-3.
enum class Cutoff { sharp, smooth };

inline constexpr double taper_start = 0.3;

namespace detail
{

inline double bump(double u)
{
    return u > 0.0 ? std::exp(-1.0 / u) : 0.0;
}

// 1 on [0, taper_start], 0 on [1, inf), smooth in between.
inline double radial_taper(double t)
{
    if (t <= taper_start) {
        return 1.0;
    }
    if (t >= 1.0) {
        return 0.0;
    }
    const double x = (t - taper_start) / (1.0 - taper_start);
    const double a = bump(1.0 - x);
    const double b = bump(x);
    return a / (a + b);
}

inline void check_tau(Complex tau)
{
    if (!(tau.imag() > 0.0)) {
        throw std::invalid_argument("tau must lie in the upper half plane (Im tau > 0)");
    }
}

} // namespace detail

// Default summation radius: at least 4e4 lattice points, and at least 100 shortest-vector
// lengths scaled by the covolume so the smooth taper is well resolved.
inline double default_radius(const Lattice &lattice)
{
    const double v = lattice.volume();
    const double by_count = std::sqrt(4.0e4 * v / pi);
    const double by_dual = 100.0 * v / lattice.shortest_length();
    return std::max(by_count, by_dual);
}

// sum_{0 < |lambda| <= radius} w(|lambda|) lambda^{-exponent}, summed in reverse shell
// order (smallest terms first). Accepts any exponent >= 3, odd ones included.
inline Complex lattice_power_sum(const Lattice &lattice, int exponent, double radius, Cutoff cutoff = Cutoff::smooth)
{
    if (exponent < 3) {
        throw std::invalid_argument("lattice power sums need exponent >= 3 for absolute convergence");
    }
    const auto pts = lattice_points(lattice, radius);
    Complex total = 0.0;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        Complex term = std::pow(it->value, -exponent);
        if (cutoff == Cutoff::smooth) {
            const double w = detail::radial_taper(it->modulus / radius);
            if (w == 0.0) {
                continue;
            }
            term *= w;
        }
        total += term;
    }
    return total;
}

// Eisenstein series G_{2k}(Lambda) = sum_{lambda != 0} lambda^{-2k}, 2k >= 4 even.
inline Complex eisenstein(const Lattice &lattice, int two_k, double radius, Cutoff cutoff = Cutoff::smooth)
{
    if (two_k % 2 != 0) {
        throw std::invalid_argument("Eisenstein weight must be even (odd lattice sums vanish identically)");
    }
    if (two_k < 4) {
        throw std::invalid_argument("Eisenstein weight must be >= 4; use g2_regularized for weight 2");
    }
    return lattice_power_sum(lattice, two_k, radius, cutoff);
}

inline Complex eisenstein(const Lattice &lattice, int two_k)
{
    return eisenstein(lattice, two_k, default_radius(lattice));
}

struct LatticeSumEstimate {
    Complex value;
    double error_estimate; // |S(2R) - S(R)|
    double radius;         // the radius at which value was computed (2R)
};

// Radius-doubling check: evaluates at R and 2R, doubling R until the two agree to tol.
inline LatticeSumEstimate eisenstein_converged(const Lattice &lattice, int two_k, double tol, double radius = 0.0,
                                               int max_doublings = 4)
{
    double r = radius > 0.0 ? radius : default_radius(lattice);
    Complex prev = eisenstein(lattice, two_k, r);
    for (int i = 0;; ++i) {
        const Complex next = eisenstein(lattice, two_k, 2 * r);
        const double err = std::abs(next - prev);
        if (err <= tol || i + 1 >= max_doublings) {
            return {next, err, 2 * r};
        }
        prev = next;
        r *= 2;
    }
}

// G_2(tau) = pi^2/3 + sum_{n != 0} sum_m (m + n tau)^{-2}, inner sum over m first.
// The inner sum is pi^2 / sin^2(pi n tau) = -4 pi^2 q^n / (1 - q^n)^2, q = exp(2 pi i tau).
inline Complex g2_iterated(Complex tau)
{
    detail::check_tau(tau);
    const Complex q = std::exp(Complex(0.0, 2 * pi) * tau);
    Complex qn = 1.0;
    Complex tail = 0.0;
    for (int n = 1; n < 10000000; ++n) {
        qn *= q;
        const Complex term = qn / ((1.0 - qn) * (1.0 - qn));
        tail += term;
        if (std::abs(qn) < 1e-20 * std::max(1.0, std::abs(tail))) {
            break;
        }
    }
    return pi * pi / 3.0 - 8.0 * pi * pi * tail;
}

// The regularized lattice zeta value at 2 for the argument choice `choice`.
// At base angle arg(omega1) this is omega1^{-2} G_2(tau). Moving the cut to another
// base angle theta adds (pi/vol)(exp(-2i theta) - exp(-2i arg omega1)): the residue at
// s = 2 of the sector sum swept by the cut, times the 2*pi*i monodromy of lambda^{-s}.
inline Complex g2_regularized(const Lattice &lattice, const ArgumentChoice &choice)
{
    const Complex w1 = lattice.omega1();
    const Complex base = g2_iterated(lattice.tau()) / (w1 * w1);
    const double a1 = std::arg(w1);
    const double theta = choice.base_angle();
    const Complex shift = (pi / lattice.volume())
                          * (std::polar(1.0, -2.0 * theta) - std::polar(1.0, -2.0 * a1));
    return base + shift;
}

// d/dtau log eta(tau) = 2 pi i (1/24 - sum_{n<=order} n q^n / (1 - q^n)).
inline Complex eta_log_derivative(Complex tau, int order)
{
    detail::check_tau(tau);
    if (order < 1) {
        throw std::invalid_argument("eta order must be >= 1");
    }
    const Complex q = std::exp(Complex(0.0, 2 * pi) * tau);
    Complex qn = 1.0;
    Complex s = 0.0;
    for (int n = 1; n <= order; ++n) {
        qn *= q;
        s += static_cast<double>(n) * qn / (1.0 - qn);
    }
    return Complex(0.0, 2 * pi) * (1.0 / 24.0 - s);
}

// G_2 through the Dedekind eta function: -4 pi i eta'(tau)/eta(tau).
inline Complex g2_from_eta(Complex tau, int order = 200)
{
    return Complex(0.0, -4 * pi) * eta_log_derivative(tau, order);
}

// eta(tau) = exp(pi i tau / 12) prod_{n=1}^{order} (1 - q^n).
inline Complex dedekind_eta(Complex tau, int order)
{
    detail::check_tau(tau);
    if (order < 1) {
        throw std::invalid_argument("eta order must be >= 1");
    }
    const Complex q = std::exp(Complex(0.0, 2 * pi) * tau);
    Complex qn = 1.0;
    Complex prod = 1.0;
    for (int n = 1; n <= order; ++n) {
        qn *= q;
        prod *= 1.0 - qn;
    }
    return std::exp(Complex(0.0, pi / 12.0) * tau) * prod;
}

namespace detail
{

// log((1 - u) exp(u + u^2/2)) = -sum_{j>=3} u^j / j.
inline Complex log_weierstrass_factor(Complex u)
{
    if (std::abs(u) < 0.25) {
        Complex s = 0.0;
        Complex p = u * u;
        for (int j = 3; j < 80; ++j) {
            p *= u;
            const Complex t = p / static_cast<double>(j);
            s -= t;
            if (std::abs(t) < 1e-19 * std::max(std::abs(s), 1e-300)) {
                break;
            }
        }
        return s;
    }
    return std::log(1.0 - u) + u + u * u / 2.0;
}

} // namespace detail

// sigma(z) as the truncated Weierstrass product z prod_{0<|lambda|<=R} (1 - z/lambda) exp(z/lambda + z^2/(2 lambda^2)).
inline Complex sigma_direct(Complex z, const Lattice &lattice, double radius)
{
    if (z == Complex(0.0, 0.0)) {
        return 0.0;
    }
    const auto pts = lattice_points(lattice, radius);
    Complex log_sum = 0.0;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        const Complex u = z / it->value;
        if (u == Complex(1.0, 0.0)) {
            return 0.0;
        }
        log_sum += detail::log_weierstrass_factor(u);
    }
    return z * std::exp(log_sum);
}

// G_{2k} values keyed by the weight 2k.
template <typename S>
using EisensteinValues = std::map<int, S>;

inline EisensteinValues<Complex> eisenstein_values(const Lattice &lattice, int max_weight, double radius = 0.0)
{
    const double r = radius > 0.0 ? radius : default_radius(lattice);
    EisensteinValues<Complex> g;
    for (int w = 4; w <= max_weight; w += 2) {
        g[w] = eisenstein(lattice, w, r);
    }
    return g;
}

inline EisensteinValues<Symbolic> symbolic_eisenstein_values(int max_weight)
{
    EisensteinValues<Symbolic> g;
    for (int w = 4; w <= max_weight; w += 2) {
        g[w] = Symbolic::eisenstein(w);
    }
    return g;
}

// log(sigma(z)/z) = -sum_{k>=2} G_{2k} z^{2k} / (2k), to the given order.
template <typename S>
Series<S> log_sigma_over_z(const EisensteinValues<S> &g, int order)
{
    Series<S> s(order);
    for (int w = 4; w <= order; w += 2) {
        const auto it = g.find(w);
        if (it == g.end()) {
            throw std::invalid_argument("missing Eisenstein value G" + std::to_string(w));
        }
        s[w] = from_rational<S>(Rational(-1, w)) * it->second;
    }
    return s;
}

// Taylor series of sigma(z)/z.
template <typename S>
Series<S> sigma_over_z_series(const EisensteinValues<S> &g, int order)
{
    return exp(log_sigma_over_z(g, order));
}

// Taylor series of z / sigma(z) = exp(+sum_{k>=2} G_{2k} z^{2k}/(2k)).
template <typename S>
Series<S> witten_char_series(const EisensteinValues<S> &g, int order)
{
    return exp(from_rational<S>(-1) * log_sigma_over_z(g, order));
}

// Taylor series of sigma(z) through z^order.
inline ComplexSeries sigma_series(const Lattice &lattice, int order, double radius = 0.0)
{
    if (order < 1) {
        throw std::invalid_argument("sigma series order must be >= 1");
    }
    return sigma_over_z_series(eisenstein_values(lattice, order - 1, radius), order - 1).multiplied_by_variable();
}

inline ComplexSeries witten_char_series(const Lattice &lattice, int order, double radius = 0.0)
{
    if (order < 0) {
        throw std::invalid_argument("series order must be nonnegative");
    }
    return witten_char_series(eisenstein_values(lattice, order, radius), order);
}

// The zeta-regularized product over lambda != 0 of (1 + z/lambda):
// exp(zeta1 z - zeta2 z^2/2) sigma(z)/z with zeta2 = g2_regularized(lattice, choice).
inline Complex zeta_regularized_product(Complex z, const Lattice &lattice, const ArgumentChoice &choice,
                                        Complex zeta1 = 0.0, double radius = 0.0)
{
    if (z == Complex(0.0, 0.0)) {
        return 1.0;
    }
    if (lattice.contains(z, 1e-12)) {
        throw std::domain_error("zeta-regularized product is evaluated at a nonzero lattice point");
    }
    const double r = radius > 0.0 ? radius : default_radius(lattice);
    const Complex zeta2 = g2_regularized(lattice, choice);
    return std::exp(zeta1 * z - zeta2 * z * z / 2.0) * sigma_direct(z, lattice, r) / z;
}

} // namespace witloc

#endif
