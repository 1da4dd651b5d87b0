#ifndef WITLOC_LATTICE_HPP
#define WITLOC_LATTICE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <witloc/scalar.hpp>

namespace witloc
{

// Lattice spanned by an oriented basis (omega1, omega2), Im(omega2/omega1) > 0.
class Lattice
{
public:
    Lattice(Complex omega1, Complex omega2) : omega1_(omega1), omega2_(omega2)
    {
        if (!std::isfinite(omega1.real()) || !std::isfinite(omega1.imag()) || !std::isfinite(omega2.real())
            || !std::isfinite(omega2.imag())) {
            throw std::invalid_argument("lattice basis must be finite");
        }
        if (omega1 == Complex(0.0, 0.0)) {
            throw std::invalid_argument("lattice basis vector omega1 must be nonzero");
        }
        if (!((omega2 / omega1).imag() > 0.0)) {
            throw std::invalid_argument("lattice basis is not oriented: Im(omega2/omega1) must be positive");
        }
    }

    static Lattice from_tau(Complex tau)
    {
        return Lattice(Complex(1.0, 0.0), tau);
    }
    static Lattice square()
    {
        return Lattice(Complex(1.0, 0.0), Complex(0.0, 1.0));
    }

    Complex omega1() const
    {
        return omega1_;
    }
    Complex omega2() const
    {
        return omega2_;
    }
    Complex tau() const
    {
        return omega2_ / omega1_;
    }
    // Area of a fundamental parallelogram, Im(conj(omega1) * omega2).
    double volume() const
    {
        return (std::conj(omega1_) * omega2_).imag();
    }
    Complex point(long m, long n) const
    {
        return static_cast<double>(m) * omega1_ + static_cast<double>(n) * omega2_;
    }

    // Integer coordinates (m, n) of z = m*omega1 + n*omega2, if z is a lattice point
    // up to the relative tolerance.
    std::optional<std::pair<long, long>> coordinates(Complex z, double tol = 1e-9) const
    {
        const double v = volume();
        const double n = (std::conj(omega1_) * z).imag() / v;
        const double m = -(std::conj(omega2_) * z).imag() / v;
        const double rm = std::round(m);
        const double rn = std::round(n);
        const double scale = std::max(1.0, std::max(std::abs(m), std::abs(n)));
        if (std::abs(m - rm) > tol * scale || std::abs(n - rn) > tol * scale) {
            return std::nullopt;
        }
        return std::make_pair(static_cast<long>(rm), static_cast<long>(rn));
    }
    bool contains(Complex z, double tol = 1e-9) const
    {
        return coordinates(z, tol).has_value();
    }

    // Length of a shortest nonzero vector (Gauss-Lagrange reduction).
    double shortest_length() const
    {
        Complex a = omega1_;
        Complex b = omega2_;
        if (std::norm(a) > std::norm(b)) {
            std::swap(a, b);
        }
        for (int it = 0; it < 1000; ++it) {
            const double mu = std::round((std::conj(a) * b).real() / std::norm(a));
            b -= mu * a;
            if (std::norm(b) >= std::norm(a)) {
                break;
            }
            std::swap(a, b);
        }
        return std::abs(a);
    }

private:
    Complex omega1_;
    Complex omega2_;
};

// A choice of arguments arg(lambda) in [base - pi, base + pi) for every nonzero lambda.
class ArgumentChoice
{
public:
    explicit ArgumentChoice(double base_angle) : base_(base_angle)
    {
        if (!(base_angle >= -pi && base_angle < pi)) {
            throw std::invalid_argument("argument choice base angle must lie in [-pi, pi)");
        }
    }

    // arg(omega1) normalised to [-pi, pi).
    static ArgumentChoice standard(const Lattice &lattice)
    {
        double a = std::arg(lattice.omega1());
        if (a >= pi) {
            a -= 2 * pi;
        }
        return ArgumentChoice(a);
    }

    double base_angle() const
    {
        return base_;
    }

    double arg(Complex lambda) const
    {
        if (lambda == Complex(0.0, 0.0)) {
            throw std::domain_error("argument of zero is undefined");
        }
        double a = std::arg(lambda);
        while (a < base_ - pi) {
            a += 2 * pi;
        }
        while (a >= base_ + pi) {
            a -= 2 * pi;
        }
        return a;
    }

    // lambda^{1/2} = |lambda|^{1/2} exp(i arg(lambda) / 2) on this branch.
    Complex sqrt(Complex lambda) const
    {
        return std::polar(std::sqrt(std::abs(lambda)), arg(lambda) / 2);
    }

    // True when arg(lambda) >= base, i.e. arg(-lambda) = arg(lambda) - pi.
    bool upper(Complex lambda) const
    {
        return arg(lambda) >= base_;
    }

    friend bool operator==(const ArgumentChoice &a, const ArgumentChoice &b)
    {
        return a.base_ == b.base_;
    }

private:
    double base_;
};

struct LatticePoint {
    long m;
    long n;
    Complex value;
    double modulus;
};

// All nonzero lattice points with |lambda| <= radius, ordered by (|lambda|, arg lambda),
// ties broken by the integer coordinates so the order is total.
inline std::vector<LatticePoint> lattice_points(const Lattice &lattice, double radius)
{
    if (!(radius > 0.0)) {
        throw std::invalid_argument("lattice_points: radius must be positive");
    }
    const double v = lattice.volume();
    const long mmax = static_cast<long>(std::floor(radius * std::abs(lattice.omega2()) / v)) + 1;
    const long nmax = static_cast<long>(std::floor(radius * std::abs(lattice.omega1()) / v)) + 1;
    std::vector<LatticePoint> pts;
    for (long n = -nmax; n <= nmax; ++n) {
        for (long m = -mmax; m <= mmax; ++m) {
            if (m == 0 && n == 0) {
                continue;
            }
            const Complex z = lattice.point(m, n);
            const double r = std::abs(z);
            if (r <= radius) {
                pts.push_back({m, n, z, r});
            }
        }
    }
    std::sort(pts.begin(), pts.end(), [](const LatticePoint &a, const LatticePoint &b) {
        if (a.modulus != b.modulus) {
            return a.modulus < b.modulus;
        }
        const double aa = std::arg(a.value);
        const double ab = std::arg(b.value);
        if (aa != ab) {
            return aa < ab;
        }
        return std::make_pair(a.m, a.n) < std::make_pair(b.m, b.n);
    });
    return pts;
}

// The character rho_lambda(z) = exp(pi (lambda conj(z) - conj(lambda) z) / vol).
inline Complex character_value(const Lattice &lattice, Complex lambda, Complex z)
{
    if (!lattice.contains(lambda)) {
        throw std::invalid_argument("character index must be a lattice element");
    }
    const Complex e = pi * (lambda * std::conj(z) - std::conj(lambda) * z) / lattice.volume();
    // The exponent is purely imaginary; drop the rounding residue in its real part.
    return std::polar(1.0, e.imag());
}

} // namespace witloc

#endif
