#ifndef WITLOC_LOCALIZATION_HPP
#define WITLOC_LOCALIZATION_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include <witloc/equivariant.hpp>
#include <witloc/lattice.hpp>

namespace witloc
{

// One connected component of the fixed locus: the restricted equivariant form, the normal
// bundle's isotypic data, and the orientation sign relating the two orientations.
template <typename S>
struct FixedComponent {
    EquivariantClass<S> omega;
    RealEquivariantBundle<S> normal;
    int orientation_sign;
};

// sum over components of sign * integral of omega / eul(normal), keyed by the xibar power.
template <typename S>
std::map<int, S> localization_rhs(const std::vector<FixedComponent<S>> &components, const ArgumentChoice &choice)
{
    std::map<int, S> total;
    for (const auto &f : components) {
        if (f.orientation_sign != 1 && f.orientation_sign != -1) {
            throw std::invalid_argument("orientation sign must be +1 or -1");
        }
        if (f.normal.complexification().zero_rank() != 0) {
            throw std::invalid_argument("normal bundle of a fixed component has a zero-weight part");
        }
        if (!(f.omega.ring() == f.normal.ring() || *f.omega.ring() == *f.normal.ring())) {
            throw std::invalid_argument("restricted form and normal bundle use different rings");
        }
        const auto integrand = f.omega * inverse_euler_antiholo(f.normal, choice);
        for (const auto &[n, v] : integrand.integrate()) {
            const S signed_v = f.orientation_sign == 1 ? v : from_rational<S>(0) - v;
            auto it = total.find(n);
            if (it == total.end()) {
                total.emplace(n, signed_v);
            } else {
                it->second = it->second + signed_v;
                if (is_zero(it->second)) {
                    total.erase(it);
                }
            }
        }
    }
    return total;
}

inline GaussianRational exact_gaussian(Complex z)
{
    return {exact_rational(z.real()), exact_rational(z.imag())};
}

// Fixed-point data of the rotation of S^2 through rho_lambda, in units where pi = 1:
// North pole with omega = 0, South pole with omega = -4 lambda xibar, tangent weights +-lambda,
// orientation signs induced by the argument choice.
template <typename S>
std::vector<FixedComponent<S>> s2_fixed_points(const S &lambda, const ArgumentChoice &choice, bool flip = false)
{
    const RingPtr pt = make_ring(RingSpec::point());
    const auto tangent = RealEquivariantBundle<S>::from_complex_structure(pt, {{lambda, 1, {}}});
    int north = choice.upper(scalar_traits<S>::to_complex(lambda)) ? 1 : -1;
    if (flip) {
        north = -north;
    }
    return {
        {EquivariantClass<S>(pt), tangent, north},
        {EquivariantClass<S>::monomial(pt, from_rational<S>(-4) * lambda, 1), tangent, -north},
    };
}

// Tensor-product Gauss-Legendre quadrature of the round volume form sin(theta) over S^2.
inline double s2_area_quadrature()
{
    using rule = boost::math::quadrature::gauss<double, 64>;
    const auto inner = [](double theta) {
        return rule::integrate([theta](double) { return std::sin(theta); }, 0.0, 2.0 * pi);
    };
    return rule::integrate(inner, 0.0, pi);
}

struct S2Result {
    double lhs_numeric;
    std::map<int, GaussianRational> rhs_over_pi; // exact, keyed by xibar power
    Complex rhs;                                // pi * (coefficient of xibar^0)
};

inline S2Result s2_example(const Lattice &lattice, Complex lambda, const ArgumentChoice &choice, bool flip = false)
{
    if (lambda == Complex(0.0, 0.0)) {
        throw std::invalid_argument("the S^2 example needs a nonzero weight");
    }
    if (!lattice.contains(lambda)) {
        throw std::invalid_argument("the S^2 weight must be a lattice element");
    }
    S2Result r;
    r.lhs_numeric = s2_area_quadrature();
    r.rhs_over_pi = localization_rhs(s2_fixed_points(exact_gaussian(lambda), choice, flip), choice);
    const auto it = r.rhs_over_pi.find(0);
    r.rhs = it == r.rhs_over_pi.end() ? Complex(0.0, 0.0) : pi * it->second.to_complex();
    return r;
}

// Radical-inverse (Halton) points in [-half_width, half_width]^2, bases 2 and 3, skipping index 0.
inline std::vector<std::pair<double, double>> halton_points(int count, double half_width = 2.0)
{
    const auto radical_inverse = [](int i, int base) {
        double f = 1.0;
        double r = 0.0;
        while (i > 0) {
            f /= base;
            r += f * (i % base);
            i /= base;
        }
        return r;
    };
    std::vector<std::pair<double, double>> pts;
    for (int i = 1; i <= count; ++i) {
        pts.emplace_back(half_width * (2.0 * radical_inverse(i, 2) - 1.0),
                         half_width * (2.0 * radical_inverse(i, 3) - 1.0));
    }
    return pts;
}

// Checks d H + iota_v omega = 0 in the stereographic chart (x, y) of S^2, where
// omega = 4/(1+rho^2)^2 dx dy, H = -4 pi lambda / ((1 + rho^2) 2i vol) is the xibar coefficient of
// the equivariant extension, and v = (-i pi lambda / vol) (x d/dy - y d/dx) is the vector field of
// d/dzbar under rho_lambda. dH is taken by central differences with step h; returns the max residual.
inline double verify_closedness_s2(const Lattice &lattice, Complex lambda,
                                   const std::vector<std::pair<double, double>> &points, double h = 1e-5)
{
    if (lambda == Complex(0.0, 0.0)) {
        throw std::invalid_argument("closedness check needs a nonzero weight (lambda = 0 gives v = 0)");
    }
    if (!lattice.contains(lambda)) {
        throw std::invalid_argument("the S^2 weight must be a lattice element");
    }
    const double vol = lattice.volume();
    const Complex i(0.0, 1.0);
    const auto H = [&](double x, double y) { return -4.0 * pi * lambda / ((1.0 + x * x + y * y) * 2.0 * i * vol); };
    const Complex scale = -i * pi * lambda / vol;
    double worst = 0.0;
    for (const auto &[x, y] : points) {
        const double w = 4.0 / std::pow(1.0 + x * x + y * y, 2);
        // iota_R (w dx dy) = -w (x dx + y dy) for R = x d/dy - y d/dx.
        const Complex ix = -scale * w * x;
        const Complex iy = -scale * w * y;
        const Complex hx = (H(x + h, y) - H(x - h, y)) / (2.0 * h);
        const Complex hy = (H(x, y + h) - H(x, y - h)) / (2.0 * h);
        worst = std::max(worst, std::sqrt(std::norm(ix + hx) + std::norm(iy + hy)));
    }
    return worst;
}

} // namespace witloc

#endif
