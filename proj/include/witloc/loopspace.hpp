#ifndef WITLOC_LOOPSPACE_HPP
#define WITLOC_LOOPSPACE_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include <witloc/equivariant.hpp>
#include <witloc/genus.hpp>
#include <witloc/lattice_functions.hpp>

namespace witloc
{

// zeta-regularized normalized top Chern class of the normal bundle of X in the double loop
// space: exp(-zeta2 p1 xibar^-2) * prod_j sigma(z)/z at z = alpha_j xibar^-1.
template <typename S>
EquivariantClass<S> loopspace_top_chern_from(const ManifoldSpec &m, const EisensteinValues<S> &g,
                                             const std::optional<S> &zeta2)
{
    const int n = m.dimension() / 2;
    CohomClass<S> c = genus_class(sigma_over_z_series(g, n), m.tangent());
    if (!m.string_flag()) {
        if (!zeta2) {
            throw std::invalid_argument("a non-string manifold needs a value for zeta2");
        }
        c = exp((from_rational<S>(0) - *zeta2) * to_scalar<S>(m.tangent().p(1))) * c;
    }
    return xibar_graded(c);
}

inline EquivariantClass<Complex> loopspace_regularized_top_chern(const ManifoldSpec &m, const Lattice &lattice,
                                                                 const ArgumentChoice &choice, double radius = 0.0)
{
    std::optional<Complex> zeta2;
    if (!m.string_flag()) {
        zeta2 = g2_regularized(lattice, choice);
    }
    return loopspace_top_chern_from<Complex>(m, eisenstein_values(lattice, m.dimension() / 2, radius), zeta2);
}

inline EquivariantClass<Symbolic> symbolic_loopspace_regularized_top_chern(const ManifoldSpec &m)
{
    return loopspace_top_chern_from<Symbolic>(m, symbolic_eisenstein_values(m.dimension() / 2), Symbolic::zeta2());
}

template <typename S>
struct WittenGenus {
    S value;
    int xi_power;
};

// Integrates 1 / top_chern over X; the result must sit at xibar^{-d/2}.
template <typename S>
WittenGenus<S> witten_genus_from(const EquivariantClass<S> &top_chern, int dimension)
{
    if (dimension % 2 != 0) {
        throw std::invalid_argument("Witten genus needs an even-dimensional manifold");
    }
    if (dimension != top_chern.ring()->top_degree()) {
        throw std::invalid_argument("manifold dimension does not match the ring's top degree");
    }
    const int expected = -dimension / 2;
    const auto integrals = top_chern.unit_inverse().integrate();
    WittenGenus<S> out{from_rational<S>(0), expected};
    for (const auto &[n, v] : integrals) {
        if (n != expected) {
            throw std::logic_error("Witten genus integrand has a nonzero coefficient at xibar^" + std::to_string(n));
        }
        out.value = v;
    }
    return out;
}

inline WittenGenus<Complex> witten_genus(const ManifoldSpec &m, const Lattice &lattice, const ArgumentChoice &choice,
                                         double radius = 0.0)
{
    return witten_genus_from(loopspace_regularized_top_chern(m, lattice, choice, radius), m.dimension());
}

inline WittenGenus<Symbolic> symbolic_witten_genus(const ManifoldSpec &m)
{
    return witten_genus_from(symbolic_loopspace_regularized_top_chern(m), m.dimension());
}

} // namespace witloc

#endif
