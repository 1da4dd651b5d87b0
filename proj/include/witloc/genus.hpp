#ifndef WITLOC_GENUS_HPP
#define WITLOC_GENUS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <witloc/cohom.hpp>
#include <witloc/lattice.hpp>
#include <witloc/lattice_functions.hpp>
#include <witloc/series.hpp>

namespace witloc
{

template <typename S>
CohomClass<S> to_scalar(const CohomClass<Rational> &c)
{
    return c.map_coefficients<S>([](const Rational &r) { return from_rational<S>(r); });
}

// Pontryagin classes of a real tangent bundle, p_k in degree 4k.
class TangentData
{
public:
    TangentData(RingPtr ring, std::vector<CohomClass<Rational>> pontryagin, int dimension)
        : ring_(std::move(ring)), p_(std::move(pontryagin)), dimension_(dimension)
    {
        if (!ring_) {
            throw std::invalid_argument("tangent data needs a ring");
        }
        if (dimension_ < 0 || dimension_ % 2 != 0) {
            throw std::invalid_argument("manifold dimension must be a nonnegative even integer");
        }
        for (std::size_t k = 1; k <= p_.size(); ++k) {
            const auto &pk = p_[k - 1];
            if (!(pk.ring() == ring_ || *pk.ring() == *ring_)) {
                throw std::invalid_argument("p" + std::to_string(k) + " lives in a different ring");
            }
            for (int d : pk.degrees()) {
                if (d != static_cast<int>(4 * k)) {
                    throw std::invalid_argument("p" + std::to_string(k) + " must be homogeneous of degree "
                                                + std::to_string(4 * k));
                }
            }
        }
    }

    // Stably trivial tangent bundle.
    static TangentData trivial(RingPtr ring, int dimension)
    {
        return TangentData(std::move(ring), {}, dimension);
    }

    const RingPtr &ring() const
    {
        return ring_;
    }
    int dimension() const
    {
        return dimension_;
    }
    const std::vector<CohomClass<Rational>> &pontryagin() const
    {
        return p_;
    }
    // p_k, zero beyond the stored list.
    CohomClass<Rational> p(int k) const
    {
        if (k >= 1 && static_cast<std::size_t>(k) <= p_.size()) {
            return p_[static_cast<std::size_t>(k) - 1];
        }
        return CohomClass<Rational>(ring_);
    }

    // Chern classes c_1..c_n of the complexification: c_{2k} = (-1)^k p_k, odd ones vanish.
    std::vector<CohomClass<Rational>> complexified_chern(int n) const
    {
        std::vector<CohomClass<Rational>> c;
        for (int j = 1; j <= n; ++j) {
            if (j % 2 == 1) {
                c.emplace_back(ring_);
            } else {
                c.push_back((j / 2) % 2 == 0 ? p(j / 2) : -p(j / 2));
            }
        }
        return c;
    }

    // Total Pontryagin class of the Whitney sum.
    friend TangentData whitney_sum(const TangentData &a, const TangentData &b)
    {
        auto total = [](const TangentData &t) {
            CohomClass<Rational> s = CohomClass<Rational>::one(t.ring_);
            for (const auto &pk : t.p_) {
                s += pk;
            }
            return s;
        };
        const CohomClass<Rational> prod = total(a) * total(b);
        std::vector<CohomClass<Rational>> p;
        for (int k = 1; 4 * k <= a.ring_->top_degree(); ++k) {
            p.push_back(prod.homogeneous_component(4 * k));
        }
        return TangentData(a.ring_, std::move(p), a.dimension_ + b.dimension_);
    }

private:
    RingPtr ring_;
    std::vector<CohomClass<Rational>> p_;
    int dimension_;
};

class ManifoldSpec
{
public:
    ManifoldSpec(RingPtr ring, TangentData tangent) : ring_(std::move(ring)), tangent_(std::move(tangent))
    {
        if (!(tangent_.ring() == ring_ || *tangent_.ring() == *ring_)) {
            throw std::invalid_argument("tangent data and manifold use different rings");
        }
        if (tangent_.dimension() != ring_->top_degree()) {
            throw std::invalid_argument("manifold dimension " + std::to_string(tangent_.dimension())
                                        + " does not match the ring's top degree "
                                        + std::to_string(ring_->top_degree()));
        }
    }

    const RingPtr &ring() const
    {
        return ring_;
    }
    const TangentData &tangent() const
    {
        return tangent_;
    }
    int dimension() const
    {
        return tangent_.dimension();
    }
    // Rationally string: p_1 vanishes.
    bool string_flag() const
    {
        return tangent_.p(1).is_zero();
    }

private:
    RingPtr ring_;
    TangentData tangent_;
};

// Newton's identities: power sums s_1..s_max_k of the roots whose elementary symmetric
// functions are e[0] = e_1, e[1] = e_2, ... (missing entries are zero).
template <typename S>
std::vector<CohomClass<S>> power_sums_from_elementary(const std::vector<CohomClass<S>> &e, int max_k, RingPtr ring)
{
    auto elem = [&](int i) {
        return static_cast<std::size_t>(i) <= e.size() ? e[static_cast<std::size_t>(i) - 1] : CohomClass<S>(ring);
    };
    std::vector<CohomClass<S>> s;
    for (int k = 1; k <= max_k; ++k) {
        CohomClass<S> sk(ring);
        for (int i = 1; i < k; ++i) {
            const CohomClass<S> t = elem(i) * s[static_cast<std::size_t>(k - i - 1)];
            sk = (i % 2 == 1) ? sk + t : sk - t;
        }
        const CohomClass<S> last = from_rational<S>(k) * elem(k);
        sk = (k % 2 == 1) ? sk + last : sk - last;
        s.push_back(std::move(sk));
    }
    return s;
}

// Power sums of the Chern roots of TX (x) C.
template <typename S = Rational>
std::vector<CohomClass<S>> power_sums_from_pontryagin(const TangentData &t, int max_k)
{
    std::vector<CohomClass<S>> c;
    for (const auto &cj : t.complexified_chern(t.dimension())) {
        c.push_back(to_scalar<S>(cj));
    }
    return power_sums_from_elementary(c, max_k, t.ring());
}

// Power sums of the Pontryagin roots beta_j (the p_k are their elementary functions).
template <typename S = Rational>
std::vector<CohomClass<S>> pontryagin_root_power_sums(const TangentData &t, int max_k)
{
    std::vector<CohomClass<S>> e;
    for (const auto &pk : t.pontryagin()) {
        e.push_back(to_scalar<S>(pk));
    }
    return power_sums_from_elementary(e, max_k, t.ring());
}

// exp(sum_k l_k s_k) for a series log with l_0 = 0 and power sums s[k-1] = s_k.
template <typename S>
CohomClass<S> exp_pairing(const Series<S> &log_series, const std::vector<CohomClass<S>> &s, RingPtr ring)
{
    CohomClass<S> sum(ring);
    for (int k = 1; k <= log_series.order() && static_cast<std::size_t>(k) <= s.size(); ++k) {
        if (!is_zero(log_series[k])) {
            sum += log_series[k] * s[static_cast<std::size_t>(k) - 1];
        }
    }
    return exp(sum);
}

// Multiplicative class prod_j Q(alpha_j) over the Chern roots of TX (x) C.
template <typename S>
CohomClass<S> genus_class(const Series<S> &q, const TangentData &t)
{
    if (!(q[0] == from_rational<S>(1))) {
        throw std::invalid_argument("characteristic series must have constant term 1");
    }
    const int n = t.ring()->top_degree() / 2;
    if (q.order() < n) {
        throw std::invalid_argument("characteristic series order " + std::to_string(q.order())
                                    + " is below half the top degree " + std::to_string(n));
    }
    return exp_pairing(log(q.truncated(n)), power_sums_from_pontryagin<S>(t, n), t.ring());
}

// Witten class from Eisenstein values; zeta2 only enters when p_1 != 0.
template <typename S>
CohomClass<S> witten_class_from(const ManifoldSpec &m, const EisensteinValues<S> &g, const std::optional<S> &zeta2)
{
    const int n = m.dimension() / 2;
    CohomClass<S> w = genus_class(witten_char_series(g, n), m.tangent());
    if (m.string_flag()) {
        return w;
    }
    if (!zeta2) {
        throw std::invalid_argument("a non-string manifold needs a value for zeta2");
    }
    return w * exp(*zeta2 * to_scalar<S>(m.tangent().p(1)));
}

inline CohomClass<Complex> witten_class(const ManifoldSpec &m, const Lattice &lattice, const ArgumentChoice &choice,
                                        double radius = 0.0)
{
    const auto g = eisenstein_values(lattice, m.dimension() / 2, radius);
    std::optional<Complex> zeta2;
    if (!m.string_flag()) {
        zeta2 = g2_regularized(lattice, choice);
    }
    return witten_class_from<Complex>(m, g, zeta2);
}

// Coefficients are polynomials in the formal symbols zeta2, G4, G6, ...
inline CohomClass<Symbolic> symbolic_witten_class(const ManifoldSpec &m)
{
    return witten_class_from<Symbolic>(m, symbolic_eisenstein_values(m.dimension() / 2), Symbolic::zeta2());
}

// Real Witten class prod_j sqrt(beta_j)/sigma(sqrt(beta_j)) over the Pontryagin roots, times
// exp(zeta2 p_1 / 2) when p_1 != 0. Its square is the Witten class.
template <typename S>
CohomClass<S> real_witten_class_from(const ManifoldSpec &m, const EisensteinValues<S> &g,
                                     const std::optional<S> &zeta2)
{
    const int n = m.dimension() / 4;
    Series<S> l(n);
    for (int k = 2; k <= n; ++k) {
        const auto it = g.find(2 * k);
        if (it == g.end()) {
            throw std::invalid_argument("missing Eisenstein value G" + std::to_string(2 * k));
        }
        l[k] = from_rational<S>(Rational(1, 2 * k)) * it->second;
    }
    CohomClass<S> w = exp_pairing(l, pontryagin_root_power_sums<S>(m.tangent(), n), m.ring());
    if (m.string_flag()) {
        return w;
    }
    if (!zeta2) {
        throw std::invalid_argument("a non-string manifold needs a value for zeta2");
    }
    return w * exp(from_rational<S>(Rational(1, 2)) * *zeta2 * to_scalar<S>(m.tangent().p(1)));
}

inline CohomClass<Complex> real_witten_class(const ManifoldSpec &m, const Lattice &lattice,
                                             const std::optional<ArgumentChoice> &choice = std::nullopt,
                                             double radius = 0.0)
{
    const auto g = eisenstein_values(lattice, 2 * (m.dimension() / 4), radius);
    std::optional<Complex> zeta2;
    if (!m.string_flag()) {
        zeta2 = g2_regularized(lattice, choice.value_or(ArgumentChoice::standard(lattice)));
    }
    return real_witten_class_from<Complex>(m, g, zeta2);
}

inline CohomClass<Symbolic> symbolic_real_witten_class(const ManifoldSpec &m)
{
    return real_witten_class_from<Symbolic>(m, symbolic_eisenstein_values(2 * (m.dimension() / 4)),
                                            Symbolic::zeta2());
}

} // namespace witloc

#endif
