#ifndef WITLOC_TWO_VARIABLE_HPP
#define WITLOC_TWO_VARIABLE_HPP

// Debug path: Euler classes with both invariant variables xi and xibar kept, for
// cross-checking the antiholomorphic computation on small bundles.

#include <map>
#include <stdexcept>
#include <utility>

#include <witloc/equivariant.hpp>

namespace witloc
{

// Polynomial in (xi, xibar) with cohomology-class coefficients; key = (xi power, xibar power).
template <typename S>
class TwoVariableClass
{
public:
    using Key = std::pair<int, int>;

    explicit TwoVariableClass(RingPtr ring) : ring_(std::move(ring)) {}
    TwoVariableClass(const CohomClass<S> &c, Key k = {0, 0}) : ring_(c.ring())
    {
        add(k, c);
    }
    static TwoVariableClass monomial(RingPtr ring, const S &s, Key k)
    {
        return TwoVariableClass(CohomClass<S>::constant(std::move(ring), s), k);
    }

    const std::map<Key, CohomClass<S>> &terms() const
    {
        return terms_;
    }

    friend TwoVariableClass operator+(TwoVariableClass a, const TwoVariableClass &b)
    {
        for (const auto &[k, c] : b.terms_) {
            a.add(k, c);
        }
        return a;
    }
    friend TwoVariableClass operator*(const TwoVariableClass &a, const TwoVariableClass &b)
    {
        TwoVariableClass r(a.ring_);
        for (const auto &[ka, ca] : a.terms_) {
            for (const auto &[kb, cb] : b.terms_) {
                r.add({ka.first + kb.first, ka.second + kb.second}, ca * cb);
            }
        }
        return r;
    }

    // Setting xi = 0 keeps the terms without xi.
    EquivariantClass<S> restrict_to_antiholomorphic() const
    {
        EquivariantClass<S> r(ring_);
        for (const auto &[k, c] : terms_) {
            if (k.first == 0) {
                r += EquivariantClass<S>(c, k.second);
            }
        }
        return r;
    }

private:
    void add(Key k, const CohomClass<S> &c)
    {
        if (c.is_zero()) {
            return;
        }
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }

    RingPtr ring_;
    std::map<Key, CohomClass<S>> terms_;
};

// Euler class of V^eff with the complex structure given by its upper-weight components:
// prod over upper lambda of sum_j c_j(E_lambda) (lambda xibar - conj(lambda) xi)^{rank - j}.
// Limited to complex rank <= 4.
template <typename S>
TwoVariableClass<S> euler_two_variable(const RealEquivariantBundle<S> &v, const ArgumentChoice &choice)
{
    const RingPtr &ring = v.ring();
    const auto upper = detail::upper_components(v, choice);
    int rank = 0;
    for (const auto *c : upper) {
        rank += c->rank;
    }
    if (rank > 4) {
        throw std::invalid_argument("two-variable Euler class is limited to complex rank <= 4");
    }
    TwoVariableClass<S> result(CohomClass<S>::one(ring));
    for (const auto *c : upper) {
        const TwoVariableClass<S> w = TwoVariableClass<S>::monomial(ring, c->lambda, {0, 1})
                                      + TwoVariableClass<S>::monomial(
                                          ring, from_rational<S>(0) - scalar_traits<S>::conjugate(c->lambda), {1, 0});
        TwoVariableClass<S> factor(ring);
        for (int j = 0; j <= c->rank; ++j) {
            CohomClass<S> cj = j == 0 ? CohomClass<S>::one(ring)
                                      : (static_cast<std::size_t>(j) <= c->chern.size()
                                             ? c->chern[static_cast<std::size_t>(j) - 1]
                                             : CohomClass<S>(ring));
            TwoVariableClass<S> term(cj);
            for (int e = 0; e < c->rank - j; ++e) {
                term = term * w;
            }
            factor = factor + term;
        }
        result = result * factor;
    }
    return result;
}

} // namespace witloc

#endif
