#ifndef WITLOC_COHOM_HPP
#define WITLOC_COHOM_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <witloc/format.hpp>
#include <witloc/scalar.hpp>

namespace witloc
{

// Exponent vector over the ring generators.
using Monomial = std::vector<int>;

struct Generator {
    std::string name;
    int degree;

    friend bool operator==(const Generator &, const Generator &) = default;
};

// Graded truncated polynomial ring on even-degree generators: everything above the top
// degree D is zero, and degree-D monomials carry their integral over the manifold.
class RingSpec
{
public:
    RingSpec(std::vector<Generator> generators, int top_degree, std::map<Monomial, Rational> integral_table)
        : generators_(std::move(generators)), top_degree_(top_degree), table_(std::move(integral_table))
    {
        if (top_degree_ < 0 || top_degree_ % 2 != 0) {
            throw std::invalid_argument("top degree must be a nonnegative even integer");
        }
        std::set<std::string> names;
        for (const auto &g : generators_) {
            if (g.name.empty()) {
                throw std::invalid_argument("generator names must be nonempty");
            }
            if (!names.insert(g.name).second) {
                throw std::invalid_argument("duplicate generator name '" + g.name + "'");
            }
            if (g.degree <= 0 || g.degree % 2 != 0) {
                throw std::invalid_argument("generator '" + g.name + "' must have even positive degree");
            }
        }
        for (const auto &[m, v] : table_) {
            if (m.size() != generators_.size()) {
                throw std::invalid_argument("integral table monomial has wrong number of exponents");
            }
            if (degree(m) != top_degree_) {
                throw std::invalid_argument("integral table entry " + monomial_str(m) + " is not of top degree");
            }
        }
        for (const auto &m : monomials_of_degree(top_degree_)) {
            if (!table_.count(m)) {
                throw std::invalid_argument("integral table is missing the top-degree monomial " + monomial_str(m));
            }
        }
    }

    // Same ring, with every top-degree monomial missing from `partial` integrating to 0.
    static RingSpec with_default_zeros(std::vector<Generator> generators, int top_degree,
                                       std::map<Monomial, Rational> partial)
    {
        RingSpec probe(generators, top_degree, {}, 0);
        for (const auto &m : probe.monomials_of_degree(top_degree)) {
            partial.try_emplace(m, 0);
        }
        return RingSpec(std::move(generators), top_degree, std::move(partial));
    }

    // The ring of a point: no generators, D = 0, integral of 1 is 1.
    static RingSpec point()
    {
        return RingSpec({}, 0, {{Monomial{}, Rational(1)}});
    }

    const std::vector<Generator> &generators() const
    {
        return generators_;
    }
    int top_degree() const
    {
        return top_degree_;
    }
    const std::map<Monomial, Rational> &integral_table() const
    {
        return table_;
    }

    std::optional<std::size_t> generator_index(const std::string &name) const
    {
        for (std::size_t i = 0; i < generators_.size(); ++i) {
            if (generators_[i].name == name) {
                return i;
            }
        }
        return std::nullopt;
    }

    int degree(const Monomial &m) const
    {
        int d = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            d += m[i] * generators_[i].degree;
        }
        return d;
    }

    const Rational &integral(const Monomial &m) const
    {
        return table_.at(m);
    }

    std::vector<Monomial> monomials_of_degree(int d) const
    {
        std::vector<Monomial> out;
        Monomial cur(generators_.size(), 0);
        enumerate(0, d, cur, out);
        return out;
    }

    std::string monomial_str(const Monomial &m) const
    {
        std::string s;
        for (std::size_t i = 0; i < m.size() && i < generators_.size(); ++i) {
            if (m[i] == 0) {
                continue;
            }
            if (!s.empty()) {
                s += "*";
            }
            s += generators_[i].name;
            if (m[i] > 1) {
                s += "^" + std::to_string(m[i]);
            }
        }
        return s.empty() ? "1" : s;
    }

    friend bool operator==(const RingSpec &a, const RingSpec &b)
    {
        return a.generators_ == b.generators_ && a.top_degree_ == b.top_degree_ && a.table_ == b.table_;
    }

private:
    RingSpec(std::vector<Generator> generators, int top_degree, std::map<Monomial, Rational> table, int)
        : generators_(std::move(generators)), top_degree_(top_degree), table_(std::move(table))
    {
    }

    void enumerate(std::size_t i, int remaining, Monomial &cur, std::vector<Monomial> &out) const
    {
        if (i == generators_.size()) {
            if (remaining == 0) {
                out.push_back(cur);
            }
            return;
        }
        for (int e = 0; e * generators_[i].degree <= remaining; ++e) {
            cur[i] = e;
            enumerate(i + 1, remaining - e * generators_[i].degree, cur, out);
        }
        cur[i] = 0;
    }

    std::vector<Generator> generators_;
    int top_degree_;
    std::map<Monomial, Rational> table_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

inline RingPtr make_ring(RingSpec spec)
{
    return std::make_shared<const RingSpec>(std::move(spec));
}

// Element of the truncated cohomology ring with coefficients in S.
template <typename S>
class CohomClass
{
public:
    explicit CohomClass(RingPtr ring) : ring_(std::move(ring))
    {
        if (!ring_) {
            throw std::invalid_argument("cohomology class needs a ring");
        }
    }

    static CohomClass constant(RingPtr ring, const S &c)
    {
        CohomClass r(std::move(ring));
        r.add_term(Monomial(r.ring_->generators().size(), 0), c);
        return r;
    }
    static CohomClass one(RingPtr ring)
    {
        return constant(std::move(ring), from_rational<S>(1));
    }
    static CohomClass term(RingPtr ring, Monomial m, const S &c)
    {
        CohomClass r(std::move(ring));
        if (m.size() != r.ring_->generators().size()) {
            throw std::invalid_argument("monomial has wrong number of exponents");
        }
        r.add_term(m, c);
        return r;
    }
    static CohomClass generator(RingPtr ring, const std::string &name)
    {
        const auto idx = ring->generator_index(name);
        if (!idx) {
            throw std::invalid_argument("unknown generator '" + name + "'");
        }
        Monomial m(ring->generators().size(), 0);
        m[*idx] = 1;
        return term(std::move(ring), m, from_rational<S>(1));
    }

    const RingPtr &ring() const
    {
        return ring_;
    }
    const std::map<Monomial, S> &terms() const
    {
        return terms_;
    }
    bool is_zero() const
    {
        return terms_.empty();
    }

    // Coefficient of the constant monomial.
    S constant_term() const
    {
        const auto it = terms_.find(Monomial(ring_->generators().size(), 0));
        return it == terms_.end() ? from_rational<S>(0) : it->second;
    }

    CohomClass homogeneous_component(int degree) const
    {
        CohomClass r(ring_);
        for (const auto &[m, c] : terms_) {
            if (ring_->degree(m) == degree) {
                r.terms_.emplace(m, c);
            }
        }
        return r;
    }
    std::set<int> degrees() const
    {
        std::set<int> d;
        for (const auto &kv : terms_) {
            d.insert(ring_->degree(kv.first));
        }
        return d;
    }
    // The single degree of a nonzero homogeneous class.
    std::optional<int> homogeneous_degree() const
    {
        const auto d = degrees();
        if (d.size() != 1) {
            return std::nullopt;
        }
        return *d.begin();
    }

    friend CohomClass operator+(CohomClass a, const CohomClass &b)
    {
        a.check_same_ring(b);
        for (const auto &[m, c] : b.terms_) {
            a.add_term(m, c);
        }
        return a;
    }
    friend CohomClass operator-(const CohomClass &a)
    {
        CohomClass r(a.ring_);
        for (const auto &[m, c] : a.terms_) {
            r.terms_.emplace(m, from_rational<S>(0) - c);
        }
        return r;
    }
    friend CohomClass operator-(const CohomClass &a, const CohomClass &b)
    {
        return a + (-b);
    }
    friend CohomClass operator*(const CohomClass &a, const CohomClass &b)
    {
        a.check_same_ring(b);
        CohomClass r(a.ring_);
        const int top = a.ring_->top_degree();
        for (const auto &[ma, ca] : a.terms_) {
            const int da = a.ring_->degree(ma);
            for (const auto &[mb, cb] : b.terms_) {
                if (da + a.ring_->degree(mb) > top) {
                    continue;
                }
                Monomial m(ma);
                for (std::size_t i = 0; i < m.size(); ++i) {
                    m[i] += mb[i];
                }
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    friend CohomClass operator*(const S &s, const CohomClass &a)
    {
        CohomClass r(a.ring_);
        if (witloc::is_zero(s)) {
            return r;
        }
        for (const auto &[m, c] : a.terms_) {
            r.add_term(m, s * c);
        }
        return r;
    }
    CohomClass &operator+=(const CohomClass &o)
    {
        return *this = *this + o;
    }
    CohomClass &operator-=(const CohomClass &o)
    {
        return *this = *this - o;
    }
    CohomClass &operator*=(const CohomClass &o)
    {
        return *this = *this * o;
    }

    friend bool operator==(const CohomClass &a, const CohomClass &b)
    {
        return (a.ring_ == b.ring_ || *a.ring_ == *b.ring_) && a.terms_ == b.terms_;
    }

    // Sum over top-degree monomials of coefficient times the tabulated integral.
    S integrate() const
    {
        S total = from_rational<S>(0);
        const int top = ring_->top_degree();
        for (const auto &[m, c] : terms_) {
            if (ring_->degree(m) == top) {
                const Rational &v = ring_->integral(m);
                if (v != 0) {
                    total = total + c * from_rational<S>(v);
                }
            }
        }
        return total;
    }

    template <typename T, typename F>
    CohomClass<T> map_coefficients(F &&f) const
    {
        CohomClass<T> r(ring_);
        for (const auto &[m, c] : terms_) {
            r = r + CohomClass<T>::term(ring_, m, f(c));
        }
        return r;
    }

    template <typename T>
    CohomClass<T> cast() const
    {
        return map_coefficients<T>([](const S &c) { return T(c); });
    }

    std::string str() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string out;
        // Low degree first, then monomial order.
        std::map<std::pair<int, Monomial>, const S *> ordered;
        for (const auto &[m, c] : terms_) {
            ordered.emplace(std::make_pair(ring_->degree(m), m), &c);
        }
        for (const auto &[key, c] : ordered) {
            if (!out.empty()) {
                out += " + ";
            }
            const std::string mono = ring_->monomial_str(key.second);
            const std::string coeff = format_scalar(*c);
            if (mono == "1") {
                out += coeff;
            } else if (coeff == "1") {
                out += mono;
            } else {
                out += coeff + "*" + mono;
            }
        }
        return out;
    }

private:
    template <typename>
    friend class CohomClass;

    void check_same_ring(const CohomClass &o) const
    {
        if (ring_ != o.ring_ && !(*ring_ == *o.ring_)) {
            throw std::invalid_argument("cohomology classes live in different rings");
        }
    }
    void add_term(const Monomial &m, const S &c)
    {
        if (ring_->degree(m) > ring_->top_degree() || witloc::is_zero(c)) {
            return;
        }
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second = it->second + c;
        if (witloc::is_zero(it->second)) {
            terms_.erase(it);
        }
    }

    RingPtr ring_;
    std::map<Monomial, S> terms_;
};

template <typename S>
CohomClass<S> operator*(const CohomClass<S> &a, const S &s)
{
    return s * a;
}

// exp(x) = sum x^j / j! for nilpotent x (no constant term in a truncated graded ring).
template <typename A, typename S>
A nilpotent_exp(const A &x, const A &one)
{
    A result = one;
    A power = one;
    for (int j = 1; j < 4096; ++j) {
        power = from_rational<S>(Rational(1, j)) * (power * x);
        if (power.is_zero()) {
            return result;
        }
        result = result + power;
    }
    throw std::domain_error("exp argument is not nilpotent");
}

// log(1 + x) = sum (-1)^{j+1} x^j / j for nilpotent x.
template <typename A, typename S>
A nilpotent_log1p(const A &x, const A &zero)
{
    A result = zero;
    A power = x;
    for (int j = 1; j < 4096; ++j) {
        if (power.is_zero()) {
            return result;
        }
        result = result + from_rational<S>(Rational(j % 2 == 1 ? 1 : -1, j)) * power;
        power = power * x;
    }
    throw std::domain_error("log argument is not unipotent");
}

template <typename S>
CohomClass<S> exp(const CohomClass<S> &x)
{
    if (!is_zero(x.constant_term())) {
        throw std::domain_error("exp of a cohomology class needs a vanishing constant term");
    }
    return nilpotent_exp<CohomClass<S>, S>(x, CohomClass<S>::one(x.ring()));
}

template <typename S>
CohomClass<S> log(const CohomClass<S> &x)
{
    if (!(x.constant_term() == from_rational<S>(1))) {
        throw std::domain_error("log of a cohomology class needs constant term 1");
    }
    return nilpotent_log1p<CohomClass<S>, S>(x - CohomClass<S>::one(x.ring()), CohomClass<S>(x.ring()));
}

} // namespace witloc

#endif
