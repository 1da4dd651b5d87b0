#ifndef WITLOC_EQUIVARIANT_HPP
#define WITLOC_EQUIVARIANT_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <witloc/cohom.hpp>
#include <witloc/genus.hpp>
#include <witloc/lattice.hpp>
#include <witloc/scalar.hpp>

namespace witloc
{

// Laurent polynomial in the antiholomorphic variable xibar (degree 2) with coefficients in the
// truncated cohomology ring. Only the cohomology part is truncated; xibar powers are unbounded.
template <typename S>
class EquivariantClass
{
public:
    explicit EquivariantClass(RingPtr ring) : ring_(std::move(ring))
    {
        if (!ring_) {
            throw std::invalid_argument("equivariant class needs a ring");
        }
    }
    EquivariantClass(const CohomClass<S> &c, int xibar_power = 0) : ring_(c.ring())
    {
        add(xibar_power, c);
    }

    static EquivariantClass one(RingPtr ring)
    {
        return EquivariantClass(CohomClass<S>::one(std::move(ring)));
    }
    // s * xibar^n
    static EquivariantClass monomial(RingPtr ring, const S &s, int n)
    {
        return EquivariantClass(CohomClass<S>::constant(std::move(ring), s), n);
    }

    const RingPtr &ring() const
    {
        return ring_;
    }
    const std::map<int, CohomClass<S>> &terms() const
    {
        return terms_;
    }
    bool is_zero() const
    {
        return terms_.empty();
    }
    CohomClass<S> coefficient(int n) const
    {
        const auto it = terms_.find(n);
        return it == terms_.end() ? CohomClass<S>(ring_) : it->second;
    }
    // Scalar coefficient of xibar^0 * 1.
    S constant_term() const
    {
        return coefficient(0).constant_term();
    }

    // The set of total degrees deg_cohom + 2n over all terms.
    std::set<int> total_degrees() const
    {
        std::set<int> out;
        for (const auto &[n, c] : terms_) {
            for (int d : c.degrees()) {
                out.insert(d + 2 * n);
            }
        }
        return out;
    }
    std::optional<int> homogeneous_degree() const
    {
        const auto d = total_degrees();
        if (d.size() != 1) {
            return std::nullopt;
        }
        return *d.begin();
    }

    friend EquivariantClass operator+(EquivariantClass a, const EquivariantClass &b)
    {
        a.check_ring(b);
        for (const auto &[n, c] : b.terms_) {
            a.add(n, c);
        }
        return a;
    }
    friend EquivariantClass operator-(const EquivariantClass &a)
    {
        EquivariantClass r(a.ring_);
        for (const auto &[n, c] : a.terms_) {
            r.terms_.emplace(n, -c);
        }
        return r;
    }
    friend EquivariantClass operator-(const EquivariantClass &a, const EquivariantClass &b)
    {
        return a + (-b);
    }
    friend EquivariantClass operator*(const EquivariantClass &a, const EquivariantClass &b)
    {
        a.check_ring(b);
        EquivariantClass r(a.ring_);
        for (const auto &[na, ca] : a.terms_) {
            for (const auto &[nb, cb] : b.terms_) {
                r.add(na + nb, ca * cb);
            }
        }
        return r;
    }
    friend EquivariantClass operator*(const S &s, const EquivariantClass &a)
    {
        EquivariantClass r(a.ring_);
        for (const auto &[n, c] : a.terms_) {
            r.add(n, s * c);
        }
        return r;
    }
    EquivariantClass &operator+=(const EquivariantClass &o)
    {
        return *this = *this + o;
    }
    EquivariantClass &operator*=(const EquivariantClass &o)
    {
        return *this = *this * o;
    }
    friend bool operator==(const EquivariantClass &a, const EquivariantClass &b)
    {
        return (a.ring_ == b.ring_ || *a.ring_ == *b.ring_) && a.terms_ == b.terms_;
    }

    // True when this is 1 plus terms of positive cohomological degree, so that
    // this - 1 is nilpotent and inverse/log/sqrt are finite sums.
    bool is_unipotent() const
    {
        const EquivariantClass rest = *this - one(ring_);
        for (const auto &[n, c] : rest.terms_) {
            if (!witloc::is_zero(c.constant_term())) {
                return false;
            }
        }
        return true;
    }

    EquivariantClass unit_inverse() const
    {
        require_unipotent("inverse");
        const EquivariantClass x = one(ring_) - *this;
        EquivariantClass result = one(ring_);
        EquivariantClass power = one(ring_);
        for (int j = 1; j < 4096; ++j) {
            power = power * x;
            if (power.is_zero()) {
                return result;
            }
            result += power;
        }
        throw std::domain_error("equivariant inverse did not terminate");
    }

    // xibar^n factors shift; each term keeps its coefficient.
    EquivariantClass shifted(int n) const
    {
        EquivariantClass r(ring_);
        for (const auto &[k, c] : terms_) {
            r.terms_.emplace(k + n, c);
        }
        return r;
    }

    // Integrate each xibar coefficient over the manifold.
    std::map<int, S> integrate() const
    {
        std::map<int, S> out;
        for (const auto &[n, c] : terms_) {
            const S v = c.integrate();
            if (!witloc::is_zero(v)) {
                out.emplace(n, v);
            }
        }
        return out;
    }

    template <typename T, typename F>
    EquivariantClass<T> map_coefficients(F &&f) const
    {
        EquivariantClass<T> r(ring_);
        for (const auto &[n, c] : terms_) {
            r += EquivariantClass<T>(c.template map_coefficients<T>(f), n);
        }
        return r;
    }

    std::string str() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) {
                out += " + ";
            }
            const std::string c = it->second.str();
            if (it->first == 0) {
                out += c;
            } else {
                const std::string x = "xibar^" + std::to_string(it->first);
                out += (c == "1") ? x : "(" + c + ")*" + x;
            }
        }
        return out;
    }

private:
    void require_unipotent(const char *what) const
    {
        if (!is_unipotent()) {
            throw std::domain_error(std::string("equivariant ") + what
                                    + " needs 1 plus a nilpotent part (positive cohomological degree)");
        }
    }
    void check_ring(const EquivariantClass &o) const
    {
        if (ring_ != o.ring_ && !(*ring_ == *o.ring_)) {
            throw std::invalid_argument("equivariant classes live in different rings");
        }
    }
    void add(int n, const CohomClass<S> &c)
    {
        if (c.is_zero()) {
            return;
        }
        auto it = terms_.find(n);
        if (it == terms_.end()) {
            terms_.emplace(n, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }

    RingPtr ring_;
    std::map<int, CohomClass<S>> terms_;
};

template <typename S>
EquivariantClass<S> exp(const EquivariantClass<S> &x)
{
    if (!(x + EquivariantClass<S>::one(x.ring())).is_unipotent()) {
        throw std::domain_error("equivariant exp needs a nilpotent argument");
    }
    return nilpotent_exp<EquivariantClass<S>, S>(x, EquivariantClass<S>::one(x.ring()));
}

template <typename S>
EquivariantClass<S> log(const EquivariantClass<S> &x)
{
    if (!x.is_unipotent()) {
        throw std::domain_error("equivariant log needs 1 plus a nilpotent part");
    }
    return nilpotent_log1p<EquivariantClass<S>, S>(x - EquivariantClass<S>::one(x.ring()),
                                                    EquivariantClass<S>(x.ring()));
}

// Principal square root exp(log(x)/2) of a unipotent class.
template <typename S>
EquivariantClass<S> sqrt(const EquivariantClass<S> &x)
{
    return exp(from_rational<S>(Rational(1, 2)) * log(x));
}

// Places the degree-2k part of c at xibar^{-k}: the substitution z -> z * xibar^{-1} for
// series evaluated on degree-2 roots.
template <typename S>
EquivariantClass<S> xibar_graded(const CohomClass<S> &c)
{
    EquivariantClass<S> r(c.ring());
    for (int d : c.degrees()) {
        r += EquivariantClass<S>(c.homogeneous_component(d), -d / 2);
    }
    return r;
}

// Equivariant first Chern class c1(L) + lambda * xibar.
template <typename S>
EquivariantClass<S> first_chern_antiholo(const CohomClass<S> &c1, const S &lambda)
{
    if (!c1.is_zero() && c1.homogeneous_degree() != 2) {
        throw std::invalid_argument("first Chern class must be homogeneous of degree 2");
    }
    return EquivariantClass<S>(c1) + EquivariantClass<S>::monomial(c1.ring(), lambda, 1);
}

// Bundle on which the torus acts through the character rho_lambda.
template <typename S>
struct IsotypicComponent {
    S lambda;
    int rank;
    std::vector<CohomClass<S>> chern; // c_1, ..., c_rank (missing entries are zero)
};

template <typename S>
class IsotypicBundle
{
public:
    IsotypicBundle(RingPtr ring, std::vector<IsotypicComponent<S>> effective, int zero_rank = 0,
                   std::vector<CohomClass<S>> zero_chern = {})
        : ring_(std::move(ring)), effective_(std::move(effective)), zero_rank_(zero_rank),
          zero_chern_(std::move(zero_chern))
    {
        if (!ring_) {
            throw std::invalid_argument("isotypic bundle needs a ring");
        }
        if (zero_rank_ < 0) {
            throw std::invalid_argument("zero-weight rank must be nonnegative");
        }
        validate_chern(zero_rank_, zero_chern_, "zero-weight component");
        for (std::size_t i = 0; i < effective_.size(); ++i) {
            const auto &c = effective_[i];
            if (witloc::is_zero(c.lambda)) {
                throw std::invalid_argument("effective component has zero weight");
            }
            if (c.rank <= 0) {
                throw std::invalid_argument("effective component rank must be positive");
            }
            validate_chern(c.rank, c.chern, "effective component " + std::to_string(i));
            for (std::size_t j = 0; j < i; ++j) {
                if (effective_[j].lambda == c.lambda) {
                    throw std::invalid_argument("effective weights must be pairwise distinct");
                }
            }
        }
    }

    const RingPtr &ring() const
    {
        return ring_;
    }
    const std::vector<IsotypicComponent<S>> &effective() const
    {
        return effective_;
    }
    int zero_rank() const
    {
        return zero_rank_;
    }
    const std::vector<CohomClass<S>> &zero_chern() const
    {
        return zero_chern_;
    }
    int effective_rank() const
    {
        int r = 0;
        for (const auto &c : effective_) {
            r += c.rank;
        }
        return r;
    }
    int total_rank() const
    {
        return zero_rank_ + effective_rank();
    }

private:
    void validate_chern(int rank, const std::vector<CohomClass<S>> &chern, const std::string &what) const
    {
        if (static_cast<int>(chern.size()) > rank) {
            throw std::invalid_argument(what + ": more Chern classes than the rank");
        }
        for (std::size_t j = 0; j < chern.size(); ++j) {
            const auto &cj = chern[j];
            if (!(cj.ring() == ring_ || *cj.ring() == *ring_)) {
                throw std::invalid_argument(what + ": Chern class in a different ring");
            }
            if (!cj.is_zero() && cj.homogeneous_degree() != static_cast<int>(2 * (j + 1))) {
                throw std::invalid_argument(what + ": c" + std::to_string(j + 1) + " must have degree "
                                            + std::to_string(2 * (j + 1)));
            }
        }
    }

    RingPtr ring_;
    std::vector<IsotypicComponent<S>> effective_;
    int zero_rank_;
    std::vector<CohomClass<S>> zero_chern_;
};

// Real bundle described by its complexification: weights come in pairs +-lambda of equal rank.
template <typename S>
class RealEquivariantBundle
{
public:
    explicit RealEquivariantBundle(IsotypicBundle<S> complexification) : complexification_(std::move(complexification))
    {
        const auto &eff = complexification_.effective();
        for (const auto &c : eff) {
            const S minus = from_rational<S>(0) - c.lambda;
            bool found = false;
            for (const auto &d : eff) {
                if (d.lambda == minus) {
                    if (d.rank != c.rank) {
                        throw std::invalid_argument("weights lambda and -lambda must carry equal ranks");
                    }
                    found = true;
                }
            }
            if (!found) {
                throw std::invalid_argument("weight without its negative: the bundle is not the complexification "
                                            "of a real bundle");
            }
        }
    }

    // Builds the complexification E + conj(E) of a complex bundle E = sum E_lambda,
    // using c_j(conj E) = (-1)^j c_j(E).
    static RealEquivariantBundle from_complex_structure(RingPtr ring, const std::vector<IsotypicComponent<S>> &parts)
    {
        std::vector<IsotypicComponent<S>> all;
        for (const auto &p : parts) {
            all.push_back(p);
            IsotypicComponent<S> q{from_rational<S>(0) - p.lambda, p.rank, {}};
            for (std::size_t j = 0; j < p.chern.size(); ++j) {
                q.chern.push_back(j % 2 == 0 ? -p.chern[j] : p.chern[j]);
            }
            all.push_back(std::move(q));
        }
        return RealEquivariantBundle(IsotypicBundle<S>(std::move(ring), std::move(all)));
    }

    const IsotypicBundle<S> &complexification() const
    {
        return complexification_;
    }
    const RingPtr &ring() const
    {
        return complexification_.ring();
    }
    // Real rank of the effective part.
    int real_rank() const
    {
        return complexification_.effective_rank();
    }

private:
    IsotypicBundle<S> complexification_;
};

// xibar^{rk} * prod_lambda lambda^{rank}.
template <typename S>
EquivariantClass<S> weight_polynomial_antiholo(const IsotypicBundle<S> &b)
{
    if (b.effective().empty()) {
        throw std::invalid_argument("weight polynomial of a bundle without effective part");
    }
    S w = from_rational<S>(1);
    for (const auto &c : b.effective()) {
        w = w * ipow(c.lambda, c.rank);
    }
    return EquivariantClass<S>::monomial(b.ring(), w, b.effective_rank());
}

// log of the normalized top Chern class:
// sum_lambda sum_k (-1)^{k+1} s_k(E_lambda) / (k lambda^k) xibar^{-k}.
template <typename S>
EquivariantClass<S> log_normalized_top_chern_antiholo(const IsotypicBundle<S> &b)
{
    const RingPtr &ring = b.ring();
    const int max_k = ring->top_degree() / 2;
    EquivariantClass<S> sum(ring);
    for (const auto &c : b.effective()) {
        if (witloc::is_zero(c.lambda)) {
            throw std::invalid_argument("normalized top Chern class needs nonzero weights");
        }
        const auto s = power_sums_from_elementary(c.chern, max_k, ring);
        const S inv = from_rational<S>(1) / c.lambda;
        S inv_pow = from_rational<S>(1);
        for (int k = 1; k <= max_k; ++k) {
            inv_pow = inv_pow * inv;
            const S coeff = from_rational<S>(Rational(k % 2 == 1 ? 1 : -1, k)) * inv_pow;
            sum += EquivariantClass<S>(coeff * s[static_cast<std::size_t>(k - 1)], -k);
        }
    }
    return sum;
}

// prod_lambda prod_i (1 + alpha_i(E_lambda) / (lambda xibar)); constant term 1.
template <typename S>
EquivariantClass<S> normalized_top_chern_antiholo(const IsotypicBundle<S> &b)
{
    return exp(log_normalized_top_chern_antiholo(b));
}

// Top equivariant Chern class of the effective part: weight polynomial times normalized class.
template <typename S>
EquivariantClass<S> top_chern_antiholo(const IsotypicBundle<S> &b)
{
    return weight_polynomial_antiholo(b) * normalized_top_chern_antiholo(b);
}

namespace detail
{

// For each +-lambda pair, the weight whose argument lies in [base, base + pi).
template <typename S>
std::vector<const IsotypicComponent<S> *> upper_components(const RealEquivariantBundle<S> &v,
                                                           const ArgumentChoice &choice)
{
    std::vector<const IsotypicComponent<S> *> out;
    for (const auto &c : v.complexification().effective()) {
        if (choice.upper(scalar_traits<S>::to_complex(c.lambda))) {
            out.push_back(&c);
        }
    }
    return out;
}

} // namespace detail

// The scalar P with eul = P * xibar^{rk/2} * sqrt(normalized top Chern class):
// P = i^{rk/2} prod_lambda lambda^{rank/2}, where for each pair
// lambda^{1/2} (-lambda)^{1/2} = -i lambda_upper on the chosen branch, so P = prod lambda_upper^rank.
template <typename S>
S euler_prefactor(const RealEquivariantBundle<S> &v, const ArgumentChoice &choice)
{
    S p = from_rational<S>(1);
    for (const auto *c : detail::upper_components(v, choice)) {
        p = p * ipow(c->lambda, c->rank);
    }
    return p;
}

// Square-root part of the Euler class; independent of the argument choice.
template <typename S>
EquivariantClass<S> normalized_euler_antiholo(const RealEquivariantBundle<S> &v)
{
    return exp(from_rational<S>(Rational(1, 2)) * log_normalized_top_chern_antiholo(v.complexification()));
}

template <typename S>
EquivariantClass<S> equivariant_euler_antiholo(const RealEquivariantBundle<S> &v, const ArgumentChoice &choice)
{
    const auto &b = v.complexification();
    if (b.effective().empty()) {
        return EquivariantClass<S>::one(b.ring());
    }
    return EquivariantClass<S>::monomial(b.ring(), euler_prefactor(v, choice), v.real_rank() / 2)
           * normalized_euler_antiholo(v);
}

// 1 / eul, using the factorized form (the prefactor is a nonzero scalar times a xibar power).
template <typename S>
EquivariantClass<S> inverse_euler_antiholo(const RealEquivariantBundle<S> &v, const ArgumentChoice &choice)
{
    const auto &b = v.complexification();
    if (b.effective().empty()) {
        return EquivariantClass<S>::one(b.ring());
    }
    const S inv = from_rational<S>(1) / euler_prefactor(v, choice);
    return EquivariantClass<S>::monomial(b.ring(), inv, -v.real_rank() / 2)
           * exp(from_rational<S>(Rational(-1, 2)) * log_normalized_top_chern_antiholo(b));
}

} // namespace witloc

#endif
