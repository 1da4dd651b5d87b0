#ifndef WITLOC_SCALAR_HPP
#define WITLOC_SCALAR_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace witloc
{

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double pi = 3.14159265358979323846264338327950288;

// Parses "p", "p/q", "-p/q" (whitespace tolerated around the tokens).
inline Rational parse_rational(const std::string &text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    const auto slash = s.find('/');
    auto parse_int = [&](const std::string &t) {
        std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (start == t.size()) {
            throw std::invalid_argument("malformed rational literal '" + text + "'");
        }
        for (std::size_t i = start; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
                throw std::invalid_argument("malformed rational literal '" + text + "'");
            }
        }
        boost::multiprecision::cpp_int v(t[0] == '+' ? t.substr(1) : t);
        return v;
    };
    if (slash == std::string::npos) {
        return Rational(parse_int(s));
    }
    auto num = parse_int(s.substr(0, slash));
    auto den = parse_int(s.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + text + "'");
    }
    return Rational(num, den);
}

inline std::string to_string(const Rational &r)
{
    return r.str();
}

// The exact rational value of a finite double.
inline Rational exact_rational(double x)
{
    if (!std::isfinite(x)) {
        throw std::invalid_argument("cannot convert a non-finite double to a rational");
    }
    int e = 0;
    const double m = std::frexp(x, &e); // x = m * 2^e, 0.5 <= |m| < 1
    const auto mantissa = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    Rational r(mantissa);
    boost::multiprecision::cpp_int two_pow = 1;
    two_pow <<= std::abs(e);
    return e >= 0 ? r * Rational(two_pow) : r / Rational(two_pow);
}

// Exact element of Q(i).
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(int r) : re(r) {}
    GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

    friend GaussianRational operator+(const GaussianRational &a, const GaussianRational &b)
    {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational &a, const GaussianRational &b)
    {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational &a)
    {
        return {-a.re, -a.im};
    }
    friend GaussianRational operator*(const GaussianRational &a, const GaussianRational &b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational &a, const GaussianRational &b)
    {
        const Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) {
            throw std::domain_error("division by zero in Q(i)");
        }
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational &operator+=(const GaussianRational &o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational &operator-=(const GaussianRational &o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational &operator*=(const GaussianRational &o)
    {
        return *this = *this * o;
    }
    friend bool operator==(const GaussianRational &a, const GaussianRational &b)
    {
        return a.re == b.re && a.im == b.im;
    }

    Complex to_complex() const
    {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

inline GaussianRational conj(const GaussianRational &z)
{
    return {z.re, -z.im};
}

// Polynomial with rational coefficients in the formal symbols zeta2, G4, G6, ...
// Symbol 0 is zeta2 (the regularized lattice zeta value at 2); symbol j >= 1 is G_{2j+2}.
class Symbolic
{
public:
    using Exponents = std::vector<int>;

    Symbolic() = default;
    Symbolic(int c) : Symbolic(Rational(c)) {}
    Symbolic(const Rational &c)
    {
        if (c != 0) {
            terms_[{}] = c;
        }
    }

    static Symbolic symbol(std::size_t index)
    {
        Symbolic s;
        Exponents e(index + 1, 0);
        e[index] = 1;
        s.terms_[e] = 1;
        return s;
    }
    static Symbolic zeta2()
    {
        return symbol(0);
    }
    static Symbolic eisenstein(int two_k)
    {
        if (two_k < 4 || two_k % 2 != 0) {
            throw std::invalid_argument("symbolic Eisenstein series needs an even weight >= 4");
        }
        return symbol(static_cast<std::size_t>(two_k / 2 - 1));
    }
    static std::string symbol_name(std::size_t index)
    {
        return index == 0 ? std::string("zeta2") : "G" + std::to_string(2 * index + 2);
    }

    const std::map<Exponents, Rational> &terms() const
    {
        return terms_;
    }
    bool is_zero() const
    {
        return terms_.empty();
    }

    friend Symbolic operator+(Symbolic a, const Symbolic &b)
    {
        for (const auto &[e, c] : b.terms_) {
            a.accumulate(e, c);
        }
        return a;
    }
    friend Symbolic operator-(const Symbolic &a)
    {
        Symbolic r;
        for (const auto &[e, c] : a.terms_) {
            r.terms_[e] = -c;
        }
        return r;
    }
    friend Symbolic operator-(const Symbolic &a, const Symbolic &b)
    {
        return a + (-b);
    }
    friend Symbolic operator*(const Symbolic &a, const Symbolic &b)
    {
        Symbolic r;
        for (const auto &[ea, ca] : a.terms_) {
            for (const auto &[eb, cb] : b.terms_) {
                Exponents e(std::max(ea.size(), eb.size()), 0);
                for (std::size_t i = 0; i < ea.size(); ++i) {
                    e[i] += ea[i];
                }
                for (std::size_t i = 0; i < eb.size(); ++i) {
                    e[i] += eb[i];
                }
                r.accumulate(e, ca * cb);
            }
        }
        return r;
    }
    Symbolic &operator+=(const Symbolic &o)
    {
        return *this = *this + o;
    }
    Symbolic &operator-=(const Symbolic &o)
    {
        return *this = *this - o;
    }
    Symbolic &operator*=(const Symbolic &o)
    {
        return *this = *this * o;
    }
    friend bool operator==(const Symbolic &a, const Symbolic &b)
    {
        return a.terms_ == b.terms_;
    }

    // Numerical value for given symbol values (index 0 = zeta2, index j = G_{2j+2}).
    Complex evaluate(const std::vector<Complex> &values) const
    {
        Complex total = 0;
        for (const auto &[e, c] : terms_) {
            Complex t = static_cast<double>(c);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] != 0) {
                    if (i >= values.size()) {
                        throw std::out_of_range("no value supplied for symbol " + symbol_name(i));
                    }
                    t *= std::pow(values[i], e[i]);
                }
            }
            total += t;
        }
        return total;
    }

    std::string str() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string out;
        bool first = true;
        for (const auto &[e, c] : terms_) {
            Rational mag = c < 0 ? Rational(-c) : c;
            if (!first) {
                out += c < 0 ? " - " : " + ";
            } else if (c < 0) {
                out += "-";
            }
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) {
                    continue;
                }
                if (!mono.empty()) {
                    mono += "*";
                }
                mono += symbol_name(i);
                if (e[i] > 1) {
                    mono += "^" + std::to_string(e[i]);
                }
            }
            if (mono.empty()) {
                out += to_string(mag);
            } else if (mag == 1) {
                out += mono;
            } else {
                out += to_string(mag) + "*" + mono;
            }
        }
        return out;
    }

private:
    static Exponents trimmed(Exponents e)
    {
        while (!e.empty() && e.back() == 0) {
            e.pop_back();
        }
        return e;
    }
    void accumulate(const Exponents &raw, const Rational &c)
    {
        if (c == 0) {
            return;
        }
        auto e = trimmed(raw);
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), c);
        } else {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    std::map<Exponents, Rational> terms_;
};

// Coefficient-field hooks used by the generic algebra.
template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
    static Complex from_rational(const Rational &r)
    {
        return static_cast<double>(r);
    }
    static bool is_zero(const Complex &z)
    {
        return z == Complex(0.0, 0.0);
    }
    static Complex imag_unit()
    {
        return {0.0, 1.0};
    }
    static Complex to_complex(const Complex &z)
    {
        return z;
    }
    static Complex conjugate(const Complex &z)
    {
        return std::conj(z);
    }
};

template <>
struct scalar_traits<GaussianRational> {
    static GaussianRational from_rational(const Rational &r)
    {
        return GaussianRational(r);
    }
    static bool is_zero(const GaussianRational &z)
    {
        return z.re == 0 && z.im == 0;
    }
    static GaussianRational imag_unit()
    {
        return {0, 1};
    }
    static Complex to_complex(const GaussianRational &z)
    {
        return z.to_complex();
    }
    static GaussianRational conjugate(const GaussianRational &z)
    {
        return conj(z);
    }
};

template <>
struct scalar_traits<Rational> {
    static Rational from_rational(const Rational &r)
    {
        return r;
    }
    static bool is_zero(const Rational &r)
    {
        return r == 0;
    }
};

template <>
struct scalar_traits<Symbolic> {
    static Symbolic from_rational(const Rational &r)
    {
        return Symbolic(r);
    }
    static bool is_zero(const Symbolic &s)
    {
        return s.is_zero();
    }
};

template <typename S>
S from_rational(const Rational &r)
{
    return scalar_traits<S>::from_rational(r);
}

template <typename S>
bool is_zero(const S &s)
{
    return scalar_traits<S>::is_zero(s);
}

// Integer power by repeated squaring; works for any ring with a unit.
template <typename S>
S ipow(S base, int exp)
{
    if (exp < 0) {
        throw std::invalid_argument("ipow: negative exponent");
    }
    S result = from_rational<S>(1);
    while (exp > 0) {
        if (exp & 1) {
            result = result * base;
        }
        base = base * base;
        exp >>= 1;
    }
    return result;
}

} // namespace witloc

#endif
