#ifndef WITLOC_SERIES_HPP
#define WITLOC_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <witloc/scalar.hpp>

namespace witloc
{

// Truncated power series sum_{n <= order} c_n z^n. Every operation truncates at
// the smaller of the operands' orders.
template <typename S>
class Series
{
public:
    Series() : Series(0) {}
    explicit Series(int order) : coeffs_(static_cast<std::size_t>(check_order(order)) + 1, from_rational<S>(0)) {}
    Series(std::vector<S> coeffs, int order) : Series(order)
    {
        for (std::size_t i = 0; i < coeffs.size() && i < coeffs_.size(); ++i) {
            coeffs_[i] = std::move(coeffs[i]);
        }
    }

    static Series constant(const S &c, int order)
    {
        Series s(order);
        s.coeffs_[0] = c;
        return s;
    }
    // The formal variable z itself.
    static Series variable(int order)
    {
        Series s(order);
        if (order >= 1) {
            s.coeffs_[1] = from_rational<S>(1);
        }
        return s;
    }

    int order() const
    {
        return static_cast<int>(coeffs_.size()) - 1;
    }
    const S &operator[](int n) const
    {
        return coeffs_.at(static_cast<std::size_t>(n));
    }
    S &operator[](int n)
    {
        return coeffs_.at(static_cast<std::size_t>(n));
    }
    const std::vector<S> &coefficients() const
    {
        return coeffs_;
    }

    Series truncated(int order) const
    {
        return Series(coeffs_, std::min(order, this->order()));
    }

    friend Series operator+(const Series &a, const Series &b)
    {
        Series r(std::min(a.order(), b.order()));
        for (int n = 0; n <= r.order(); ++n) {
            r[n] = a[n] + b[n];
        }
        return r;
    }
    friend Series operator-(const Series &a, const Series &b)
    {
        Series r(std::min(a.order(), b.order()));
        for (int n = 0; n <= r.order(); ++n) {
            r[n] = a[n] - b[n];
        }
        return r;
    }
    friend Series operator*(const Series &a, const Series &b)
    {
        Series r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) {
            if (is_zero(a[i])) {
                continue;
            }
            for (int j = 0; i + j <= r.order(); ++j) {
                r[i + j] = r[i + j] + a[i] * b[j];
            }
        }
        return r;
    }
    friend Series operator*(const S &c, const Series &a)
    {
        Series r(a.order());
        for (int n = 0; n <= r.order(); ++n) {
            r[n] = c * a[n];
        }
        return r;
    }

    // Drops the constant term and divides by z; the order drops by one.
    Series divided_by_variable() const
    {
        if (!is_zero(coeffs_[0])) {
            throw std::domain_error("series is not divisible by z: nonzero constant term");
        }
        if (order() == 0) {
            throw std::domain_error("cannot divide an order-0 series by z");
        }
        return Series(std::vector<S>(coeffs_.begin() + 1, coeffs_.end()), order() - 1);
    }
    Series multiplied_by_variable() const
    {
        std::vector<S> c;
        c.reserve(coeffs_.size() + 1);
        c.push_back(from_rational<S>(0));
        c.insert(c.end(), coeffs_.begin(), coeffs_.end());
        return Series(std::move(c), order() + 1);
    }

    // exp of a series without constant term, via E' = A'E.
    friend Series exp(const Series &a)
    {
        if (!is_zero(a[0])) {
            throw std::domain_error("series exp needs a vanishing constant term");
        }
        Series e(a.order());
        e[0] = from_rational<S>(1);
        for (int n = 1; n <= a.order(); ++n) {
            S acc = from_rational<S>(0);
            for (int k = 1; k <= n; ++k) {
                if (!is_zero(a[k])) {
                    acc = acc + from_rational<S>(k) * a[k] * e[n - k];
                }
            }
            e[n] = from_rational<S>(Rational(1, n)) * acc;
        }
        return e;
    }

    // log of a series with constant term 1, via F' = L'F.
    friend Series log(const Series &f)
    {
        if (!(f[0] == from_rational<S>(1))) {
            throw std::domain_error("series log needs constant term 1");
        }
        Series l(f.order());
        for (int n = 1; n <= f.order(); ++n) {
            S acc = from_rational<S>(0);
            for (int k = 1; k < n; ++k) {
                if (!is_zero(l[k])) {
                    acc = acc + from_rational<S>(k) * l[k] * f[n - k];
                }
            }
            l[n] = f[n] - from_rational<S>(Rational(1, n)) * acc;
        }
        return l;
    }

    // Multiplicative inverse of a series with constant term 1.
    Series inverse() const
    {
        if (!(coeffs_[0] == from_rational<S>(1))) {
            throw std::domain_error("series inverse needs constant term 1");
        }
        Series r(order());
        r[0] = from_rational<S>(1);
        for (int n = 1; n <= order(); ++n) {
            S acc = from_rational<S>(0);
            for (int k = 1; k <= n; ++k) {
                acc = acc + coeffs_[static_cast<std::size_t>(k)] * r[n - k];
            }
            r[n] = from_rational<S>(0) - acc;
        }
        return r;
    }

    // f(g(z)) for g with vanishing constant term (Horner in the series ring).
    Series compose(const Series &g) const
    {
        if (!is_zero(g[0])) {
            throw std::domain_error("composition needs an inner series without constant term");
        }
        const int n = std::min(order(), g.order());
        Series r = Series::constant(coeffs_[static_cast<std::size_t>(n)], n);
        const Series gt = g.truncated(n);
        for (int k = n - 1; k >= 0; --k) {
            r = r * gt;
            r[0] = r[0] + coeffs_[static_cast<std::size_t>(k)];
        }
        return r;
    }

    template <typename T>
    T evaluate(const T &z) const
    {
        T acc = T(0);
        for (int n = order(); n >= 0; --n) {
            acc = acc * z + T(coeffs_[static_cast<std::size_t>(n)]);
        }
        return acc;
    }

private:
    static int check_order(int order)
    {
        if (order < 0) {
            throw std::invalid_argument("series order must be nonnegative");
        }
        return order;
    }

    std::vector<S> coeffs_;
};

using ComplexSeries = Series<Complex>;

} // namespace witloc

#endif
