#ifndef WITLOC_FORMAT_HPP
#define WITLOC_FORMAT_HPP

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include <witloc/scalar.hpp>

namespace witloc
{

// Fixed-width significant-digit formatting; -0 prints as 0.
inline std::string format_real(double x, int digits = 15)
{
    if (x == 0.0) {
        x = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

inline std::string format_complex(Complex z, int digits = 15)
{
    if (z.imag() == 0.0) {
        return format_real(z.real(), digits);
    }
    if (z.real() == 0.0) {
        return format_real(z.imag(), digits) + "i";
    }
    const std::string im = format_real(std::abs(z.imag()), digits);
    return "(" + format_real(z.real(), digits) + (z.imag() < 0 ? "-" : "+") + im + "i)";
}

inline std::string format_scalar(const Complex &z)
{
    return format_complex(z);
}
inline std::string format_scalar(const Rational &r)
{
    return to_string(r);
}
inline std::string format_scalar(const GaussianRational &z)
{
    if (z.im == 0) {
        return to_string(z.re);
    }
    if (z.re == 0) {
        return to_string(z.im) + "i";
    }
    return "(" + to_string(z.re) + (z.im < 0 ? "-" : "+") + to_string(z.im < 0 ? Rational(-z.im) : z.im) + "i)";
}
inline std::string format_scalar(const Symbolic &s)
{
    const std::string body = s.str();
    return s.terms().size() > 1 ? "(" + body + ")" : body;
}

} // namespace witloc

#endif
