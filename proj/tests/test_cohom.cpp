#include <gtest/gtest.h>

#include <witloc/cohom.hpp>

using namespace witloc;

namespace
{

// Generators x (deg 2) and y (deg 4), top degree 8.
RingPtr small_ring()
{
    return make_ring(RingSpec::with_default_zeros({{"x", 2}, {"y", 4}}, 8,
                                                  {{{4, 0}, Rational(1)}, {{2, 1}, Rational(-2)}, {{0, 2}, Rational(5)}}));
}

using Q = CohomClass<Rational>;

} // namespace

TEST(RingSpecTest, ValidatesGeneratorsAndTable)
{
    EXPECT_THROW(RingSpec({{"x", 3}}, 6, {}), std::invalid_argument);
    EXPECT_THROW(RingSpec({{"x", 2}, {"x", 2}}, 2, {}), std::invalid_argument);
    EXPECT_THROW(RingSpec({{"x", 2}}, 5, {}), std::invalid_argument);
    // Missing top-degree monomial x^2.
    EXPECT_THROW(RingSpec({{"x", 2}}, 4, {}), std::invalid_argument);
    // Entry of the wrong degree.
    EXPECT_THROW(RingSpec({{"x", 2}}, 4, {{{2}, Rational(1)}, {{1}, Rational(1)}}), std::invalid_argument);
    EXPECT_NO_THROW(RingSpec({{"x", 2}}, 4, {{{2}, Rational(1)}}));
}

TEST(RingSpecTest, EnumeratesTopDegreeMonomials)
{
    const RingPtr r = small_ring();
    EXPECT_EQ(r->monomials_of_degree(8).size(), 3u);
    EXPECT_EQ(r->monomials_of_degree(4).size(), 2u);
    EXPECT_EQ(r->monomials_of_degree(0).size(), 1u);
    EXPECT_EQ(r->monomial_str({2, 1}), "x^2*y");
}

TEST(CohomClassTest, UnitAndTruncation)
{
    const RingPtr r = small_ring();
    const Q x = Q::generator(r, "x");
    const Q y = Q::generator(r, "y");
    EXPECT_EQ(Q::one(r) * x, x);
    EXPECT_TRUE((y * y * x).is_zero());
    EXPECT_FALSE((y * y).is_zero());
    const Q p1 = y;
    EXPECT_EQ((Q::one(r) + p1) * (Q::one(r) - p1), Q::one(r) - p1 * p1);
    const RingPtr r4 = make_ring(RingSpec({{"y", 4}}, 4, {{{1}, Rational(1)}}));
    const Q q1 = Q::generator(r4, "y");
    EXPECT_EQ((Q::one(r4) + q1) * (Q::one(r4) - q1), Q::one(r4));
}

TEST(CohomClassTest, RejectsMismatchedRings)
{
    const RingPtr a = small_ring();
    const RingPtr b = make_ring(RingSpec({{"x", 2}}, 2, {{{1}, Rational(1)}}));
    EXPECT_THROW(Q::generator(a, "x") * Q::generator(b, "x"), std::invalid_argument);
    EXPECT_THROW(Q::generator(a, "z"), std::invalid_argument);
}

TEST(CohomClassTest, Integration)
{
    const RingPtr r = small_ring();
    const Q x = Q::generator(r, "x");
    const Q y = Q::generator(r, "y");
    EXPECT_EQ(Q::one(r).integrate(), 0);
    EXPECT_EQ((x * x).integrate(), 0);
    const Q top = Rational(3) * (x * x * x * x) + Rational(1, 2) * (x * x * y) + y * y;
    EXPECT_EQ(top.integrate(), Rational(3) - Rational(1) + Rational(5));
    const RingPtr v = make_ring(RingSpec({{"v", 2}}, 2, {{{1}, Rational(1)}}));
    EXPECT_EQ((Rational(3) * Q::generator(v, "v")).integrate(), 3);
}

TEST(CohomClassTest, HomogeneousComponentsReassemble)
{
    const RingPtr r = small_ring();
    const Q x = Q::generator(r, "x");
    const Q y = Q::generator(r, "y");
    const Q c = Q::one(r) + Rational(2) * x + x * x - Rational(7) * y + x * y + y * y;
    Q sum(r);
    for (int d : c.degrees()) {
        sum += c.homogeneous_component(d);
    }
    EXPECT_EQ(sum, c);
    EXPECT_EQ(c.degrees(), (std::set<int>{0, 2, 4, 6, 8}));
    EXPECT_EQ((x * y).homogeneous_degree(), 6);
    EXPECT_FALSE(c.homogeneous_degree().has_value());
}

TEST(CohomClassTest, ExpLogRoundTrip)
{
    const RingPtr r = small_ring();
    const Q x = Q::generator(r, "x");
    const Q y = Q::generator(r, "y");
    const Q a = Rational(1, 3) * x + y - Rational(2) * x * x;
    const Q e = exp(a);
    EXPECT_EQ(e.constant_term(), 1);
    EXPECT_EQ(log(e), a);
    EXPECT_EQ(exp(a) * exp(-a), Q::one(r));
    EXPECT_THROW(exp(Q::one(r)), std::domain_error);
    EXPECT_THROW(log(x), std::domain_error);
}

TEST(CohomClassTest, ComplexCoefficients)
{
    const RingPtr r = small_ring();
    const auto x = CohomClass<Complex>::generator(r, "x");
    const auto c = Complex(0.0, 2.0) * (x * x * x * x);
    EXPECT_EQ(c.integrate(), Complex(0.0, 2.0));
    EXPECT_EQ(c.str(), "2i*x^4");
}

TEST(CohomClassTest, Printing)
{
    const RingPtr r = small_ring();
    const Q x = Q::generator(r, "x");
    const Q y = Q::generator(r, "y");
    EXPECT_EQ((Q::one(r) - Rational(1, 2) * y + x).str(), "1 + x + -1/2*y");
    EXPECT_EQ(Q(r).str(), "0");
}
