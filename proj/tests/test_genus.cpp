#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include <witloc/genus.hpp>

using namespace witloc;

namespace
{

using Q = CohomClass<Rational>;

// Formal roots x1..xn of degree 2 with enough room for everything up to degree 2*top_power.
RingPtr root_ring(int n, int top_degree)
{
    std::vector<Generator> gens;
    for (int j = 1; j <= n; ++j) {
        gens.push_back({"x" + std::to_string(j), 2});
    }
    return make_ring(RingSpec::with_default_zeros(gens, top_degree, {}));
}

std::vector<Q> roots(const RingPtr &r, int n)
{
    std::vector<Q> x;
    for (int j = 1; j <= n; ++j) {
        x.push_back(Q::generator(r, "x" + std::to_string(j)));
    }
    return x;
}

// Pontryagin classes of a real bundle with Chern roots +-x_j, by expanding prod (1 + x_j^2).
std::vector<Q> pontryagin_by_expansion(const RingPtr &r, const std::vector<Q> &x)
{
    Q total = Q::one(r);
    for (const auto &xj : x) {
        total *= Q::one(r) + xj * xj;
    }
    std::vector<Q> p;
    for (int k = 1; 4 * k <= r->top_degree(); ++k) {
        p.push_back(total.homogeneous_component(4 * k));
    }
    return p;
}

Q power(const Q &a, int k)
{
    Q r = Q::one(a.ring());
    for (int i = 0; i < k; ++i) {
        r *= a;
    }
    return r;
}

// 8-manifold with a single degree-8 generator a, p1 = 0, p2 = n*a.
ManifoldSpec string_eight_manifold(Rational integral_of_a = 1)
{
    const RingPtr r = make_ring(RingSpec({{"a", 8}}, 8, {{{1}, integral_of_a}}));
    return ManifoldSpec(r, TangentData(r, {Q(r), Q::generator(r, "a")}, 8));
}

// 8-manifold with u in degree 4, p1 = u, p2 = 3u^2, integral u^2 = 1.
ManifoldSpec nonstring_eight_manifold()
{
    const RingPtr r = make_ring(RingSpec({{"u", 4}}, 8, {{{2}, Rational(1)}}));
    const Q u = Q::generator(r, "u");
    return ManifoldSpec(r, TangentData(r, {u, Rational(3) * u * u}, 8));
}

double max_coefficient_gap(const CohomClass<Complex> &a, const CohomClass<Complex> &b)
{
    double gap = 0.0;
    const CohomClass<Complex> diff = a - b;
    for (const auto &[m, c] : diff.terms()) {
        gap = std::max(gap, std::abs(c));
    }
    return gap;
}

} // namespace

TEST(PowerSums, OddVanishAndLowOrderFormulas)
{
    const RingPtr r = make_ring(RingSpec::with_default_zeros({{"u", 4}, {"v", 8}}, 16, {}));
    const Q u = Q::generator(r, "u");
    const Q v = Q::generator(r, "v");
    const TangentData t(r, {u, v}, 8);
    const auto s = power_sums_from_pontryagin(t, 8);
    for (int k = 1; k <= 8; k += 2) {
        EXPECT_TRUE(s[static_cast<std::size_t>(k - 1)].is_zero()) << k;
    }
    EXPECT_EQ(s[1], Rational(2) * u);
    EXPECT_EQ(s[3], Rational(2) * u * u - Rational(4) * v);
}

TEST(PowerSums, NewtonMatchesBruteForceForUpToThreePairs)
{
    for (int n = 1; n <= 3; ++n) {
        const RingPtr r = root_ring(n, 12);
        const auto x = roots(r, n);
        const TangentData t(r, pontryagin_by_expansion(r, x), 2 * n);
        const auto s = power_sums_from_pontryagin(t, 6);
        for (int k = 1; k <= 6; ++k) {
            Q brute(r);
            for (const auto &xj : x) {
                brute += power(xj, k) + power(-xj, k);
            }
            EXPECT_EQ(s[static_cast<std::size_t>(k - 1)], brute) << "pairs " << n << " k " << k;
        }
    }
}

TEST(PowerSums, PontryaginRootsBruteForce)
{
    const RingPtr r = root_ring(2, 12);
    const auto x = roots(r, 2);
    const TangentData t(r, pontryagin_by_expansion(r, x), 4);
    const auto s = pontryagin_root_power_sums(t, 3);
    for (int k = 1; k <= 3; ++k) {
        EXPECT_EQ(s[static_cast<std::size_t>(k - 1)], power(x[0] * x[0], k) + power(x[1] * x[1], k));
    }
}

TEST(GenusClass, TrivialInputs)
{
    const RingPtr r = make_ring(RingSpec({{"u", 4}}, 8, {{{2}, Rational(1)}}));
    const Q u = Q::generator(r, "u");
    const TangentData t(r, {u}, 8);
    EXPECT_EQ(genus_class(Series<Rational>::constant(1, 4), t), Q::one(r));
    Series<Rational> q(4);
    q[0] = 1;
    q[2] = 1;
    EXPECT_EQ(genus_class(q, TangentData::trivial(r, 8)), Q::one(r));
    EXPECT_THROW(genus_class(Series<Rational>::constant(2, 4), t), std::invalid_argument);
    EXPECT_THROW(genus_class(Series<Rational>::constant(1, 2), t), std::invalid_argument);
}

TEST(GenusClass, OnePlusZSquaredMatchesRootProduct)
{
    const RingPtr r = root_ring(2, 8);
    const auto x = roots(r, 2);
    const TangentData t(r, pontryagin_by_expansion(r, x), 4);
    Series<Rational> q(4);
    q[0] = 1;
    q[2] = 1;
    Q oracle = Q::one(r);
    for (const auto &xj : x) {
        oracle *= (Q::one(r) + xj * xj) * (Q::one(r) + xj * xj);
    }
    const Q g = genus_class(q, t);
    EXPECT_EQ(g, oracle);
    EXPECT_EQ(g.homogeneous_component(4), Rational(2) * t.p(1));
}

TEST(GenusClass, Multiplicativity)
{
    const RingPtr r = make_ring(RingSpec::with_default_zeros({{"a", 4}, {"b", 4}, {"c", 8}}, 12, {}));
    const Q a = Q::generator(r, "a");
    const Q b = Q::generator(r, "b");
    const Q c = Q::generator(r, "c");
    const TangentData t(r, {a, c}, 6);
    const TangentData t2(r, {b - a, Rational(2) * a * b}, 6);
    Series<Rational> q(6);
    q[0] = 1;
    q[2] = Rational(1, 3);
    q[4] = Rational(-2, 7);
    q[6] = Rational(5, 11);
    EXPECT_EQ(genus_class(q, whitney_sum(t, t2)), genus_class(q, t) * genus_class(q, t2));
}

TEST(WittenClass, TrivialTangentBundle)
{
    const RingPtr r = make_ring(RingSpec({{"a", 8}}, 8, {{{1}, Rational(1)}}));
    const ManifoldSpec m(r, TangentData::trivial(r, 8));
    const Lattice l = Lattice::square();
    EXPECT_EQ(witten_class(m, l, ArgumentChoice::standard(l)), CohomClass<Complex>::one(r));
    EXPECT_EQ(symbolic_witten_class(m), CohomClass<Symbolic>::one(r));
    EXPECT_EQ(real_witten_class(m, l), CohomClass<Complex>::one(r));
}

TEST(WittenClass, StringEightManifoldSymbolic)
{
    const ManifoldSpec m = string_eight_manifold();
    const RingPtr r = m.ring();
    const auto expected = CohomClass<Symbolic>::one(r)
                          - Symbolic::eisenstein(4) * CohomClass<Symbolic>::generator(r, "a");
    EXPECT_EQ(symbolic_witten_class(m), expected);
    EXPECT_EQ(symbolic_real_witten_class(m) * symbolic_real_witten_class(m), expected);
}

TEST(WittenClass, StringEightManifoldNumeric)
{
    const ManifoldSpec m = string_eight_manifold();
    const Lattice l(1.0, Complex(0.1, 1.2));
    const auto w = witten_class(m, l, ArgumentChoice::standard(l));
    const Complex g4 = eisenstein(l, 4);
    EXPECT_LT(std::abs(w.homogeneous_component(8).integrate() + g4), 1e-12);
    EXPECT_TRUE(w.homogeneous_component(4).is_zero());
}

TEST(WittenClass, StringCaseIsArgumentChoiceIndependent)
{
    const ManifoldSpec m = string_eight_manifold();
    const Lattice l(1.0, Complex(0.1, 1.2));
    EXPECT_EQ(witten_class(m, l, ArgumentChoice(0.0)), witten_class(m, l, ArgumentChoice(-2.0)));
}

TEST(WittenClass, NonStringPrefactor)
{
    const ManifoldSpec m = nonstring_eight_manifold();
    const RingPtr r = m.ring();
    const Lattice l(1.0, Complex(0.1, 1.2));
    const ArgumentChoice c1(0.0);
    const ArgumentChoice c2(1.3);
    const auto w1 = witten_class(m, l, c1);
    const auto w2 = witten_class(m, l, c2);
    const Complex dz = g2_regularized(l, c2) - g2_regularized(l, c1);
    const auto u = CohomClass<Complex>::generator(r, "u");
    EXPECT_LT(max_coefficient_gap(w2, w1 * exp(dz * u)), 1e-12);
    EXPECT_GT(max_coefficient_gap(w2, w1), 1e-3);
    // Degree 4 part: G4 does not enter; zeta2 p1 does.
    EXPECT_LT(std::abs(w1.homogeneous_component(4).terms().begin()->second - g2_regularized(l, c1)), 1e-14);
}

TEST(WittenClass, ReciprocalOfSigmaGenus)
{
    const ManifoldSpec m = string_eight_manifold();
    const Lattice l(1.0, Complex(0.1, 1.2));
    const auto w = witten_class(m, l, ArgumentChoice::standard(l));
    const auto prod = w * genus_class(sigma_series(l, 5).divided_by_variable(), m.tangent());
    EXPECT_LT(max_coefficient_gap(prod, CohomClass<Complex>::one(m.ring())), 1e-12);
}

TEST(RealWittenClass, SquaresToWittenClass)
{
    const Lattice l(1.0, Complex(-0.2, 0.9));
    for (const ManifoldSpec &m : {string_eight_manifold(), nonstring_eight_manifold()}) {
        const ArgumentChoice c(0.4);
        const auto wr = real_witten_class(m, l, c);
        EXPECT_LT(max_coefficient_gap(wr * wr, witten_class(m, l, c)), 1e-12);
        const auto sr = symbolic_real_witten_class(m);
        EXPECT_EQ(sr * sr, symbolic_witten_class(m));
    }
}

TEST(RealWittenClass, SymbolicNonStringValues)
{
    const ManifoldSpec m = nonstring_eight_manifold();
    const RingPtr r = m.ring();
    const auto u = CohomClass<Symbolic>::generator(r, "u");
    const Symbolic z = Symbolic::zeta2();
    const Symbolic g4 = Symbolic::eisenstein(4);
    // Pontryagin roots: S1 = p1 = u, S2 = p1^2 - 2 p2 = -5u^2; the class is
    // exp(G4/4 * S2) * exp(zeta2 u / 2).
    const auto expected = CohomClass<Symbolic>::one(r) + (z * Rational(1, 2)) * u
                          + (z * z * Rational(1, 8) - g4 * Rational(5, 4)) * (u * u);
    EXPECT_EQ(symbolic_real_witten_class(m), expected);
}

TEST(ManifoldSpecTest, Validation)
{
    const RingPtr r = make_ring(RingSpec({{"u", 4}}, 8, {{{2}, Rational(1)}}));
    const Q u = Q::generator(r, "u");
    EXPECT_THROW(TangentData(r, {u * u}, 8), std::invalid_argument);
    EXPECT_THROW(TangentData(r, {u}, 7), std::invalid_argument);
    EXPECT_THROW(ManifoldSpec(r, TangentData(r, {u}, 4)), std::invalid_argument);
    EXPECT_TRUE(ManifoldSpec(r, TangentData(r, {Q(r), u * u}, 8)).string_flag());
    EXPECT_FALSE(ManifoldSpec(r, TangentData(r, {u}, 8)).string_flag());
}
