#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include <witloc/equivariant.hpp>
#include <witloc/loopspace.hpp>
#include <witloc/two_variable.hpp>

using namespace witloc;

namespace
{

using G = GaussianRational;
using EC = EquivariantClass<G>;
using CC = CohomClass<G>;

RingPtr test_ring()
{
    return make_ring(RingSpec::with_default_zeros({{"x", 2}, {"y", 4}}, 8, {{{4, 0}, Rational(1)}}));
}

CC gen(const RingPtr &r, const char *name)
{
    return CC::generator(r, name);
}

CC random_class_of_degree(const RingPtr &r, int degree, std::mt19937 &rng)
{
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    CC c(r);
    for (const auto &m : r->monomials_of_degree(degree)) {
        c += CC::term(r, m, G(Rational(num(rng), den(rng)), Rational(num(rng), den(rng))));
    }
    return c;
}

// Random complex structure: up to 4 pairs, total complex rank <= 4, Gaussian-integer weights.
RealEquivariantBundle<G> random_real_bundle(const RingPtr &r, std::mt19937 &rng)
{
    std::uniform_int_distribution<int> coord(-4, 4);
    std::uniform_int_distribution<int> rank_d(1, 4);
    std::vector<IsotypicComponent<G>> parts;
    std::vector<Complex> used;
    int budget = rank_d(rng);
    while (budget > 0) {
        const int rank = std::uniform_int_distribution<int>(1, budget)(rng);
        Complex lam;
        do {
            lam = Complex(coord(rng), coord(rng));
        } while (lam == Complex(0.0, 0.0)
                 || std::find_if(used.begin(), used.end(), [&](Complex u) { return u == lam || u == -lam; })
                        != used.end());
        used.push_back(lam);
        IsotypicComponent<G> c{G(Rational(static_cast<long>(lam.real())), Rational(static_cast<long>(lam.imag()))),
                               rank,
                               {}};
        for (int j = 1; j <= rank; ++j) {
            c.chern.push_back(random_class_of_degree(r, 2 * j, rng));
        }
        parts.push_back(std::move(c));
        budget -= rank;
    }
    return RealEquivariantBundle<G>::from_complex_structure(r, parts);
}

// prod_lambda sum_j c_j(E_lambda) (lambda xibar)^{rank - j}
EC top_chern_by_product(const IsotypicBundle<G> &b)
{
    const RingPtr &r = b.ring();
    EC total = EC::one(r);
    for (const auto &c : b.effective()) {
        EC factor(r);
        for (int j = 0; j <= c.rank; ++j) {
            const CC cj = j == 0 ? CC::one(r) : (static_cast<std::size_t>(j) <= c.chern.size() ? c.chern[j - 1] : CC(r));
            factor += EC(ipow(c.lambda, c.rank - j) * cj, c.rank - j);
        }
        total *= factor;
    }
    return total;
}

int sign_power(int e)
{
    return e % 2 == 0 ? 1 : -1;
}

double max_gap(const EquivariantClass<Complex> &a, const EquivariantClass<Complex> &b)
{
    double gap = 0.0;
    const auto d = a - b;
    for (const auto &[n, c] : d.terms()) {
        for (const auto &[m, v] : c.terms()) {
            gap = std::max(gap, std::abs(v));
        }
    }
    return gap;
}

ManifoldSpec string_eight()
{
    const RingPtr r = make_ring(RingSpec({{"a", 8}}, 8, {{{1}, Rational(1)}}));
    return ManifoldSpec(r, TangentData(r, {CohomClass<Rational>(r), CohomClass<Rational>::generator(r, "a")}, 8));
}

ManifoldSpec string_four()
{
    const RingPtr r = make_ring(RingSpec({{"b", 4}}, 4, {{{1}, Rational(1)}}));
    return ManifoldSpec(r, TangentData(r, {CohomClass<Rational>(r)}, 4));
}

ManifoldSpec nonstring_eight()
{
    const RingPtr r = make_ring(RingSpec({{"u", 4}}, 8, {{{2}, Rational(1)}}));
    const auto u = CohomClass<Rational>::generator(r, "u");
    return ManifoldSpec(r, TangentData(r, {u, Rational(2) * u * u}, 8));
}

} // namespace

TEST(EquivariantClassTest, LaurentArithmeticAndGrading)
{
    const RingPtr r = test_ring();
    const EC a = EC(gen(r, "x")) + EC::monomial(r, G(2), 1);
    const EC b = EC::monomial(r, G(1), -1);
    EXPECT_EQ(a * b, EC(gen(r, "x"), -1) + EC::one(r) * EC::monomial(r, G(2), 0));
    EXPECT_EQ(a.homogeneous_degree(), 2);
    EXPECT_EQ((a * b).homogeneous_degree(), 0);
    const EC u = EC::one(r) + EC(gen(r, "x"), -1) + EC(gen(r, "y"), 3);
    EXPECT_TRUE(u.is_unipotent());
    EXPECT_EQ(u * u.unit_inverse(), EC::one(r));
    EXPECT_EQ(sqrt(u) * sqrt(u), u);
    EXPECT_THROW((EC::one(r) + EC::monomial(r, G(1), -1)).unit_inverse(), std::domain_error);
}

TEST(FirstChern, Examples)
{
    const RingPtr r = test_ring();
    EXPECT_TRUE(first_chern_antiholo(CC(r), G(0)).is_zero());
    EXPECT_EQ(first_chern_antiholo(gen(r, "x"), G(0)), EC(gen(r, "x")));
    const G one_plus_tau = G(1) + G(0, 1); // lambda = 1 + tau on Z + Z i
    const EC c = first_chern_antiholo(gen(r, "x"), one_plus_tau);
    EXPECT_EQ(c.coefficient(1), CC::constant(r, one_plus_tau));
    EXPECT_EQ(c.homogeneous_degree(), 2);
    EXPECT_THROW(first_chern_antiholo(gen(r, "y"), G(1)), std::invalid_argument);
}

TEST(WeightPolynomial, Examples)
{
    const RingPtr r = test_ring();
    EXPECT_EQ(weight_polynomial_antiholo(IsotypicBundle<G>(r, {{G(2), 1, {}}})), EC::monomial(r, G(2), 1));
    const G lam(3, 2);
    EXPECT_EQ(weight_polynomial_antiholo(IsotypicBundle<G>(r, {{lam, 1, {}}, {-lam, 1, {}}})),
              EC::monomial(r, -(lam * lam), 2));
    for (int d = 1; d <= 3; ++d) {
        const auto w = weight_polynomial_antiholo(IsotypicBundle<G>(r, {{lam, d, {}}, {-lam, d, {}}}));
        EXPECT_EQ(w, EC::monomial(r, G(sign_power(d)) * ipow(lam, 2 * d), 2 * d));
    }
    EXPECT_THROW(weight_polynomial_antiholo(IsotypicBundle<G>(r, {})), std::invalid_argument);
}

TEST(IsotypicBundleTest, Validation)
{
    const RingPtr r = test_ring();
    EXPECT_THROW(IsotypicBundle<G>(r, {{G(0), 1, {}}}), std::invalid_argument);
    EXPECT_THROW(IsotypicBundle<G>(r, {{G(1), 1, {}}, {G(1), 2, {}}}), std::invalid_argument);
    EXPECT_THROW(IsotypicBundle<G>(r, {{G(1), 1, {gen(r, "y")}}}), std::invalid_argument);
    EXPECT_THROW(RealEquivariantBundle<G>(IsotypicBundle<G>(r, {{G(1), 1, {}}})), std::invalid_argument);
    EXPECT_THROW(RealEquivariantBundle<G>(IsotypicBundle<G>(r, {{G(1), 1, {}}, {G(-1), 2, {}}})),
                 std::invalid_argument);
    const IsotypicBundle<G> b(r, {{G(1), 2, {}}, {G(0, 1), 1, {}}}, 3);
    EXPECT_EQ(b.total_rank(), 6);
    EXPECT_EQ(b.effective_rank(), 3);
}

TEST(NormalizedTopChern, Examples)
{
    const RingPtr r = test_ring();
    const G lam(2, 1);
    EXPECT_EQ(normalized_top_chern_antiholo(IsotypicBundle<G>(r, {{lam, 2, {}}})), EC::one(r));
    const CC x = gen(r, "x");
    const EC line = normalized_top_chern_antiholo(IsotypicBundle<G>(r, {{lam, 1, {x}}}));
    EXPECT_EQ(line, EC::one(r) + EC((G(1) / lam) * x, -1));
    const EC pair = normalized_top_chern_antiholo(IsotypicBundle<G>(r, {{lam, 1, {x}}, {-lam, 1, {x}}}));
    const EC oracle = (EC::one(r) + EC((G(1) / lam) * x, -1)) * (EC::one(r) - EC((G(1) / lam) * x, -1));
    EXPECT_EQ(pair, oracle);
    EXPECT_EQ(pair.homogeneous_degree(), 0);
}

TEST(NormalizedTopChern, MatchesRootProductOnRandomBundles)
{
    std::mt19937 rng(7);
    const RingPtr r = test_ring();
    for (int trial = 0; trial < 20; ++trial) {
        const auto v = random_real_bundle(r, rng);
        const auto &b = v.complexification();
        EXPECT_EQ(top_chern_antiholo(b), top_chern_by_product(b)) << trial;
    }
}

TEST(EulerClass, RankTwoTrivialChern)
{
    const RingPtr r = test_ring();
    const G lam(3, 2);
    const auto v = RealEquivariantBundle<G>::from_complex_structure(r, {{lam, 1, {}}});
    EXPECT_EQ(equivariant_euler_antiholo(v, ArgumentChoice(0.0)), EC::monomial(r, lam, 1));
    // With base angle 1.5 > arg(lambda), -lambda becomes the upper weight.
    EXPECT_EQ(equivariant_euler_antiholo(v, ArgumentChoice(1.5)), EC::monomial(r, -lam, 1));
}

TEST(EulerClass, PrefactorMatchesPrincipalSquareRoots)
{
    // (i xibar)^{r} * prod lambda^{rank/2} evaluated numerically with the chosen branch.
    const RingPtr r = test_ring();
    for (double base : {0.0, 1.0, -2.5}) {
        const ArgumentChoice choice(base);
        const Complex lam(3.0, 2.0);
        const auto v = RealEquivariantBundle<G>::from_complex_structure(r, {{G(3, 2), 2, {}}});
        const Complex numeric = std::pow(Complex(0.0, 1.0), 2) * std::pow(choice.sqrt(lam), 2)
                                * std::pow(choice.sqrt(-lam), 2);
        EXPECT_LT(std::abs(euler_prefactor(v, choice).to_complex() - numeric), 1e-12) << base;
    }
}

TEST(EulerClass, DoublingIdentityOnRandomBundles)
{
    std::mt19937 rng(2024);
    const RingPtr r = test_ring();
    for (int trial = 0; trial < 30; ++trial) {
        const auto v = random_real_bundle(r, rng);
        const ArgumentChoice choice(std::uniform_real_distribution<double>(-pi, pi)(rng));
        const EC e = equivariant_euler_antiholo(v, choice);
        const EC ctop = top_chern_by_product(v.complexification());
        EXPECT_EQ(e * e, G(sign_power(v.real_rank() / 2)) * ctop) << trial;
        EXPECT_EQ(e.homogeneous_degree(), v.real_rank());
        EXPECT_EQ(e * inverse_euler_antiholo(v, choice), EC::one(r));
    }
}

TEST(EulerClass, NormalizedPartIsArgumentChoiceIndependent)
{
    std::mt19937 rng(99);
    const RingPtr r = test_ring();
    const auto v = random_real_bundle(r, rng);
    const EC a = normalized_euler_antiholo(v);
    EXPECT_EQ(a, normalized_euler_antiholo(v));
    const auto e1 = equivariant_euler_antiholo(v, ArgumentChoice(0.3));
    const auto e2 = equivariant_euler_antiholo(v, ArgumentChoice(-2.9));
    // Different choices change only the scalar prefactor, by a sign.
    EXPECT_TRUE(e1 == e2 || e1 == G(-1) * e2);
}

TEST(TwoVariable, RestrictionMatchesAntiholomorphicEuler)
{
    std::mt19937 rng(11);
    const RingPtr r = test_ring();
    for (int trial = 0; trial < 25; ++trial) {
        const auto v = random_real_bundle(r, rng);
        const ArgumentChoice choice(std::uniform_real_distribution<double>(-pi, pi)(rng));
        const auto two = euler_two_variable(v, choice);
        EXPECT_EQ(two.restrict_to_antiholomorphic(), equivariant_euler_antiholo(v, choice)) << trial;
    }
}

TEST(TwoVariable, KeepsHolomorphicTerms)
{
    const RingPtr r = test_ring();
    const auto v = RealEquivariantBundle<G>::from_complex_structure(r, {{G(1, 1), 1, {}}});
    const auto two = euler_two_variable(v, ArgumentChoice(0.0));
    ASSERT_EQ(two.terms().size(), 2u);
    EXPECT_EQ(two.terms().at({1, 0}), CC::constant(r, G(-1, 1)));
    const auto big = RealEquivariantBundle<G>::from_complex_structure(r, {{G(1), 3, {}}, {G(0, 1), 2, {}}});
    EXPECT_THROW(euler_two_variable(big, ArgumentChoice(0.0)), std::invalid_argument);
}

TEST(Loopspace, TrivialTangentIsOne)
{
    const RingPtr r = make_ring(RingSpec({{"a", 8}}, 8, {{{1}, Rational(1)}}));
    const ManifoldSpec m(r, TangentData::trivial(r, 8));
    const Lattice l = Lattice::square();
    EXPECT_EQ(loopspace_regularized_top_chern(m, l, ArgumentChoice::standard(l)), EquivariantClass<Complex>::one(r));
    const auto g = witten_genus(m, l, ArgumentChoice::standard(l));
    EXPECT_EQ(g.value, Complex(0.0, 0.0));
    EXPECT_EQ(g.xi_power, -4);
}

TEST(Loopspace, PointHasGenusOne)
{
    const RingPtr r = make_ring(RingSpec::point());
    const ManifoldSpec m(r, TangentData::trivial(r, 0));
    const Lattice l = Lattice::square();
    const auto g = witten_genus(m, l, ArgumentChoice::standard(l));
    EXPECT_EQ(g.value, Complex(1.0, 0.0));
    EXPECT_EQ(g.xi_power, 0);
}

TEST(Loopspace, InverseOfGradedWittenClass)
{
    const Lattice l(1.0, Complex(0.25, 1.05));
    for (const ManifoldSpec &m : {string_four(), string_eight(), nonstring_eight()}) {
        const ArgumentChoice c(0.2);
        const auto top = loopspace_regularized_top_chern(m, l, c);
        const auto prod = top * xibar_graded(witten_class(m, l, c));
        EXPECT_LT(max_gap(prod, EquivariantClass<Complex>::one(m.ring())), 1e-12);
        EXPECT_EQ(symbolic_loopspace_regularized_top_chern(m) * xibar_graded(symbolic_witten_class(m)),
                  EquivariantClass<Symbolic>::one(m.ring()));
        for (int d : top.total_degrees()) {
            EXPECT_EQ(d, 0);
        }
    }
}

TEST(Loopspace, ArgumentChoiceDependence)
{
    const Lattice l(1.0, Complex(0.25, 1.05));
    const ArgumentChoice c1(0.0);
    const ArgumentChoice c2(-1.7);
    const ManifoldSpec s = string_eight();
    EXPECT_EQ(loopspace_regularized_top_chern(s, l, c1), loopspace_regularized_top_chern(s, l, c2));
    const ManifoldSpec m = nonstring_eight();
    const auto t1 = loopspace_regularized_top_chern(m, l, c1);
    const auto t2 = loopspace_regularized_top_chern(m, l, c2);
    const Complex dz = g2_regularized(l, c1) - g2_regularized(l, c2);
    const auto p1 = EquivariantClass<Complex>(to_scalar<Complex>(m.tangent().p(1)), -2);
    EXPECT_LT(max_gap(t2, t1 * exp(dz * p1)), 1e-12);
    EXPECT_GT(max_gap(t2, t1), 1e-3);
}

TEST(WittenGenusTest, StringManifolds)
{
    const Lattice l(1.0, Complex(0.25, 1.05));
    const auto choice = ArgumentChoice::standard(l);
    const auto g8 = witten_genus(string_eight(), l, choice);
    EXPECT_EQ(g8.xi_power, -4);
    EXPECT_LT(std::abs(g8.value + eisenstein(l, 4)), 1e-10);
    EXPECT_EQ(symbolic_witten_genus(string_eight()).value, Symbolic(0) - Symbolic::eisenstein(4));
    const auto g4 = witten_genus(string_four(), l, choice);
    EXPECT_EQ(g4.xi_power, -2);
    EXPECT_EQ(g4.value, Complex(0.0, 0.0));
}

TEST(WittenGenusTest, NonStringSymbolic)
{
    // p1 = u, p2 = 2u^2, integral u^2 = 1: Wit_8 = zeta2^2/2 u^2 + (G4/4)(s4) with s4 = 2p1^2 - 4p2 = -6u^2.
    const auto g = symbolic_witten_genus(nonstring_eight());
    const Symbolic z = Symbolic::zeta2();
    EXPECT_EQ(g.value, z * z * Rational(1, 2) - Symbolic::eisenstein(4) * Rational(3, 2));
}
