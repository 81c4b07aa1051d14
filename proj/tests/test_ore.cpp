#include <gtest/gtest.h>

#include <ctel/ore/operator.hpp>
#include <ctel/ore/recurrence.hpp>

#include "support.hpp"

using namespace ctel;
using namespace ctel::test;

namespace
{

rational_function rvar(const std::string &v)
{
    return rational_function::variable({v}, v);
}

rational_function rc(long n, long d = 1)
{
    return rational_function(std::vector<std::string>{}, make_rational(n, d));
}

ore_operator op(const ore_algebra &a, std::vector<rational_function> c)
{
    return ore_operator(a, std::move(c));
}

// Random polynomial in v of degree <= deg, as a rational function.
rational_function random_coeff(rng &r, const std::string &v, int deg)
{
    multipoly p({v});
    for (int e = 0; e <= deg; ++e) {
        if (r.coin(0.7)) {
            p.add_term({e}, r.small_rational(4));
        }
    }
    return rational_function(p);
}

ore_operator random_op(rng &r, const ore_algebra &a, int ord, int deg)
{
    std::vector<rational_function> c;
    for (int i = 0; i <= ord; ++i) {
        c.push_back(random_coeff(r, a.var, deg));
    }
    if (c.back().is_zero()) {
        c.back() = rc(1);
    }
    return op(a, std::move(c));
}

} // namespace

TEST(ore_mul, shift_commutation)
{
    const auto a = shift_algebra("n");
    const ore_operator s = ore_operator::gen(a);
    const ore_operator n = ore_operator::scalar(a, rvar("n"));
    EXPECT_EQ(s * n, op(a, {rc(0), rvar("n") + rc(1)}));
    EXPECT_EQ((s * n).to_string(), "(n+1)*Sn");
}

TEST(ore_mul, derivation_commutation)
{
    const auto a = derivation_algebra("x");
    const ore_operator d = ore_operator::gen(a);
    const ore_operator x = ore_operator::scalar(a, rvar("x"));
    EXPECT_EQ(d * x, op(a, {rc(1), rvar("x")}));
    EXPECT_EQ((d * x).to_string(), "(x)*Dx + 1");
}

TEST(ore_mul, constant_coefficients_commute)
{
    const auto a = derivation_algebra("x");
    const ore_operator d = ore_operator::gen(a);
    const ore_operator one = ore_operator::scalar(a, rc(1));
    const ore_operator expected = op(a, {rc(-1), rc(0), rc(1)});
    EXPECT_EQ((d + one) * (d - one), expected);
    EXPECT_EQ((d - one) * (d + one), expected);
    EXPECT_EQ(expected.to_string(), "Dx^2 - 1");
}

TEST(ore_mul, algebra_mismatch)
{
    const ore_operator s = ore_operator::gen(shift_algebra("n"));
    const ore_operator d = ore_operator::gen(derivation_algebra("n"));
    EXPECT_THROW(ore_mul(s, d), algebra_error);
    EXPECT_THROW(s + ore_operator::gen(shift_algebra("k")), algebra_error);
}

TEST(ore_mul, associative_and_distributive)
{
    rng r(21);
    for (const auto &a : {shift_algebra("n"), derivation_algebra("x")}) {
        for (int t = 0; t < 15; ++t) {
            const ore_operator p = random_op(r, a, static_cast<int>(r.uniform(0, 3)), 3);
            const ore_operator q = random_op(r, a, static_cast<int>(r.uniform(0, 3)), 3);
            const ore_operator s = random_op(r, a, static_cast<int>(r.uniform(0, 3)), 3);
            EXPECT_EQ((p * q) * s, p * (q * s));
            EXPECT_EQ(p * (q + s), p * q + p * s);
            EXPECT_EQ((p + q) * s, p * s + q * s);
            EXPECT_EQ((p * q).order(), p.order() + q.order());
        }
    }
}

TEST(ore_apply, examples)
{
    const rational_function k = rvar("k");
    const ore_operator s = ore_operator::gen(shift_algebra("k"));
    const ore_operator sm1 = s - ore_operator::scalar(shift_algebra("k"), rc(1));
    EXPECT_EQ(ore_apply(sm1, rc(1) / k), rc(1) / (k + rc(1)) - rc(1) / k);

    const std::vector<std::string> xy{"x", "y"};
    const rational_function x = rational_function::variable(xy, "x"), y = rational_function::variable(xy, "y");
    const rational_function f = rc(1) / (x + y * y);
    const auto dx = derivation_algebra("x");
    const ore_operator l = op(dx, {rc(1), rc(2) * rvar("x")});
    const rational_function lf = ore_apply(l, f);
    // Oracle: differentiate by hand, -1/(x+y^2)^2 for d/dx.
    const rational_function by_hand = rc(2) * x * (rc(-1) / ((x + y * y) * (x + y * y))) + f;
    EXPECT_EQ(lf, by_hand);
    EXPECT_EQ(lf, (y * y - x) / ((x + y * y).pow(2)));
    EXPECT_EQ(lf, (-y / (x + y * y)).derivative("y"));

    EXPECT_TRUE(ore_apply(ore_operator(dx), f).is_zero());
}

TEST(ore_apply, compatible_with_product)
{
    rng r(22);
    for (const auto &a : {shift_algebra("n"), derivation_algebra("n")}) {
        for (int t = 0; t < 10; ++t) {
            const ore_operator p = random_op(r, a, static_cast<int>(r.uniform(0, 2)), 2);
            const ore_operator q = random_op(r, a, static_cast<int>(r.uniform(0, 2)), 2);
            const std::vector<std::string> nm{"n", "m"};
            multipoly num(nm), den(nm);
            num.add_term({1, 1}, r.small_rational());
            num.add_term({0, 0}, rational(1));
            den.add_term({2, 0}, rational(1));
            den.add_term({0, 1}, rational(r.uniform(1, 3)));
            const rational_function f(num, den);
            EXPECT_EQ(ore_apply(p * q, f), ore_apply(p, ore_apply(q, f)));
        }
    }
}

TEST(ore_operator, printing_and_normalization)
{
    const auto dx = derivation_algebra("x");
    EXPECT_EQ(op(dx, {rc(1), rc(2) * rvar("x")}).to_string(), "(2*x)*Dx + 1");
    const auto sn = shift_algebra("n");
    const ore_operator p = op(sn, {rc(1), -(rvar("n") + rc(2)), rc(1)});
    EXPECT_EQ(p.to_string(), "Sn^2 - (n+2)*Sn + 1");
    EXPECT_EQ(op(sn, {rc(-2), rc(1)}).to_string(), "Sn - 2");
    EXPECT_EQ(ore_operator(sn).to_string(), "0");

    // (1/(2n+2)) * ((n+1) Sn - 2(n+1)) normalizes to Sn - 2.
    const rational_function n = rvar("n");
    const ore_operator q = op(sn, {rc(-1) / (n + rc(1)) * (n + rc(1)), rc(1, 2) / (n + rc(1)) * (n + rc(1))});
    EXPECT_EQ(q.normalized(), op(sn, {rc(-2), rc(1)}));
    const ore_operator w = op(sn, {rc(-4) * n / (n + rc(3)), rc(-2) * n / (n + rc(3))});
    EXPECT_EQ(w.normalized(), op(sn, {rc(2), rc(1)}));
    EXPECT_TRUE(w.equivalent(op(sn, {rc(6), rc(3)})));
}

TEST(ode_to_rec, examples)
{
    const auto dx = derivation_algebra("x");
    const rational_function x = rvar("x");
    const qpoly nv = qpoly::var();
    const qpoly one(rational(1));

    const recurrence e = ode_to_rec(op(dx, {rc(-1), rc(1)}));
    EXPECT_EQ(e.coeffs(), (std::vector<qpoly>{-one, nv + one}));
    EXPECT_EQ(e.to_string(), "(n+1)*a(n+1) - a(n)");

    const recurrence g = ode_to_rec(op(dx, {rc(-2), rc(1) - rc(2) * x}));
    EXPECT_TRUE(g.equivalent(recurrence("n", {rational(-2) * (nv + one), nv + one})));
    // Oracle: a_n = 2^n satisfies it.
    std::vector<rational> pw;
    for (int i = 0; i <= 31; ++i) {
        pw.push_back(pow(rational(2), i));
    }
    for (long i = 0; i <= 30; ++i) {
        EXPECT_EQ(g.residual(pw, i), 0);
    }

    const recurrence c = ode_to_rec(op(dx, {rc(0), x}));
    EXPECT_EQ(c.order(), 0);
    EXPECT_EQ(c.coeffs(), (std::vector<qpoly>{nv}));

    EXPECT_THROW(ode_to_rec(ore_operator(dx)), domain_error);
}

// Series coefficients of a / b up to order n (b(0) != 0).
static std::vector<rational> series_div(const qpoly &a, const qpoly &b, int n)
{
    std::vector<rational> s;
    for (int i = 0; i <= n; ++i) {
        rational v = a.coeff(i);
        for (int j = 1; j <= i; ++j) {
            v -= b.coeff(j) * s[static_cast<std::size_t>(i - j)];
        }
        s.push_back(v / b.coeff(0));
    }
    return s;
}

TEST(ode_to_rec, annihilates_series_solutions)
{
    rng r(23);
    const auto dx = derivation_algebra("x");
    const std::vector<std::string> vx{"x"};
    for (int t = 0; t < 20; ++t) {
        // Solution y = a/b; its first-order annihilator is a b D - (a' b - a b').
        qpoly a({rational(r.uniform(1, 3)), r.small_rational(), r.small_rational()});
        qpoly b({rational(1), r.small_rational(3)});
        if (r.coin()) {
            b = qpoly(rational(1));
        }
        const rational_function ab(from_qpoly(a * b, vx, "x"));
        const rational_function c0(from_qpoly(a * b.derivative() - a.derivative() * b, vx, "x"));
        const ore_operator ann = op(dx, {c0, ab});
        const ore_operator left = random_op(r, dx, static_cast<int>(r.uniform(0, 2)), 2);
        const ore_operator l = left * ann;
        ASSERT_TRUE(ore_apply(l, rational_function(from_qpoly(a, vx, "x")) / rational_function(from_qpoly(b, vx, "x")))
                        .is_zero());
        const recurrence rec = ode_to_rec(l);
        const auto s = series_div(a, b, 30 + rec.order());
        for (long n = 0; n + rec.order() <= 30 + rec.order() && n <= 30; ++n) {
            EXPECT_EQ(rec.residual(s, n), 0) << l << " at n = " << n;
        }
    }
}

TEST(rec_unroll, examples)
{
    const qpoly nv = qpoly::var();
    const qpoly one(rational(1));
    const recurrence dbl("n", {rational(-2) * one, one});
    EXPECT_EQ(rec_unroll(dbl, {rational(1)}, 5), (std::vector<rational>{1, 2, 4, 8, 16}));

    const recurrence cb("n", {rational(-2) * (rational(2) * nv + one), nv + one});
    const auto v = rec_unroll(cb, {rational(1)}, 31);
    for (long n = 0; n <= 30; ++n) {
        // Oracle: binom(2n, n) = prod_{i=1..n} (n+i)/i.
        rational b(1);
        for (long i = 1; i <= n; ++i) {
            b *= make_rational(n + i, i);
        }
        EXPECT_EQ(v[static_cast<std::size_t>(n)], b);
    }

    const recurrence deg("n", {nv});
    try {
        rec_unroll(deg, {}, 3);
        FAIL() << "expected singular_index_error";
    }
    catch (const singular_index_error &e) {
        EXPECT_EQ(e.index(), 0);
    }
    EXPECT_EQ(rec_unroll(deg, {rational(7)}, 3), (std::vector<rational>{7, 0, 0}));
}

TEST(rec_unroll, output_satisfies_recurrence)
{
    rng r(24);
    for (int t = 0; t < 20; ++t) {
        const int ord = static_cast<int>(r.uniform(1, 3));
        std::vector<qpoly> c;
        for (int i = 0; i < ord; ++i) {
            c.emplace_back(std::vector<rational>{r.small_rational(), r.small_rational()});
        }
        // Leading coefficient without nonnegative integer roots.
        c.emplace_back(std::vector<rational>{rational(r.uniform(1, 5)), rational(r.uniform(0, 3))});
        const long shift = r.uniform(-2, 2);
        const recurrence rec("n", c, [shift](long n) { return rational(n * n + shift); });
        std::vector<rational> init;
        for (int i = 0; i < ord; ++i) {
            init.push_back(r.small_rational());
        }
        const auto a = rec_unroll(rec, init, 25);
        ASSERT_EQ(a.size(), 25u);
        for (long n = 0; n + ord < 25; ++n) {
            EXPECT_EQ(rec.residual(a, n), 0);
        }
    }
}
