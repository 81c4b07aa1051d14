#include <gtest/gtest.h>

#include <sstream>

#include <ctel/ore/recurrence.hpp>
#include <ctel/rational/az.hpp>
#include <ctel/rational/hermite.hpp>
#include <ctel/rational/order_degree.hpp>
#include <ctel/rational/reduction_ct.hpp>

#include "support.hpp"

using namespace ctel;
using namespace ctel::test;

namespace
{

const std::vector<std::string> xy{"x", "y"};

rational_function X()
{
    return rational_function::variable(xy, "x");
}
rational_function Y()
{
    return rational_function::variable(xy, "y");
}
rational_function C(long a, long b = 1)
{
    return rational_function(xy, make_rational(a, b));
}

// Squarefree test of the y-denominator over Q(x).
bool squarefree_in_y(const rational_function &h)
{
    const auto d = to_upoly(h.den(), "y", "x");
    return gcd(d, d.derivative()).degree() <= 0;
}

bool proper_in_y(const rational_function &h)
{
    return h.is_zero() || h.num().degree("y") < h.den().degree("y");
}

// Random f = N / (A^a B^b) with deg_y N <= 6, x-degrees <= 2.
rational_function random_rational(rng &r, bool repeated = true)
{
    const multipoly a = r.poly_xy(xy, static_cast<int>(r.uniform(0, 2)), static_cast<int>(r.uniform(1, 2)));
    const multipoly b = r.poly_xy(xy, static_cast<int>(r.uniform(0, 1)), 1);
    const multipoly n = r.poly_xy(xy, static_cast<int>(r.uniform(0, 2)), static_cast<int>(r.uniform(0, 6)), 0.4);
    const unsigned ea = repeated ? static_cast<unsigned>(r.uniform(1, 3)) : 1u;
    const unsigned eb = repeated ? static_cast<unsigned>(r.uniform(0, 2)) : static_cast<unsigned>(r.uniform(0, 1));
    return rational_function(n, a.pow(ea) * b.pow(eb));
}

int y_degree_of_squarefree_den(const rational_function &f)
{
    return squarefree_part(to_upoly(f.den(), "y", "x")).degree();
}

} // namespace

TEST(hermite_reduce, examples)
{
    const auto a = hermite_reduce(C(1) / (Y() * Y()));
    EXPECT_EQ(a.g, C(-1) / Y());
    EXPECT_TRUE(a.h.is_zero());

    const rational_function f = C(1) / (X() + Y() * Y());
    const auto b = hermite_reduce(f);
    EXPECT_TRUE(b.g.is_zero());
    EXPECT_EQ(b.h, f);

    const rational_function q = X() + Y() * Y();
    const auto c = hermite_reduce(C(-1) / (q * q));
    EXPECT_EQ(c.g, -Y() / (C(2) * X() * q));
    EXPECT_EQ(c.h, C(-1) / (C(2) * X() * q));

    const auto d = hermite_reduce(Y() * Y() + X() / (Y() + C(1)));
    EXPECT_EQ(d.g, Y() * Y() * Y() / C(3));
    EXPECT_EQ(d.h, X() / (Y() + C(1)));
}

TEST(hermite_reduce, reconstruction_on_random_inputs)
{
    rng r(101);
    for (int t = 0; t < 100; ++t) {
        const rational_function f = random_rational(r);
        const auto res = hermite_reduce(f);
        EXPECT_EQ(res.g.derivative("y") + res.h, f) << f;
        EXPECT_TRUE(squarefree_in_y(res.h)) << f;
        EXPECT_TRUE(proper_in_y(res.h)) << f;
    }
}

TEST(reduction_ct, examples)
{
    const rational_function q = X() + Y() * Y();
    const rational_function f = C(1) / q;
    const auto a = reduction_ct(f);
    EXPECT_EQ(a.telescoper.to_string(), "(2*x)*Dx + 1");
    EXPECT_EQ(a.certificate, -Y() / q);
    EXPECT_EQ(a.order, 1);
    // Oracle: 2x f_x + f - g_y by direct differentiation.
    EXPECT_TRUE((C(2) * X() * f.derivative("x") + f - a.certificate.derivative("y")).is_zero());

    const rational_function e = X() * Y() + C(1);
    const auto b = reduction_ct(-X() / (e * e));
    EXPECT_EQ(b.order, 0);
    EXPECT_EQ(b.telescoper.to_string(), "1");
    EXPECT_TRUE(hermite_reduce(-X() / (e * e)).h.is_zero());

    const auto c = reduction_ct(Y() * Y() * X());
    EXPECT_EQ(c.order, 0);
    EXPECT_EQ(c.certificate, X() * Y() * Y() * Y() / C(3));
}

TEST(reduction_ct, central_binomial_integrand)
{
    const std::vector<std::string> xz{"x", "z"};
    const rational_function x = rational_function::variable(xz, "x");
    const rational_function z = rational_function::variable(xz, "z");
    const rational_function one(xz, rational(1));
    const rational_function f = one / (z - z * z - x);
    const auto res = reduction_ct(f, "x", "z");
    EXPECT_TRUE(verify_ct_diff(f, res, "z"));
    const recurrence rec = ode_to_rec(res.telescoper);
    const qpoly nv = qpoly::var();
    const qpoly c1(rational(1));
    EXPECT_TRUE(rec.equivalent(recurrence("n", {rational(-2) * (rational(2) * nv + c1), nv + c1})));
    // Oracle: binom(2n, n).
    std::vector<rational> a;
    for (long n = 0; n <= 31; ++n) {
        a.emplace_back(binomial(2 * n, n));
    }
    for (long n = 0; n + rec.order() <= 31 && n <= 30; ++n) {
        EXPECT_EQ(rec.residual(a, n), 0) << n;
    }
}

TEST(reduction_ct, order_bound_on_random_inputs)
{
    rng r(202);
    for (int t = 0; t < 30; ++t) {
        const rational_function f = random_rational(r, t % 2 == 0);
        const auto res = reduction_ct(f);
        EXPECT_LE(res.order, y_degree_of_squarefree_den(f)) << f;
        EXPECT_TRUE(verify_ct_diff(f, res)) << f;
    }
}

TEST(verify_ct_diff, rejects_bad_pairs)
{
    const rational_function f = C(1) / (X() + Y() * Y());
    auto res = reduction_ct(f);
    EXPECT_TRUE(verify_ct_diff(f, res));
    auto tampered = res;
    tampered.certificate = res.certificate + Y() / (Y() + C(1));
    EXPECT_FALSE(verify_ct_diff(f, tampered));
    auto zero = res;
    zero.telescoper = ore_operator(derivation_algebra("x"));
    zero.certificate = C(0);
    EXPECT_FALSE(verify_ct_diff(f, zero));
    auto shifted = res;
    shifted.telescoper = ore_operator(shift_algebra("x"), res.telescoper.coeffs());
    EXPECT_FALSE(verify_ct_diff(f, shifted));
}

TEST(az_ct, examples)
{
    const rational_function g = C(1) / (X() * X() + Y() * Y());
    const auto a = az_ct(g, 2);
    ASSERT_TRUE(a.has_value());
    EXPECT_TRUE(verify_ct_diff(g, *a));

    const rational_function f = C(1) / (X() + Y() * Y());
    const auto b = az_ct(f, 1);
    ASSERT_TRUE(b.has_value());
    EXPECT_EQ(b->telescoper, reduction_ct(f).telescoper);

    EXPECT_FALSE(az_ct(f, 0).has_value());
    EXPECT_FALSE(hermite_reduce(f).h.is_zero());
}

TEST(az_ct, bound_and_agreement_on_random_inputs)
{
    rng r(303);
    for (int t = 0; t < 15; ++t) {
        const rational_function f = random_rational(r, false);
        const int dq = f.den().degree("y");
        const auto at_bound = az_ct(f, dq);
        ASSERT_TRUE(at_bound.has_value()) << f;
        EXPECT_TRUE(verify_ct_diff(f, *at_bound)) << f;
        int first = -1;
        for (int k = 0; k <= dq; ++k) {
            if (az_ct(f, k)) {
                first = k;
                break;
            }
        }
        ASSERT_GE(first, 0);
        EXPECT_LE(reduction_ct(f).order, first) << f;
    }
}

TEST(order_degree_scan, examples)
{
    const auto a = order_degree_scan(C(1) / (X() + Y() * Y()), 0, 3, 4);
    EXPECT_NE(std::find(a.begin(), a.end(), order_degree_point{1, 1}), a.end());
    EXPECT_EQ(a.front().order, 1);

    const auto b = order_degree_scan(C(1) / (C(1) + Y() * Y()), 0, 2, 2);
    ASSERT_FALSE(b.empty());
    EXPECT_EQ(b.front(), (order_degree_point{1, 0}));

    std::ostringstream os;
    write_order_degree_csv(os, a);
    EXPECT_EQ(os.str().substr(0, 13), "order,degree\n");
    EXPECT_NE(os.str().find("1,1\n"), std::string::npos);
}

TEST(order_degree_scan, degrees_do_not_increase)
{
    rng r(404);
    for (int t = 0; t < 10; ++t) {
        const rational_function f = random_rational(r, false);
        const auto pts = order_degree_scan(f, 0, 4, 8);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            EXPECT_LE(pts[i].degree, pts[i - 1].degree) << f;
        }
    }
}
