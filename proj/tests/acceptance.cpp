// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic
// throughout. Exit status is the number of failed criteria.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <ctel/cli/app.hpp>
#include <ctel/ctel.hpp>

#include "support.hpp"

using namespace ctel;
using namespace ctel::test;

namespace
{

const std::vector<std::string> xy{"x", "y"};

struct outcome
{
    bool ok = true;
    std::string detail;
};

outcome fail(const std::string &why)
{
    return {false, why};
}

rational gmp_binomial(long n, long k)
{
    integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return rational(b);
}

proper_term_expr binomial_expr(long power)
{
    proper_term_expr e;
    e.gammas = {{1, 0, rational(1), power}, {0, 1, rational(1), -power}, {1, -1, rational(1), -power}};
    return e;
}

int squarefree_y_degree(const rational_function &f)
{
    return squarefree_part(to_upoly(f.den(), "y", "x")).degree();
}

// N / (A^a B^b) with deg_y of the denominator at most max_den.
rational_function random_rational(rng &r, int max_den)
{
    for (;;) {
        const int da = static_cast<int>(r.uniform(1, 2));
        const int ea = static_cast<int>(r.uniform(1, 3));
        const int eb = static_cast<int>(r.uniform(0, 2));
        if (da * ea + eb > max_den) {
            continue;
        }
        const multipoly a = r.poly_xy(xy, static_cast<int>(r.uniform(0, 2)), da);
        const multipoly b = r.poly_xy(xy, static_cast<int>(r.uniform(0, 1)), 1);
        const multipoly n = r.poly_xy(xy, static_cast<int>(r.uniform(0, 2)), static_cast<int>(r.uniform(0, 6)), 0.4);
        const rational_function f(n, a.pow(static_cast<unsigned>(ea)) * b.pow(static_cast<unsigned>(eb)));
        if (!f.is_zero() && f.den().degree("y") > 0) {
            return f;
        }
    }
}

// p/q with deg_y p < deg_y q <= 4.
rational_function random_proper(rng &r)
{
    for (;;) {
        const int dq = static_cast<int>(r.uniform(1, 4));
        multipoly q = r.poly_xy(xy, static_cast<int>(r.uniform(0, 2)), dq);
        if (r.coin(0.3) && dq >= 2) {
            const multipoly l = r.poly_xy(xy, 1, 1);
            q = l * l * r.poly_xy(xy, 1, dq - 2);
        }
        const multipoly p = r.poly_xy(xy, static_cast<int>(r.uniform(0, 2)), static_cast<int>(r.uniform(0, dq - 1)), 0.5);
        const rational_function f(p, q);
        if (!f.is_zero() && f.den().degree("y") > f.num().degree("y")) {
            return f;
        }
    }
}

outcome gosper_identity()
{
    const std::vector<std::string> vk{"k"};
    const rational_function k = rational_function::variable(vk, "k");
    const rational_function one(vk, rational(1));
    // f(k) = k k!, f(k+1)/f(k) = (k+1)^2/k
    const gosper_result g = gosper((k + one).pow(2) / k, "k");
    if (!g.certificate) {
        return fail("no certificate");
    }
    // g(k) = y(k) f(k) = (y k) k!, with y k simplified as a rational function.
    const rational_function yk = *g.certificate * k;
    auto anti = [&yk](long m) -> rational {
        return yk.evaluate({rational(m)}) * rational(factorial(static_cast<unsigned long>(m)));
    };
    rational s;
    for (long n = 0; n <= 20; ++n) {
        s += rational(n) * rational(factorial(static_cast<unsigned long>(n)));
        const rational closed = rational(factorial(static_cast<unsigned long>(n + 1))) - 1;
        if (s != closed || anti(n + 1) - anti(0) != closed) {
            return fail("mismatch at n = " + std::to_string(n));
        }
    }
    return {true, "certificate " + g.certificate->to_string()};
}

outcome zeilberger_identity()
{
    const hyper_term f = compile_proper_term(binomial_expr(1));
    const auto res = zeilberger(f, 3);
    const std::string tel = res.telescoper.normalized().to_string();
    if (tel != "Sn - 2" || !verify_ct_shift(f, res)) {
        return fail("telescoper " + tel);
    }
    const recurrence rec = ct_to_sum_recurrence(f, res);
    const auto vals = rec_unroll(rec, {rational(1)}, 31);
    for (long n = 0; n <= 30; ++n) {
        rational brute;
        for (long k = 0; k <= n; ++k) {
            brute += gmp_binomial(n, k);
        }
        if (vals[static_cast<std::size_t>(n)] != brute || brute != pow(rational(2), n)) {
            return fail("mismatch at n = " + std::to_string(n));
        }
    }
    return {true, "telescoper " + tel};
}

outcome reduction_ct_batch()
{
    const rational_function x = rational_function::variable(xy, "x");
    const rational_function y = rational_function::variable(xy, "y");
    const rational_function f0 = rational_function(xy, rational(1)) / (x + y * y);
    const auto r0 = reduction_ct(f0);
    if (r0.telescoper.normalized().to_string() != "(2*x)*Dx + 1" || !verify_ct_diff(f0, r0)) {
        return fail("1/(x+y^2) gave " + r0.telescoper.to_string());
    }
    rng r(1001);
    int max_order = 0;
    for (int t = 0; t < 100; ++t) {
        const rational_function f = random_rational(r, 5);
        const auto res = reduction_ct(f);
        if (!verify_ct_diff(f, res)) {
            return fail("verification failed for " + f.to_string());
        }
        if (res.order > squarefree_y_degree(f)) {
            return fail("order " + std::to_string(res.order) + " above bound for " + f.to_string());
        }
        max_order = std::max(max_order, res.order);
    }
    return {true, "100 inputs, largest order " + std::to_string(max_order)};
}

outcome az_guarantee()
{
    rng r(2002);
    for (int t = 0; t < 50; ++t) {
        const rational_function f = random_proper(r);
        const int dq = f.den().degree("y");
        const auto res = az_ct(f, dq);
        if (!res) {
            return fail("absent at r = " + std::to_string(dq) + " for " + f.to_string());
        }
        if (!verify_ct_diff(f, *res)) {
            return fail("verification failed for " + f.to_string());
        }
    }
    return {true, "50 inputs"};
}

outcome hermite_invariant()
{
    rng r(3003);
    for (int t = 0; t < 100; ++t) {
        const rational_function f = random_rational(r, 8);
        const auto res = hermite_reduce(f);
        if (res.g.derivative("y") + res.h != f) {
            return fail("reconstruction failed for " + f.to_string());
        }
        if (!res.h.is_zero()) {
            const auto d = to_upoly(res.h.den(), "y", "x");
            if (res.h.num().degree("y") >= res.h.den().degree("y") || gcd(d, d.derivative()).degree() > 0) {
                return fail("h not proper and squarefree for " + f.to_string());
            }
        }
    }
    return {true, "100 inputs"};
}

outcome order_degree_monotone()
{
    rng r(4004);
    for (int t = 0; t < 20; ++t) {
        const rational_function f = random_proper(r);
        const auto pts = order_degree_scan(f, 0, 4, 8);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (pts[i].degree > pts[i - 1].degree) {
                return fail("degree increases at order " + std::to_string(pts[i].order) + " for " + f.to_string());
            }
        }
    }
    return {true, "20 scans"};
}

outcome diagonal_challenge()
{
    for (const char *d : {"1", "2"}) {
        std::ostringstream out, err;
        const int st = cli::run({"--json", "diagonal", "--d", d, "--challenge", "--check", "30"}, out, err);
        if (st != 0) {
            return fail(std::string("d = ") + d + ": " + err.str());
        }
        const auto j = cli::json::parse(out.str());
        if (j["status"] != "verified" || j["verified_terms"] != 31) {
            return fail(std::string("d = ") + d + " status " + j["status"].dump());
        }
    }
    const std::vector<std::string> v{"x1", "x2"};
    const rational_function one(v, rational(1));
    const auto p = make_diagonal_problem(
        one / (one - rational_function::variable(v, "x1") - rational_function::variable(v, "x2")), 2);
    const recurrence rec = ode_to_rec(diagonal_ode(p));
    const qpoly n = qpoly::var();
    const qpoly c1(rational(1));
    if (!rec.equivalent(recurrence("n", {rational(-2) * (rational(2) * n + c1), n + c1}))) {
        return fail("central binomial recurrence is " + rec.to_string());
    }
    std::vector<rational> cb;
    for (long m = 0; m <= 31; ++m) {
        cb.push_back(gmp_binomial(2 * m, m));
    }
    for (long m = 0; m + rec.order() <= 30; ++m) {
        if (!is_zero(rec.residual(cb, m))) {
            return fail("residual at n = " + std::to_string(m));
        }
    }
    return {true, "d = 1, 2 verified to 30; " + rec.to_string()};
}

outcome sum_assembly()
{
    for (long power : {1L, 2L}) {
        const hyper_term f = compile_proper_term(binomial_expr(power));
        const recurrence rec = ct_to_sum_recurrence(f, zeilberger(f, 3));
        for (long n = 0; n <= 20; ++n) {
            if (!is_zero(rec.rhs(n))) {
                return fail("nonzero rhs at n = " + std::to_string(n));
            }
        }
    }
    const hyper_term f = compile_proper_term(binomial_expr(1));
    auto res = zeilberger(f, 3);
    const std::vector<std::string> nk{"n", "k"};
    res.certificate = res.certificate
                      + rational_function(nk, rational(1)) / rational_function::variable(nk, "k");
    const recurrence bad = ct_to_sum_recurrence(f, res);
    try {
        const rational v = bad.rhs(3);
        return fail("poleful certificate returned " + v.get_str());
    }
    catch (const certificate_pole_error &) {
    }
    return {true, "rhs zero to 20; pole raised"};
}

} // namespace

int main()
{
    const std::vector<std::tuple<int, std::string, std::function<outcome()>, double>> criteria{
        {1, "gosper identity", gosper_identity, 1.0},
        {2, "zeilberger identity", zeilberger_identity, 1.0},
        {3, "reduction telescoping", reduction_ct_batch, 60.0},
        {4, "ansatz guarantee", az_guarantee, 60.0},
        {5, "hermite invariant", hermite_invariant, 0.0},
        {6, "order-degree monotonicity", order_degree_monotone, 0.0},
        {7, "diagonal challenge", diagonal_challenge, 10.0},
        {8, "sum assembly", sum_assembly, 0.0},
    };
    int failed = 0;
    for (const auto &[id, name, fn, limit] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = fn();
        }
        catch (const std::exception &e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && limit > 0 && secs > limit) {
            o = fail("took longer than " + std::to_string(static_cast<int>(limit)) + " s");
        }
        failed += o.ok ? 0 : 1;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << id << " " << name << " (" << std::fixed
                  << std::setprecision(2) << secs << " s): " << o.detail << "\n";
    }
    return failed;
}
