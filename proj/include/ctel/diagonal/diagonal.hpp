#ifndef CTEL_DIAGONAL_DIAGONAL_HPP
#define CTEL_DIAGONAL_DIAGONAL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/ore/operator.hpp>
#include <ctel/ore/recurrence.hpp>
#include <ctel/rational/reduction_ct.hpp>

namespace ctel
{

// F in the variables x_1..x_d, regular at the origin.
struct diagonal_problem
{
    rational_function f;
    int d = 2;
    std::vector<std::string> vars{"x1", "x2"};
};

inline std::vector<std::string> default_diagonal_vars(int d)
{
    std::vector<std::string> v;
    for (int i = 1; i <= d; ++i) {
        v.push_back("x" + std::to_string(i));
    }
    return v;
}

inline diagonal_problem make_diagonal_problem(const rational_function &f, int d)
{
    return {f, d, default_diagonal_vars(d)};
}

namespace detail
{

inline void require_regular_at_origin(const diagonal_problem &p)
{
    if (p.d < 1 || p.vars.size() != static_cast<std::size_t>(p.d)) {
        throw domain_error("diagonal problem needs d >= 1 variables");
    }
    require_vars_within(p.f, p.vars);
    const multipoly den = p.f.den().with_vars(union_vars(p.f.vars(), p.vars));
    std::vector<rational> origin(den.vars().size());
    if (is_zero(den.evaluate(origin))) {
        throw singularity_error("F has a pole at the origin");
    }
}

} // namespace detail

// G(x, z) = F(z, x/z)/z; the diagonal of F is the residue of G at the small
// roots in z.
inline rational_function diagonal_integrand(const diagonal_problem &p, const std::string &x = "x",
                                            const std::string &z = "z")
{
    if (p.d != 2) {
        throw unsupported_error("the integrand is defined for d = 2");
    }
    detail::require_regular_at_origin(p);
    const std::vector<std::string> vars{x, z};
    const rational_function f = p.f.with_vars(union_vars(p.f.vars(), union_vars(p.vars, vars)));
    const auto &fv = f.vars();
    const rational_function zz = rational_function::variable(fv, z);
    const rational_function xz = rational_function::variable(fv, x) / zz;
    const rational_function g = f.substitute(p.vars[0], zz).substitute(p.vars[1], xz) / zz;
    return g.with_vars(vars);
}

// An operator in D_x annihilating the diagonal.
inline ore_operator diagonal_ode(const diagonal_problem &p, const std::string &x = "x")
{
    detail::require_regular_at_origin(p);
    if (p.d == 1) {
        // F = a/b satisfies a b F' - (a' b - a b') F = 0.
        const std::vector<std::string> v{x};
        const rational_function f = p.f.substitute(p.vars[0], rational_function::variable(
                                                                  union_vars(p.f.vars(), v), x))
                                        .with_vars(v);
        if (f.is_zero()) {
            return ore_operator(derivation_algebra(x), {rational_function(v, rational(1))});
        }
        const multipoly &a = f.num();
        const multipoly &b = f.den();
        const rational_function c1(a * b);
        const rational_function c0(b * a.derivative(x) - a * b.derivative(x));
        return ore_operator(derivation_algebra(x), {-c0, c1}).normalized();
    }
    if (p.d == 2) {
        const std::string z = x == "z" ? "t" : "z";
        return reduction_ct(diagonal_integrand(p, x, z), x, z).telescoper;
    }
    throw unsupported_error("diagonals are supported for d = 1 and d = 2");
}

// a_0..a_N of the diagonal by expanding F at the origin. Only exponents up to
// N in each variable matter, so the series is truncated to that box.
inline std::vector<rational> series_diagonal(const diagonal_problem &p, int n_max)
{
    if (n_max < 0) {
        throw domain_error("series_diagonal needs N >= 0");
    }
    detail::require_regular_at_origin(p);
    const auto d = static_cast<std::size_t>(p.d);
    const auto side = static_cast<std::size_t>(n_max) + 1u;
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        total *= side;
    }
    // Exponent vectors of the box in mixed radix, for p.vars in order.
    auto flatten = [&](const std::vector<int> &e) -> std::optional<std::size_t> {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < d; ++i) {
            if (e[i] > n_max) {
                return std::nullopt;
            }
            idx = idx * side + static_cast<std::size_t>(e[i]);
        }
        return idx;
    };
    auto sparse = [&](const multipoly &q) {
        std::vector<std::pair<std::vector<int>, rational>> out;
        const multipoly qq = q.with_vars(union_vars(q.vars(), p.vars));
        std::vector<int> map;
        for (const auto &v : p.vars) {
            map.push_back(qq.var_index(v));
        }
        for (const auto &[m, c] : qq.terms()) {
            std::vector<int> e(d);
            for (std::size_t i = 0; i < d; ++i) {
                e[i] = m[static_cast<std::size_t>(map[i])];
            }
            out.emplace_back(std::move(e), c);
        }
        return out;
    };
    const auto num = sparse(p.f.num());
    const auto den = sparse(p.f.den());
    rational d0;
    for (const auto &[e, c] : den) {
        bool zero = true;
        for (int x : e) {
            zero = zero && x == 0;
        }
        if (zero) {
            d0 = c;
        }
    }
    // S = 1/den coefficientwise; box indices in increasing mixed-radix order
    // visit every divisor before its multiples.
    std::vector<rational> inv(total);
    std::vector<int> e(d), k(d);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t r = idx;
        for (std::size_t i = d; i-- > 0;) {
            e[i] = static_cast<int>(r % side);
            r /= side;
        }
        rational s = idx == 0 ? rational(1) : rational(0);
        for (const auto &[de, c] : den) {
            bool ok = false;
            for (std::size_t i = 0; i < d; ++i) {
                k[i] = e[i] - de[i];
                ok = ok || de[i] != 0;
                if (k[i] < 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                s -= c * inv[*flatten(k)];
            }
        }
        inv[idx] = s / d0;
    }
    std::vector<rational> out;
    std::vector<int> diag(d);
    for (int n = 0; n <= n_max; ++n) {
        rational a;
        for (const auto &[ne, c] : num) {
            bool ok = true;
            for (std::size_t i = 0; i < d; ++i) {
                k[i] = n - ne[i];
                ok = ok && k[i] >= 0;
            }
            if (ok) {
                a += c * inv[*flatten(k)];
            }
        }
        out.push_back(a);
    }
    return out;
}

// 1/(1 - sum_i x_i/(1 - x_i))
inline rational_function challenge_function(int d)
{
    const auto vars = default_diagonal_vars(d);
    const rational_function one(vars, rational(1));
    rational_function s(vars);
    for (const auto &v : vars) {
        const rational_function xi = rational_function::variable(vars, v);
        s += xi / (one - xi);
    }
    return one / (one - s);
}

struct diagonal_report
{
    int d = 0;
    ore_operator telescoper;
    recurrence rec;
    int verified_terms = 0;
    bool verified = false;
    std::optional<long> failing_index;
    // Indices n at which the leading coefficient vanishes; the value there
    // was taken from the series.
    std::vector<long> supplied_indices;
};

// Unrolls the recurrence from the first `order` series terms, taking series
// values at singular indices, and compares every term with the series.
inline diagonal_report check_diagonal_recurrence(const diagonal_problem &p, const ore_operator &l, int n_max)
{
    diagonal_report rep;
    rep.d = p.d;
    rep.telescoper = l;
    rep.rec = ode_to_rec(l);
    const auto series = series_diagonal(p, n_max);
    const int ord = rep.rec.order();
    std::vector<rational> a;
    for (int m = 0; m <= n_max; ++m) {
        if (m < ord) {
            a.push_back(series[static_cast<std::size_t>(m)]);
            continue;
        }
        const long n = m - ord;
        const rational lead = rep.rec.leading()(rational(n));
        if (is_zero(lead)) {
            rep.supplied_indices.push_back(m);
            a.push_back(series[static_cast<std::size_t>(m)]);
            continue;
        }
        rational s;
        for (int i = 0; i < ord; ++i) {
            s += rep.rec.coeffs()[static_cast<std::size_t>(i)](rational(n)) * a[static_cast<std::size_t>(n + i)];
        }
        a.push_back(-s / lead);
    }
    for (int m = 0; m <= n_max; ++m) {
        if (a[static_cast<std::size_t>(m)] != series[static_cast<std::size_t>(m)]) {
            rep.failing_index = m;
            return rep;
        }
        ++rep.verified_terms;
    }
    // The recurrence also has to hold where the unrolling took series values.
    for (long n = 0; n + ord <= n_max; ++n) {
        if (!is_zero(rep.rec.residual(series, n))) {
            rep.failing_index = n + ord;
            return rep;
        }
    }
    rep.verified = true;
    return rep;
}

inline diagonal_report challenge_run(int d, int n_max)
{
    if (d != 1 && d != 2) {
        throw unsupported_error("the diagonal challenge is supported for d = 1 and d = 2");
    }
    const diagonal_problem p = make_diagonal_problem(challenge_function(d), d);
    return check_diagonal_recurrence(p, diagonal_ode(p), n_max);
}

} // namespace ctel

#endif
