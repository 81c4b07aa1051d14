#ifndef CTEL_HYPER_GOSPER_HPP
#define CTEL_HYPER_GOSPER_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/matrix.hpp>
#include <ctel/exact/number.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/exact/ufrac.hpp>
#include <ctel/exact/upoly.hpp>

namespace ctel
{

// Polynomials and rational functions in the summation variable k over Q(n).
using kpoly = upoly<qfrac>;
using kfrac = ufrac<qfrac>;

namespace detail
{

inline qpoly specialize(const kpoly &p, const rational &t)
{
    std::vector<rational> c;
    c.reserve(p.coeffs().size());
    for (const auto &x : p.coeffs()) {
        c.push_back(x(t));
    }
    return qpoly(std::move(c));
}

// Polynomial through (j, v_j), j = 0..len-1 (Newton form).
inline qpoly interpolate_consecutive(const std::vector<rational> &v)
{
    const std::size_t m = v.size();
    std::vector<rational> dd(v);
    for (std::size_t lvl = 1; lvl < m; ++lvl) {
        for (std::size_t i = m - 1; i >= lvl; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / rational(static_cast<long>(lvl));
        }
    }
    qpoly r;
    const qpoly t = qpoly::var();
    for (std::size_t i = m; i-- > 0;) {
        r = r * (t - qpoly(rational(static_cast<long>(i)))) + qpoly(dd[i]);
    }
    return r;
}

constexpr long root_scan_cap = 10000000;

// Nonnegative integer roots of a nonzero polynomial over Q.
inline std::vector<long> nonneg_integer_roots(const qpoly &p)
{
    if (p.is_zero()) {
        throw domain_error("integer roots of the zero polynomial");
    }
    integer l(1);
    for (const auto &c : p.coeffs()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    }
    std::vector<integer> c;
    for (const auto &x : p.coeffs()) {
        c.push_back(integer(x * l));
    }
    std::vector<long> roots;
    std::size_t lo = 0;
    while (sgn(c[lo]) == 0) {
        ++lo;
    }
    if (lo > 0) {
        roots.push_back(0);
    }
    c.erase(c.begin(), c.begin() + static_cast<long>(lo));
    if (c.size() == 1u) {
        return roots;
    }
    // Cauchy bound; integer roots also divide the trailing coefficient.
    const mpq_class lcabs = abs(mpq_class(c.back()));
    mpq_class mx;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const mpq_class q = mpq_class(abs(c[i])) / lcabs;
        if (q > mx) {
            mx = q;
        }
    }
    integer bound = integer(mx.get_num() / mx.get_den()) + 2;
    bound = std::min(bound, integer(abs(c.front())));
    if (bound > root_scan_cap) {
        throw domain_error("integer root bound " + bound.get_str() + " exceeds the scan cap");
    }
    const long b = bound.get_si();
    integer acc;
    for (long j = 1; j <= b; ++j) {
        if (!mpz_divisible_ui_p(c.front().get_mpz_t(), static_cast<unsigned long>(j))) {
            continue;
        }
        acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            acc = acc * j + c[i];
        }
        if (sgn(acc) == 0) {
            roots.push_back(j);
        }
    }
    return roots;
}

// Values of n at which the coefficients are sampled; chosen away from the
// small integers where special behavior is likely.
inline const std::vector<rational> &sample_points()
{
    static const std::vector<rational> pts = {make_rational(7, 13),    make_rational(11, 17), make_rational(-19, 23),
                                              make_rational(29, 31),   make_rational(37, 41), make_rational(-43, 47),
                                              make_rational(53, 59),   make_rational(61, 67), make_rational(71, 73),
                                              make_rational(-79, 83)};
    return pts;
}

inline bool specializable(const kpoly &p, const rational &t)
{
    for (const auto &c : p.coeffs()) {
        if (is_zero(c.den()(t))) {
            return false;
        }
    }
    return !is_zero(p.lc().num()(t));
}

// {j >= 0 : deg gcd(a(k), b(k+j)) > 0}. Candidates are the nonnegative integer
// roots of Res_k(a(k), b(k+j)) after specializing n at two generic points;
// each candidate is then confirmed by an exact gcd over Q(n).
inline std::vector<long> dispersion_set(const kpoly &a, const kpoly &b)
{
    if (a.degree() <= 0 || b.degree() <= 0) {
        return {};
    }
    const std::size_t npts = static_cast<std::size_t>(a.degree() * b.degree()) + 1u;
    qpoly g;
    int used = 0;
    for (const auto &t : sample_points()) {
        if (!specializable(a, t) || !specializable(b, t)) {
            continue;
        }
        const qpoly a0 = specialize(a, t), b0 = specialize(b, t);
        std::vector<rational> vals;
        vals.reserve(npts);
        for (std::size_t j = 0; j < npts; ++j) {
            vals.push_back(resultant(a0, b0.shift(rational(static_cast<long>(j)))));
        }
        const qpoly r = interpolate_consecutive(vals);
        g = used == 0 ? r : gcd(g, r);
        if (++used == 2) {
            break;
        }
    }
    if (used == 0) {
        throw domain_error("no usable specialization for the dispersion computation");
    }
    if (g.is_zero()) {
        throw algebra_error("resultant vanishes identically");
    }
    std::vector<long> out;
    for (long j : nonneg_integer_roots(g)) {
        if (gcd(a, b.shift(qfrac(rational(j)))).degree() > 0) {
            out.push_back(j);
        }
    }
    return out;
}

inline kpoly k_poly(const std::vector<rational> &c)
{
    std::vector<qfrac> v;
    for (const auto &x : c) {
        v.emplace_back(x);
    }
    return kpoly(std::move(v));
}

} // namespace detail

// r = z (a/b) (c(k+1)/c(k)), a, b, c monic, gcd(a(k), b(k+j)) = 1 for j >= 0.
struct gp_data
{
    qfrac z;
    kpoly a;
    kpoly b;
    kpoly c;
};

inline gp_data gp_form(const kfrac &r)
{
    if (r.is_zero()) {
        throw domain_error("Gosper-Petkovsek form of zero");
    }
    gp_data g{r.num().lc() / r.den().lc(), r.num().monic(), r.den().monic(), kpoly(qfrac(1))};
    for (long j : detail::dispersion_set(g.a, g.b)) {
        const qfrac sj{rational(j)};
        const kpoly s = gcd(g.a, g.b.shift(sj));
        if (s.degree() <= 0) {
            continue;
        }
        g.a = div_exact(g.a, s);
        g.b = div_exact(g.b, s.shift(-sj));
        for (long i = 1; i <= j; ++i) {
            g.c = g.c * s.shift(qfrac(rational(-i)));
        }
    }
    return g;
}

struct gosper_solution
{
    kpoly x;
    std::vector<qfrac> gamma;
};

namespace detail
{

// Degree bound for polynomial x with A x(k+1) - B x(k) of degree deg_c.
inline int gosper_degree_bound(const kpoly &A, const kpoly &B, int deg_c)
{
    const int m = std::max(A.degree(), B.degree());
    if (A.degree() != B.degree() || A.lc() != B.lc()) {
        return deg_c - m;
    }
    int d = deg_c - m + 1;
    const qfrac cand = (B.coeff(m - 1) - A.coeff(m - 1)) / A.lc();
    if (cand.is_constant()) {
        const rational v = cand.constant_value();
        if (is_integer(v) && sgn(v) >= 0) {
            if (v > 100000) {
                throw unsupported_error("Gosper degree bound " + v.get_str() + " is too large");
            }
            d = std::max(d, static_cast<int>(to_long(v)));
        }
    }
    return d;
}

} // namespace detail

// Polynomial x and constants gamma (not all zero) with
//   z a(k) x(k+1) - b(k-1) x(k) = c(k) sum_j gamma_j rhs_j(k),
// or nothing if no such solution exists.
inline std::optional<gosper_solution> solve_gosper_equation(const gp_data &g, const std::vector<kpoly> &rhs)
{
    const kpoly A = g.a * kpoly(g.z);
    const kpoly B = g.b.shift(qfrac(-1));
    std::vector<kpoly> C;
    int deg_c = -1;
    for (const auto &r : rhs) {
        C.push_back(g.c * r);
        deg_c = std::max(deg_c, C.back().degree());
    }
    const int d = detail::gosper_degree_bound(A, B, deg_c);
    std::vector<kpoly> cols;
    for (int i = 0; i <= d; ++i) {
        const kpoly ki = kpoly::monomial(qfrac(1), i);
        cols.push_back(A * ki.shift(qfrac(1)) - B * ki);
    }
    for (const auto &c : C) {
        cols.push_back(-c);
    }
    int rows = 0;
    for (const auto &c : cols) {
        rows = std::max(rows, c.degree() + 1);
    }
    dense_matrix<qfrac> m(static_cast<std::size_t>(std::max(rows, 1)), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (int i = 0; i <= cols[j].degree(); ++i) {
            m(static_cast<std::size_t>(i), j) = cols[j].coeff(i);
        }
    }
    const std::size_t nx = static_cast<std::size_t>(std::max(d + 1, 0));
    for (const auto &v : nullspace(m)) {
        bool ok = false;
        for (std::size_t j = nx; j < v.size(); ++j) {
            ok = ok || !v[j].is_zero();
        }
        if (!ok) {
            continue;
        }
        gosper_solution s;
        s.x = kpoly(std::vector<qfrac>(v.begin(), v.begin() + static_cast<long>(nx)));
        s.gamma.assign(v.begin() + static_cast<long>(nx), v.end());
        return s;
    }
    return std::nullopt;
}

struct gosper_result
{
    // y(k) with g(k) = y(k) f(k) satisfying g(k+1) - g(k) = f(k).
    std::optional<rational_function> certificate;
    rational_function z;
    multipoly a;
    multipoly b;
    multipoly c;
};

// Gosper's algorithm on the shift quotient r = f(k+1)/f(k). Coefficients may
// depend on a parameter (default n), which is then treated as a constant.
inline gosper_result gosper(const rational_function &r, const std::string &k = "k", const std::string &param = "n")
{
    if (r.is_zero()) {
        throw domain_error("gosper needs a nonzero shift quotient");
    }
    require_vars_within(r, {k, param});
    std::vector<std::string> vars{k};
    if (r.depends_on(param)) {
        vars = {param, k};
    }
    const kfrac rk = to_ufrac(r, k, param);
    const gp_data g = gp_form(rk);
    gosper_result out;
    out.z = from_qfrac(g.z, vars, param);
    out.a = clear_upoly(g.a, vars, k, param).first;
    out.b = clear_upoly(g.b, vars, k, param).first;
    out.c = clear_upoly(g.c, vars, k, param).first;
    const auto sol = solve_gosper_equation(g, {kpoly(qfrac(1))});
    if (sol) {
        const kpoly x = sol->x * kpoly(qfrac(1) / sol->gamma.front());
        const kfrac y(g.b.shift(qfrac(-1)) * x, g.c);
        out.certificate = from_ufrac(y, vars, k, param);
    }
    return out;
}

} // namespace ctel

#endif
