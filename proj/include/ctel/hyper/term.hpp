#ifndef CTEL_HYPER_TERM_HPP
#define CTEL_HYPER_TERM_HPP

#include <string>
#include <utility>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/multipoly.hpp>
#include <ctel/exact/number.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/exact/ufrac.hpp>

namespace ctel
{

// Bivariate hypergeometric term given by its shift quotients
// rho_n = f(n+1,k)/f(n,k), rho_k = f(n,k+1)/f(n,k) and the value f(0,0).
struct hyper_term
{
    std::string n = "n";
    std::string k = "k";
    rational_function rho_n;
    rational_function rho_k;
    rational base{1};

    std::vector<std::string> vars() const
    {
        return {n, k};
    }

    // rho_n(n,k+1) rho_k(n,k) = rho_k(n+1,k) rho_n(n,k)
    bool compatible() const
    {
        return rho_n.shift(k, rational(1)) * rho_k == rho_k.shift(n, rational(1)) * rho_n;
    }

    // rho_n and rho_k as elements of Q(n)(k).
    ufrac<qfrac> rho_n_k() const
    {
        return to_ufrac(rho_n, k, n);
    }
    ufrac<qfrac> rho_k_k() const
    {
        return to_ufrac(rho_k, k, n);
    }
};

inline hyper_term make_hyper_term(const std::string &n, const std::string &k, const rational_function &rho_n,
                                  const rational_function &rho_k, const rational &base)
{
    const std::vector<std::string> v{n, k};
    require_vars_within(rho_n, v);
    require_vars_within(rho_k, v);
    if (rho_n.is_zero() || rho_k.is_zero()) {
        throw domain_error("shift quotients of a hypergeometric term must be nonzero");
    }
    hyper_term t{n, k, rho_n.with_vars(v), rho_k.with_vars(v), base};
    if (!t.compatible()) {
        throw domain_error("shift quotients are not compatible");
    }
    return t;
}

// Gamma(alpha n + beta k + gamma)^e
struct gamma_factor
{
    long alpha = 0;
    long beta = 0;
    rational gamma;
    long e = 1;
};

// p(n,k) c^n d^k prod Gamma(alpha_i n + beta_i k + gamma_i)^e_i
struct proper_term_expr
{
    std::string n = "n";
    std::string k = "k";
    multipoly p{std::vector<std::string>{"n", "k"}, rational(1)};
    rational c{1};
    rational d{1};
    std::vector<gamma_factor> gammas;
};

namespace detail
{

// Gamma(z + s)/Gamma(z) as a rational function: a rising factorial for
// s >= 0, the reciprocal of a falling one otherwise.
inline rational_function gamma_shift_ratio(const rational_function &z, long s)
{
    rational_function r(z.vars(), rational(1));
    if (s >= 0) {
        for (long j = 0; j < s; ++j) {
            r *= z + rational_function(z.vars(), rational(j));
        }
    }
    else {
        for (long j = 1; j <= -s; ++j) {
            r /= z - rational_function(z.vars(), rational(j));
        }
    }
    return r;
}

// Gamma(g) for rational g. Only integer arguments have a rational value; for
// the others the factor is normalized to 1, which rescales the whole term by
// a nonzero constant.
inline rational gamma_value(const rational &g)
{
    if (!is_integer(g)) {
        return rational(1);
    }
    const long v = to_long(g.get_num());
    if (v <= 0) {
        throw pole_error(0, 0, "Gamma at the non-positive integer " + std::to_string(v));
    }
    return rational(factorial(static_cast<unsigned long>(v - 1)));
}

} // namespace detail

inline hyper_term compile_proper_term(const proper_term_expr &e)
{
    const std::vector<std::string> v{e.n, e.k};
    const multipoly p = e.p.with_vars(union_vars(v, e.p.vars()));
    require_vars_within(rational_function(p), v);
    if (p.is_zero()) {
        throw domain_error("the zero term is not hypergeometric");
    }
    if (is_zero(e.c) || is_zero(e.d)) {
        throw domain_error("zero base in c^n d^k");
    }
    const rational_function pf = rational_function(p).with_vars(v);
    rational_function rho_n = pf.shift(e.n, rational(1)) / pf * rational_function(v, e.c);
    rational_function rho_k = pf.shift(e.k, rational(1)) / pf * rational_function(v, e.d);
    const rational_function n = rational_function::variable(v, e.n);
    const rational_function k = rational_function::variable(v, e.k);
    rational base = p.constant_term();
    for (const auto &g : e.gammas) {
        const rational_function z = rational_function(v, rational(g.alpha)) * n
                                    + rational_function(v, rational(g.beta)) * k + rational_function(v, g.gamma);
        rho_n *= detail::gamma_shift_ratio(z, g.alpha).pow(g.e);
        rho_k *= detail::gamma_shift_ratio(z, g.beta).pow(g.e);
        base *= pow(detail::gamma_value(g.gamma), g.e);
    }
    return make_hyper_term(e.n, e.k, rho_n, rho_k, base);
}

namespace detail
{

inline rational eval_at(const rational_function &f, const std::string &n, const std::string &k, long n0, long k0,
                        bool &pole)
{
    const auto &vs = f.vars();
    std::vector<rational> pt(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] == n) {
            pt[i] = n0;
        }
        else if (vs[i] == k) {
            pt[i] = k0;
        }
    }
    const rational d = f.den().evaluate(pt);
    pole = is_zero(d);
    if (pole) {
        return rational(0);
    }
    return f.num().evaluate(pt) / d;
}

} // namespace detail

// f(n0, k0) along (0,0) -> (n0,0) -> (n0,k0), multiplying shift quotients.
inline rational evaluate_term(const hyper_term &f, long n0, long k0)
{
    if (n0 < 0 || k0 < 0) {
        throw domain_error("evaluate_term needs nonnegative lattice points");
    }
    rational v = f.base;
    bool pole = false;
    for (long i = 0; i < n0; ++i) {
        const rational q = detail::eval_at(f.rho_n, f.n, f.k, i, 0, pole);
        if (pole) {
            throw pole_error(i, 0);
        }
        v *= q;
    }
    for (long j = 0; j < k0; ++j) {
        const rational q = detail::eval_at(f.rho_k, f.n, f.k, n0, j, pole);
        if (pole) {
            throw pole_error(n0, j);
        }
        v *= q;
    }
    return v;
}

} // namespace ctel

#endif
