#ifndef CTEL_HYPER_ZEILBERGER_HPP
#define CTEL_HYPER_ZEILBERGER_HPP

#include <string>
#include <utility>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/exact/ufrac.hpp>
#include <ctel/hyper/gosper.hpp>
#include <ctel/hyper/term.hpp>
#include <ctel/ore/operator.hpp>

namespace ctel
{

// sum_i c_i(n) f(n+i,k) = g(n,k+1) - g(n,k) with g = R f.
struct shift_telescoper_result
{
    ore_operator telescoper;
    rational_function certificate;
    int order = 0;
};

namespace detail
{

// f(n+i,k)/f(n,k) for i = 0..r as elements of Q(n)(k).
inline std::vector<kfrac> n_shift_ratios(const hyper_term &f, int r)
{
    const kfrac rho = f.rho_n_k();
    std::vector<kfrac> out{kfrac(1)};
    for (int i = 1; i <= r; ++i) {
        out.push_back(out.back() * param_shift(rho, rational(i - 1)));
    }
    return out;
}

inline qfrac to_param(const rational_function &c, const std::string &n)
{
    return to_qfrac(c, n);
}

} // namespace detail

inline bool verify_ct_shift(const hyper_term &f, const shift_telescoper_result &res)
{
    const ore_operator &p = res.telescoper;
    if (p.is_zero() || p.algebra() != shift_algebra(f.n)) {
        return false;
    }
    for (const auto &c : p.coeffs()) {
        for (const auto &v : c.used_vars()) {
            if (v != f.n) {
                return false;
            }
        }
    }
    for (const auto &v : res.certificate.used_vars()) {
        if (v != f.n && v != f.k) {
            return false;
        }
    }
    const auto ratios = detail::n_shift_ratios(f, p.order());
    kfrac lhs;
    for (int i = 0; i <= p.order(); ++i) {
        const rational_function &c = p.coeffs()[static_cast<std::size_t>(i)];
        if (!c.is_zero()) {
            lhs += kfrac(detail::to_param(c, f.n)) * ratios[static_cast<std::size_t>(i)];
        }
    }
    const kfrac r = to_ufrac(res.certificate, f.k, f.n);
    const kfrac rhs = r.shift(qfrac(1)) * f.rho_k_k() - r;
    return lhs == rhs;
}

// Creative telescoping by the parameterized Gosper procedure, orders 0..r_max.
inline shift_telescoper_result zeilberger(const hyper_term &f, int r_max)
{
    if (r_max < 0) {
        throw domain_error("zeilberger needs r_max >= 0");
    }
    const std::vector<std::string> vars{f.n, f.k};
    const kfrac rho_k = f.rho_k_k();
    for (int r = 0; r <= r_max; ++r) {
        const auto ratios = detail::n_shift_ratios(f, r);
        // sum_j gamma_j ratio_j = p(k)/D(k) with p = sum_j gamma_j W_j.
        kpoly d(qfrac(1));
        for (const auto &q : ratios) {
            d = lcm(d, q.den());
        }
        std::vector<kpoly> w;
        for (const auto &q : ratios) {
            w.push_back(q.num() * div_exact(d, q.den()));
        }
        const kfrac shifted = rho_k * kfrac(d, d.shift(qfrac(1)));
        const gp_data g = gp_form(shifted);
        const auto sol = solve_gosper_equation(g, w);
        if (!sol) {
            continue;
        }
        std::vector<rational_function> c;
        for (const auto &gm : sol->gamma) {
            c.push_back(from_qfrac(gm, vars, f.n));
        }
        const ore_operator p(shift_algebra(f.n), c);
        const kfrac rk(g.b.shift(qfrac(-1)) * sol->x, g.c * d);
        shift_telescoper_result res{p, from_ufrac(rk, vars, f.k, f.n), p.order()};
        const ore_operator pn = p.normalized();
        const rational_function lambda = pn.leading() / p.leading();
        res.telescoper = pn;
        res.certificate = lambda * res.certificate;
        res.order = pn.order();
        if (!verify_ct_shift(f, res)) {
            throw verification_error("zeilberger produced a pair that fails verification");
        }
        return res;
    }
    throw not_found(r_max);
}

} // namespace ctel

#endif
