#ifndef CTEL_HYPER_SUM_RECURRENCE_HPP
#define CTEL_HYPER_SUM_RECURRENCE_HPP

#include <algorithm>
#include <string>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/exact/ufrac.hpp>
#include <ctel/hyper/term.hpp>
#include <ctel/hyper/zeilberger.hpp>
#include <ctel/ore/recurrence.hpp>

namespace ctel
{

namespace detail
{

inline rational term_or_certificate_pole(const hyper_term &f, long n0, long k0)
{
    try {
        return evaluate_term(f, n0, k0);
    }
    catch (const pole_error &) {
        throw certificate_pole_error(n0, k0);
    }
}

inline bool try_eval(const qfrac &q, long k0, rational &out)
{
    const rational d = q.den()(rational(k0));
    if (is_zero(d)) {
        return false;
    }
    out = q.num()(rational(k0)) / d;
    return true;
}

inline bool try_term(const hyper_term &f, long n0, long k0, rational &out)
{
    if (k0 < 0) {
        return false;
    }
    try {
        out = evaluate_term(f, n0, k0);
        return true;
    }
    catch (const pole_error &) {
        return false;
    }
}

} // namespace detail

// Value of the certificate term g = R f at (n0, k0). When R or f has a pole
// there, R is first multiplied by shift quotients of f to move the term
// value to a neighboring lattice point (backwards, then forwards); the
// matching linear factors cancel symbolically before substitution. If no
// such rewrite is free of poles the point is reported rather than guessed.
inline rational certificate_value(const hyper_term &f, const rational_function &r, long n0, long k0, int reach = 0)
{
    const std::vector<std::string> v{f.n, f.k};
    rational_function rn0;
    try {
        rn0 = r.with_vars(union_vars(r.vars(), v)).substitute(f.n, rational(n0));
    }
    catch (const division_error &) {
        throw certificate_pole_error(n0, k0);
    }
    const qfrac rk = to_qfrac(rn0.with_vars(union_vars(rn0.vars(), v)), f.k);
    if (rk.is_zero()) {
        return rational(0);
    }
    qfrac rho;
    try {
        rho = to_qfrac(f.rho_k.substitute(f.n, rational(n0)).with_vars(v), f.k);
    }
    catch (const division_error &) {
        throw certificate_pole_error(n0, k0);
    }
    if (reach <= 0) {
        reach = 8 + rk.den().degree() + rho.den().degree() + rho.num().degree();
    }
    rational a, b;
    if (detail::try_eval(rk, k0, a) && detail::try_term(f, n0, k0, b)) {
        return a * b;
    }
    // g(k0) = R(k0) prod_{j=1..m} rho(k0-j) f(k0-m)
    qfrac acc = rk;
    for (int m = 1; m <= reach && k0 - m >= 0; ++m) {
        acc = acc * rho.shift(rational(-m));
        if (detail::try_eval(acc, k0, a) && detail::try_term(f, n0, k0 - m, b)) {
            return a * b;
        }
    }
    // g(k0) = R(k0) / prod_{j<m} rho(k0+j) f(k0+m)
    acc = rk;
    for (int m = 1; m <= reach; ++m) {
        if (rho.shift(rational(m - 1)).is_zero()) {
            break;
        }
        acc = acc / rho.shift(rational(m - 1));
        if (detail::try_eval(acc, k0, a) && detail::try_term(f, n0, k0 + m, b)) {
            return a * b;
        }
    }
    throw certificate_pole_error(n0, k0);
}

// P F(n) = G(n) for F(n) = sum_{k=0}^{n} f(n,k), where summing the
// telescoping identity over 0 <= k <= n gives
//   G(n) = sum_i c_i(n) sum_{k=n+1}^{n+i} f(n+i,k) + g(n,n+1) - g(n,0).
// The right-hand side is an evaluator; it raises certificate_pole_error
// whenever a boundary value cannot be resolved.
inline recurrence ct_to_sum_recurrence(const hyper_term &f, const shift_telescoper_result &res)
{
    const ore_operator p = res.telescoper.normalized();
    if (p.is_zero()) {
        throw domain_error("zero telescoper");
    }
    const rational_function scale = p.leading() / res.telescoper.leading();
    const rational_function cert = scale * res.certificate;
    std::vector<qpoly> coeffs;
    for (const auto &c : p.coeffs()) {
        coeffs.push_back(to_qpoly(c.num(), f.n));
    }
    auto rhs = [f, coeffs, cert](long n) -> rational {
        const rational nn(n);
        rational s;
        for (std::size_t i = 1; i < coeffs.size(); ++i) {
            const rational ci = coeffs[i](nn);
            if (is_zero(ci)) {
                continue;
            }
            rational inner;
            for (long k = n + 1; k <= n + static_cast<long>(i); ++k) {
                inner += detail::term_or_certificate_pole(f, n + static_cast<long>(i), k);
            }
            s += ci * inner;
        }
        return s + certificate_value(f, cert, n, n + 1) - certificate_value(f, cert, n, 0);
    };
    return recurrence(f.n, std::move(coeffs), rhs);
}

// sum_{k=0}^{n0} f(n0, k) by direct evaluation.
inline rational definite_sum(const hyper_term &f, long n0)
{
    rational s;
    for (long k = 0; k <= n0; ++k) {
        s += evaluate_term(f, n0, k);
    }
    return s;
}

} // namespace ctel

#endif
