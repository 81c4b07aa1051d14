#ifndef CTEL_RATIONAL_AZ_HPP
#define CTEL_RATIONAL_AZ_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/matrix.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/ore/operator.hpp>
#include <ctel/rational/hermite.hpp>
#include <ctel/rational/reduction_ct.hpp>

namespace ctel
{

namespace detail
{

// Degree of the numerator u in the certificate ansatz u/q^r. With this
// choice D_y(u/q^r) reaches the degree of sum_i c_i p_i q^(r-i).
inline int az_certificate_degree(int deg_p, int deg_q, int r)
{
    return deg_p + (r - 1) * deg_q + 1;
}

} // namespace detail

// Fixed-order ansatz: with D_x^i (p/q) = p_i/q^(i+1), solve
//   sum_i c_i p_i q^(r-i) = u_y q - r u q_y
// over Q(x) for c_0..c_r (not all zero) and polynomial u.
inline std::optional<diff_telescoper_result> az_ct(const rational_function &f, int r, const std::string &x = "x",
                                                   const std::string &y = "y")
{
    if (r < 0) {
        throw domain_error("az_ct needs r >= 0");
    }
    require_vars_within(f, {x, y});
    const std::vector<std::string> vars = union_vars(f.vars(), {x, y});
    const yfrac ff = to_ufrac(f, y, x);
    const auto [poly_part, p] = divmod(ff.num(), ff.den());
    const ypoly &q = ff.den();

    std::vector<ypoly> pi{p};
    for (int i = 0; i < r; ++i) {
        const ypoly &cur = pi.back();
        pi.push_back(coeff_derivative(cur) * q - cur * coeff_derivative(q) * ypoly(qfrac(rational(i + 1))));
    }
    std::vector<ypoly> cols;
    for (int i = 0; i <= r; ++i) {
        cols.push_back(pi[static_cast<std::size_t>(i)] * q.pow(static_cast<unsigned>(r - i)));
    }
    const int s = p.is_zero() ? -1 : detail::az_certificate_degree(p.degree(), q.degree(), r);
    const ypoly qy = q.derivative();
    const ypoly rr{qfrac(rational(r))};
    for (int j = 0; j <= s; ++j) {
        const ypoly yj = ypoly::monomial(qfrac(1), j);
        cols.push_back(-(yj.derivative() * q - rr * yj * qy));
    }
    int rows = 1;
    for (const auto &c : cols) {
        rows = std::max(rows, c.degree() + 1);
    }
    dense_matrix<qfrac> a(static_cast<std::size_t>(rows), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (int i = 0; i <= cols[j].degree(); ++i) {
            a(static_cast<std::size_t>(i), j) = cols[j].coeff(i);
        }
    }
    const auto nr = static_cast<std::size_t>(r) + 1u;
    for (const auto &v : nullspace(a)) {
        if (std::all_of(v.begin(), v.begin() + static_cast<long>(nr), [](const qfrac &c) { return c.is_zero(); })) {
            continue;
        }
        std::vector<rational_function> lc;
        for (std::size_t i = 0; i < nr; ++i) {
            lc.push_back(from_qfrac(v[i], vars, x));
        }
        std::vector<qfrac> uc(v.begin() + static_cast<long>(nr), v.end());
        yfrac g(ypoly(std::move(uc)), q.pow(static_cast<unsigned>(r)));
        // L applied to the polynomial part is a polynomial in y.
        ypoly lp;
        ypoly dp = poly_part;
        for (std::size_t i = 0; i < nr; ++i) {
            lp += ypoly(v[i]) * dp;
            dp = coeff_derivative(dp);
        }
        g += yfrac(detail::antiderivative(lp));
        const ore_operator l(derivation_algebra(x), lc);
        return detail::finish_diff_result(f, l, from_ufrac(g, vars, y, x), y);
    }
    return std::nullopt;
}

} // namespace ctel

#endif
