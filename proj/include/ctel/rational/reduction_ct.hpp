#ifndef CTEL_RATIONAL_REDUCTION_CT_HPP
#define CTEL_RATIONAL_REDUCTION_CT_HPP

#include <string>
#include <utility>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/matrix.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/ore/operator.hpp>
#include <ctel/rational/hermite.hpp>

namespace ctel
{

// L f = D_y g with L a differential operator in x.
struct diff_telescoper_result
{
    ore_operator telescoper;
    rational_function certificate;
    int order = 0;
};

inline bool verify_ct_diff(const rational_function &f, const diff_telescoper_result &res, const std::string &y = "y")
{
    const ore_operator &l = res.telescoper;
    if (l.is_zero() || l.algebra().gen != generator::derivation) {
        return false;
    }
    const std::string &x = l.algebra().var;
    for (const auto &c : l.coeffs()) {
        for (const auto &v : c.used_vars()) {
            if (v != x) {
                return false;
            }
        }
    }
    for (const auto &v : res.certificate.used_vars()) {
        if (v != x && v != y) {
            return false;
        }
    }
    // With D_x^i (p/q) = N_i/q^(i+1) and c_i = a_i/b_i, B = lcm(b_i), g = u/v:
    //   v^2 sum_i a_i (B/b_i) N_i q^(r-i) = (u_y v - u v_y) B q^(r+1).
    // Only ring operations are involved, no gcds.
    const auto vars = union_vars(union_vars(f.vars(), res.certificate.vars()), {x, y});
    const multipoly p = f.num().with_vars(vars), q = f.den().with_vars(vars);
    const multipoly qx = q.derivative(x);
    multipoly b(vars, rational(1));
    for (const auto &c : l.coeffs()) {
        const multipoly d = c.den().with_vars(vars);
        b = divide_exact(b * d, detail::primitive_gcd(b, d));
    }
    const auto r = static_cast<std::size_t>(l.order());
    std::vector<multipoly> qpow{multipoly(vars, rational(1))};
    for (std::size_t i = 0; i <= r; ++i) {
        qpow.push_back(qpow.back() * q);
    }
    multipoly lhs(vars);
    multipoly ni = p;
    for (std::size_t i = 0; i <= r; ++i) {
        const rational_function &c = l.coeffs()[i];
        if (!c.is_zero()) {
            const multipoly w = c.num().with_vars(vars) * divide_exact(b, c.den().with_vars(vars));
            lhs += w * ni * qpow[r - i];
        }
        if (i < r) {
            ni = ni.derivative(x) * q - multipoly(vars, rational(static_cast<long>(i) + 1)) * ni * qx;
        }
    }
    const multipoly u = res.certificate.num().with_vars(vars), v = res.certificate.den().with_vars(vars);
    const multipoly dy = u.derivative(y) * v - u * v.derivative(y);
    return lhs * v * v == dy * b * qpow[r + 1];
}

namespace detail
{

// D_x^i f = D_y G_i + h_i for i = 0, 1, ..., with each h_i stored as its
// coordinates over the basis y^j/q* (q* the squarefree part of the
// denominator of f).
class reduction_sequence
{
public:
    explicit reduction_sequence(const yfrac &f)
    {
        m_qstar = squarefree_part(f.den());
        auto parts = hermite_y(f);
        m_g.push_back(std::move(parts.g));
        m_last = parts.h;
        m_coords.push_back(coordinates(parts.h));
    }

    int dimension() const
    {
        return m_qstar.degree();
    }
    std::size_t size() const
    {
        return m_coords.size();
    }
    const std::vector<qfrac> &coords(std::size_t i) const
    {
        return m_coords[i];
    }
    const yfrac &g(std::size_t i) const
    {
        return m_g[i];
    }

    void extend()
    {
        auto parts = hermite_y(param_derivative(m_last));
        m_g.push_back(param_derivative(m_g.back()) + parts.g);
        m_last = parts.h;
        m_coords.push_back(coordinates(parts.h));
    }

private:
    std::vector<qfrac> coordinates(const yfrac &h) const
    {
        std::vector<qfrac> v(static_cast<std::size_t>(dimension()));
        if (h.is_zero()) {
            return v;
        }
        const auto [q, r] = divmod(m_qstar, h.den());
        if (!r.is_zero()) {
            throw algebra_error("reduced denominator does not divide the squarefree part");
        }
        const ypoly n = h.num() * q;
        for (int j = 0; j <= n.degree(); ++j) {
            v[static_cast<std::size_t>(j)] = n.coeff(j);
        }
        return v;
    }

    ypoly m_qstar;
    yfrac m_last;
    std::vector<yfrac> m_g;
    std::vector<std::vector<qfrac>> m_coords;
};

// Normalizes L and rescales the certificate with it, then checks the pair.
inline diff_telescoper_result finish_diff_result(const rational_function &f, const ore_operator &l,
                                                 const rational_function &g, const std::string &y)
{
    const ore_operator ln = l.normalized();
    const rational_function lambda = ln.leading() / l.leading();
    diff_telescoper_result res{ln, lambda * g, ln.order()};
    if (!verify_ct_diff(f, res, y)) {
        throw verification_error("telescoper and certificate fail the telescoping identity");
    }
    return res;
}

} // namespace detail

// Telescoper by Hermite reduction: the first Q(x)-linear dependence among
// the reduced parts h_0, h_1, ... gives L and the certificate.
inline diff_telescoper_result reduction_ct(const rational_function &f, const std::string &x = "x",
                                           const std::string &y = "y")
{
    require_vars_within(f, {x, y});
    const std::vector<std::string> vars = union_vars(f.vars(), {x, y});
    detail::reduction_sequence seq(to_ufrac(f, y, x));
    const auto m = static_cast<std::size_t>(seq.dimension());
    for (std::size_t i = 0;; ++i) {
        dense_matrix<qfrac> a(m, i + 1);
        for (std::size_t j = 0; j <= i; ++j) {
            for (std::size_t row = 0; row < m; ++row) {
                a(row, j) = seq.coords(j)[row];
            }
        }
        const auto ns = nullspace(a);
        if (!ns.empty()) {
            const auto &c = ns.front();
            std::vector<rational_function> lc;
            yfrac g;
            for (std::size_t j = 0; j <= i; ++j) {
                lc.push_back(from_qfrac(c[j], vars, x));
                if (!c[j].is_zero()) {
                    g += yfrac(c[j]) * seq.g(j);
                }
            }
            const ore_operator l(derivation_algebra(x), lc);
            return detail::finish_diff_result(f, l, from_ufrac(g, vars, y, x), y);
        }
        if (i >= m) {
            throw algebra_error("reduced parts stay independent beyond the dimension bound");
        }
        seq.extend();
    }
}

} // namespace ctel

#endif
