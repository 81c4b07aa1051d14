#ifndef CTEL_EXACT_MATRIX_HPP
#define CTEL_EXACT_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/number.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/exact/ufrac.hpp>
#include <ctel/exact/upoly.hpp>

namespace ctel
{

// Row-major dense matrix.
template <typename T>
class dense_matrix
{
public:
    dense_matrix() = default;
    dense_matrix(std::size_t rows, std::size_t cols, const T &fill = T{})
        : m_rows(rows), m_cols(cols), m_data(rows * cols, fill)
    {
    }
    dense_matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : m_rows(rows), m_cols(cols), m_data(std::move(data))
    {
        if (m_data.size() != rows * cols) {
            throw domain_error("matrix data does not match its shape");
        }
    }

    std::size_t rows() const
    {
        return m_rows;
    }
    std::size_t cols() const
    {
        return m_cols;
    }
    T &operator()(std::size_t i, std::size_t j)
    {
        return m_data[i * m_cols + j];
    }
    const T &operator()(std::size_t i, std::size_t j) const
    {
        return m_data[i * m_cols + j];
    }

private:
    std::size_t m_rows = 0;
    std::size_t m_cols = 0;
    std::vector<T> m_data;
};

using rat_matrix = dense_matrix<rational_function>;

namespace detail
{

// Integer entries with gcd 1, first nonzero entry positive.
inline void normalize_vector(std::vector<rational> &v)
{
    rational g;
    for (const auto &x : v) {
        g = rational_gcd(g, x);
    }
    if (is_zero(g)) {
        return;
    }
    for (const auto &x : v) {
        if (!is_zero(x)) {
            if (sgn(x) < 0) {
                g = -g;
            }
            break;
        }
    }
    for (auto &x : v) {
        x /= g;
    }
}

// Polynomial entries, gcd of the entries 1 (also over Z), first nonzero
// entry with positive leading coefficient.
inline void normalize_vector(std::vector<qfrac> &v)
{
    qpoly l(rational(1));
    for (const auto &x : v) {
        l = lcm(l, x.den());
    }
    std::vector<qpoly> p;
    p.reserve(v.size());
    qpoly g;
    for (const auto &x : v) {
        p.push_back(x.num() * div_exact(l, x.den()));
        g = gcd(g, p.back());
    }
    if (g.is_zero()) {
        return;
    }
    rational c;
    for (auto &x : p) {
        x = div_exact(x, g);
        for (const auto &a : x.coeffs()) {
            c = rational_gcd(c, a);
        }
    }
    for (const auto &x : p) {
        if (!x.is_zero()) {
            if (sgn(x.lc()) < 0) {
                c = -c;
            }
            break;
        }
    }
    const rational inv = rational(1) / c;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = qfrac(inv * p[i]);
    }
}

} // namespace detail

// Basis of the right nullspace over Q (Gauss-Jordan).
inline std::vector<std::vector<rational>> nullspace(dense_matrix<rational> a)
{
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && is_zero(a(p, c))) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) {
                std::swap(a(p, j), a(r, j));
            }
        }
        const rational inv = rational(1) / a(r, c);
        for (std::size_t j = c; j < cols; ++j) {
            a(r, j) *= inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(a(i, c))) {
                continue;
            }
            const rational f = a(i, c);
            for (std::size_t j = c; j < cols; ++j) {
                a(i, j) -= f * a(r, j);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<std::vector<rational>> basis;
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<rational> v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            v[pivots[i]] = -a(i, f);
        }
        detail::normalize_vector(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace detail
{

// Dense polynomial over Z, lowest degree first, no trailing zeros.
using zpoly = std::vector<integer>;

inline void ztrim(zpoly &p)
{
    while (!p.empty() && sgn(p.back()) == 0) {
        p.pop_back();
    }
}

// a*b - c*d
inline zpoly zcross(const zpoly &a, const zpoly &b, const zpoly &c, const zpoly &d)
{
    std::size_t n = 0;
    if (!a.empty() && !b.empty()) {
        n = a.size() + b.size() - 1;
    }
    if (!c.empty() && !d.empty()) {
        n = std::max(n, c.size() + d.size() - 1);
    }
    zpoly r(n);
    if (!a.empty() && !b.empty()) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
            }
        }
    }
    if (!c.empty() && !d.empty()) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = 0; j < d.size(); ++j) {
                mpz_submul(r[i + j].get_mpz_t(), c[i].get_mpz_t(), d[j].get_mpz_t());
            }
        }
    }
    ztrim(r);
    return r;
}

// s -= a*b
inline void zsubmul(zpoly &s, const zpoly &a, const zpoly &b)
{
    if (s.size() < a.size() + b.size() - 1) {
        s.resize(a.size() + b.size() - 1);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            mpz_submul(s[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    ztrim(s);
}

// q = a/b if b divides a in Z[t].
inline bool zdivide(zpoly a, const zpoly &b, zpoly &q)
{
    q.clear();
    if (b.empty()) {
        return false;
    }
    if (a.empty()) {
        return true;
    }
    if (a.size() < b.size()) {
        return false;
    }
    const std::size_t db = b.size() - 1;
    const integer &lb = b.back();
    q.assign(a.size() - db, integer(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        integer &top = a[k + db];
        if (sgn(top) == 0) {
            continue;
        }
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) {
            return false;
        }
        mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        for (std::size_t i = 0; i <= db; ++i) {
            mpz_submul(a[k + i].get_mpz_t(), q[k].get_mpz_t(), b[i].get_mpz_t());
        }
    }
    ztrim(a);
    ztrim(q);
    return a.empty();
}

inline qpoly to_qpoly(const zpoly &p)
{
    std::vector<rational> c(p.begin(), p.end());
    return qpoly(std::move(c));
}

// Rows scaled into Z[t].
inline dense_matrix<zpoly> integral_rows(const dense_matrix<qfrac> &m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    dense_matrix<zpoly> a(rows, cols);
    std::vector<qpoly> row(cols);
    for (std::size_t i = 0; i < rows; ++i) {
        qpoly l(rational(1));
        for (std::size_t j = 0; j < cols; ++j) {
            l = lcm(l, m(i, j).den());
        }
        integer den(1);
        for (std::size_t j = 0; j < cols; ++j) {
            row[j] = m(i, j).num() * div_exact(l, m(i, j).den());
            for (const auto &c : row[j].coeffs()) {
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
            }
        }
        for (std::size_t j = 0; j < cols; ++j) {
            zpoly z;
            for (const auto &c : row[j].coeffs()) {
                z.push_back(c.get_num() * (den / c.get_den()));
            }
            ztrim(z);
            a(i, j) = std::move(z);
        }
    }
    return a;
}

} // namespace detail

// Basis of the right nullspace over Q(t). Rows are cleared to Z[t] and
// reduced by fraction-free (Bareiss) elimination. Back substitution against
// the last pivot d, x_k = (d b_k - sum_j a_kj x_j) / a_kk, stays in Z[t].
// Basis vectors come out with polynomial entries.
inline std::vector<std::vector<qfrac>> nullspace(const dense_matrix<qfrac> &m)
{
    using detail::zpoly;
    const std::size_t rows = m.rows(), cols = m.cols();
    dense_matrix<zpoly> a = detail::integral_rows(m);
    std::vector<std::size_t> pivots;
    zpoly prev{integer(1)};
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c).empty()) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) {
                std::swap(a(p, j), a(r, j));
            }
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                zpoly q;
                if (!detail::zdivide(detail::zcross(a(r, c), a(i, j), a(i, c), a(r, j)), prev, q)) {
                    throw algebra_error("inexact division in fraction-free elimination");
                }
                a(i, j) = std::move(q);
            }
            a(i, c).clear();
        }
        prev = a(r, c);
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }
    const zpoly d = pivots.empty() ? zpoly{integer(1)} : a(pivots.size() - 1, pivots.back());
    std::vector<std::vector<qfrac>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<zpoly> x(cols);
        x[f] = d;
        bool exact = true;
        for (std::size_t i = pivots.size(); exact && i-- > 0;) {
            const std::size_t pc = pivots[i];
            zpoly s;
            for (std::size_t j = pc + 1; j < cols; ++j) {
                if (!x[j].empty() && !a(i, j).empty()) {
                    detail::zsubmul(s, a(i, j), x[j]);
                }
            }
            exact = detail::zdivide(s, a(i, pc), x[pc]);
        }
        std::vector<qfrac> v(cols);
        if (exact) {
            for (std::size_t j = 0; j < cols; ++j) {
                v[j] = qfrac(detail::to_qpoly(x[j]));
            }
        }
        else {
            v[f] = qfrac(1);
            for (std::size_t i = pivots.size(); i-- > 0;) {
                const std::size_t pc = pivots[i];
                qfrac s;
                for (std::size_t j = pc + 1; j < cols; ++j) {
                    if (!v[j].is_zero() && !a(i, j).empty()) {
                        s += qfrac(detail::to_qpoly(a(i, j))) * v[j];
                    }
                }
                v[pc] = -s / qfrac(detail::to_qpoly(a(i, pc)));
            }
        }
        detail::normalize_vector(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Nullspace of a matrix whose entries are rational numbers or rational
// functions in at most one common variable.
inline std::vector<std::vector<rational_function>> mat_nullspace(const rat_matrix &m)
{
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            vars = union_vars(vars, m(i, j).used_vars());
        }
    }
    if (vars.size() > 1u) {
        throw unsupported_error("matrix entries must lie in Q or Q(t) for a single variable t");
    }
    const std::string var = vars.empty() ? std::string("t") : vars.front();
    dense_matrix<qfrac> q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            q(i, j) = to_qfrac(m(i, j), var);
        }
    }
    std::vector<std::vector<rational_function>> out;
    for (const auto &v : nullspace(q)) {
        std::vector<rational_function> w;
        for (const auto &x : v) {
            w.push_back(from_qfrac(x, vars.empty() ? std::vector<std::string>{} : vars, var));
        }
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace ctel

#endif
