#ifndef CTEL_ORE_RECURRENCE_HPP
#define CTEL_ORE_RECURRENCE_HPP

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/multipoly.hpp>
#include <ctel/exact/number.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/exact/upoly.hpp>
#include <ctel/ore/operator.hpp>

namespace ctel
{

// c_0(n) a(n) + ... + c_r(n) a(n+r) = G(n) with polynomial coefficients.
// Without a right-hand side the recurrence is homogeneous.
class recurrence
{
public:
    using rhs_type = std::function<rational(long)>;

    recurrence() = default;
    recurrence(std::string var, std::vector<qpoly> coeffs, rhs_type rhs = {})
        : m_var(std::move(var)), m_c(std::move(coeffs)), m_rhs(std::move(rhs))
    {
        while (!m_c.empty() && m_c.back().is_zero()) {
            m_c.pop_back();
        }
        if (m_c.empty()) {
            throw domain_error("recurrence with no nonzero coefficient");
        }
        std::size_t t = 0;
        while (m_c[t].is_zero()) {
            ++t;
        }
        m_lead = m_c.back();
        m_trail = m_c[t];
    }

    // Clears the coefficients of a shift operator to content-free polynomials.
    static recurrence from_operator(const ore_operator &op, rhs_type rhs = {})
    {
        if (op.algebra().gen != generator::shift) {
            throw algebra_error("a recurrence needs a shift operator");
        }
        if (op.is_zero()) {
            throw domain_error("recurrence from the zero operator");
        }
        const ore_operator n = op.normalized();
        std::vector<qpoly> c;
        for (const auto &x : n.coeffs()) {
            c.push_back(to_qpoly(x.num(), op.algebra().var));
        }
        return recurrence(op.algebra().var, std::move(c), std::move(rhs));
    }

    const std::string &var() const
    {
        return m_var;
    }
    int order() const
    {
        return static_cast<int>(m_c.size()) - 1;
    }
    const std::vector<qpoly> &coeffs() const
    {
        return m_c;
    }
    const qpoly &leading() const
    {
        return m_lead;
    }
    const qpoly &trailing() const
    {
        return m_trail;
    }
    bool homogeneous() const
    {
        return !m_rhs;
    }
    rational rhs(long n) const
    {
        return m_rhs ? m_rhs(n) : rational(0);
    }
    const rhs_type &rhs_function() const
    {
        return m_rhs;
    }

    ore_operator op() const
    {
        const std::vector<std::string> v{m_var};
        std::vector<rational_function> c;
        for (const auto &p : m_c) {
            c.emplace_back(from_qpoly(p, v, m_var));
        }
        return ore_operator(shift_algebra(m_var), std::move(c));
    }

    // Same homogeneous part up to a nonzero constant factor.
    bool equivalent(const recurrence &o) const
    {
        return m_var == o.m_var && op().normalized() == o.op().normalized();
    }

    // sum_i c_i(n) a(n+i) - G(n); a must cover the index range.
    rational residual(const std::vector<rational> &a, long n) const
    {
        rational s;
        const rational nn(n);
        for (std::size_t i = 0; i < m_c.size(); ++i) {
            s += m_c[i](nn) * a.at(static_cast<std::size_t>(n) + i);
        }
        return s - rhs(n);
    }

    // "(n+1)*a(n+1) - (4*n+2)*a(n)"
    std::string to_string(const std::string &seq = "a") const
    {
        const std::vector<std::string> v{m_var};
        std::vector<std::pair<rational_function, std::string>> terms;
        for (int i = order(); i >= 0; --i) {
            const std::string idx = i == 0 ? m_var : m_var + "+" + std::to_string(i);
            terms.emplace_back(rational_function(from_qpoly(m_c[static_cast<std::size_t>(i)], v, m_var)),
                               seq + "(" + idx + ")");
        }
        return detail::signed_sum(terms);
    }

private:
    std::string m_var = "n";
    std::vector<qpoly> m_c;
    qpoly m_lead;
    qpoly m_trail;
    rhs_type m_rhs;
};

// Recurrence for the coefficients of power-series solutions of L. The
// monomial x^a D^b sends sum a_m x^m to sum m(m-1)..(m-b+1) a_m x^(m-b+a), so
// the coefficient of x^N picks a(N+b-a) with that falling factorial. With
// N = n - min(b-a) the smallest index becomes a(n).
inline recurrence ode_to_rec(const ore_operator &l, const std::string &n = "n")
{
    if (l.algebra().gen != generator::derivation) {
        throw algebra_error("ode_to_rec expects a differential operator");
    }
    if (l.is_zero()) {
        throw domain_error("ode_to_rec of the zero operator");
    }
    const std::string &x = l.algebra().var;
    // Clear denominators only: a common polynomial factor changes which
    // indices the recurrence constrains.
    multipoly den(l.leading().vars(), rational(1));
    for (const auto &c : l.coeffs()) {
        den = detail::poly_lcm(den, c.den());
    }
    const ore_operator ln = rational_function(den) * l;
    struct term
    {
        int a;
        int b;
        rational c;
    };
    std::vector<term> terms;
    for (int b = 0; b <= ln.order(); ++b) {
        const qpoly p = to_qpoly(ln.coeffs()[static_cast<std::size_t>(b)].num(), x);
        for (int a = 0; a <= p.degree(); ++a) {
            if (!is_zero(p.coeff(a))) {
                terms.push_back({a, b, p.coeff(a)});
            }
        }
    }
    int smin = terms.front().b - terms.front().a, smax = smin;
    for (const auto &t : terms) {
        smin = std::min(smin, t.b - t.a);
        smax = std::max(smax, t.b - t.a);
    }
    std::vector<qpoly> c(static_cast<std::size_t>(smax - smin) + 1u);
    const qpoly nv = qpoly::var();
    for (const auto &t : terms) {
        const int s = t.b - t.a;
        qpoly f(t.c);
        for (int j = 0; j < t.b; ++j) {
            f = f * (nv + qpoly(rational(s - smin - j)));
        }
        c[static_cast<std::size_t>(s - smin)] += f;
    }
    return recurrence(n, std::move(c));
}

// First `count` terms of the solution with the given initial segment. Extra
// initial values beyond the order are taken as given, which lets callers
// step over indices where the leading coefficient vanishes.
inline std::vector<rational> rec_unroll(const recurrence &r, const std::vector<rational> &initial, long count)
{
    const long ord = r.order();
    if (static_cast<long>(initial.size()) < ord) {
        throw domain_error("rec_unroll needs at least " + std::to_string(ord) + " initial values");
    }
    std::vector<rational> a(initial.begin(), initial.begin() + std::min<long>(count, static_cast<long>(initial.size())));
    a.reserve(static_cast<std::size_t>(std::max<long>(count, 0)));
    for (long m = static_cast<long>(a.size()); m < count; ++m) {
        const long n = m - ord;
        const rational nn(n);
        const rational lead = r.leading()(nn);
        if (is_zero(lead)) {
            throw singular_index_error(n, m);
        }
        rational s = r.rhs(n);
        for (long i = 0; i < ord; ++i) {
            s -= r.coeffs()[static_cast<std::size_t>(i)](nn) * a[static_cast<std::size_t>(n + i)];
        }
        a.push_back(s / lead);
    }
    return a;
}

} // namespace ctel

#endif
