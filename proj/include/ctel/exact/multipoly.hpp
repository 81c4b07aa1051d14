#ifndef CTEL_EXACT_MULTIPOLY_HPP
#define CTEL_EXACT_MULTIPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/number.hpp>
#include <ctel/exact/upoly.hpp>

namespace ctel
{

// Exponent vector, one entry per variable of the owning polynomial.
using monomial = std::vector<int>;

namespace detail
{

inline int total_degree(const monomial &m)
{
    int d = 0;
    for (int e : m) {
        d += e;
    }
    return d;
}

// Graded lexicographic order, first variable most significant.
inline bool grlex_less(const monomial &a, const monomial &b)
{
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) {
        return da < db;
    }
    return a < b;
}

inline rational rational_gcd(const rational &a, const rational &b)
{
    if (is_zero(a)) {
        return abs(b);
    }
    if (is_zero(b)) {
        return abs(a);
    }
    integer n, d;
    mpz_gcd(n.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    mpz_lcm(d.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    rational r{n, d};
    r.canonicalize();
    return r;
}

} // namespace detail

// Sparse polynomial in a named, ordered list of variables with rational
// coefficients. Zero coefficients are never stored. Binary operations on
// polynomials with different variable lists first align them on the union
// of the two lists (left operand's order first).
class multipoly
{
public:
    using term_map = std::map<monomial, rational>;

    multipoly() = default;
    explicit multipoly(std::vector<std::string> vars) : m_vars(std::move(vars)) {}
    multipoly(std::vector<std::string> vars, const rational &c) : m_vars(std::move(vars))
    {
        if (!detail::zero(c)) {
            m_terms.emplace(monomial(m_vars.size(), 0), c);
        }
    }

    static multipoly variable(std::vector<std::string> vars, const std::string &name)
    {
        multipoly p(std::move(vars));
        const int i = p.var_index(name);
        if (i < 0) {
            throw domain_error("variable '" + name + "' is not in the variable list");
        }
        monomial m(p.m_vars.size(), 0);
        m[static_cast<std::size_t>(i)] = 1;
        p.m_terms.emplace(std::move(m), rational(1));
        return p;
    }

    const std::vector<std::string> &vars() const
    {
        return m_vars;
    }
    const term_map &terms() const
    {
        return m_terms;
    }
    std::size_t nterms() const
    {
        return m_terms.size();
    }
    int var_index(const std::string &name) const
    {
        auto it = std::find(m_vars.begin(), m_vars.end(), name);
        return it == m_vars.end() ? -1 : static_cast<int>(it - m_vars.begin());
    }

    // Adds c * m to the polynomial; m must have one entry per variable.
    void add_term(const monomial &m, const rational &c)
    {
        if (m.size() != m_vars.size()) {
            throw domain_error("monomial length does not match the variable list");
        }
        if (detail::zero(c)) {
            return;
        }
        auto [it, inserted] = m_terms.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (detail::zero(it->second)) {
                m_terms.erase(it);
            }
        }
    }

    bool is_zero() const
    {
        return m_terms.empty();
    }
    bool is_constant() const
    {
        return m_terms.empty() || (m_terms.size() == 1u && detail::total_degree(m_terms.begin()->first) == 0);
    }
    rational constant_value() const
    {
        if (!is_constant()) {
            throw domain_error("polynomial is not constant");
        }
        return m_terms.empty() ? rational(0) : m_terms.begin()->second;
    }
    // Constant coefficient.
    rational constant_term() const
    {
        auto it = m_terms.find(monomial(m_vars.size(), 0));
        return it == m_terms.end() ? rational(0) : it->second;
    }

    int degree(std::size_t idx) const
    {
        int d = m_terms.empty() ? -1 : 0;
        for (const auto &t : m_terms) {
            d = std::max(d, t.first[idx]);
        }
        return d;
    }
    // Degree in the named variable; 0 for absent variables, -1 for zero.
    int degree(const std::string &name) const
    {
        const int i = var_index(name);
        if (i < 0) {
            return m_terms.empty() ? -1 : 0;
        }
        return degree(static_cast<std::size_t>(i));
    }
    int total_degree() const
    {
        int d = m_terms.empty() ? -1 : 0;
        for (const auto &t : m_terms) {
            d = std::max(d, detail::total_degree(t.first));
        }
        return d;
    }
    bool depends_on(const std::string &name) const
    {
        return degree(name) > 0;
    }
    // Names of the variables that actually occur.
    std::vector<std::string> used_vars() const
    {
        std::vector<std::string> r;
        for (std::size_t i = 0; i < m_vars.size(); ++i) {
            if (degree(i) > 0) {
                r.push_back(m_vars[i]);
            }
        }
        return r;
    }

    // Positive rational c such that p / c has coprime integer coefficients.
    rational content() const
    {
        rational g;
        for (const auto &t : m_terms) {
            g = detail::rational_gcd(g, t.second);
        }
        return g;
    }

    std::pair<monomial, rational> lead_grlex() const
    {
        if (m_terms.empty()) {
            throw domain_error("leading term of zero polynomial");
        }
        auto best = m_terms.begin();
        for (auto it = m_terms.begin(); it != m_terms.end(); ++it) {
            if (detail::grlex_less(best->first, it->first)) {
                best = it;
            }
        }
        return *best;
    }
    // Lexicographic leading term.
    const std::pair<const monomial, rational> &lead_lex() const
    {
        if (m_terms.empty()) {
            throw domain_error("leading term of zero polynomial");
        }
        return *m_terms.rbegin();
    }

    // Re-express over another variable list, which must contain every used variable.
    multipoly with_vars(const std::vector<std::string> &vars) const
    {
        if (vars == m_vars) {
            return *this;
        }
        std::vector<int> map(m_vars.size(), -1);
        for (std::size_t i = 0; i < m_vars.size(); ++i) {
            auto it = std::find(vars.begin(), vars.end(), m_vars[i]);
            if (it != vars.end()) {
                map[i] = static_cast<int>(it - vars.begin());
            } else if (degree(i) > 0) {
                throw domain_error("variable '" + m_vars[i] + "' missing from target variable list");
            }
        }
        multipoly r(vars);
        for (const auto &[m, c] : m_terms) {
            monomial m2(vars.size(), 0);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (map[i] >= 0) {
                    m2[static_cast<std::size_t>(map[i])] = m[i];
                }
            }
            r.m_terms.emplace(std::move(m2), c);
        }
        return r;
    }

    multipoly operator-() const
    {
        multipoly r(*this);
        for (auto &t : r.m_terms) {
            t.second = -t.second;
        }
        return r;
    }
    friend multipoly operator+(const multipoly &a, const multipoly &b)
    {
        if (a.m_vars != b.m_vars) {
            auto v = union_vars(a, b);
            return a.with_vars(v) + b.with_vars(v);
        }
        multipoly r(a);
        for (const auto &[m, c] : b.m_terms) {
            r.add_term(m, c);
        }
        return r;
    }
    friend multipoly operator-(const multipoly &a, const multipoly &b)
    {
        return a + (-b);
    }
    friend multipoly operator*(const multipoly &a, const multipoly &b)
    {
        if (a.m_vars != b.m_vars) {
            auto v = union_vars(a, b);
            return a.with_vars(v) * b.with_vars(v);
        }
        multipoly r(a.m_vars);
        monomial m(a.m_vars.size());
        for (const auto &[ma, ca] : a.m_terms) {
            for (const auto &[mb, cb] : b.m_terms) {
                for (std::size_t i = 0; i < m.size(); ++i) {
                    m[i] = ma[i] + mb[i];
                }
                auto [it, inserted] = r.m_terms.emplace(m, ca * cb);
                if (!inserted) {
                    it->second += ca * cb;
                }
            }
        }
        r.drop_zeros();
        return r;
    }
    friend multipoly operator*(const rational &s, const multipoly &a)
    {
        if (detail::zero(s)) {
            return multipoly(a.m_vars);
        }
        multipoly r(a);
        for (auto &t : r.m_terms) {
            t.second *= s;
        }
        return r;
    }
    friend multipoly operator*(const multipoly &a, const rational &s)
    {
        return s * a;
    }
    multipoly &operator+=(const multipoly &o)
    {
        return *this = *this + o;
    }
    multipoly &operator-=(const multipoly &o)
    {
        return *this = *this - o;
    }
    multipoly &operator*=(const multipoly &o)
    {
        return *this = *this * o;
    }

    multipoly pow(unsigned e) const
    {
        multipoly r(m_vars, rational(1)), b(*this);
        while (e > 0u) {
            if (e & 1u) {
                r *= b;
            }
            b *= b;
            e >>= 1u;
        }
        return r;
    }

    friend bool operator==(const multipoly &a, const multipoly &b)
    {
        if (a.m_vars == b.m_vars) {
            return a.m_terms == b.m_terms;
        }
        auto v = union_vars(a, b);
        return a.with_vars(v).m_terms == b.with_vars(v).m_terms;
    }
    friend bool operator!=(const multipoly &a, const multipoly &b)
    {
        return !(a == b);
    }

    // Formal partial derivative.
    multipoly derivative(const std::string &name) const
    {
        multipoly r(m_vars);
        const int i = var_index(name);
        if (i < 0) {
            return r;
        }
        const auto idx = static_cast<std::size_t>(i);
        for (const auto &[m, c] : m_terms) {
            if (m[idx] == 0) {
                continue;
            }
            monomial m2 = m;
            --m2[idx];
            r.m_terms.emplace(std::move(m2), c * m[idx]);
        }
        return r;
    }

    // Substitutes name -> name + offset.
    multipoly shift(const std::string &name, const rational &offset) const
    {
        const int i = var_index(name);
        if (i < 0 || detail::zero(offset)) {
            return *this;
        }
        multipoly lin = variable(m_vars, name) + multipoly(m_vars, offset);
        return substitute(name, lin);
    }

    // Substitutes name -> value (a polynomial over the same variables).
    multipoly substitute(const std::string &name, const multipoly &value) const
    {
        const int i = var_index(name);
        if (i < 0) {
            return *this;
        }
        const auto idx = static_cast<std::size_t>(i);
        const multipoly v = value.with_vars(union_vars(*this, value));
        const multipoly self = with_vars(v.m_vars);
        // Horner in the substituted variable.
        const int d = degree(idx);
        std::vector<multipoly> coeffs(static_cast<std::size_t>(d) + 1u, multipoly(v.m_vars));
        for (const auto &[m, c] : self.m_terms) {
            monomial m2 = m;
            const int e = m2[idx];
            m2[idx] = 0;
            coeffs[static_cast<std::size_t>(e)].add_term(m2, c);
        }
        multipoly r(v.m_vars);
        for (int e = d; e >= 0; --e) {
            r = r * v + coeffs[static_cast<std::size_t>(e)];
        }
        return r;
    }

    multipoly substitute(const std::string &name, const rational &value) const
    {
        return substitute(name, multipoly(m_vars, value));
    }

    // Full evaluation; values given in the order of vars().
    rational evaluate(const std::vector<rational> &point) const
    {
        if (point.size() != m_vars.size()) {
            throw domain_error("evaluation point has wrong dimension");
        }
        rational r;
        for (const auto &[m, c] : m_terms) {
            rational t = c;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] != 0) {
                    t *= ctel::pow(point[i], m[i]);
                }
            }
            r += t;
        }
        return r;
    }

    // Compact text: terms in decreasing grlex order, e.g. "x^2-2*x*y+1/2".
    std::string to_string() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::vector<const std::pair<const monomial, rational> *> ts;
        for (const auto &t : m_terms) {
            ts.push_back(&t);
        }
        std::sort(ts.begin(), ts.end(), [](auto *a, auto *b) { return detail::grlex_less(b->first, a->first); });
        std::string s;
        for (auto *t : ts) {
            const rational &c = t->second;
            const bool neg = sgn(c) < 0;
            const rational a = neg ? rational(-c) : c;
            std::string mon;
            for (std::size_t i = 0; i < m_vars.size(); ++i) {
                const int e = t->first[i];
                if (e == 0) {
                    continue;
                }
                if (!mon.empty()) {
                    mon += "*";
                }
                mon += m_vars[i];
                if (e > 1) {
                    mon += "^" + std::to_string(e);
                }
            }
            if (neg) {
                s += "-";
            } else if (!s.empty()) {
                s += "+";
            }
            if (mon.empty()) {
                s += a.get_str();
            } else if (a == 1) {
                s += mon;
            } else {
                s += a.get_str() + "*" + mon;
            }
        }
        return s;
    }

    static std::vector<std::string> union_vars(const multipoly &a, const multipoly &b)
    {
        std::vector<std::string> v = a.m_vars;
        for (const auto &n : b.m_vars) {
            if (std::find(v.begin(), v.end(), n) == v.end()) {
                v.push_back(n);
            }
        }
        return v;
    }

private:
    void drop_zeros()
    {
        for (auto it = m_terms.begin(); it != m_terms.end();) {
            if (detail::zero(it->second)) {
                it = m_terms.erase(it);
            } else {
                ++it;
            }
        }
    }

    std::vector<std::string> m_vars;
    term_map m_terms;
};

inline std::ostream &operator<<(std::ostream &os, const multipoly &p)
{
    return os << p.to_string();
}

inline bool is_zero(const multipoly &p)
{
    return p.is_zero();
}

inline std::vector<std::string> union_vars(const std::vector<std::string> &a, const std::vector<std::string> &b)
{
    std::vector<std::string> v = a;
    for (const auto &n : b) {
        if (std::find(v.begin(), v.end(), n) == v.end()) {
            v.push_back(n);
        }
    }
    return v;
}

// Exact division; throws division_error when b does not divide a.
inline multipoly divide_exact(const multipoly &a, const multipoly &b)
{
    if (b.is_zero()) {
        throw division_error("polynomial division by zero");
    }
    if (a.vars() != b.vars()) {
        auto v = multipoly::union_vars(a, b);
        return divide_exact(a.with_vars(v), b.with_vars(v));
    }
    if (b.is_constant()) {
        return (rational(1) / b.constant_value()) * a;
    }
    multipoly q(a.vars()), r(a);
    const auto &[mb, cb] = b.lead_lex();
    const rational inv = rational(1) / cb;
    monomial mq(a.vars().size());
    while (!r.is_zero()) {
        const auto &[mr, cr] = r.lead_lex();
        for (std::size_t i = 0; i < mq.size(); ++i) {
            mq[i] = mr[i] - mb[i];
            if (mq[i] < 0) {
                throw division_error("polynomial division is not exact");
            }
        }
        const rational c = cr * inv;
        q.add_term(mq, c);
        monomial m(mq.size());
        for (const auto &[mt, ct] : b.terms()) {
            for (std::size_t i = 0; i < m.size(); ++i) {
                m[i] = mt[i] + mq[i];
            }
            r.add_term(m, -c * ct);
        }
    }
    return q;
}

// Univariate views.
inline qpoly to_qpoly(const multipoly &p, const std::string &var)
{
    const int idx = p.var_index(var);
    std::vector<rational> c(static_cast<std::size_t>(std::max(p.degree(var), 0)) + 1u);
    for (const auto &[m, coef] : p.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (static_cast<int>(i) != idx && m[i] != 0) {
                throw domain_error("polynomial is not univariate in '" + var + "'");
            }
        }
        c[idx < 0 ? 0u : static_cast<std::size_t>(m[static_cast<std::size_t>(idx)])] += coef;
    }
    return qpoly(std::move(c));
}

inline multipoly from_qpoly(const qpoly &p, const std::vector<std::string> &vars, const std::string &var)
{
    multipoly r(vars);
    const int idx = r.var_index(var);
    if (idx < 0 && p.degree() > 0) {
        throw domain_error("variable '" + var + "' not in variable list");
    }
    for (int e = 0; e <= p.degree(); ++e) {
        monomial m(vars.size(), 0);
        if (idx >= 0) {
            m[static_cast<std::size_t>(idx)] = e;
        }
        r.add_term(m, p.coeffs()[static_cast<std::size_t>(e)]);
    }
    return r;
}

namespace detail
{

// Primitive integer normalization with positive grlex leading coefficient.
inline multipoly primitive(const multipoly &p)
{
    if (p.is_zero()) {
        return p;
    }
    rational c = p.content();
    if (sgn(p.lead_grlex().second) < 0) {
        c = -c;
    }
    return (rational(1) / c) * p;
}

inline std::vector<multipoly> coeffs_in(const multipoly &p, std::size_t v)
{
    const int d = p.degree(v);
    std::vector<multipoly> out(static_cast<std::size_t>(std::max(d, 0)) + 1u, multipoly(p.vars()));
    if (d < 0) {
        return out;
    }
    for (const auto &[m, c] : p.terms()) {
        monomial m2 = m;
        const int e = m2[v];
        m2[v] = 0;
        out[static_cast<std::size_t>(e)].add_term(m2, c);
    }
    return out;
}

inline multipoly from_coeffs(const std::vector<multipoly> &cs, std::size_t v, const std::vector<std::string> &vars)
{
    multipoly r(vars);
    for (std::size_t e = 0; e < cs.size(); ++e) {
        for (const auto &[m, c] : cs[e].terms()) {
            monomial m2 = m;
            m2[v] = static_cast<int>(e);
            r.add_term(m2, c);
        }
    }
    return r;
}

multipoly primitive_gcd(const multipoly &a, const multipoly &b);

inline multipoly content_of(const std::vector<multipoly> &cs)
{
    multipoly g(cs.front().vars());
    for (const auto &c : cs) {
        g = primitive_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) {
            break;
        }
    }
    return g;
}

inline void trim_back(std::vector<multipoly> &v)
{
    while (!v.empty() && v.back().is_zero()) {
        v.pop_back();
    }
}

// Pseudo-remainder up to a nonzero constant factor (the caller takes primitive parts).
inline std::vector<multipoly> pseudo_rem(std::vector<multipoly> a, const std::vector<multipoly> &b)
{
    const std::size_t n = b.size() - 1u;
    const multipoly &lb = b.back();
    trim_back(a);
    while (!a.empty() && a.size() - 1u >= n) {
        const multipoly t = a.back();
        const std::size_t s = a.size() - 1u - n;
        for (auto &c : a) {
            c = c * lb;
        }
        for (std::size_t j = 0; j <= n; ++j) {
            a[s + j] -= t * b[j];
        }
        trim_back(a);
    }
    return a;
}

inline void divide_all(std::vector<multipoly> &v, const multipoly &c)
{
    if (c.is_constant()) {
        return;
    }
    for (auto &x : v) {
        x = divide_exact(x, c);
    }
}

// Bivariate polynomial as coefficients in the main variable over Q[t].
using biv = std::vector<qpoly>;

inline biv to_biv(const multipoly &p, std::size_t im, std::size_t it)
{
    std::vector<std::vector<rational>> c(static_cast<std::size_t>(std::max(p.degree(im), 0)) + 1u);
    for (const auto &[m, coef] : p.terms()) {
        auto &row = c[static_cast<std::size_t>(m[im])];
        const auto e = static_cast<std::size_t>(m[it]);
        if (row.size() <= e) {
            row.resize(e + 1u);
        }
        row[e] += coef;
    }
    biv out;
    for (auto &row : c) {
        out.emplace_back(std::move(row));
    }
    return out;
}

inline multipoly from_biv(const biv &p, std::size_t im, std::size_t it, const std::vector<std::string> &vars)
{
    multipoly r(vars);
    monomial m(vars.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (int j = 0; j <= p[i].degree(); ++j) {
            m[im] = static_cast<int>(i);
            m[it] = j;
            r.add_term(m, p[i].coeffs()[static_cast<std::size_t>(j)]);
        }
    }
    return r;
}

inline int biv_t_degree(const biv &p)
{
    int d = 0;
    for (const auto &c : p) {
        d = std::max(d, c.degree());
    }
    return d;
}

inline qpoly biv_eval(const biv &p, const rational &t)
{
    std::vector<rational> c;
    c.reserve(p.size());
    for (const auto &x : p) {
        c.push_back(x(t));
    }
    return qpoly(std::move(c));
}

// Newton interpolation through (x_i, y_i).
inline qpoly newton_interpolate(const std::vector<rational> &x, std::vector<rational> y)
{
    const std::size_t n = x.size();
    for (std::size_t lvl = 1; lvl < n; ++lvl) {
        for (std::size_t i = n - 1; i >= lvl; --i) {
            y[i] = (y[i] - y[i - 1]) / (x[i] - x[i - lvl]);
        }
    }
    qpoly r;
    const qpoly t = qpoly::var();
    for (std::size_t i = n; i-- > 0;) {
        r = r * (t - qpoly(x[i])) + qpoly(y[i]);
    }
    return r;
}

inline bool divides(const multipoly &d, const multipoly &p)
{
    try {
        divide_exact(p, d);
        return true;
    }
    catch (const division_error &) {
        return false;
    }
}

// gcd of a and b in exactly the two variables im, it, computed from
// univariate gcds at t = 0, 1, -1, 2, ... and interpolation in t. Points where
// the gcd degree is not minimal are discarded; the candidate is confirmed by
// trial division. Returns the zero polynomial when no candidate is confirmed
// within the point budget.
inline multipoly bivariate_gcd(const multipoly &a, const multipoly &b, std::size_t im, std::size_t it)
{
    const auto &vars = a.vars();
    biv pa = to_biv(a, im, it), pb = to_biv(b, im, it);
    qpoly ca, cb;
    for (const auto &c : pa) {
        ca = gcd(ca, c);
    }
    for (const auto &c : pb) {
        cb = gcd(cb, c);
    }
    for (auto &c : pa) {
        c = div_exact(c, ca);
    }
    for (auto &c : pb) {
        c = div_exact(c, cb);
    }
    const qpoly cg = gcd(ca, cb);
    const qpoly gamma = gcd(pa.back(), pb.back());
    const int bound = std::min(biv_t_degree(pa), biv_t_degree(pb)) + gamma.degree();
    const multipoly ma = from_biv(pa, im, it, vars), mb = from_biv(pb, im, it, vars);
    std::vector<rational> xs;
    std::vector<qpoly> gs;
    int dmin = static_cast<int>(std::min(pa.size(), pb.size()));
    const int budget = bound + 64;
    long next = 0;
    for (int tries = 0; tries < budget + 64; ++tries) {
        const rational t(next);
        next = next > 0 ? -next : 1 - next;
        if (is_zero(pa.back()(t)) || is_zero(pb.back()(t))) {
            continue;
        }
        const qpoly g = gcd(biv_eval(pa, t), biv_eval(pb, t));
        if (g.degree() > dmin) {
            continue;
        }
        if (g.degree() == 0) {
            return from_biv(biv{cg}, im, it, vars);
        }
        if (g.degree() < dmin) {
            dmin = g.degree();
            xs.clear();
            gs.clear();
        }
        xs.push_back(t);
        gs.push_back(gamma(t) * g);
        if (static_cast<int>(xs.size()) < bound + 1) {
            continue;
        }
        biv h;
        for (int k = 0; k <= dmin; ++k) {
            std::vector<rational> ys;
            ys.reserve(gs.size());
            for (const auto &g1 : gs) {
                ys.push_back(g1.coeff(k));
            }
            h.push_back(newton_interpolate(xs, std::move(ys)));
        }
        qpoly ch;
        for (const auto &c : h) {
            ch = gcd(ch, c);
        }
        for (auto &c : h) {
            c = div_exact(c, ch);
        }
        const multipoly mh = from_biv(h, im, it, vars);
        if (divides(mh, ma) && divides(mh, mb)) {
            for (auto &c : h) {
                c = c * cg;
            }
            return from_biv(h, im, it, vars);
        }
        if (static_cast<int>(xs.size()) > budget) {
            break;
        }
    }
    return multipoly(vars);
}

// gcd of two polynomials over the same variables, normalized as in primitive().
inline multipoly primitive_gcd(const multipoly &a, const multipoly &b)
{
    if (a.is_zero()) {
        return primitive(b);
    }
    if (b.is_zero()) {
        return primitive(a);
    }
    const auto &vars = a.vars();
    const multipoly one(vars, rational(1));
    if (a.is_constant() || b.is_constant()) {
        return one;
    }
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (a.degree(i) > 0 || b.degree(i) > 0) {
            used.push_back(i);
        }
    }
    if (used.size() == 1u) {
        const std::string &v = vars[used.front()];
        return primitive(from_qpoly(gcd(to_qpoly(a, v), to_qpoly(b, v)), vars, v));
    }
    if (used.size() == 2u) {
        const std::size_t im = a.degree(used[0]) + b.degree(used[0]) >= a.degree(used[1]) + b.degree(used[1])
                                   ? used[0]
                                   : used[1];
        const std::size_t it = im == used[0] ? used[1] : used[0];
        if (a.degree(im) > 0 && b.degree(im) > 0) {
            const multipoly g = bivariate_gcd(a, b, im, it);
            if (!g.is_zero()) {
                return primitive(g);
            }
        }
    }
    // Recurse on the variable of smallest degree: short remainder sequences.
    std::size_t v = used.front();
    for (auto i : used) {
        if (std::max(a.degree(i), b.degree(i)) < std::max(a.degree(v), b.degree(v))) {
            v = i;
        }
    }
    if (a.degree(v) == 0) {
        return primitive_gcd(a, content_of(coeffs_in(b, v)));
    }
    if (b.degree(v) == 0) {
        return primitive_gcd(content_of(coeffs_in(a, v)), b);
    }
    std::vector<multipoly> pa = coeffs_in(a, v), pb = coeffs_in(b, v);
    const multipoly ca = content_of(pa), cb = content_of(pb);
    divide_all(pa, ca);
    divide_all(pb, cb);
    if (pa.size() < pb.size()) {
        std::swap(pa, pb);
    }
    std::vector<multipoly> g;
    while (true) {
        std::vector<multipoly> r = pseudo_rem(pa, pb);
        if (r.empty()) {
            g = std::move(pb);
            break;
        }
        if (r.size() == 1u) {
            g = {one};
            break;
        }
        divide_all(r, content_of(r));
        pa = std::move(pb);
        pb = std::move(r);
    }
    divide_all(g, content_of(g));
    return primitive(primitive_gcd(ca, cb) * from_coeffs(g, v, vars));
}

inline multipoly primitive_gcd_aligned(const multipoly &a, const multipoly &b)
{
    if (a.vars() != b.vars()) {
        const auto v = multipoly::union_vars(a, b);
        return primitive_gcd(a.with_vars(v), b.with_vars(v));
    }
    return primitive_gcd(a, b);
}

} // namespace detail

// Polynomial gcd with the content convention gcd(6x, 4x^2) = 2x: the
// rational gcd of the contents times the primitive gcd, leading
// coefficient (grlex) positive.
inline multipoly poly_gcd(const multipoly &a, const multipoly &b)
{
    if (a.is_zero() && b.is_zero()) {
        throw domain_error("gcd(0, 0) is undefined");
    }
    if (a.vars() != b.vars()) {
        auto v = multipoly::union_vars(a, b);
        return poly_gcd(a.with_vars(v), b.with_vars(v));
    }
    return detail::rational_gcd(a.content(), b.content()) * detail::primitive_gcd(a, b);
}

// q / gcd(q, dq/dvar).
inline multipoly squarefree_part(const multipoly &q, const std::string &var)
{
    if (q.is_zero()) {
        throw domain_error("squarefree part of zero");
    }
    return divide_exact(q, poly_gcd(q, q.derivative(var)));
}

} // namespace ctel

#endif
