#ifndef CTEL_EXACT_RATIONAL_FUNCTION_HPP
#define CTEL_EXACT_RATIONAL_FUNCTION_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/multipoly.hpp>
#include <ctel/exact/number.hpp>
#include <ctel/exact/ufrac.hpp>
#include <ctel/exact/upoly.hpp>

namespace ctel
{

// Quotient of multivariate polynomials in canonical form: gcd(num, den) = 1,
// den primitive over Z with positive leading coefficient in grlex order.
class rational_function
{
public:
    rational_function() : m_den(std::vector<std::string>{}, rational(1)) {}
    explicit rational_function(std::vector<std::string> vars)
        : m_num(vars), m_den(std::move(vars), rational(1))
    {
    }
    rational_function(std::vector<std::string> vars, const rational &c)
        : m_num(vars, c), m_den(std::move(vars), rational(1))
    {
    }
    explicit rational_function(multipoly num) : m_num(std::move(num)), m_den(m_num.vars(), rational(1))
    {
        normalize();
    }
    rational_function(multipoly num, multipoly den)
    {
        auto v = multipoly::union_vars(num, den);
        m_num = num.with_vars(v);
        m_den = den.with_vars(v);
        normalize();
    }

    // For a pair known to be coprime: skips the gcd.
    static rational_function from_coprime(const multipoly &num, const multipoly &den)
    {
        if (den.is_zero()) {
            throw division_error("zero denominator");
        }
        const auto v = multipoly::union_vars(num, den);
        return from_reduced(num.with_vars(v), den.with_vars(v));
    }

    static rational_function variable(const std::vector<std::string> &vars, const std::string &name)
    {
        return rational_function(multipoly::variable(vars, name));
    }

    const std::vector<std::string> &vars() const
    {
        return m_num.vars();
    }
    const multipoly &num() const
    {
        return m_num;
    }
    const multipoly &den() const
    {
        return m_den;
    }
    bool is_zero() const
    {
        return m_num.is_zero();
    }
    bool is_polynomial() const
    {
        return m_den.is_constant();
    }
    bool is_constant() const
    {
        return m_den.is_constant() && m_num.is_constant();
    }
    rational constant_value() const
    {
        return m_num.constant_value() / m_den.constant_value();
    }
    bool depends_on(const std::string &v) const
    {
        return m_num.depends_on(v) || m_den.depends_on(v);
    }
    std::vector<std::string> used_vars() const
    {
        std::vector<std::string> r;
        for (const auto &v : vars()) {
            if (depends_on(v)) {
                r.push_back(v);
            }
        }
        return r;
    }

    rational_function with_vars(const std::vector<std::string> &vars) const
    {
        rational_function r;
        r.m_num = m_num.with_vars(vars);
        r.m_den = m_den.with_vars(vars);
        r.normalize();
        return r;
    }

    rational_function operator-() const
    {
        rational_function r(*this);
        r.m_num = -r.m_num;
        return r;
    }
    // Any factor shared by the new numerator and denominator of a sum divides
    // gcd(den a, den b); products only need the cross cancellations.
    friend rational_function operator+(const rational_function &a, const rational_function &b)
    {
        if (a.is_zero()) {
            return b.m_num.vars() == a.m_num.vars() ? b : b.with_vars(union_vars(a.vars(), b.vars()));
        }
        if (b.is_zero()) {
            return b.m_num.vars() == a.m_num.vars() ? a : a.with_vars(union_vars(a.vars(), b.vars()));
        }
        const multipoly g = detail::primitive_gcd_aligned(a.m_den, b.m_den);
        const multipoly ad = divide_exact(a.m_den, g), bd = divide_exact(b.m_den, g);
        multipoly num = a.m_num * bd + b.m_num * ad;
        multipoly den = ad * bd * g;
        multipoly rest = g;
        while (!num.is_zero() && !rest.is_constant()) {
            const multipoly t = detail::primitive_gcd_aligned(num, rest);
            if (t.is_constant()) {
                break;
            }
            num = divide_exact(num, t);
            den = divide_exact(den, t);
            rest = divide_exact(rest, t);
        }
        return from_reduced(std::move(num), std::move(den));
    }
    friend rational_function operator-(const rational_function &a, const rational_function &b)
    {
        return a + (-b);
    }
    friend rational_function operator*(const rational_function &a, const rational_function &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return rational_function(union_vars(a.vars(), b.vars()));
        }
        const multipoly g1 = detail::primitive_gcd_aligned(a.m_num, b.m_den);
        const multipoly g2 = detail::primitive_gcd_aligned(b.m_num, a.m_den);
        return from_reduced(divide_exact(a.m_num, g1) * divide_exact(b.m_num, g2),
                            divide_exact(a.m_den, g2) * divide_exact(b.m_den, g1));
    }
    friend rational_function operator/(const rational_function &a, const rational_function &b)
    {
        if (b.is_zero()) {
            throw division_error("division by zero rational function");
        }
        rational_function inv;
        inv.m_num = b.m_den;
        inv.m_den = b.m_num;
        inv.fix_sign();
        return a * inv;
    }
    rational_function &operator+=(const rational_function &o)
    {
        return *this = *this + o;
    }
    rational_function &operator-=(const rational_function &o)
    {
        return *this = *this - o;
    }
    rational_function &operator*=(const rational_function &o)
    {
        return *this = *this * o;
    }
    rational_function &operator/=(const rational_function &o)
    {
        return *this = *this / o;
    }

    // Equal as elements of the fraction field.
    friend bool operator==(const rational_function &a, const rational_function &b)
    {
        return a.m_num == b.m_num && a.m_den == b.m_den;
    }
    friend bool operator!=(const rational_function &a, const rational_function &b)
    {
        return !(a == b);
    }

    rational_function pow(long e) const
    {
        if (e < 0) {
            return (rational_function(vars(), rational(1)) / *this).pow(-e);
        }
        rational_function r;
        r.m_num = m_num.pow(static_cast<unsigned>(e));
        r.m_den = m_den.pow(static_cast<unsigned>(e));
        return r;
    }

    rational_function derivative(const std::string &v) const
    {
        if (!depends_on(v)) {
            return rational_function(vars());
        }
        if (m_den.is_constant()) {
            return from_reduced(m_num.derivative(v), m_den);
        }
        // With g = gcd(d, d') and s = d/g the quotient rule can only share
        // factors of d that are free of v; all of those divide g.
        const multipoly dd = m_den.derivative(v);
        multipoly g = detail::primitive_gcd(m_den, dd);
        const multipoly sq = divide_exact(m_den, g);
        multipoly num = m_num.derivative(v) * sq - m_num * divide_exact(dd, g);
        multipoly den = m_den * sq;
        while (!g.is_constant()) {
            const multipoly t = detail::primitive_gcd(num, g);
            if (t.is_constant()) {
                break;
            }
            num = divide_exact(num, t);
            den = divide_exact(den, t);
            g = divide_exact(g, t);
        }
        return from_reduced(std::move(num), std::move(den));
    }

    // v -> v + offset
    rational_function shift(const std::string &v, const rational &offset) const
    {
        if (!depends_on(v) || detail::zero(offset)) {
            return *this;
        }
        return from_reduced(m_num.shift(v, offset), m_den.shift(v, offset));
    }

    rational_function substitute(const std::string &v, const rational &value) const
    {
        if (!depends_on(v)) {
            return *this;
        }
        multipoly d = m_den.substitute(v, value);
        if (d.is_zero()) {
            throw division_error("substitution " + v + " = " + value.get_str() + " hits a pole");
        }
        return rational_function(m_num.substitute(v, value), d);
    }

    // v -> value, value being a rational function (variables are merged).
    rational_function substitute(const std::string &v, const rational_function &value) const
    {
        if (!depends_on(v)) {
            return *this;
        }
        const auto all = union_vars(vars(), value.vars());
        const rational_function val = value.with_vars(all);
        const rational_function self = with_vars(all);
        return eval_poly(self.m_num, v, val) / eval_poly(self.m_den, v, val);
    }

    // Full evaluation in the order of vars(); throws division_error at a pole.
    rational evaluate(const std::vector<rational> &point) const
    {
        const rational d = m_den.evaluate(point);
        if (detail::zero(d)) {
            throw division_error("evaluation at a pole");
        }
        return m_num.evaluate(point) / d;
    }

    std::string to_string() const
    {
        if (m_den.is_constant()) {
            const rational c = m_den.constant_value();
            if (c == 1) {
                return m_num.to_string();
            }
            return rational_function(rational(1) / c * m_num).to_string();
        }
        std::string n = m_num.to_string();
        if (m_num.nterms() > 1u) {
            n = "(" + n + ")";
        }
        std::string d = m_den.to_string();
        const bool bare_power = m_den.nterms() == 1u && m_den.terms().begin()->second == 1
                                && m_den.used_vars().size() == 1u;
        if (!bare_power) {
            d = "(" + d + ")";
        }
        return n + "/" + d;
    }

private:
    static rational_function eval_poly(const multipoly &p, const std::string &v, const rational_function &val)
    {
        const int idx = p.var_index(v);
        const auto ci = detail::coeffs_in(p, static_cast<std::size_t>(idx));
        rational_function r(p.vars());
        for (auto it = ci.rbegin(); it != ci.rend(); ++it) {
            r = r * val + rational_function(*it);
        }
        return r;
    }

    // num/den already coprime; only the constant normalization is applied.
    static rational_function from_reduced(multipoly num, multipoly den)
    {
        rational_function r;
        r.m_num = std::move(num);
        r.m_den = std::move(den);
        if (r.m_num.is_zero()) {
            r.m_den = multipoly(r.m_num.vars(), rational(1));
            return r;
        }
        r.fix_sign();
        return r;
    }

    void fix_sign()
    {
        rational c = m_den.content();
        if (sgn(m_den.lead_grlex().second) < 0) {
            c = -c;
        }
        if (c != 1) {
            const rational inv = rational(1) / c;
            m_num = inv * m_num;
            m_den = inv * m_den;
        }
    }

    void normalize()
    {
        if (m_den.is_zero()) {
            throw division_error("zero denominator");
        }
        if (m_num.is_zero()) {
            m_den = multipoly(m_num.vars(), rational(1));
            return;
        }
        if (!m_den.is_constant()) {
            const multipoly g = detail::primitive_gcd_aligned(m_num, m_den);
            if (!g.is_constant()) {
                m_num = divide_exact(m_num, g);
                m_den = divide_exact(m_den, g);
            }
        }
        fix_sign();
    }

    multipoly m_num;
    multipoly m_den;
};

inline std::ostream &operator<<(std::ostream &os, const rational_function &f)
{
    return os << f.to_string();
}

inline bool is_zero(const rational_function &f)
{
    return f.is_zero();
}

// ---------------------------------------------------------------------------
// Conversions to the "polynomial in main over Q(param)" representation used by
// the summation and integration algorithms. The parameter may be absent from
// the input, in which case coefficients are constants.

inline void require_vars_within(const rational_function &f, const std::vector<std::string> &allowed)
{
    for (const auto &v : f.used_vars()) {
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
            throw unsupported_error("unexpected variable '" + v + "'");
        }
    }
}

inline upoly<qfrac> to_upoly(const multipoly &p, const std::string &main, const std::string &param)
{
    const int im = p.var_index(main), ip = p.var_index(param);
    for (const auto &v : p.used_vars()) {
        if (v != main && v != param) {
            throw unsupported_error("unexpected variable '" + v + "'");
        }
    }
    const int d = std::max(p.degree(main), 0);
    std::vector<std::vector<rational>> c(static_cast<std::size_t>(d) + 1u);
    for (const auto &[m, coef] : p.terms()) {
        const int em = im < 0 ? 0 : m[static_cast<std::size_t>(im)];
        const int ep = ip < 0 ? 0 : m[static_cast<std::size_t>(ip)];
        auto &row = c[static_cast<std::size_t>(em)];
        if (row.size() <= static_cast<std::size_t>(ep)) {
            row.resize(static_cast<std::size_t>(ep) + 1u);
        }
        row[static_cast<std::size_t>(ep)] += coef;
    }
    std::vector<qfrac> out;
    out.reserve(c.size());
    for (auto &row : c) {
        out.emplace_back(qpoly(std::move(row)));
    }
    return upoly<qfrac>(std::move(out));
}

inline ufrac<qfrac> to_ufrac(const rational_function &f, const std::string &main, const std::string &param)
{
    return ufrac<qfrac>::from_coprime(to_upoly(f.num(), main, param), to_upoly(f.den(), main, param));
}

// Clears the parameter denominators: returns a polynomial over `vars` and the
// factor L(param) it was multiplied with.
inline std::pair<multipoly, multipoly> clear_upoly(const upoly<qfrac> &p, const std::vector<std::string> &vars,
                                                   const std::string &main, const std::string &param)
{
    qpoly l(rational(1));
    for (const auto &c : p.coeffs()) {
        l = lcm(l, c.den());
    }
    multipoly r(vars);
    const int im = r.var_index(main), ip = r.var_index(param);
    for (int e = 0; e <= p.degree(); ++e) {
        const qfrac &c = p.coeffs()[static_cast<std::size_t>(e)];
        const qpoly cp = c.num() * div_exact(l, c.den());
        for (int j = 0; j <= cp.degree(); ++j) {
            monomial m(vars.size(), 0);
            if (e > 0) {
                if (im < 0) {
                    throw domain_error("variable '" + main + "' missing");
                }
                m[static_cast<std::size_t>(im)] = e;
            }
            if (j > 0) {
                if (ip < 0) {
                    throw domain_error("variable '" + param + "' missing");
                }
                m[static_cast<std::size_t>(ip)] = j;
            }
            r.add_term(m, cp.coeffs()[static_cast<std::size_t>(j)]);
        }
    }
    return {std::move(r), from_qpoly(l, vars, param)};
}

inline rational_function from_upoly(const upoly<qfrac> &p, const std::vector<std::string> &vars,
                                     const std::string &main, const std::string &param)
{
    auto [num, l] = clear_upoly(p, vars, main, param);
    return rational_function(std::move(num), std::move(l));
}

namespace detail
{

// p = s * q with s in Q(t) and q having coprime polynomial coefficients.
inline std::pair<qfrac, upoly<qfrac>> split_content(const upoly<qfrac> &p)
{
    qpoly l(rational(1));
    for (const auto &c : p.coeffs()) {
        l = lcm(l, c.den());
    }
    std::vector<qpoly> cleared;
    qpoly g;
    for (const auto &c : p.coeffs()) {
        cleared.push_back(c.num() * div_exact(l, c.den()));
        g = gcd(g, cleared.back());
    }
    std::vector<qfrac> q;
    for (const auto &c : cleared) {
        q.emplace_back(div_exact(c, g));
    }
    return {qfrac(g, l), upoly<qfrac>(std::move(q))};
}

} // namespace detail

// Numerator and denominator are coprime over Q(t); once their Q(t)-contents
// are split off, the remaining cancellation is univariate.
inline rational_function from_ufrac(const ufrac<qfrac> &f, const std::vector<std::string> &vars,
                                    const std::string &main, const std::string &param)
{
    if (f.is_zero()) {
        return rational_function(vars);
    }
    const auto [sn, pn] = detail::split_content(f.num());
    const auto [sd, pd] = detail::split_content(f.den());
    const qfrac s = sn / sd;
    const multipoly n = clear_upoly(pn, vars, main, param).first;
    const multipoly d = clear_upoly(pd, vars, main, param).first;
    return rational_function::from_coprime(n * from_qpoly(s.num(), vars, param),
                                           d * from_qpoly(s.den(), vars, param));
}

inline qfrac to_qfrac(const rational_function &f, const std::string &var)
{
    return qfrac(to_qpoly(f.num(), var), to_qpoly(f.den(), var));
}

inline rational_function from_qfrac(const qfrac &f, const std::vector<std::string> &vars, const std::string &var)
{
    return rational_function(from_qpoly(f.num(), vars, var), from_qpoly(f.den(), vars, var));
}

} // namespace ctel

#endif
