#ifndef CTEL_EXACT_UFRAC_HPP
#define CTEL_EXACT_UFRAC_HPP

#include <string>
#include <utility>

#include <ctel/errors.hpp>
#include <ctel/exact/multipoly.hpp>
#include <ctel/exact/number.hpp>
#include <ctel/exact/upoly.hpp>

namespace ctel
{

// Univariate rational function over a field K, kept reduced with a monic
// denominator. Equality is structural.
template <typename K>
class ufrac
{
public:
    using coeff_type = K;
    using poly_type = upoly<K>;

    ufrac() : m_den(K(1)) {}
    ufrac(int c) : m_num(K(c)), m_den(K(1)) {}
    explicit ufrac(K c) : m_num(std::move(c)), m_den(K(1)) {}
    explicit ufrac(poly_type num) : m_num(std::move(num)), m_den(K(1)) {}
    ufrac(poly_type num, poly_type den) : m_num(std::move(num)), m_den(std::move(den))
    {
        normalize();
    }

    const poly_type &num() const
    {
        return m_num;
    }
    const poly_type &den() const
    {
        return m_den;
    }
    bool is_zero() const
    {
        return m_num.is_zero();
    }
    bool is_polynomial() const
    {
        return m_den.degree() == 0;
    }
    bool is_constant() const
    {
        return m_den.degree() == 0 && m_num.degree() <= 0;
    }
    K constant_value() const
    {
        return m_num.coeff(0);
    }

    friend bool operator==(const ufrac &a, const ufrac &b)
    {
        return a.m_num == b.m_num && a.m_den == b.m_den;
    }
    friend bool operator!=(const ufrac &a, const ufrac &b)
    {
        return !(a == b);
    }

    ufrac operator-() const
    {
        ufrac r(*this);
        r.m_num = -r.m_num;
        return r;
    }
    // Common factors of the sum can only come from g = gcd of the
    // denominators, so only g is searched.
    friend ufrac operator+(const ufrac &a, const ufrac &b)
    {
        if (a.is_zero()) {
            return b;
        }
        if (b.is_zero()) {
            return a;
        }
        poly_type g = a.m_den == b.m_den ? a.m_den : gcd(a.m_den, b.m_den);
        const poly_type bq = div_exact(b.m_den, g);
        ufrac r;
        r.m_num = a.m_num * bq + b.m_num * div_exact(a.m_den, g);
        r.m_den = a.m_den * bq;
        if (r.m_num.is_zero()) {
            r.m_den = poly_type(K(1));
            return r;
        }
        while (g.degree() > 0) {
            const poly_type t = gcd(r.m_num, g);
            if (t.degree() <= 0) {
                break;
            }
            r.m_num = div_exact(r.m_num, t);
            r.m_den = div_exact(r.m_den, t);
            g = div_exact(g, t);
        }
        r.make_monic();
        return r;
    }
    friend ufrac operator-(const ufrac &a, const ufrac &b)
    {
        return a + (-b);
    }
    friend ufrac operator*(const ufrac &a, const ufrac &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return ufrac{};
        }
        // Cross-cancel first to keep the products small.
        const poly_type g1 = gcd(a.m_num, b.m_den);
        const poly_type g2 = gcd(b.m_num, a.m_den);
        ufrac r;
        r.m_num = div_exact(a.m_num, g1) * div_exact(b.m_num, g2);
        r.m_den = div_exact(a.m_den, g2) * div_exact(b.m_den, g1);
        r.make_monic();
        return r;
    }
    friend ufrac operator/(const ufrac &a, const ufrac &b)
    {
        return a * b.inverse();
    }
    ufrac &operator+=(const ufrac &o)
    {
        return *this = *this + o;
    }
    ufrac &operator-=(const ufrac &o)
    {
        return *this = *this - o;
    }
    ufrac &operator*=(const ufrac &o)
    {
        return *this = *this * o;
    }
    ufrac &operator/=(const ufrac &o)
    {
        return *this = *this / o;
    }

    ufrac inverse() const
    {
        if (is_zero()) {
            throw division_error("inverse of zero rational function");
        }
        ufrac r;
        r.m_num = m_den;
        r.m_den = m_num;
        r.make_monic();
        return r;
    }

    // With g = gcd(d, d') and s = d/g the quotient rule is already reduced.
    ufrac derivative() const
    {
        if (m_den.degree() <= 0) {
            ufrac r;
            r.m_num = m_num.derivative();
            r.m_den = m_den;
            r.make_monic();
            return r;
        }
        const poly_type dd = m_den.derivative();
        const poly_type g = gcd(m_den, dd);
        const poly_type sq = div_exact(m_den, g);
        ufrac r;
        r.m_num = m_num.derivative() * sq - m_num * div_exact(dd, g);
        r.m_den = m_den * sq;
        r.make_monic();
        return r;
    }

    // Skips the gcd for a pair already known to be coprime.
    static ufrac from_coprime(poly_type num, poly_type den)
    {
        if (den.is_zero()) {
            throw division_error("zero denominator");
        }
        ufrac r;
        r.m_num = std::move(num);
        r.m_den = std::move(den);
        r.make_monic();
        return r;
    }

    // f(t + s)
    ufrac shift(const K &s) const
    {
        ufrac r;
        r.m_num = m_num.shift(s);
        r.m_den = m_den.shift(s);
        return r;
    }

    // Evaluation; throws division_error at a pole.
    K operator()(const K &t) const
    {
        const K d = m_den(t);
        if (detail::zero(d)) {
            throw division_error("evaluation at a pole");
        }
        return m_num(t) / d;
    }

    // Applies a field endomorphism of K coefficient-wise.
    template <typename F>
    ufrac map_coeffs(F &&f) const
    {
        return ufrac(m_num.map_coeffs(f), m_den.map_coeffs(f));
    }

    ufrac pow(long e) const
    {
        if (e < 0) {
            return inverse().pow(-e);
        }
        ufrac r;
        r.m_num = m_num.pow(static_cast<unsigned>(e));
        r.m_den = m_den.pow(static_cast<unsigned>(e));
        return r;
    }

private:
    void make_monic()
    {
        if (m_num.is_zero()) {
            m_den = poly_type(K(1));
            return;
        }
        const K l = m_den.lc();
        if (l != K(1)) {
            const K inv = K(1) / l;
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
            m_den = poly_type(K(1));
            return;
        }
        if (m_den.degree() > 0) {
            const poly_type g = gcd(m_num, m_den);
            if (g.degree() > 0) {
                m_num = div_exact(m_num, g);
                m_den = div_exact(m_den, g);
            }
        }
        make_monic();
    }

    poly_type m_num;
    poly_type m_den;
};

template <typename K>
bool is_zero(const ufrac<K> &f)
{
    return f.is_zero();
}

// Q(t): the coefficient field used for parameters (x in Q(x)[y], n in Q(n)[k]).
using qfrac = ufrac<rational>;

namespace detail
{

inline const std::vector<std::string> &qfrac_poly_vars()
{
    static const std::vector<std::string> v{"t", "y"};
    return v;
}

// p over Q(t) times a common denominator, as a polynomial in (t, y).
inline multipoly cleared_bivariate(const upoly<qfrac> &p)
{
    qpoly l(rational(1));
    for (const auto &c : p.coeffs()) {
        l = lcm(l, c.den());
    }
    multipoly r(qfrac_poly_vars());
    for (int e = 0; e <= p.degree(); ++e) {
        const qfrac &c = p.coeffs()[static_cast<std::size_t>(e)];
        const qpoly cp = c.num() * div_exact(l, c.den());
        for (int j = 0; j <= cp.degree(); ++j) {
            r.add_term(monomial{j, e}, cp.coeffs()[static_cast<std::size_t>(j)]);
        }
    }
    return r;
}

inline upoly<qfrac> from_bivariate(const multipoly &p)
{
    const int d = std::max(p.degree(std::size_t{1}), 0);
    std::vector<std::vector<rational>> c(static_cast<std::size_t>(d) + 1u);
    for (const auto &[m, coef] : p.terms()) {
        auto &row = c[static_cast<std::size_t>(m[1])];
        if (row.size() <= static_cast<std::size_t>(m[0])) {
            row.resize(static_cast<std::size_t>(m[0]) + 1u);
        }
        row[static_cast<std::size_t>(m[0])] += coef;
    }
    std::vector<qfrac> out;
    for (auto &row : c) {
        out.emplace_back(qpoly(std::move(row)));
    }
    return upoly<qfrac>(std::move(out));
}

} // namespace detail

// Over Q(t) the Euclidean remainder sequence blows up; the gcd is taken in
// Q[t, y] instead, where it agrees up to a unit of Q(t).
template <>
inline upoly<qfrac> gcd<qfrac>(upoly<qfrac> a, upoly<qfrac> b)
{
    if (a.is_zero()) {
        return b.monic();
    }
    if (b.is_zero()) {
        return a.monic();
    }
    if (a.degree() == 0 || b.degree() == 0) {
        return upoly<qfrac>(qfrac(1));
    }
    const multipoly g = detail::primitive_gcd(detail::cleared_bivariate(a), detail::cleared_bivariate(b));
    return detail::from_bivariate(g).monic();
}

inline std::string to_string(const qfrac &f, const std::string &var)
{
    if (f.is_polynomial()) {
        return to_string(f.num(), var);
    }
    return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

// d/dt of the coefficients of a polynomial over Q(t).
inline upoly<qfrac> coeff_derivative(const upoly<qfrac> &p)
{
    return p.map_coeffs([](const qfrac &c) { return c.derivative(); });
}

// d/dt of an element of Q(t)(y), t being the parameter.
// As for derivative(): only factors of g = gcd(d, d_t) can cancel, and
// those free of t are the only ones that survive into the result.
inline ufrac<qfrac> param_derivative(const ufrac<qfrac> &f)
{
    const auto &n = f.num();
    const auto &d = f.den();
    if (d.degree() <= 0) {
        return ufrac<qfrac>(coeff_derivative(n));
    }
    const upoly<qfrac> dd = coeff_derivative(d);
    if (dd.is_zero()) {
        return ufrac<qfrac>::from_coprime(coeff_derivative(n), d);
    }
    upoly<qfrac> g = gcd(d, dd);
    const upoly<qfrac> sq = div_exact(d, g);
    upoly<qfrac> num = coeff_derivative(n) * sq - n * div_exact(dd, g);
    upoly<qfrac> den = d * sq;
    while (g.degree() > 0 && !num.is_zero()) {
        const upoly<qfrac> t = gcd(num, g);
        if (t.degree() <= 0) {
            break;
        }
        num = div_exact(num, t);
        den = div_exact(den, t);
        g = div_exact(g, t);
    }
    return ufrac<qfrac>::from_coprime(std::move(num), std::move(den));
}

// t -> t + s in the coefficients.
inline ufrac<qfrac> param_shift(const ufrac<qfrac> &f, const rational &s)
{
    return f.map_coeffs([&s](const qfrac &c) { return c.shift(s); });
}

inline upoly<qfrac> param_shift(const upoly<qfrac> &p, const rational &s)
{
    return p.map_coeffs([&s](const qfrac &c) { return c.shift(s); });
}

} // namespace ctel

#endif
