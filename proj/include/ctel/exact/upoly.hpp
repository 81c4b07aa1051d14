#ifndef CTEL_EXACT_UPOLY_HPP
#define CTEL_EXACT_UPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/number.hpp>

namespace ctel
{

// Dense univariate polynomial over a field K.
//
// K must be default-constructible to zero, constructible from int and
// provide the field operations plus a free is_zero(const K &).
// The coefficient vector never has trailing zeros, so the zero
// polynomial is the empty vector and has degree -1.
template <typename K>
class upoly
{
public:
    using coeff_type = K;

    upoly() = default;
    explicit upoly(K c)
    {
        if (!detail::zero(c)) {
            m_c.push_back(std::move(c));
        }
    }
    explicit upoly(std::vector<K> c) : m_c(std::move(c))
    {
        trim();
    }

    static upoly monomial(K c, int d)
    {
        if (detail::zero(c)) {
            return upoly{};
        }
        std::vector<K> v(static_cast<std::size_t>(d) + 1u);
        v.back() = std::move(c);
        return upoly(std::move(v));
    }
    // The polynomial "t".
    static upoly var()
    {
        return monomial(K(1), 1);
    }

    int degree() const
    {
        return static_cast<int>(m_c.size()) - 1;
    }
    bool is_zero() const
    {
        return m_c.empty();
    }
    bool is_constant() const
    {
        return m_c.size() <= 1u;
    }
    const std::vector<K> &coeffs() const
    {
        return m_c;
    }
    K coeff(int i) const
    {
        if (i < 0 || i > degree()) {
            return K{};
        }
        return m_c[static_cast<std::size_t>(i)];
    }
    const K &lc() const
    {
        return m_c.back();
    }
    K trailing() const
    {
        return coeff(0);
    }

    friend bool operator==(const upoly &a, const upoly &b)
    {
        return a.m_c == b.m_c;
    }
    friend bool operator!=(const upoly &a, const upoly &b)
    {
        return !(a == b);
    }

    upoly operator-() const
    {
        upoly r(*this);
        for (auto &c : r.m_c) {
            c = -c;
        }
        return r;
    }
    upoly &operator+=(const upoly &o)
    {
        if (o.m_c.size() > m_c.size()) {
            m_c.resize(o.m_c.size());
        }
        for (std::size_t i = 0; i < o.m_c.size(); ++i) {
            m_c[i] += o.m_c[i];
        }
        trim();
        return *this;
    }
    upoly &operator-=(const upoly &o)
    {
        if (o.m_c.size() > m_c.size()) {
            m_c.resize(o.m_c.size());
        }
        for (std::size_t i = 0; i < o.m_c.size(); ++i) {
            m_c[i] -= o.m_c[i];
        }
        trim();
        return *this;
    }
    friend upoly operator+(upoly a, const upoly &b)
    {
        return a += b;
    }
    friend upoly operator-(upoly a, const upoly &b)
    {
        return a -= b;
    }
    friend upoly operator*(const upoly &a, const upoly &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return upoly{};
        }
        std::vector<K> r(a.m_c.size() + b.m_c.size() - 1u);
        for (std::size_t i = 0; i < a.m_c.size(); ++i) {
            if (detail::zero(a.m_c[i])) {
                continue;
            }
            for (std::size_t j = 0; j < b.m_c.size(); ++j) {
                r[i + j] += a.m_c[i] * b.m_c[j];
            }
        }
        return upoly(std::move(r));
    }
    upoly &operator*=(const upoly &o)
    {
        return *this = *this * o;
    }
    friend upoly operator*(const K &s, upoly a)
    {
        if (detail::zero(s)) {
            return upoly{};
        }
        for (auto &c : a.m_c) {
            c *= s;
        }
        return a;
    }
    friend upoly operator*(upoly a, const K &s)
    {
        return s * std::move(a);
    }

    K operator()(const K &t) const
    {
        K r{};
        for (auto it = m_c.rbegin(); it != m_c.rend(); ++it) {
            r = r * t + *it;
        }
        return r;
    }

    upoly derivative() const
    {
        if (m_c.size() <= 1u) {
            return upoly{};
        }
        std::vector<K> r(m_c.size() - 1u);
        for (std::size_t i = 1; i < m_c.size(); ++i) {
            r[i - 1u] = K(static_cast<int>(i)) * m_c[i];
        }
        return upoly(std::move(r));
    }

    // p(t + s)
    upoly shift(const K &s) const
    {
        if (detail::zero(s)) {
            return *this;
        }
        const upoly lin(std::vector<K>{s, K(1)});
        upoly r;
        for (auto it = m_c.rbegin(); it != m_c.rend(); ++it) {
            r = r * lin + upoly(*it);
        }
        return r;
    }

    upoly monic() const
    {
        if (is_zero()) {
            return *this;
        }
        const K inv = K(1) / lc();
        return inv * *this;
    }

    template <typename F>
    upoly map_coeffs(F &&f) const
    {
        std::vector<K> r;
        r.reserve(m_c.size());
        for (const auto &c : m_c) {
            r.push_back(f(c));
        }
        return upoly(std::move(r));
    }

    upoly pow(unsigned e) const
    {
        upoly r(K(1)), b(*this);
        while (e > 0u) {
            if (e & 1u) {
                r *= b;
            }
            b *= b;
            e >>= 1u;
        }
        return r;
    }

private:
    void trim()
    {
        while (!m_c.empty() && detail::zero(m_c.back())) {
            m_c.pop_back();
        }
    }

    std::vector<K> m_c;
};

template <typename K>
bool is_zero(const upoly<K> &p)
{
    return p.is_zero();
}

// Quotient and remainder of Euclidean division.
template <typename K>
std::pair<upoly<K>, upoly<K>> divmod(const upoly<K> &a, const upoly<K> &b)
{
    if (b.is_zero()) {
        throw division_error("polynomial division by zero");
    }
    if (a.degree() < b.degree()) {
        return {upoly<K>{}, a};
    }
    std::vector<K> r = a.coeffs();
    std::vector<K> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1u);
    const K inv = K(1) / b.lc();
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
        const K &ri = r[static_cast<std::size_t>(i)];
        if (detail::zero(ri)) {
            continue;
        }
        const K t = ri * inv;
        const int s = i - db;
        for (int j = 0; j <= db; ++j) {
            r[static_cast<std::size_t>(s + j)] -= t * b.coeffs()[static_cast<std::size_t>(j)];
        }
        q[static_cast<std::size_t>(s)] = t;
    }
    r.resize(static_cast<std::size_t>(db));
    return {upoly<K>(std::move(q)), upoly<K>(std::move(r))};
}

template <typename K>
upoly<K> quo(const upoly<K> &a, const upoly<K> &b)
{
    return divmod(a, b).first;
}

template <typename K>
upoly<K> rem(const upoly<K> &a, const upoly<K> &b)
{
    return divmod(a, b).second;
}

template <typename K>
upoly<K> div_exact(const upoly<K> &a, const upoly<K> &b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) {
        throw division_error("polynomial division is not exact");
    }
    return q;
}

// Monic gcd; gcd(0, 0) = 0.
template <typename K>
upoly<K> gcd(upoly<K> a, upoly<K> b)
{
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        upoly<K> r = rem(a, b).monic();
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

namespace detail
{

inline void remove_int_content(std::vector<integer> &v)
{
    integer g;
    for (const auto &c : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) {
            return;
        }
    }
    if (sgn(g) != 0) {
        for (auto &c : v) {
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        }
    }
}

inline std::vector<integer> primitive_integer_coeffs(const upoly<rational> &p)
{
    integer l(1);
    for (const auto &c : p.coeffs()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    }
    std::vector<integer> v;
    v.reserve(p.coeffs().size());
    for (const auto &c : p.coeffs()) {
        v.push_back(integer(c.get_num() * (l / c.get_den())));
    }
    remove_int_content(v);
    return v;
}

// Pseudo-remainder of a by b over Z, deg a >= deg b >= 0; trailing zeros trimmed.
inline std::vector<integer> int_pseudo_rem(std::vector<integer> a, const std::vector<integer> &b)
{
    const std::size_t n = b.size();
    const integer &beta = b.back();
    integer lead;
    while (a.size() >= n) {
        lead = a.back();
        const std::size_t off = a.size() - n;
        for (std::size_t i = 0; i < off; ++i) {
            a[i] *= beta;
        }
        for (std::size_t i = 0; i < n; ++i) {
            a[off + i] = a[off + i] * beta - lead * b[i];
        }
        while (!a.empty() && sgn(a.back()) == 0) {
            a.pop_back();
        }
    }
    return a;
}

} // namespace detail

// Over Q the gcd runs as a primitive remainder sequence over Z.
template <>
inline upoly<rational> gcd<rational>(upoly<rational> a, upoly<rational> b)
{
    if (a.is_zero() || b.is_zero()) {
        return a.is_zero() ? b.monic() : a.monic();
    }
    if (a.degree() == 0 || b.degree() == 0) {
        return upoly<rational>(rational(1));
    }
    std::vector<integer> pa = detail::primitive_integer_coeffs(a), pb = detail::primitive_integer_coeffs(b);
    if (pa.size() < pb.size()) {
        std::swap(pa, pb);
    }
    while (true) {
        std::vector<integer> r = detail::int_pseudo_rem(std::move(pa), pb);
        if (r.empty()) {
            break;
        }
        if (r.size() == 1u) {
            return upoly<rational>(rational(1));
        }
        detail::remove_int_content(r);
        pa = std::move(pb);
        pb = std::move(r);
    }
    std::vector<rational> c;
    c.reserve(pb.size());
    for (auto &x : pb) {
        c.emplace_back(x);
    }
    return upoly<rational>(std::move(c)).monic();
}

template <typename K>
upoly<K> lcm(const upoly<K> &a, const upoly<K> &b)
{
    if (a.is_zero() || b.is_zero()) {
        return upoly<K>{};
    }
    return div_exact(a * b, gcd(a, b)).monic();
}

// Returns (g, s, t) with s a + t b = g, g monic.
template <typename K>
std::tuple<upoly<K>, upoly<K>, upoly<K>> xgcd(const upoly<K> &a, const upoly<K> &b)
{
    upoly<K> r0 = a, r1 = b;
    upoly<K> s0(K(1)), s1, t0, t1(K(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        upoly<K> s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        upoly<K> t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        return {r0, s0, t0};
    }
    const K inv = K(1) / r0.lc();
    return {inv * r0, inv * s0, inv * t0};
}

// Solves s a + t b = c with deg s < deg b, for coprime a and b.
template <typename K>
std::pair<upoly<K>, upoly<K>> solve_bezout(const upoly<K> &a, const upoly<K> &b, const upoly<K> &c)
{
    auto [g, s, t] = xgcd(a, b);
    if (g.degree() != 0) {
        throw domain_error("solve_bezout: arguments are not coprime");
    }
    upoly<K> sc = rem(s * c, b);
    upoly<K> tc = div_exact(c - sc * a, b);
    return {std::move(sc), std::move(tc)};
}

// Resultant via the Euclidean remainder sequence.
template <typename K>
K resultant(upoly<K> a, upoly<K> b)
{
    if (a.is_zero() || b.is_zero()) {
        return K{};
    }
    K res(1);
    while (true) {
        const int m = a.degree(), n = b.degree();
        if (n == 0) {
            K p(1);
            for (int i = 0; i < m; ++i) {
                p *= b.lc();
            }
            return res * p;
        }
        upoly<K> r = rem(a, b);
        if (r.is_zero()) {
            return K{};
        }
        if ((m * n) % 2 == 1) {
            res = -res;
        }
        for (int i = 0; i < m - r.degree(); ++i) {
            res *= b.lc();
        }
        a = std::move(b);
        b = std::move(r);
    }
}

// Square-free decomposition (Yun): returns a_1, a_2, ... with
// p = lc(p) * prod a_i^i, each a_i monic, square-free and pairwise coprime.
template <typename K>
std::vector<upoly<K>> squarefree_decomposition(const upoly<K> &p)
{
    std::vector<upoly<K>> out;
    if (p.degree() <= 0) {
        return out;
    }
    const upoly<K> dp = p.derivative();
    const upoly<K> g = gcd(p, dp);
    upoly<K> c = div_exact(p, g).monic();
    upoly<K> d = div_exact(dp, g) - c.derivative();
    while (c.degree() > 0) {
        upoly<K> a = gcd(c, d);
        c = div_exact(c, a).monic();
        d = div_exact(d, a) - c.derivative();
        out.push_back(std::move(a));
    }
    return out;
}

template <typename K>
upoly<K> squarefree_part(const upoly<K> &p)
{
    if (p.degree() <= 0) {
        return upoly<K>(K(1));
    }
    return div_exact(p, gcd(p, p.derivative())).monic();
}

using qpoly = upoly<rational>;

inline std::string to_string(const qpoly &p, const std::string &var)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        const rational &c = p.coeffs()[static_cast<std::size_t>(i)];
        if (detail::zero(c)) {
            continue;
        }
        const bool neg = sgn(c) < 0;
        const rational a = neg ? rational(-c) : c;
        if (!s.empty() || neg) {
            s += neg ? "-" : "+";
        }
        if (i == 0) {
            s += a.get_str();
            continue;
        }
        if (a != 1) {
            s += a.get_str() + "*";
        }
        s += var;
        if (i > 1) {
            s += "^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace ctel

#endif
