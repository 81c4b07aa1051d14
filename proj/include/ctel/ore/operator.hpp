#ifndef CTEL_ORE_OPERATOR_HPP
#define CTEL_ORE_OPERATOR_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/multipoly.hpp>
#include <ctel/exact/number.hpp>
#include <ctel/exact/rational_function.hpp>

namespace ctel
{

enum class generator
{
    shift,
    derivation
};

struct ore_algebra
{
    std::string var;
    generator gen = generator::shift;

    // "Sn" or "Dx"
    std::string generator_name() const
    {
        return (gen == generator::shift ? "S" : "D") + var;
    }

    friend bool operator==(const ore_algebra &a, const ore_algebra &b)
    {
        return a.var == b.var && a.gen == b.gen;
    }
    friend bool operator!=(const ore_algebra &a, const ore_algebra &b)
    {
        return !(a == b);
    }
};

inline ore_algebra shift_algebra(std::string var)
{
    return {std::move(var), generator::shift};
}

inline ore_algebra derivation_algebra(std::string var)
{
    return {std::move(var), generator::derivation};
}

namespace detail
{

// A coefficient is printed as a bare number when it is constant and wrapped
// in parentheses otherwise; the sign is pulled out so that sums read
// "a - b" rather than "a + -b".
inline bool looks_negative(const rational_function &c)
{
    if (c.is_zero()) {
        return false;
    }
    return sgn(c.num().lead_grlex().second) < 0;
}

inline std::string product_term(const rational_function &c, const std::string &atom)
{
    if (atom.empty()) {
        const std::string s = c.to_string();
        return c.is_constant() ? s : "(" + s + ")";
    }
    if (c.is_constant()) {
        if (c.constant_value() == 1) {
            return atom;
        }
        return c.to_string() + "*" + atom;
    }
    return "(" + c.to_string() + ")*" + atom;
}

// Joins (coefficient, atom) pairs into "t1 + t2 - t3".
inline std::string signed_sum(const std::vector<std::pair<rational_function, std::string>> &terms)
{
    std::string out;
    for (const auto &[c, atom] : terms) {
        if (c.is_zero()) {
            continue;
        }
        const bool neg = looks_negative(c);
        const std::string t = product_term(neg ? -c : c, atom);
        if (out.empty()) {
            out = neg ? "-" + t : t;
        }
        else {
            out += neg ? " - " : " + ";
            out += t;
        }
    }
    return out.empty() ? "0" : out;
}

inline multipoly poly_lcm(const multipoly &a, const multipoly &b)
{
    return divide_exact(a * b, poly_gcd(a, b));
}

} // namespace detail

// Element of K[gen] with K = Q(var) (coefficients may carry further
// variables, which the generator treats as constants). Coefficient i belongs
// to gen^i; the list is trimmed so that the zero operator is empty.
class ore_operator
{
public:
    ore_operator() = default;
    explicit ore_operator(ore_algebra alg) : m_alg(std::move(alg)) {}
    ore_operator(ore_algebra alg, std::vector<rational_function> coeffs)
        : m_alg(std::move(alg)), m_c(std::move(coeffs))
    {
        trim();
    }

    static ore_operator scalar(ore_algebra alg, rational_function c)
    {
        return ore_operator(std::move(alg), {std::move(c)});
    }
    static ore_operator gen(ore_algebra alg)
    {
        const std::vector<std::string> v{alg.var};
        return ore_operator(std::move(alg), {rational_function(v), rational_function(v, rational(1))});
    }

    const ore_algebra &algebra() const
    {
        return m_alg;
    }
    int order() const
    {
        return static_cast<int>(m_c.size()) - 1;
    }
    bool is_zero() const
    {
        return m_c.empty();
    }
    const std::vector<rational_function> &coeffs() const
    {
        return m_c;
    }
    rational_function coeff(int i) const
    {
        if (i < 0 || i > order()) {
            return rational_function();
        }
        return m_c[static_cast<std::size_t>(i)];
    }
    const rational_function &leading() const
    {
        if (m_c.empty()) {
            throw domain_error("leading coefficient of the zero operator");
        }
        return m_c.back();
    }

    ore_operator operator-() const
    {
        ore_operator r(*this);
        for (auto &c : r.m_c) {
            c = -c;
        }
        return r;
    }
    friend ore_operator operator+(const ore_operator &a, const ore_operator &b)
    {
        check_same(a, b);
        std::vector<rational_function> c(std::max(a.m_c.size(), b.m_c.size()));
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        }
        return ore_operator(a.m_alg, std::move(c));
    }
    friend ore_operator operator-(const ore_operator &a, const ore_operator &b)
    {
        return a + (-b);
    }
    friend ore_operator operator*(const rational_function &s, const ore_operator &a)
    {
        ore_operator r(a);
        for (auto &c : r.m_c) {
            c = s * c;
        }
        r.trim();
        return r;
    }
    friend ore_operator operator*(const ore_operator &a, const ore_operator &b);

    // Exact coefficientwise equality.
    friend bool operator==(const ore_operator &a, const ore_operator &b)
    {
        if (a.m_alg != b.m_alg || a.m_c.size() != b.m_c.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.m_c.size(); ++i) {
            if (a.m_c[i] != b.m_c[i]) {
                return false;
            }
        }
        return true;
    }
    friend bool operator!=(const ore_operator &a, const ore_operator &b)
    {
        return !(a == b);
    }

    // Left multiple with polynomial coefficients, content-free over Z[vars],
    // leading coefficient with positive leading term.
    ore_operator normalized() const
    {
        if (is_zero()) {
            return *this;
        }
        multipoly l = m_c.front().den();
        for (const auto &c : m_c) {
            l = detail::poly_lcm(l, c.den());
        }
        std::vector<multipoly> p;
        p.reserve(m_c.size());
        for (const auto &c : m_c) {
            p.push_back(divide_exact(c.num() * l, c.den()));
        }
        multipoly g;
        bool first = true;
        for (const auto &x : p) {
            if (x.is_zero()) {
                continue;
            }
            g = first ? x : poly_gcd(g, x);
            first = false;
        }
        rational cont;
        for (auto &x : p) {
            x = divide_exact(x, g);
            for (const auto &t : x.terms()) {
                cont = detail::rational_gcd(cont, t.second);
            }
        }
        if (sgn(p.back().lead_grlex().second) < 0) {
            cont = -cont;
        }
        const rational inv = rational(1) / cont;
        std::vector<rational_function> c;
        c.reserve(p.size());
        for (const auto &x : p) {
            c.emplace_back(inv * x);
        }
        return ore_operator(m_alg, std::move(c));
    }

    // Same operator up to a left factor in K.
    bool equivalent(const ore_operator &o) const
    {
        return normalized() == o.normalized();
    }

    std::string to_string() const
    {
        std::vector<std::pair<rational_function, std::string>> terms;
        const std::string g = m_alg.generator_name();
        for (int i = order(); i >= 0; --i) {
            std::string atom;
            if (i == 1) {
                atom = g;
            }
            else if (i > 1) {
                atom = g + "^" + std::to_string(i);
            }
            terms.emplace_back(m_c[static_cast<std::size_t>(i)], atom);
        }
        return detail::signed_sum(terms);
    }

private:
    static void check_same(const ore_operator &a, const ore_operator &b)
    {
        if (a.m_alg != b.m_alg) {
            throw algebra_error("operators live in different Ore algebras (" + a.m_alg.generator_name() + " vs "
                                + b.m_alg.generator_name() + ")");
        }
    }

    void trim()
    {
        while (!m_c.empty() && m_c.back().is_zero()) {
            m_c.pop_back();
        }
    }

    ore_algebra m_alg;
    std::vector<rational_function> m_c;
};

// Noncommutative product: S b = b(v+1) S, D b = b D + b'.
inline ore_operator ore_mul(const ore_operator &a, const ore_operator &b)
{
    if (a.algebra() != b.algebra()) {
        throw algebra_error("operators live in different Ore algebras (" + a.algebra().generator_name() + " vs "
                            + b.algebra().generator_name() + ")");
    }
    if (a.is_zero() || b.is_zero()) {
        return ore_operator(a.algebra());
    }
    const std::string &v = a.algebra().var;
    std::vector<rational_function> out(static_cast<std::size_t>(a.order() + b.order()) + 1u);
    if (a.algebra().gen == generator::shift) {
        for (int i = 0; i <= a.order(); ++i) {
            const rational_function &ai = a.coeffs()[static_cast<std::size_t>(i)];
            if (ai.is_zero()) {
                continue;
            }
            for (int j = 0; j <= b.order(); ++j) {
                const rational_function &bj = b.coeffs()[static_cast<std::size_t>(j)];
                if (!bj.is_zero()) {
                    out[static_cast<std::size_t>(i + j)] += ai * bj.shift(v, rational(i));
                }
            }
        }
    }
    else {
        // D^i b = sum_t binom(i, t) b^(t) D^(i-t)
        std::vector<std::vector<rational_function>> der(b.coeffs().size());
        for (std::size_t j = 0; j < der.size(); ++j) {
            der[j].push_back(b.coeffs()[j]);
            for (int t = 1; t <= a.order(); ++t) {
                der[j].push_back(der[j].back().derivative(v));
            }
        }
        for (int i = 0; i <= a.order(); ++i) {
            const rational_function &ai = a.coeffs()[static_cast<std::size_t>(i)];
            if (ai.is_zero()) {
                continue;
            }
            for (int t = 0; t <= i; ++t) {
                const rational bin(binomial(i, t));
                for (int j = 0; j <= b.order(); ++j) {
                    const rational_function &d = der[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
                    if (!d.is_zero()) {
                        out[static_cast<std::size_t>(i - t + j)] += ai * rational_function(d.vars(), bin) * d;
                    }
                }
            }
        }
    }
    return ore_operator(a.algebra(), std::move(out));
}

inline ore_operator operator*(const ore_operator &a, const ore_operator &b)
{
    return ore_mul(a, b);
}

// The generator acting on f: substitution var -> var+1 or d/dvar.
inline rational_function apply_generator(const ore_algebra &alg, const rational_function &f)
{
    if (alg.gen == generator::shift) {
        return f.shift(alg.var, rational(1));
    }
    return f.derivative(alg.var);
}

inline rational_function ore_apply(const ore_operator &a, const rational_function &f)
{
    rational_function acc(f.vars());
    rational_function g = f;
    for (int i = 0; i <= a.order(); ++i) {
        if (i > 0) {
            g = apply_generator(a.algebra(), g);
        }
        const rational_function &c = a.coeffs()[static_cast<std::size_t>(i)];
        if (!c.is_zero()) {
            acc += c * g;
        }
    }
    return acc;
}

inline std::ostream &operator<<(std::ostream &os, const ore_operator &a)
{
    return os << a.to_string();
}

} // namespace ctel

#endif
