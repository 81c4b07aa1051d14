#ifndef CTEL_RATIONAL_HERMITE_HPP
#define CTEL_RATIONAL_HERMITE_HPP

#include <string>
#include <utility>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/exact/ufrac.hpp>
#include <ctel/exact/upoly.hpp>

namespace ctel
{

// Polynomials and rational functions in the integration variable y over Q(x).
using ypoly = upoly<qfrac>;
using yfrac = ufrac<qfrac>;

// f = D_y g + h, h proper in y with squarefree denominator.
struct hermite_result
{
    rational_function g;
    rational_function h;
};

namespace detail
{

inline ypoly antiderivative(const ypoly &p)
{
    if (p.is_zero()) {
        return p;
    }
    std::vector<qfrac> c(static_cast<std::size_t>(p.degree()) + 2u);
    for (int i = 0; i <= p.degree(); ++i) {
        c[static_cast<std::size_t>(i) + 1u] = p.coeff(i) / qfrac(rational(i + 1));
    }
    return ypoly(std::move(c));
}

struct yparts
{
    yfrac g;
    yfrac h;
};

// Hermite reduction in Q(x)(y), one squarefree layer of the denominator at a
// time; the polynomial part is integrated directly.
inline yparts hermite_y(const yfrac &f)
{
    if (f.is_zero()) {
        return {};
    }
    auto [q, a] = divmod(f.num(), f.den());
    yfrac g(antiderivative(q));
    const ypoly &d = f.den();
    ypoly dm = gcd(d, d.derivative());
    const ypoly ds = div_exact(d, dm);
    while (dm.degree() > 0) {
        const ypoly dm2 = gcd(dm, dm.derivative());
        const ypoly dms = div_exact(dm, dm2);
        const ypoly u = -div_exact(ds * dm.derivative(), dm);
        auto [b, c] = solve_bezout(u, dms, a);
        a = c - div_exact(b.derivative() * ds, dms);
        g += yfrac(b, dm);
        dm = dm2;
    }
    return {std::move(g), yfrac(a, ds)};
}

// The variable playing the role of x: the one used variable other than y.
inline std::string coefficient_var(const rational_function &f, const std::string &y)
{
    std::string x;
    for (const auto &v : f.used_vars()) {
        if (v == y) {
            continue;
        }
        if (!x.empty()) {
            throw unsupported_error("expected a rational function in two variables");
        }
        x = v;
    }
    return x;
}

inline std::vector<std::string> xy_vars(const rational_function &f, const std::string &x, const std::string &y)
{
    std::vector<std::string> v = f.vars();
    if (!x.empty()) {
        v = union_vars(v, {x});
    }
    return union_vars(v, {y});
}

} // namespace detail

inline hermite_result hermite_reduce(const rational_function &f, const std::string &y = "y")
{
    const std::string x = detail::coefficient_var(f, y);
    const auto vars = detail::xy_vars(f, x, y);
    const auto parts = detail::hermite_y(to_ufrac(f, y, x));
    return {from_ufrac(parts.g, vars, y, x), from_ufrac(parts.h, vars, y, x)};
}

} // namespace ctel

#endif
