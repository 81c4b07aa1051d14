#ifndef CTEL_RATIONAL_ORDER_DEGREE_HPP
#define CTEL_RATIONAL_ORDER_DEGREE_HPP

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/matrix.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/rational/reduction_ct.hpp>

namespace ctel
{

struct order_degree_point
{
    int order = 0;
    int degree = 0;

    friend bool operator==(const order_degree_point &a, const order_degree_point &b)
    {
        return a.order == b.order && a.degree == b.degree;
    }
};

namespace detail
{

// Is there a nonzero (c_0..c_r) in Q[x]^(r+1) of degree <= d with
// sum_i c_i w_i = 0? w_i are the reduced-part coordinate vectors over Q[x].
inline bool has_telescoper(const std::vector<std::vector<qpoly>> &w, int r, int d)
{
    const std::size_t m = w.front().size();
    int wdeg = 0;
    for (int i = 0; i <= r; ++i) {
        for (const auto &e : w[static_cast<std::size_t>(i)]) {
            wdeg = std::max(wdeg, e.degree());
        }
    }
    const auto nd = static_cast<std::size_t>(d) + 1u;
    const auto per = static_cast<std::size_t>(wdeg + d) + 1u;
    dense_matrix<rational> a(std::max<std::size_t>(m * per, 1u), (static_cast<std::size_t>(r) + 1u) * nd);
    for (int i = 0; i <= r; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const qpoly &e = w[static_cast<std::size_t>(i)][j];
            for (int s = 0; s <= e.degree(); ++s) {
                for (std::size_t t = 0; t < nd; ++t) {
                    a(j * per + static_cast<std::size_t>(s) + t, static_cast<std::size_t>(i) * nd + t) = e.coeff(s);
                }
            }
        }
    }
    return !nullspace(a).empty();
}

} // namespace detail

// For r = r_min..r_max the least x-degree d <= d_cap of a telescoper of order
// at most r with polynomial coefficients; orders with no such d are omitted.
inline std::vector<order_degree_point> order_degree_scan(const rational_function &f, int r_min, int r_max,
                                                         int d_cap, const std::string &x = "x",
                                                         const std::string &y = "y")
{
    if (r_min < 0 || r_max < r_min || d_cap < 0) {
        throw domain_error("order_degree_scan needs 0 <= r_min <= r_max and d_cap >= 0");
    }
    require_vars_within(f, {x, y});
    detail::reduction_sequence seq(to_ufrac(f, y, x));
    while (seq.size() <= static_cast<std::size_t>(r_max)) {
        seq.extend();
    }
    // One common denominator keeps the solution set unchanged.
    qpoly l(rational(1));
    for (std::size_t i = 0; i < seq.size(); ++i) {
        for (const auto &c : seq.coords(i)) {
            l = lcm(l, c.den());
        }
    }
    std::vector<std::vector<qpoly>> w;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        std::vector<qpoly> row;
        for (const auto &c : seq.coords(i)) {
            row.push_back(c.num() * div_exact(l, c.den()));
        }
        w.push_back(std::move(row));
    }
    std::vector<order_degree_point> out;
    for (int r = r_min; r <= r_max; ++r) {
        for (int d = 0; d <= d_cap; ++d) {
            if (detail::has_telescoper(w, r, d)) {
                out.push_back({r, d});
                break;
            }
        }
    }
    return out;
}

inline void write_order_degree_csv(std::ostream &os, const std::vector<order_degree_point> &pts)
{
    os << "order,degree\n";
    for (const auto &p : pts) {
        os << p.order << ',' << p.degree << '\n';
    }
}

} // namespace ctel

#endif
