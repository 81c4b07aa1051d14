#ifndef CTEL_TESTS_SUPPORT_HPP
#define CTEL_TESTS_SUPPORT_HPP

// Shared helpers for the test suites: small constructors and seeded random
// generators.

#include <random>
#include <string>
#include <vector>

#include <ctel/exact/multipoly.hpp>
#include <ctel/exact/number.hpp>
#include <ctel/exact/rational_function.hpp>

namespace ctel::test
{

inline multipoly var(const std::vector<std::string> &vars, const std::string &name)
{
    return multipoly::variable(vars, name);
}

inline multipoly cst(const std::vector<std::string> &vars, long num, long den = 1)
{
    return multipoly(vars, make_rational(num, den));
}

inline rational_function rf(const multipoly &p)
{
    return rational_function(p);
}

inline rational_function rf(const multipoly &n, const multipoly &d)
{
    return rational_function(n, d);
}

class rng
{
public:
    explicit rng(unsigned seed) : m_gen(seed) {}

    long uniform(long lo, long hi)
    {
        return std::uniform_int_distribution<long>(lo, hi)(m_gen);
    }
    bool coin(double p = 0.5)
    {
        return std::bernoulli_distribution(p)(m_gen);
    }
    rational small_rational(long range = 5)
    {
        long d = uniform(1, 3);
        return make_rational(uniform(-range, range), d);
    }

    // Random polynomial in x, y with the given degree bounds and a fixed
    // nonzero leading coefficient in y, so that deg_y is exactly dy.
    multipoly poly_xy(const std::vector<std::string> &vars, int dx, int dy, double density = 0.6)
    {
        multipoly p(vars);
        const int ix = p.var_index("x"), iy = p.var_index("y");
        for (int j = 0; j <= dy; ++j) {
            for (int i = 0; i <= dx; ++i) {
                if (j < dy && !coin(density)) {
                    continue;
                }
                monomial m(vars.size(), 0);
                m[static_cast<std::size_t>(ix)] = i;
                m[static_cast<std::size_t>(iy)] = j;
                rational c(uniform(-4, 4));
                if (j == dy && i == 0 && is_zero(c)) {
                    c = 1;
                }
                p.add_term(m, c);
            }
        }
        return p;
    }

    std::mt19937 &engine()
    {
        return m_gen;
    }

private:
    std::mt19937 m_gen;
};

} // namespace ctel::test

#endif
