#ifndef CTEL_EXACT_NUMBER_HPP
#define CTEL_EXACT_NUMBER_HPP

#include <climits>
#include <string>

#include <gmpxx.h>

#include <ctel/errors.hpp>

namespace ctel
{

using integer = mpz_class;
using rational = mpq_class;

inline bool is_zero(const rational &q)
{
    return sgn(q) == 0;
}

inline bool is_zero(const integer &z)
{
    return sgn(z) == 0;
}

namespace detail
{

// Zero test usable inside classes whose member is_zero() hides the free one.
template <typename T>
bool zero(const T &x)
{
    using ctel::is_zero;
    return is_zero(x);
}

} // namespace detail

inline bool is_integer(const rational &q)
{
    return q.get_den() == 1;
}

inline rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw division_error("zero denominator");
    }
    rational q{integer(num), integer(den)};
    q.canonicalize();
    return q;
}

inline long to_long(const integer &z)
{
    if (!z.fits_slong_p()) {
        throw domain_error("integer " + z.get_str() + " does not fit a machine word");
    }
    return z.get_si();
}

inline long to_long(const rational &q)
{
    if (!is_integer(q)) {
        throw domain_error("rational " + q.get_str() + " is not an integer");
    }
    return to_long(q.get_num());
}

inline std::string to_string(const rational &q)
{
    return q.get_str();
}

inline std::string to_string(const integer &z)
{
    return z.get_str();
}

// Accepts "p", "-p" and "p/q".
inline rational parse_rational(const std::string &s)
{
    rational q;
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) {
        throw domain_error("not a rational number: '" + s + "'");
    }
    q.canonicalize();
    return q;
}

inline integer factorial(unsigned long n)
{
    integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// binomial(n, k) for integer n and k >= 0, with the usual extension to negative n.
inline integer binomial(long n, long k)
{
    if (k < 0) {
        return 0;
    }
    integer r;
    mpz_bin_ui(r.get_mpz_t(), integer(n).get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

inline rational pow(const rational &base, long e)
{
    if (e < 0) {
        if (is_zero(base)) {
            throw division_error("zero to a negative power");
        }
        return pow(rational(1) / base, -e);
    }
    rational r(1), b(base);
    while (e > 0) {
        if (e & 1) {
            r *= b;
        }
        b *= b;
        e >>= 1;
    }
    return r;
}

} // namespace ctel

#endif
