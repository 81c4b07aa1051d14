#ifndef CTEL_ERRORS_HPP
#define CTEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ctel
{

// Base class of every exception thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class division_error : public error
{
public:
    using error::error;
};

class domain_error : public error
{
public:
    using error::error;
};

// A rational input is singular where it has to be regular.
class singularity_error : public domain_error
{
public:
    using domain_error::domain_error;
};

// Raised when operators from different Ore algebras are combined.
class algebra_error : public error
{
public:
    using error::error;
};

class unsupported_error : public error
{
public:
    using error::error;
};

class unsupported_expression_error : public unsupported_error
{
public:
    using unsupported_error::unsupported_error;
};

class verification_error : public error
{
public:
    using error::error;
};

// The leading coefficient of a recurrence vanished at shift index n while
// computing the sequence term with index n + order.
class singular_index_error : public error
{
public:
    singular_index_error(long n, long term)
        : error("leading coefficient vanishes at n = " + std::to_string(n) + " (term " + std::to_string(term)
                + " cannot be computed; supply more initial values)"),
          m_n(n), m_term(term)
    {
    }
    long index() const noexcept
    {
        return m_n;
    }
    long term() const noexcept
    {
        return m_term;
    }

private:
    long m_n;
    long m_term;
};

// A hypergeometric term hit a denominator zero at lattice point (n, k).
class pole_error : public error
{
public:
    pole_error(long n, long k, const std::string &what = "pole")
        : error(what + " at (n, k) = (" + std::to_string(n) + ", " + std::to_string(k) + ")"), m_n(n), m_k(k)
    {
    }
    long n() const noexcept
    {
        return m_n;
    }
    long k() const noexcept
    {
        return m_k;
    }

private:
    long m_n;
    long m_k;
};

// The certificate term g = R f could not be evaluated at a boundary point.
class certificate_pole_error : public pole_error
{
public:
    certificate_pole_error(long n, long k) : pole_error(n, k, "unresolvable certificate pole") {}
};

// No telescoper was found up to the given order (existence is not excluded).
class not_found : public error
{
public:
    explicit not_found(int max_order)
        : error("no telescoper of order <= " + std::to_string(max_order) + " found"), m_max_order(max_order)
    {
    }
    int max_order() const noexcept
    {
        return m_max_order;
    }

private:
    int m_max_order;
};

class parse_error : public error
{
public:
    parse_error(const std::string &msg, int line, int column)
        : error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), m_line(line), m_column(column)
    {
    }
    int line() const noexcept
    {
        return m_line;
    }
    int column() const noexcept
    {
        return m_column;
    }

private:
    int m_line;
    int m_column;
};

} // namespace ctel

#endif
