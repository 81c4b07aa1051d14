#ifndef CTEL_CLI_EXPR_HPP
#define CTEL_CLI_EXPR_HPP

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <ctel/errors.hpp>
#include <ctel/exact/multipoly.hpp>
#include <ctel/exact/number.hpp>
#include <ctel/exact/rational_function.hpp>
#include <ctel/hyper/term.hpp>
#include <ctel/ore/operator.hpp>

namespace ctel
{

enum class expr_kind
{
    integer,
    rational,
    variable,
    neg,
    add,
    sub,
    mul,
    div,
    pow,       // integer exponent
    factorial,
    binomial,
    exp        // c^e with a numeric base and a symbolic exponent
};

struct expr;
using expr_ptr = std::shared_ptr<const expr>;

struct expr
{
    expr_kind kind = expr_kind::integer;
    integer num{0};
    integer den{1};
    std::string name;
    long exponent = 0;
    std::vector<expr_ptr> args;

    friend bool operator==(const expr &a, const expr &b)
    {
        if (a.kind != b.kind || a.num != b.num || a.den != b.den || a.name != b.name || a.exponent != b.exponent
            || a.args.size() != b.args.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (!(*a.args[i] == *b.args[i])) {
                return false;
            }
        }
        return true;
    }
};

namespace ex
{

inline expr_ptr make(expr e)
{
    return std::make_shared<const expr>(std::move(e));
}
inline expr_ptr integer_lit(const integer &v)
{
    expr e;
    e.num = v;
    return make(std::move(e));
}
inline expr_ptr rational_lit(const integer &p, const integer &q)
{
    expr e;
    e.kind = expr_kind::rational;
    e.num = p;
    e.den = q;
    return make(std::move(e));
}
inline expr_ptr var(const std::string &n)
{
    expr e;
    e.kind = expr_kind::variable;
    e.name = n;
    return make(std::move(e));
}
inline expr_ptr node(expr_kind k, std::vector<expr_ptr> args)
{
    expr e;
    e.kind = k;
    e.args = std::move(args);
    return make(std::move(e));
}
inline expr_ptr neg(expr_ptr a)
{
    return node(expr_kind::neg, {std::move(a)});
}
inline expr_ptr add(expr_ptr a, expr_ptr b)
{
    return node(expr_kind::add, {std::move(a), std::move(b)});
}
inline expr_ptr sub(expr_ptr a, expr_ptr b)
{
    return node(expr_kind::sub, {std::move(a), std::move(b)});
}
inline expr_ptr mul(expr_ptr a, expr_ptr b)
{
    return node(expr_kind::mul, {std::move(a), std::move(b)});
}
inline expr_ptr div(expr_ptr a, expr_ptr b)
{
    return node(expr_kind::div, {std::move(a), std::move(b)});
}
inline expr_ptr pow(expr_ptr a, long e)
{
    expr x;
    x.kind = expr_kind::pow;
    x.exponent = e;
    x.args = {std::move(a)};
    return make(std::move(x));
}
inline expr_ptr factorial(expr_ptr a)
{
    return node(expr_kind::factorial, {std::move(a)});
}
inline expr_ptr binomial(expr_ptr a, expr_ptr b)
{
    return node(expr_kind::binomial, {std::move(a), std::move(b)});
}
inline expr_ptr exp(expr_ptr base, expr_ptr e)
{
    return node(expr_kind::exp, {std::move(base), std::move(e)});
}

} // namespace ex

namespace detail
{

inline bool is_numeric(const expr &e)
{
    switch (e.kind) {
    case expr_kind::integer:
    case expr_kind::rational:
        return true;
    case expr_kind::neg:
        return is_numeric(*e.args[0]);
    default:
        return false;
    }
}

class expr_parser
{
public:
    expr_parser(const std::string &src, const std::vector<std::string> &vars) : m_src(src), m_vars(vars) {}

    expr_ptr parse()
    {
        skip_space();
        if (at_end()) {
            fail("empty expression");
        }
        expr_ptr e = parse_sum();
        skip_space();
        if (!at_end()) {
            fail(std::string("unexpected '") + peek() + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw parse_error(msg, m_line, m_col);
    }

    bool at_end() const
    {
        return m_pos >= m_src.size();
    }
    char peek() const
    {
        return at_end() ? '\0' : m_src[m_pos];
    }
    void advance()
    {
        if (m_src[m_pos] == '\n') {
            ++m_line;
            m_col = 1;
        }
        else {
            ++m_col;
        }
        ++m_pos;
    }
    void skip_space()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            advance();
        }
    }
    bool accept(char c)
    {
        skip_space();
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) {
            fail(at_end() ? std::string("expected '") + c + "' at end of input"
                          : std::string("expected '") + c + "', found '" + peek() + "'");
        }
    }

    expr_ptr parse_sum()
    {
        expr_ptr lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = ex::add(lhs, parse_product());
            }
            else if (accept('-')) {
                lhs = ex::sub(lhs, parse_product());
            }
            else {
                return lhs;
            }
        }
    }

    expr_ptr parse_product()
    {
        expr_ptr lhs = parse_unary();
        bool first = true;
        for (;;) {
            if (accept('*')) {
                lhs = ex::mul(lhs, parse_unary());
            }
            else if (accept('/')) {
                expr_ptr rhs = parse_unary();
                // "p/q" with two integer literals is a rational literal.
                if (first && lhs->kind == expr_kind::integer && rhs->kind == expr_kind::integer) {
                    if (sgn(rhs->num) == 0) {
                        fail("division by zero");
                    }
                    lhs = ex::rational_lit(lhs->num, rhs->num);
                }
                else {
                    lhs = ex::div(lhs, rhs);
                }
            }
            else {
                return lhs;
            }
            first = false;
        }
    }

    expr_ptr parse_unary()
    {
        if (accept('-')) {
            return ex::neg(parse_unary());
        }
        return parse_power();
    }

    expr_ptr parse_power()
    {
        expr_ptr base = parse_postfix();
        skip_space();
        if (!accept('^')) {
            return base;
        }
        skip_space();
        const int line = m_line, col = m_col;
        expr_ptr e = parse_unary();
        if (e->kind == expr_kind::integer
            || (e->kind == expr_kind::neg && e->args[0]->kind == expr_kind::integer)) {
            const bool neg = e->kind == expr_kind::neg;
            const integer &v = neg ? e->args[0]->num : e->num;
            if (!v.fits_slong_p()) {
                throw parse_error("exponent too large", line, col);
            }
            const long x = v.get_si();
            return ex::pow(base, neg ? -x : x);
        }
        if (is_numeric(*base)) {
            return ex::exp(base, e);
        }
        throw parse_error("symbolic exponents need a numeric base", line, col);
    }

    expr_ptr parse_postfix()
    {
        expr_ptr e = parse_primary();
        while (accept('!')) {
            e = ex::factorial(e);
        }
        return e;
    }

    expr_ptr parse_primary()
    {
        skip_space();
        if (at_end()) {
            fail("unexpected end of input");
        }
        const char c = peek();
        if (c == '(') {
            advance();
            expr_ptr e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                digits += peek();
                advance();
            }
            return ex::integer_lit(integer(digits));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const int line = m_line, col = m_col;
            std::string id;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                id += peek();
                advance();
            }
            skip_space();
            if (peek() == '(') {
                return parse_call(id, line, col);
            }
            if (std::find(m_vars.begin(), m_vars.end(), id) == m_vars.end()) {
                throw parse_error("unknown identifier '" + id + "'", line, col);
            }
            return ex::var(id);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    expr_ptr parse_call(const std::string &fn, int line, int col)
    {
        expect('(');
        std::vector<expr_ptr> args{parse_sum()};
        while (accept(',')) {
            args.push_back(parse_sum());
        }
        expect(')');
        if (fn == "binomial" && args.size() == 2u) {
            return ex::binomial(args[0], args[1]);
        }
        if (fn == "factorial" && args.size() == 1u) {
            return ex::factorial(args[0]);
        }
        if (fn == "binomial" || fn == "factorial") {
            throw parse_error("wrong number of arguments to " + fn, line, col);
        }
        throw parse_error("unknown function '" + fn + "'", line, col);
    }

    const std::string &m_src;
    const std::vector<std::string> &m_vars;
    std::size_t m_pos = 0;
    int m_line = 1;
    int m_col = 1;
};

// Binding strength used by the printer; higher binds tighter.
inline int precedence(const expr &e)
{
    switch (e.kind) {
    case expr_kind::add:
    case expr_kind::sub:
        return 1;
    case expr_kind::mul:
    case expr_kind::div:
    case expr_kind::rational:
        return 2;
    case expr_kind::neg:
        return 3;
    case expr_kind::pow:
    case expr_kind::exp:
        return 4;
    case expr_kind::factorial:
        return 5;
    default:
        return 6;
    }
}

} // namespace detail

inline expr_ptr parse_expr(const std::string &src, const std::vector<std::string> &vars)
{
    return detail::expr_parser(src, vars).parse();
}

// Prints with the fewest parentheses that parse back to the same tree.
inline std::string to_string(const expr &e)
{
    auto wrap = [](const expr &a, int min_prec) {
        const std::string s = to_string(a);
        return detail::precedence(a) >= min_prec ? s : "(" + s + ")";
    };
    switch (e.kind) {
    case expr_kind::integer:
        return e.num.get_str();
    case expr_kind::rational:
        return e.num.get_str() + "/" + e.den.get_str();
    case expr_kind::variable:
        return e.name;
    case expr_kind::neg:
        return "-" + wrap(*e.args[0], 3);
    case expr_kind::add:
        return wrap(*e.args[0], 1) + " + " + wrap(*e.args[1], 2);
    case expr_kind::sub:
        return wrap(*e.args[0], 1) + " - " + wrap(*e.args[1], 2);
    case expr_kind::mul:
        return wrap(*e.args[0], 2) + "*" + wrap(*e.args[1], 3);
    case expr_kind::div:
        return wrap(*e.args[0], 2) + "/" + wrap(*e.args[1], 3);
    case expr_kind::pow: {
        const std::string x = std::to_string(e.exponent);
        return wrap(*e.args[0], 5) + "^" + (e.exponent < 0 ? "(" + x + ")" : x);
    }
    case expr_kind::exp:
        return wrap(*e.args[0], 5) + "^" + wrap(*e.args[1], 6);
    case expr_kind::factorial:
        return wrap(*e.args[0], 6) + "!";
    case expr_kind::binomial:
        return "binomial(" + to_string(*e.args[0]) + ", " + to_string(*e.args[1]) + ")";
    }
    return "";
}

// Tree form, e.g. "Pow(Binomial(n,k),2)".
inline std::string describe(const expr &e)
{
    auto args = [&e]() {
        std::string s;
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            s += (i ? "," : "") + describe(*e.args[i]);
        }
        return s;
    };
    switch (e.kind) {
    case expr_kind::integer:
        return e.num.get_str();
    case expr_kind::rational:
        return e.num.get_str() + "/" + e.den.get_str();
    case expr_kind::variable:
        return e.name;
    case expr_kind::neg:
        return "Neg(" + args() + ")";
    case expr_kind::add:
        return "Add(" + args() + ")";
    case expr_kind::sub:
        return "Sub(" + args() + ")";
    case expr_kind::mul:
        return "Mul(" + args() + ")";
    case expr_kind::div:
        return "Div(" + args() + ")";
    case expr_kind::pow:
        return "Pow(" + args() + "," + std::to_string(e.exponent) + ")";
    case expr_kind::exp:
        return "Exp(" + args() + ")";
    case expr_kind::factorial:
        return "Factorial(" + args() + ")";
    case expr_kind::binomial:
        return "Binomial(" + args() + ")";
    }
    return "";
}

inline bool has_term_atoms(const expr &e)
{
    if (e.kind == expr_kind::factorial || e.kind == expr_kind::binomial || e.kind == expr_kind::exp) {
        return true;
    }
    return std::any_of(e.args.begin(), e.args.end(), [](const expr_ptr &a) { return has_term_atoms(*a); });
}

inline rational_function lower_rational(const expr &e, const std::vector<std::string> &vars)
{
    switch (e.kind) {
    case expr_kind::integer:
        return rational_function(vars, rational(e.num));
    case expr_kind::rational: {
        rational q(e.num, e.den);
        q.canonicalize();
        return rational_function(vars, q);
    }
    case expr_kind::variable:
        return rational_function::variable(vars, e.name);
    case expr_kind::neg:
        return -lower_rational(*e.args[0], vars);
    case expr_kind::add:
        return lower_rational(*e.args[0], vars) + lower_rational(*e.args[1], vars);
    case expr_kind::sub:
        return lower_rational(*e.args[0], vars) - lower_rational(*e.args[1], vars);
    case expr_kind::mul:
        return lower_rational(*e.args[0], vars) * lower_rational(*e.args[1], vars);
    case expr_kind::div: {
        const rational_function d = lower_rational(*e.args[1], vars);
        if (d.is_zero()) {
            throw division_error("division by zero in " + to_string(e));
        }
        return lower_rational(*e.args[0], vars) / d;
    }
    case expr_kind::pow: {
        const rational_function b = lower_rational(*e.args[0], vars);
        if (b.is_zero() && e.exponent < 0) {
            throw division_error("negative power of zero in " + to_string(e));
        }
        return b.pow(e.exponent);
    }
    default:
        throw unsupported_expression_error("'" + to_string(e) + "' is not a rational function");
    }
}

namespace detail
{

// (alpha, beta, gamma) of alpha n + beta k + gamma with integer alpha, beta.
inline gamma_factor affine_in(const expr &a, const std::string &n, const std::string &k)
{
    const std::vector<std::string> v{n, k};
    const rational_function f = lower_rational(a, v);
    if (!f.is_polynomial() || f.num().total_degree() > 1) {
        throw unsupported_expression_error("'" + to_string(a) + "' is not linear in " + n + " and " + k);
    }
    const multipoly &p = f.num();
    const rational c0 = p.constant_term();
    const rational cn = p.derivative(n).constant_term();
    const rational ck = p.derivative(k).constant_term();
    if (!is_integer(cn) || !is_integer(ck)) {
        throw unsupported_expression_error("'" + to_string(a) + "' needs integer coefficients of " + n + " and " + k);
    }
    return {to_long(cn.get_num()), to_long(ck.get_num()), c0, 1};
}

class term_lowering
{
public:
    term_lowering(std::string n, std::string k) : m_n(std::move(n)), m_k(std::move(k)) {}

    proper_term_expr run(const expr &e)
    {
        collect(e, 1);
        proper_term_expr out;
        out.n = m_n;
        out.k = m_k;
        out.p = m_p * multipoly(m_p.vars(), m_scalar);
        out.c = m_c;
        out.d = m_d;
        out.gammas = m_gammas;
        return out;
    }

private:
    std::vector<std::string> vars() const
    {
        return {m_n, m_k};
    }

    void gamma(gamma_factor g, long e)
    {
        g.e = e;
        if (e != 0) {
            m_gammas.push_back(g);
        }
    }

    // q^e for a polynomial q with e possibly negative; a non-constant q in
    // the denominator must be linear, where 1/z = Gamma(z)/Gamma(z+1).
    void poly_factor(const multipoly &q, long e)
    {
        if (q.is_constant()) {
            m_scalar *= pow(q.constant_value(), e);
            return;
        }
        if (e > 0) {
            m_p = m_p * q.pow(static_cast<unsigned>(e));
            return;
        }
        if (q.total_degree() != 1) {
            throw unsupported_expression_error("denominator factor " + q.to_string() + " is not linear");
        }
        rational cn = q.derivative(m_n).constant_term();
        rational ck = q.derivative(m_k).constant_term();
        rational s = !is_zero(cn) ? cn : ck;
        // Scale so that the leading of (n, k) coefficients is 1, then clear
        // denominators of the other.
        rational other = (!is_zero(cn) ? ck : cn) / s;
        s *= rational(1) / rational(other.get_den());
        cn /= s;
        ck /= s;
        if (!is_integer(cn) || !is_integer(ck)) {
            throw unsupported_expression_error("denominator factor " + q.to_string() + " is not proper");
        }
        m_scalar *= pow(s, e);
        gamma_factor g{to_long(cn.get_num()), to_long(ck.get_num()), q.constant_term() / s, 1};
        gamma(g, -e);
        g.gamma += 1;
        gamma(g, e);
    }

    void collect(const expr &e, long m)
    {
        switch (e.kind) {
        case expr_kind::mul:
            collect(*e.args[0], m);
            collect(*e.args[1], m);
            return;
        case expr_kind::div:
            collect(*e.args[0], m);
            collect(*e.args[1], -m);
            return;
        case expr_kind::neg:
            if (m % 2 != 0) {
                m_scalar = -m_scalar;
            }
            collect(*e.args[0], m);
            return;
        case expr_kind::pow:
            collect(*e.args[0], m * e.exponent);
            return;
        case expr_kind::factorial: {
            gamma_factor g = affine_in(*e.args[0], m_n, m_k);
            g.gamma += 1;
            gamma(g, m);
            return;
        }
        case expr_kind::binomial: {
            gamma_factor a = affine_in(*e.args[0], m_n, m_k);
            gamma_factor b = affine_in(*e.args[1], m_n, m_k);
            gamma_factor c{a.alpha - b.alpha, a.beta - b.beta, a.gamma - b.gamma + 1, 1};
            a.gamma += 1;
            b.gamma += 1;
            gamma(a, m);
            gamma(b, -m);
            gamma(c, -m);
            return;
        }
        case expr_kind::exp: {
            const rational_function base = lower_rational(*e.args[0], vars());
            if (base.is_zero()) {
                throw unsupported_expression_error("zero base in " + to_string(e));
            }
            const rational c = base.constant_value();
            const gamma_factor x = affine_in(*e.args[1], m_n, m_k);
            if (!is_integer(x.gamma)) {
                throw unsupported_expression_error("non-integer constant in the exponent of " + to_string(e));
            }
            m_c *= pow(c, x.alpha * m);
            m_d *= pow(c, x.beta * m);
            m_scalar *= pow(c, to_long(x.gamma.get_num()) * m);
            return;
        }
        default:
            break;
        }
        if (has_term_atoms(e)) {
            throw unsupported_expression_error("'" + to_string(e)
                                               + "' is a sum of terms, not a hypergeometric term");
        }
        const rational_function f = lower_rational(e, vars());
        if (f.is_zero()) {
            throw domain_error("the zero term is not hypergeometric");
        }
        poly_factor(f.num(), m);
        poly_factor(f.den(), -m);
    }

    std::string m_n;
    std::string m_k;
    multipoly m_p{std::vector<std::string>{m_n, m_k}, rational(1)};
    rational m_scalar{1};
    rational m_c{1};
    rational m_d{1};
    std::vector<gamma_factor> m_gammas;
};

} // namespace detail

using lowered_expr = std::variant<rational_function, proper_term_expr>;

// Purely rational input becomes a rational function over vars; anything with
// factorials, binomials or c^e becomes a proper term in (n, k).
inline lowered_expr lower_expr(const expr &e, const std::vector<std::string> &vars, const std::string &n = "n",
                               const std::string &k = "k")
{
    if (!has_term_atoms(e)) {
        return lower_rational(e, vars);
    }
    return detail::term_lowering(n, k).run(e);
}

namespace detail
{

inline bool mentions(const expr &e, const std::string &v)
{
    if (e.kind == expr_kind::variable) {
        return e.name == v;
    }
    return std::any_of(e.args.begin(), e.args.end(), [&v](const expr_ptr &a) { return mentions(*a, v); });
}

// Coefficients have to stand to the left of the generator.
inline void check_generator_order(const expr &e, const std::string &gen, const std::string &var)
{
    if ((e.kind == expr_kind::mul || e.kind == expr_kind::div) && mentions(*e.args[0], gen)
        && mentions(*e.args[1], var)) {
        throw unsupported_expression_error("coefficients must be written to the left of " + gen);
    }
    if (e.kind == expr_kind::div && mentions(*e.args[1], gen)) {
        throw unsupported_expression_error("division by " + gen);
    }
    for (const auto &a : e.args) {
        check_generator_order(*a, gen, var);
    }
}

} // namespace detail

// Reads the text produced by ore_operator::to_string, e.g. "(2*x)*Dx + 1".
inline ore_operator parse_operator(const std::string &src, const ore_algebra &alg)
{
    const std::string g = alg.generator_name();
    const std::vector<std::string> vars{alg.var, g};
    const expr_ptr e = parse_expr(src, vars);
    if (has_term_atoms(*e)) {
        throw unsupported_expression_error("operator coefficients must be rational functions");
    }
    detail::check_generator_order(*e, g, alg.var);
    const rational_function f = lower_rational(*e, vars);
    if (f.den().depends_on(g)) {
        throw unsupported_expression_error("negative power of " + g);
    }
    const std::vector<std::string> cv{alg.var};
    const multipoly &num = f.num();
    const rational_function den(f.den().with_vars(cv));
    std::vector<rational_function> coeffs(static_cast<std::size_t>(std::max(num.degree(g), 0)) + 1u,
                                          rational_function(cv));
    const auto gi = static_cast<std::size_t>(num.var_index(g));
    const auto vi = static_cast<std::size_t>(num.var_index(alg.var));
    const rational_function x = rational_function::variable(cv, alg.var);
    for (const auto &[m, c] : num.terms()) {
        coeffs[static_cast<std::size_t>(m[gi])] += rational_function(cv, c) * x.pow(m[vi]) / den;
    }
    return ore_operator(alg, std::move(coeffs));
}

} // namespace ctel

#endif
