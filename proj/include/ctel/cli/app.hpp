#ifndef CTEL_CLI_APP_HPP
#define CTEL_CLI_APP_HPP

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <ctel/cli/expr.hpp>
#include <ctel/diagonal/diagonal.hpp>
#include <ctel/errors.hpp>
#include <ctel/hyper/gosper.hpp>
#include <ctel/hyper/sum_recurrence.hpp>
#include <ctel/hyper/term.hpp>
#include <ctel/hyper/zeilberger.hpp>
#include <ctel/ore/recurrence.hpp>
#include <ctel/rational/az.hpp>
#include <ctel/rational/hermite.hpp>
#include <ctel/rational/order_degree.hpp>
#include <ctel/rational/reduction_ct.hpp>

namespace ctel::cli
{

using json = nlohmann::ordered_json;

enum exit_status : int
{
    exit_ok = 0,
    exit_verification = 1,
    exit_usage = 2,
    exit_unsupported = 3,
    exit_singularity = 4
};

struct command_result
{
    json doc;
    int status = exit_ok;
    // Replaces the key/value rendering in text mode.
    std::optional<std::string> text;
    // Reason printed on standard error when status is nonzero.
    std::string message;
};

inline std::string rational_text(const rational &q)
{
    return q.get_str();
}

inline std::string pretty(const json &doc)
{
    std::ostringstream os;
    for (const auto &[key, v] : doc.items()) {
        os << key << ": ";
        if (v.is_string()) {
            os << v.get<std::string>();
        }
        else if (v.is_array()) {
            bool first = true;
            for (const auto &x : v) {
                os << (first ? "" : ", ") << (x.is_string() ? x.get<std::string>() : x.dump());
                first = false;
            }
        }
        else {
            os << v.dump();
        }
        os << "\n";
    }
    return os.str();
}

namespace detail
{

inline hyper_term term_from_input(const std::string &src, const std::string &n, const std::string &k)
{
    const std::vector<std::string> vars{n, k};
    const auto low = lower_expr(*parse_expr(src, vars), vars, n, k);
    if (const auto *pt = std::get_if<proper_term_expr>(&low)) {
        return compile_proper_term(*pt);
    }
    const rational_function &f = std::get<rational_function>(low);
    if (f.is_zero()) {
        throw domain_error("the zero term is not hypergeometric");
    }
    rational base;
    try {
        base = f.evaluate(std::vector<rational>(f.vars().size()));
    }
    catch (const division_error &) {
        throw singularity_error("the input has a pole at (" + n + ", " + k + ") = (0, 0)");
    }
    return make_hyper_term(n, k, f.shift(n, rational(1)) / f, f.shift(k, rational(1)) / f, base);
}

inline rational_function rational_input(const std::string &src, const std::vector<std::string> &vars)
{
    const expr_ptr e = parse_expr(src, vars);
    if (has_term_atoms(*e)) {
        throw unsupported_expression_error("expected a rational function, got '" + to_string(*e) + "'");
    }
    return lower_rational(*e, vars);
}

inline json rationals(const std::vector<rational> &v)
{
    json a = json::array();
    for (const auto &x : v) {
        a.push_back(rational_text(x));
    }
    return a;
}

inline command_result refuse(const std::string &what)
{
    command_result r;
    r.status = exit_verification;
    r.message = what;
    return r;
}

} // namespace detail

inline command_result cmd_gosper(const std::string &src, const std::string &k, const std::string &param)
{
    const std::vector<std::string> vars{param, k};
    const auto low = lower_expr(*parse_expr(src, vars), vars, param, k);
    rational_function r;
    if (const auto *pt = std::get_if<proper_term_expr>(&low)) {
        r = compile_proper_term(*pt).rho_k;
    }
    else {
        const rational_function &f = std::get<rational_function>(low);
        if (f.is_zero()) {
            throw domain_error("gosper needs a nonzero term");
        }
        r = f.shift(k, rational(1)) / f;
    }
    const gosper_result g = gosper(r, k, param);
    command_result out;
    out.doc["command"] = "gosper";
    out.doc["shift_quotient"] = r.to_string();
    if (!g.certificate) {
        out.doc["status"] = "not summable";
        out.doc["certificate"] = nullptr;
        return out;
    }
    const rational_function &y = *g.certificate;
    const rational_function one(y.vars(), rational(1));
    if (y.shift(k, rational(1)) * r - y != one.with_vars(union_vars(y.vars(), r.vars()))) {
        return detail::refuse("gosper certificate fails y(k+1) r(k) - y(k) = 1");
    }
    out.doc["status"] = "summable";
    out.doc["certificate"] = y.to_string();
    out.doc["verified"] = true;
    return out;
}

inline command_result cmd_zeilberger(const std::string &src, const std::string &n, const std::string &k,
                                     int max_order)
{
    const hyper_term f = detail::term_from_input(src, n, k);
    const auto res = zeilberger(f, max_order);
    if (!verify_ct_shift(f, res)) {
        return detail::refuse("telescoper and certificate fail the telescoping identity");
    }
    command_result out;
    out.doc["command"] = "zeilberger";
    out.doc["telescoper"] = res.telescoper.to_string();
    out.doc["certificate"] = res.certificate.to_string();
    out.doc["order"] = res.order;
    out.doc["verified"] = true;
    return out;
}

inline command_result cmd_sumrec(const std::string &src, const std::string &n, const std::string &k, int max_order,
                                 int check)
{
    const hyper_term f = detail::term_from_input(src, n, k);
    const auto res = zeilberger(f, max_order);
    if (!verify_ct_shift(f, res)) {
        return detail::refuse("telescoper and certificate fail the telescoping identity");
    }
    const recurrence rec = ct_to_sum_recurrence(f, res);
    command_result out;
    out.doc["command"] = "sumrec";
    out.doc["telescoper"] = res.telescoper.normalized().to_string();
    out.doc["recurrence"] = rec.to_string("F") + " = G(" + n + ")";
    out.doc["order"] = rec.order();
    out.doc["verified"] = true;
    if (check < 0) {
        return out;
    }
    // F(m) by unrolling, with G evaluated from the certificate; brute-force
    // sums seed the first values and any index with a vanishing leading
    // coefficient.
    const long ord = rec.order();
    std::vector<rational> brute, rhs, a;
    std::vector<long> supplied;
    for (long m = 0; m <= check; ++m) {
        brute.push_back(definite_sum(f, m));
    }
    for (long m = 0; m <= check; ++m) {
        if (m < ord) {
            a.push_back(brute[static_cast<std::size_t>(m)]);
            continue;
        }
        const long i0 = m - ord;
        const rational g = rec.rhs(i0);
        rhs.push_back(g);
        const rational lead = rec.leading()(rational(i0));
        if (is_zero(lead)) {
            supplied.push_back(m);
            a.push_back(brute[static_cast<std::size_t>(m)]);
            continue;
        }
        rational s = g;
        for (long i = 0; i < ord; ++i) {
            s -= rec.coeffs()[static_cast<std::size_t>(i)](rational(i0)) * a[static_cast<std::size_t>(i0 + i)];
        }
        a.push_back(s / lead);
    }
    out.doc["rhs"] = detail::rationals(rhs);
    out.doc["values"] = detail::rationals(a);
    out.doc["supplied_indices"] = supplied;
    const bool match = a == brute;
    out.doc["matches_direct_sums"] = match;
    if (!match) {
        out.status = exit_verification;
        out.message = "unrolled values differ from direct sums";
    }
    return out;
}

inline command_result cmd_hermite(const std::string &src, const std::string &x, const std::string &y)
{
    const rational_function f = detail::rational_input(src, {x, y});
    const auto res = hermite_reduce(f, y);
    if (res.g.derivative(y) + res.h != f) {
        return detail::refuse("Hermite reduction does not reconstruct the input");
    }
    command_result out;
    out.doc["command"] = "hermite";
    out.doc["g"] = res.g.to_string();
    out.doc["h"] = res.h.to_string();
    out.doc["verified"] = true;
    return out;
}

inline command_result cmd_ct_rational(const std::string &src, const std::string &x, const std::string &y,
                                      const std::string &method, int order)
{
    const rational_function f = detail::rational_input(src, {x, y});
    std::optional<diff_telescoper_result> res;
    if (method == "az") {
        if (order < 0) {
            throw domain_error("--method az needs --order r with r >= 0");
        }
        res = az_ct(f, order, x, y);
        if (!res) {
            throw not_found(order);
        }
    }
    else {
        res = reduction_ct(f, x, y);
    }
    if (!verify_ct_diff(f, *res, y)) {
        return detail::refuse("telescoper and certificate fail the telescoping identity");
    }
    command_result out;
    out.doc["command"] = "ct-rational";
    out.doc["method"] = method;
    out.doc["telescoper"] = res->telescoper.to_string();
    out.doc["certificate"] = res->certificate.to_string();
    out.doc["order"] = res->order;
    out.doc["verified"] = true;
    return out;
}

inline command_result cmd_od_curve(const std::string &src, const std::string &x, const std::string &y, int r_min,
                                   int r_max, int d_cap)
{
    const rational_function f = detail::rational_input(src, {x, y});
    const auto pts = order_degree_scan(f, r_min, r_max, d_cap, x, y);
    command_result out;
    out.doc["command"] = "od-curve";
    out.doc["points"] = json::array();
    for (const auto &p : pts) {
        out.doc["points"].push_back({{"order", p.order}, {"degree", p.degree}});
    }
    std::ostringstream csv;
    write_order_degree_csv(csv, pts);
    out.text = csv.str();
    return out;
}

inline command_result cmd_diagonal(int d, bool challenge, int check, const std::string &src)
{
    if (d < 1) {
        throw domain_error("--d must be at least 1");
    }
    diagonal_problem p;
    if (challenge) {
        p = make_diagonal_problem(challenge_function(d), d);
    }
    else {
        if (src.empty()) {
            throw domain_error("diagonal needs a rational function or --challenge");
        }
        p = make_diagonal_problem(detail::rational_input(src, default_diagonal_vars(d)), d);
    }
    ore_operator l;
    if (d == 2) {
        const rational_function g = diagonal_integrand(p);
        const auto res = reduction_ct(g, "x", "z");
        if (!verify_ct_diff(g, res, "z")) {
            return detail::refuse("telescoper and certificate fail the telescoping identity");
        }
        l = res.telescoper;
    }
    else {
        l = diagonal_ode(p);
        const rational_function f = p.f.substitute(p.vars[0], rational_function::variable(
                                                                  union_vars(p.f.vars(), {"x"}), "x"));
        if (!ore_apply(l, f.with_vars({"x"})).is_zero()) {
            return detail::refuse("operator does not annihilate F");
        }
    }
    command_result out;
    out.doc["command"] = "diagonal";
    out.doc["d"] = d;
    out.doc["telescoper"] = l.to_string();
    out.doc["recurrence"] = ode_to_rec(l).to_string();
    if (check < 0) {
        out.doc["verified_terms"] = 0;
        out.doc["status"] = "computed";
        return out;
    }
    const diagonal_report rep = check_diagonal_recurrence(p, l, check);
    out.doc["verified_terms"] = rep.verified_terms;
    out.doc["status"] = rep.verified ? "verified" : "failed";
    out.doc["supplied_indices"] = rep.supplied_indices;
    if (rep.failing_index) {
        out.doc["failing_index"] = *rep.failing_index;
        out.status = exit_verification;
        out.message = "recurrence disagrees with the series at index " + std::to_string(*rep.failing_index);
    }
    return out;
}

// Runs one command line (without the program name). Results go to out,
// diagnostics to err; the return value is the process exit status.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Creative telescoping for hypergeometric terms and rational functions", "ctel"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Print JSON instead of text");

    std::string src;
    std::string n = "n", k = "k", x = "x", y = "y", param = "n", method = "reduction";
    int max_order = 4, check = -1, order = -1, r_min = 0, r_max = 0, d_cap = 0, d = 2;
    bool challenge = false;

    auto *gos = app.add_subcommand("gosper", "Indefinite hypergeometric summation");
    gos->add_option("--var", k, "Summation variable")->capture_default_str();
    gos->add_option("--param", param, "Parameter treated as a constant")->capture_default_str();
    gos->add_option("expr", src, "Term")->required();

    auto *zb = app.add_subcommand("zeilberger", "Telescoper for a hypergeometric term");
    auto *sr = app.add_subcommand("sumrec", "Recurrence for sum_{k=0}^n f(n,k)");
    for (auto *s : {zb, sr}) {
        s->add_option("--n", n, "Recurrence variable")->capture_default_str();
        s->add_option("--k", k, "Summation variable")->capture_default_str();
        s->add_option("--max-order", max_order, "Largest order tried")->capture_default_str();
        s->add_option("expr", src, "Term")->required();
    }
    sr->add_option("--check", check, "Compare unrolled values with direct sums up to N");

    auto *he = app.add_subcommand("hermite", "Hermite reduction in y");
    auto *ct = app.add_subcommand("ct-rational", "Telescoper for a bivariate rational function");
    auto *od = app.add_subcommand("od-curve", "Order-degree curve as CSV");
    for (auto *s : {he, ct, od}) {
        s->add_option("--x", x, "Surviving variable")->capture_default_str();
        s->add_option("--y", y, "Integration variable")->capture_default_str();
        s->add_option("expr", src, "Rational function")->required();
    }
    ct->add_option("--method", method, "reduction or az")
        ->check(CLI::IsMember({"reduction", "az"}))
        ->capture_default_str();
    ct->add_option("--order", order, "Order of the ansatz (az)");
    od->add_option("--rmin", r_min, "Smallest order")->capture_default_str();
    od->add_option("--rmax", r_max, "Largest order")->required();
    od->add_option("--dcap", d_cap, "Largest x-degree tried")->required();

    auto *dg = app.add_subcommand("diagonal", "Differential equation and recurrence for a diagonal");
    dg->add_option("--d", d, "Number of variables")->required();
    dg->add_flag("--challenge", challenge, "Use 1/(1 - sum x_i/(1 - x_i))");
    dg->add_option("--check", check, "Verify against N+1 series coefficients");
    dg->add_option("expr", src, "Rational function in x1..xd");

    for (auto *s : app.get_subcommands({})) {
        s->fallthrough();
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    }
    catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    command_result res;
    try {
        if (gos->parsed()) {
            res = cmd_gosper(src, k, param);
        }
        else if (zb->parsed()) {
            res = cmd_zeilberger(src, n, k, max_order);
        }
        else if (sr->parsed()) {
            res = cmd_sumrec(src, n, k, max_order, check);
        }
        else if (he->parsed()) {
            res = cmd_hermite(src, x, y);
        }
        else if (ct->parsed()) {
            res = cmd_ct_rational(src, x, y, method, order);
        }
        else if (od->parsed()) {
            res = cmd_od_curve(src, x, y, r_min, r_max, d_cap);
        }
        else {
            res = cmd_diagonal(d, challenge, check, src);
        }
    }
    catch (const parse_error &e) {
        err << "parse error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const unsupported_error &e) {
        err << "unsupported: " << e.what() << "\n";
        return exit_unsupported;
    }
    catch (const singularity_error &e) {
        err << "singularity: " << e.what() << "\n";
        return exit_singularity;
    }
    catch (const pole_error &e) {
        err << "pole: " << e.what() << "\n";
        return exit_singularity;
    }
    catch (const division_error &e) {
        err << "pole: " << e.what() << "\n";
        return exit_singularity;
    }
    catch (const domain_error &e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const not_found &e) {
        err << "not found: " << e.what() << "\n";
        return exit_verification;
    }
    catch (const verification_error &e) {
        err << "verification failed: " << e.what() << "\n";
        return exit_verification;
    }
    catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_verification;
    }

    if (res.status != exit_ok && res.doc.empty()) {
        err << "verification failed: " << res.message << "\n";
        return res.status;
    }
    if (as_json) {
        out << res.doc.dump(2) << "\n";
    }
    else {
        out << (res.text ? *res.text : pretty(res.doc));
    }
    if (res.status != exit_ok) {
        err << "verification failed: " << res.message << "\n";
    }
    return res.status;
}

} // namespace ctel::cli

#endif
