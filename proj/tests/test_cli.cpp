#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include <ctel/cli/app.hpp>
#include <ctel/cli/expr.hpp>

#include "support.hpp"

using namespace ctel;
using namespace ctel::test;
using json = nlohmann::json;

namespace
{

const std::vector<std::string> nk{"n", "k"};
const std::vector<std::string> xy{"x", "y"};
const std::vector<std::string> all_vars{"n", "k", "x", "y"};

std::string tree(const std::string &src, const std::vector<std::string> &vars = all_vars)
{
    return describe(*parse_expr(src, vars));
}

struct run_result
{
    int status;
    std::string out;
    std::string err;
};

run_result run_cli(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const int st = cli::run(args, out, err);
    return {st, out.str(), err.str()};
}

// Enough of JSON Schema for the committed output schemas.
bool validate(const json &v, const json &s, std::string &why)
{
    if (s.contains("const") && v != s["const"]) {
        why = "const mismatch at " + v.dump();
        return false;
    }
    if (s.contains("enum")) {
        bool hit = false;
        for (const auto &e : s["enum"]) {
            hit = hit || e == v;
        }
        if (!hit) {
            why = "not in enum: " + v.dump();
            return false;
        }
    }
    if (s.contains("type")) {
        std::vector<std::string> types;
        if (s["type"].is_array()) {
            for (const auto &t : s["type"]) {
                types.push_back(t.get<std::string>());
            }
        }
        else {
            types.push_back(s["type"].get<std::string>());
        }
        bool ok = false;
        for (const auto &t : types) {
            ok = ok || (t == "object" && v.is_object()) || (t == "array" && v.is_array())
                 || (t == "string" && v.is_string()) || (t == "integer" && v.is_number_integer())
                 || (t == "boolean" && v.is_boolean()) || (t == "null" && v.is_null());
        }
        if (!ok) {
            why = "wrong type: " + v.dump();
            return false;
        }
    }
    if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>()) {
        why = "below minimum: " + v.dump();
        return false;
    }
    if (v.is_string()) {
        const auto str = v.get<std::string>();
        if (s.contains("minLength") && str.size() < s["minLength"].get<std::size_t>()) {
            why = "too short";
            return false;
        }
        if (s.contains("pattern") && !std::regex_search(str, std::regex(s["pattern"].get<std::string>()))) {
            why = "pattern mismatch: " + str;
            return false;
        }
    }
    if (v.is_array() && s.contains("items")) {
        for (const auto &x : v) {
            if (!validate(x, s["items"], why)) {
                return false;
            }
        }
    }
    if (v.is_object()) {
        if (s.contains("required")) {
            for (const auto &r : s["required"]) {
                if (!v.contains(r.get<std::string>())) {
                    why = "missing " + r.get<std::string>();
                    return false;
                }
            }
        }
        for (const auto &[key, x] : v.items()) {
            if (s.contains("properties") && s["properties"].contains(key)) {
                if (!validate(x, s["properties"][key], why)) {
                    return false;
                }
            }
            else if (s.contains("additionalProperties") && s["additionalProperties"] == false) {
                why = "unexpected property " + key;
                return false;
            }
        }
    }
    return true;
}

json load_schema(const std::string &name)
{
    std::ifstream in(std::string(CTEL_SCHEMA_DIR) + "/" + name + ".json");
    return json::parse(in);
}

// Random tree in the shape the parser produces: no integer/integer
// quotients (those read back as rational literals), symbolic exponents only
// on numeric bases.
expr_ptr random_expr(rng &r, int depth)
{
    const auto leaf = [&r]() -> expr_ptr {
        switch (r.uniform(0, 3)) {
        case 0:
            return ex::integer_lit(integer(r.uniform(0, 20)));
        case 1:
            return ex::rational_lit(integer(r.uniform(0, 9)), integer(r.uniform(1, 9)));
        default:
            return ex::var(all_vars[static_cast<std::size_t>(r.uniform(0, 3))]);
        }
    };
    if (depth == 0) {
        return leaf();
    }
    switch (r.uniform(0, 10)) {
    case 0:
        return ex::neg(random_expr(r, depth - 1));
    case 1:
        return ex::add(random_expr(r, depth - 1), random_expr(r, depth - 1));
    case 2:
        return ex::sub(random_expr(r, depth - 1), random_expr(r, depth - 1));
    case 3:
        return ex::mul(random_expr(r, depth - 1), random_expr(r, depth - 1));
    case 4: {
        expr_ptr a = random_expr(r, depth - 1);
        expr_ptr b = random_expr(r, depth - 1);
        if (a->kind == expr_kind::integer && b->kind == expr_kind::integer) {
            b = ex::var("x");
        }
        return ex::div(a, b);
    }
    case 5:
        return ex::pow(random_expr(r, depth - 1), r.uniform(-3, 4));
    case 6:
        return ex::factorial(random_expr(r, depth - 1));
    case 7:
        return ex::binomial(random_expr(r, depth - 1), random_expr(r, depth - 1));
    case 8: {
        expr_ptr base = r.coin() ? ex::integer_lit(integer(r.uniform(2, 5)))
                                 : ex::rational_lit(integer(r.uniform(1, 5)), integer(r.uniform(2, 5)));
        if (r.coin(0.3)) {
            base = ex::neg(base);
        }
        return ex::exp(base, ex::add(ex::var("n"), random_expr(r, depth - 1)));
    }
    default:
        return leaf();
    }
}

rational gmp_binomial(long n, long k)
{
    integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return rational(b);
}

} // namespace

TEST(parse_expr, examples)
{
    EXPECT_EQ(tree("binomial(n,k)^2"), "Pow(Binomial(n,k),2)");
    EXPECT_EQ(tree("1/(x+y^2)"), "Div(1,Add(x,Pow(y,2)))");
    EXPECT_EQ(tree("k*k!"), "Mul(k,Factorial(k))");
}

TEST(parse_expr, precedence_and_associativity)
{
    EXPECT_EQ(tree("-x^2"), "Neg(Pow(x,2))");
    EXPECT_EQ(tree("x-y-k"), "Sub(Sub(x,y),k)");
    EXPECT_EQ(tree("x/y/k"), "Div(Div(x,y),k)");
    EXPECT_EQ(tree("x+y*k"), "Add(x,Mul(y,k))");
    EXPECT_EQ(tree("-x*y"), "Mul(Neg(x),y)");
    EXPECT_EQ(tree("2^k!"), "Exp(2,Factorial(k))");
    EXPECT_EQ(tree("(n+1)!^2"), "Pow(Factorial(Add(n,1)),2)");
    EXPECT_EQ(tree("x^-1"), "Pow(x,-1)");
    EXPECT_EQ(tree("1/2*x"), "Mul(1/2,x)");
    EXPECT_EQ(tree("x*1/2"), "Div(Mul(x,1),2)");
    EXPECT_EQ(tree("(1/2)^n"), "Exp(1/2,n)");
    EXPECT_EQ(tree("factorial(n)"), "Factorial(n)");
    EXPECT_EQ(tree(" n\n +\tk "), "Add(n,k)");
}

TEST(parse_expr, errors_carry_positions)
{
    try {
        parse_expr("x +\n  * y", all_vars);
        FAIL() << "expected parse_error";
    }
    catch (const parse_error &e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(e.column(), 3);
    }
    try {
        parse_expr("x + z", all_vars);
        FAIL() << "expected parse_error";
    }
    catch (const parse_error &e) {
        EXPECT_EQ(e.column(), 5);
        EXPECT_NE(std::string(e.what()).find("unknown identifier 'z'"), std::string::npos);
    }
    EXPECT_THROW(parse_expr("", all_vars), parse_error);
    EXPECT_THROW(parse_expr("(x", all_vars), parse_error);
    EXPECT_THROW(parse_expr("x)", all_vars), parse_error);
    EXPECT_THROW(parse_expr("sin(x)", all_vars), parse_error);
    EXPECT_THROW(parse_expr("binomial(n)", all_vars), parse_error);
    EXPECT_THROW(parse_expr("x^y", all_vars), parse_error);
    EXPECT_THROW(parse_expr("1/0", all_vars), parse_error);
    EXPECT_THROW(parse_expr("x $ y", all_vars), parse_error);
}

TEST(parse_expr, round_trip_corpus)
{
    const std::vector<std::string> corpus{
        "0", "7", "x", "-x", "--x", "x+y", "x-y", "x*y", "x/y", "x^3",
        "x^-2", "x^(-2)", "1/2", "-1/2", "3/4*x", "x*(3/4)", "x/(3/4)", "x - (y - k)", "x - (y + k)", "(x + y)*(x - y)",
        "(x + y)^2", "-(x + y)", "(-x)^2", "-x^2", "x^2*y^3/(k + 1)", "1/(x + y^2)", "1/(x^2 + y^2)", "(2*x)*y + 1",
        "k*k!", "k!", "(n + 1)!", "(k!)!", "k!!", "k!^2", "factorial(2*n)", "binomial(n, k)", "binomial(n,k)^2",
        "binomial(2*n, k)/(k + 1)", "binomial(n, k)*binomial(n, k)", "2^n", "2^k*binomial(n, k)", "(1/2)^n",
        "(-1)^k*binomial(n, k)", "(-2)^(n + k)", "3^(2*n - k)", "2^(k!)", "(n + k)!/(k!*2^k)",
        "n^2*k - 3*n*k^2 + 1/3", "((x))", "x*y*k*n", "x/y*k/n", "1 - x - y - x*y", "(1 - x)/(1 - 2*x)",
        "x^10 - 1", "binomial(n + k, 2*k)*(-1)^k/(k + 1)", "1/(n*(n + 1))"};
    ASSERT_GE(corpus.size(), 50u);
    for (const auto &s : corpus) {
        const expr_ptr a = parse_expr(s, all_vars);
        const std::string printed = to_string(*a);
        const expr_ptr b = parse_expr(printed, all_vars);
        EXPECT_TRUE(*a == *b) << s << " -> " << printed;
        EXPECT_EQ(to_string(*b), printed);
    }
}

TEST(parse_expr, random_trees_survive_print_and_parse)
{
    rng r(606);
    for (int t = 0; t < 400; ++t) {
        const expr_ptr e = random_expr(r, static_cast<int>(r.uniform(1, 4)));
        const std::string s = to_string(*e);
        const expr_ptr back = parse_expr(s, all_vars);
        EXPECT_TRUE(*e == *back) << describe(*e) << " printed as " << s << " read as " << describe(*back);
    }
}

TEST(lower_expr, rational_input)
{
    const auto a = lower_expr(*parse_expr("1/(x+y^2)", xy), xy);
    ASSERT_TRUE(std::holds_alternative<rational_function>(a));
    const rational_function x = rational_function::variable(xy, "x");
    const rational_function y = rational_function::variable(xy, "y");
    EXPECT_EQ(std::get<rational_function>(a), rational_function(xy, rational(1)) / (x + y * y));
    EXPECT_THROW(lower_expr(*parse_expr("x/(y-y)", xy), xy), division_error);
}

TEST(lower_expr, binomial_is_three_gamma_factors)
{
    const auto a = lower_expr(*parse_expr("binomial(n,k)", nk), nk);
    ASSERT_TRUE(std::holds_alternative<proper_term_expr>(a));
    const auto &pt = std::get<proper_term_expr>(a);
    ASSERT_EQ(pt.gammas.size(), 3u);
    EXPECT_EQ(pt.gammas[0].e, 1);
    EXPECT_EQ(pt.gammas[1].e, -1);
    EXPECT_EQ(pt.gammas[2].e, -1);
    const hyper_term f = compile_proper_term(pt);
    for (long n = 0; n <= 12; ++n) {
        for (long k = 0; k <= n; ++k) {
            EXPECT_EQ(evaluate_term(f, n, k), gmp_binomial(n, k)) << n << "," << k;
        }
    }
}

TEST(lower_expr, term_values_match_direct_evaluation)
{
    struct sample
    {
        std::string src;
        rational (*value)(long, long);
    };
    const std::vector<sample> cases{
        {"(n+k)!/(k!*2^k)",
         [](long n, long k) -> rational { return rational(factorial(static_cast<unsigned long>(n + k)))
                                     / rational(factorial(static_cast<unsigned long>(k))) / pow(rational(2), k); }},
        {"3^n*binomial(2*n,k)/(k+1)",
         [](long n, long k) -> rational { return pow(rational(3), n) * gmp_binomial(2 * n, k) / rational(k + 1); }},
        {"(-1)^k*binomial(n,k)^2",
         [](long n, long k) -> rational { return pow(rational(-1), k) * gmp_binomial(n, k) * gmp_binomial(n, k); }},
        {"(n+1)*(1/2)^(n+k)*factorial(n)",
         [](long n, long k) -> rational { return rational(n + 1) * pow(make_rational(1, 2), n + k)
                                     * rational(factorial(static_cast<unsigned long>(n))); }},
        {"binomial(n,k)/(2*k+2*n+2)",
         [](long n, long k) -> rational { return gmp_binomial(n, k) / rational(2 * k + 2 * n + 2); }},
    };
    for (const auto &c : cases) {
        const auto low = lower_expr(*parse_expr(c.src, nk), nk);
        ASSERT_TRUE(std::holds_alternative<proper_term_expr>(low)) << c.src;
        const hyper_term f = compile_proper_term(std::get<proper_term_expr>(low));
        for (long n = 0; n <= 8; ++n) {
            for (long k = 0; k <= n; ++k) {
                EXPECT_EQ(evaluate_term(f, n, k), c.value(n, k)) << c.src << " at " << n << "," << k;
            }
        }
    }
}

TEST(lower_expr, rejects_non_hypergeometric_forms)
{
    EXPECT_THROW(lower_expr(*parse_expr("binomial(n,k) + 1", nk), nk), unsupported_expression_error);
    EXPECT_THROW(lower_expr(*parse_expr("k!/(k^2+1)", nk), nk), unsupported_expression_error);
    EXPECT_THROW(lower_expr(*parse_expr("(k^2)!", nk), nk), unsupported_expression_error);
    EXPECT_THROW(lower_expr(*parse_expr("(k/2)!", nk), nk), unsupported_expression_error);
    EXPECT_THROW(lower_expr(*parse_expr("2^(k/2)", nk), nk), unsupported_expression_error);
}

TEST(parse_operator, round_trip)
{
    const ore_algebra dx = derivation_algebra("x");
    const ore_algebra sn = shift_algebra("n");
    EXPECT_EQ(parse_operator("(2*x)*Dx + 1", dx).to_string(), "(2*x)*Dx + 1");
    EXPECT_EQ(parse_operator("Sn^2 - (n+2)*Sn + 1", sn).to_string(), "Sn^2 - (n+2)*Sn + 1");
    EXPECT_EQ(parse_operator("1/x*Dx", dx).to_string(), "(1/x)*Dx");
    EXPECT_THROW(parse_operator("Dx*x", dx), unsupported_expression_error);
    EXPECT_THROW(parse_operator("1/Dx", dx), unsupported_expression_error);

    rng r(707);
    const std::vector<std::string> xv{"x"};
    for (int t = 0; t < 60; ++t) {
        std::vector<rational_function> cs;
        const int ord = static_cast<int>(r.uniform(0, 3));
        for (int i = 0; i <= ord; ++i) {
            multipoly num(xv), den(xv, rational(1));
            for (int j = 0; j <= 2; ++j) {
                num += multipoly(xv, r.small_rational()) * multipoly::variable(xv, "x").pow(static_cast<unsigned>(j));
            }
            if (r.coin(0.3)) {
                den = multipoly::variable(xv, "x") + multipoly(xv, rational(r.uniform(1, 3)));
            }
            cs.emplace_back(num, den);
        }
        const ore_operator op(r.coin() ? dx : derivation_algebra("x"), cs);
        const ore_operator back = parse_operator(op.to_string(), op.algebra());
        EXPECT_EQ(back, op) << op;
        EXPECT_EQ(back.to_string(), op.to_string());
    }
}

TEST(cli_run, documented_examples)
{
    const auto g = run_cli({"--json", "gosper", "--var", "k", "k*k!"});
    ASSERT_EQ(g.status, 0) << g.err;
    const json gj = json::parse(g.out);
    EXPECT_EQ(gj["certificate"], "1/k");

    const auto z = run_cli({"zeilberger", "--n", "n", "--k", "k", "binomial(n,k)", "--json"});
    ASSERT_EQ(z.status, 0) << z.err;
    const json zj = json::parse(z.out);
    EXPECT_EQ(zj["telescoper"], "Sn - 2");
    EXPECT_EQ(zj["verified"], true);

    const auto d = run_cli({"--json", "diagonal", "--d", "2", "--challenge", "--check", "30"});
    ASSERT_EQ(d.status, 0) << d.err;
    const json dj = json::parse(d.out);
    EXPECT_EQ(dj["status"], "verified");
    EXPECT_EQ(dj["verified_terms"], 31);

    const auto h = run_cli({"hermite", "1/(x+y^2)^2"});
    ASSERT_EQ(h.status, 0);
    EXPECT_NE(h.out.find("g: "), std::string::npos);

    const auto od = run_cli({"od-curve", "--rmax", "3", "--dcap", "3", "1/(x+y^2)"});
    ASSERT_EQ(od.status, 0);
    EXPECT_EQ(od.out.substr(0, 13), "order,degree\n");
    EXPECT_NE(od.out.find("1,1\n"), std::string::npos);
}

TEST(cli_run, outputs_match_schemas)
{
    const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
        {"gosper", {"gosper", "k*k!"}},
        {"gosper", {"gosper", "k"}},
        {"gosper", {"gosper", "--var", "k", "1/(k*(k+1))"}},
        {"zeilberger", {"zeilberger", "binomial(n,k)^2"}},
        {"zeilberger", {"zeilberger", "2^k"}},
        {"sumrec", {"sumrec", "--check", "10", "binomial(n,k)"}},
        {"sumrec", {"sumrec", "binomial(n,k)^2"}},
        {"hermite", {"hermite", "1/(x+y^2)^2"}},
        {"hermite", {"hermite", "--y", "y", "y^2 + x/(y+1)"}},
        {"ct-rational", {"ct-rational", "1/(x+y^2)"}},
        {"ct-rational", {"ct-rational", "--method", "az", "--order", "2", "1/(x^2+y^2)"}},
        {"od-curve", {"od-curve", "--rmax", "2", "--dcap", "2", "1/(x+y^2)"}},
        {"diagonal", {"diagonal", "--d", "2", "--challenge", "--check", "30"}},
        {"diagonal", {"diagonal", "--d", "1", "--challenge", "--check", "30"}},
        {"diagonal", {"diagonal", "--d", "2", "1/(1-x1-x2)"}},
    };
    for (const auto &[schema, args] : runs) {
        std::vector<std::string> a{"--json"};
        a.insert(a.end(), args.begin(), args.end());
        const auto res = run_cli(a);
        ASSERT_EQ(res.status, 0) << args.back() << ": " << res.err;
        std::string why;
        EXPECT_TRUE(validate(json::parse(res.out), load_schema(schema), why)) << args.back() << ": " << why;
    }
    // The validator itself rejects a malformed report.
    std::string why;
    EXPECT_FALSE(validate(json{{"command", "diagonal"}, {"d", 2}}, load_schema("diagonal"), why));
    EXPECT_FALSE(validate(json{{"command", "hermite"}, {"g", "1"}, {"h", "0"}, {"verified", false}},
                          load_schema("hermite"), why));
}

TEST(cli_run, sumrec_check_reproduces_direct_sums)
{
    const auto res = run_cli({"--json", "sumrec", "--check", "20", "binomial(n,k)"});
    ASSERT_EQ(res.status, 0) << res.err;
    const json j = json::parse(res.out);
    ASSERT_EQ(j["values"].size(), 21u);
    for (long n = 0; n <= 20; ++n) {
        EXPECT_EQ(j["values"][static_cast<std::size_t>(n)], pow(rational(2), n).get_str());
    }
    for (const auto &v : j["rhs"]) {
        EXPECT_EQ(v, "0");
    }
}

TEST(cli_run, exit_statuses)
{
    EXPECT_EQ(run_cli({}).status, cli::exit_usage);
    EXPECT_EQ(run_cli({"gosper"}).status, cli::exit_usage);
    EXPECT_EQ(run_cli({"hermite", "1/(x+"}).status, cli::exit_usage);
    EXPECT_EQ(run_cli({"hermite", "1/(x+z)"}).status, cli::exit_usage);
    EXPECT_EQ(run_cli({"ct-rational", "--method", "bogus", "1/(x+y)"}).status, cli::exit_usage);
    EXPECT_EQ(run_cli({"--help"}).status, cli::exit_ok);

    EXPECT_EQ(run_cli({"zeilberger", "binomial(n,k) + 1"}).status, cli::exit_unsupported);
    EXPECT_EQ(run_cli({"hermite", "x!"}).status, cli::exit_unsupported);
    EXPECT_EQ(run_cli({"diagonal", "--d", "3", "--challenge"}).status, cli::exit_unsupported);

    EXPECT_EQ(run_cli({"diagonal", "--d", "2", "1/x1"}).status, cli::exit_singularity);
    EXPECT_EQ(run_cli({"zeilberger", "1/k"}).status, cli::exit_singularity);

    const auto nf = run_cli({"ct-rational", "--method", "az", "--order", "0", "1/(x+y^2)"});
    EXPECT_EQ(nf.status, cli::exit_verification);
    EXPECT_TRUE(nf.out.empty());
    EXPECT_FALSE(nf.err.empty());
    EXPECT_EQ(run_cli({"zeilberger", "--max-order", "0", "binomial(n,k)"}).status, cli::exit_verification);

    const auto ng = run_cli({"gosper", "k!"});
    EXPECT_EQ(ng.status, cli::exit_ok);
    EXPECT_NE(ng.out.find("not summable"), std::string::npos);
}
