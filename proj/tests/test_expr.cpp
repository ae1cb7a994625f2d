#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gibbslab/expr.hpp"
#include "gibbslab/quadreal.hpp"

using namespace gibbslab;

TEST_CASE("basic parses") {
    eps_expr e = parse_weight_expr("log(eps)");
    REQUIRE(e.get()->kind == expr_node::k_log);
    CHECK(e.get()->lhs->kind == expr_node::k_eps);

    // the oscillatory weight from the three-component example
    eps_expr osc = parse_weight_expr("(sin(1/eps)/3+1)*log(eps)");
    CHECK(osc.get()->kind == expr_node::k_mul);
    CHECK(osc.get()->rhs->kind == expr_node::k_log);

    eps_expr l = parse_weight_expr("log(11/10*eps+2)");
    CHECK(l.get()->kind == expr_node::k_log);
    CHECK(l.get()->lhs->kind == expr_node::k_add);
}

TEST_CASE("evaluation") {
    CHECK(eval_expr(parse_weight_expr("log(eps)"), 1.0) == 0.0);
    CHECK(eval_expr(parse_weight_expr("4*log(eps)"), 0.1) ==
          Catch::Approx(-9.210340371976184).epsilon(1e-15));
    CHECK(eval_expr(parse_weight_expr("sin(1/eps)"), 2.0 / M_PI) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(eval_expr(parse_weight_expr("eps^(3/2)"), 4.0) == Catch::Approx(8.0).epsilon(1e-15));
    CHECK(eval_expr(parse_weight_expr("eps^2"), 3.0) == Catch::Approx(9.0).epsilon(1e-15));
    CHECK(eval_expr(parse_weight_expr("-(eps)+2"), 0.5) == Catch::Approx(1.5));
    CHECK(eval_expr(parse_weight_expr("-eps+2"), 0.5) == Catch::Approx(1.5));
    CHECK(eval_expr(parse_weight_expr("exp(log(eps))"), 0.37) == Catch::Approx(0.37).epsilon(1e-14));
}

TEST_CASE("named parameters fold to literals") {
    std::map<std::string, double> p{{"s", 1.5}};
    eps_expr e = parse_weight_expr("s*log(eps)", p);
    CHECK(eval_expr(e, 0.1) == Catch::Approx(1.5 * std::log(0.1)).epsilon(1e-15));
    CHECK_FALSE(depends_on_eps(parse_weight_expr("s", p)));
    CHECK_THROWS_AS(parse_weight_expr("t*log(eps)", p), expr_syntax_error);
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_weight_expr("log(eps");
        FAIL("expected throw");
    } catch (const expr_syntax_error& e) {
        CHECK(e.position == 7);
    }
    CHECK_THROWS_AS(parse_weight_expr("log eps"), expr_syntax_error);
    CHECK_THROWS_AS(parse_weight_expr("2 +"), expr_syntax_error);
    CHECK_THROWS_AS(parse_weight_expr("foo(eps)"), expr_syntax_error);
    CHECK_THROWS_AS(parse_weight_expr("1 2"), expr_syntax_error);
}

TEST_CASE("evaluation errors name the subexpression") {
    eps_expr e = parse_weight_expr("log(eps-2)");
    try {
        eval_expr(e, 1.0);   // log(-1)
        FAIL("expected throw");
    } catch (const expr_eval_error& ex) {
        CHECK(std::string(ex.what()).find("log((eps-2))") != std::string::npos);
    }
    CHECK_THROWS_AS(eval_expr(parse_weight_expr("1/(eps-1)"), 1.0), expr_eval_error);
}

TEST_CASE("quad evaluation agrees with double and extends precision") {
    eps_expr e = parse_weight_expr("log(11/10*eps+2)");
    double d = eval_expr(e, 0.1);
    qreal q = eval_expr(e, qreal(0.1));
    CHECK(std::fabs(d - to_double(q)) < 1e-14);

    // 11/10*eps+1 at eps=10^-k is exact-ish in quad
    eps_expr w = parse_weight_expr("exp(log(11/10*eps+1))");
    qreal eps(1.0);
    for (int i = 0; i < 6; ++i) eps /= qreal(10);
    qreal v = eval_expr(w, eps);
    qreal expect = qreal(11) / qreal(10) * eps + qreal(1);
    CHECK(to_double(fabs(v - expect)) < 1e-30);
}

namespace {

expr_ptr random_ast(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    auto mk = [&](expr_node::kind_t k, expr_ptr l, expr_ptr r) {
        auto n = std::make_shared<expr_node>();
        n->kind = k;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return expr_ptr(n);
    };
    switch (pick(rng)) {
        case 0: {
            auto n = std::make_shared<expr_node>();
            n->kind = expr_node::k_number;
            double v = static_cast<double>(rng() % 1000) / 64.0;
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            n->literal = buf;
            n->num = v;
            return n;
        }
        case 1: {
            auto n = std::make_shared<expr_node>();
            n->kind = expr_node::k_eps;
            return expr_ptr(n);
        }
        case 2: return mk(expr_node::k_neg, random_ast(rng, depth - 1), nullptr);
        case 3: return mk(expr_node::k_log, random_ast(rng, depth - 1), nullptr);
        case 4: return mk(expr_node::k_exp, random_ast(rng, depth - 1), nullptr);
        case 5: return mk(expr_node::k_sin, random_ast(rng, depth - 1), nullptr);
        case 6: return mk(expr_node::k_add, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
        case 7: return mk(expr_node::k_sub, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
        case 8: return mk(expr_node::k_mul, random_ast(rng, depth - 1), random_ast(rng, depth - 1));
        default: {
            auto n = std::make_shared<expr_node>();
            n->kind = expr_node::k_pow;
            n->lhs = random_ast(rng, depth - 1);
            int p = 1 + static_cast<int>(rng() % 7), q = 1 + static_cast<int>(rng() % 4);
            n->literal = std::to_string(p) + "/" + std::to_string(q);
            n->num = static_cast<double>(p) / q;
            return expr_ptr(n);
        }
    }
}

} // namespace

TEST_CASE("printer round-trips through the parser") {
    std::mt19937 rng(20240811);
    for (int i = 0; i < 1000; ++i) {
        eps_expr e(random_ast(rng, 6));
        std::string printed = to_string(e);
        eps_expr back = parse_weight_expr(printed);
        if (!structurally_equal(e, back)) {
            INFO("printed: " << printed);
            CHECK(structurally_equal(e, back));
            break;
        }
    }
    SUCCEED();
}
