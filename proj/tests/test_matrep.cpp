#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gibbslab/matrep.hpp"
#include "gibbslab/models.hpp"
#include "gibbslab/quadreal.hpp"

using namespace gibbslab;

namespace {

// the lower-right 4-state slice of the three-component model: two maximal
// components with couplings eps (up) and eps^s (down)
perturbation_family two_of_52(double s) {
    transition_matrix a = transition_matrix::full(4);
    transition_matrix b(4);
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) b.set(2 * c + i, 2 * c + j, true);
    block_potential phi;
    std::map<state_pair, eps_expr> psi;
    eps_expr zero = parse_weight_expr("0");
    std::map<std::string, double> params{{"s", s}};
    eps_expr up = parse_weight_expr("log(eps)");
    eps_expr down = parse_weight_expr("s*log(eps)", params);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            phi.table[{i, j}] = {zero, zero};
            if (i / 2 == 0 && j / 2 == 1) psi[{i, j}] = up;
            if (i / 2 == 1 && j / 2 == 0) psi[{i, j}] = down;
        }
    return build_family(a, b, phi, psi, 0.5);
}

perturbation_family symmetric_components(int ncomp) {
    int d = 2 * ncomp;
    transition_matrix a = transition_matrix::full(d);
    transition_matrix b(d);
    for (int c = 0; c < ncomp; ++c)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) b.set(2 * c + i, 2 * c + j, true);
    block_potential phi;
    std::map<state_pair, eps_expr> psi;
    eps_expr zero = parse_weight_expr("0");
    eps_expr log_eps = parse_weight_expr("log(eps)");
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            phi.table[{i, j}] = {zero, zero};
            if (i / 2 != j / 2) psi[{i, j}] = log_eps;
        }
    return build_family(a, b, phi, psi, 0.5);
}

} // namespace

TEST_CASE("classify_components on the worked examples") {
    perturbation_family f52 = models::three_component(1.0);
    component_classification c52 = classify_components(f52);
    CHECK(c52.sigma3);
    CHECK(c52.T0.size() == 3);
    CHECK(c52.T1.empty());
    CHECK(c52.lambda_max == Catch::Approx(2.0).epsilon(1e-14));

    perturbation_family f53 = models::four_component();
    component_classification c53 = classify_components(f53);
    CHECK(c53.T0.size() == 4);
    CHECK(c53.lambda_max == Catch::Approx(3.0).epsilon(1e-13));

    // two loop states with weights e^0 < e^1: T0 is the heavier one
    transition_matrix a = transition_matrix::full(2), b(2);
    b.set(0, 0, true);
    b.set(1, 1, true);
    block_potential phi;
    eps_expr zero = parse_weight_expr("0"), one = parse_weight_expr("1");
    phi.table[{0, 0}] = {zero, zero};
    phi.table[{1, 1}] = {one, one};
    phi.table[{0, 1}] = {zero, zero};
    phi.table[{1, 0}] = {zero, zero};
    std::map<state_pair, eps_expr> psi{{{0, 1}, parse_weight_expr("log(eps)")},
                                       {{1, 0}, parse_weight_expr("log(eps)")}};
    component_classification cl = classify_components(build_family(a, b, phi, psi));
    REQUIRE(cl.T0.size() == 1);
    CHECK(cl.decomp.blocks[cl.T0[0]].states == std::vector<int>{1});
    CHECK(cl.T1.size() == 1);
}

TEST_CASE("sub-collection eigenvalues of the three-component model") {
    perturbation_family f = models::three_component(1.0);
    component_classification cls = classify_components(f);
    double eps = 1e-4;
    // {2,3} couples both ways: 2 + 2 eps^{(1+s)/2}
    CHECK(lambda_sub(f, cls, {1, 2}, eps) == Catch::Approx(2.0 + 2e-4).epsilon(1e-12));
    // {1,2} and {1,3} are block-triangular: exactly 2
    CHECK(lambda_sub(f, cls, {0, 1}, eps) == Catch::Approx(2.0).margin(1e-13));
    CHECK(lambda_sub(f, cls, {0, 2}, eps) == Catch::Approx(2.0).margin(1e-13));

    // a singleton component whose A-diagonal entry is 0 has an empty subshift
    transition_matrix a3 = transition_matrix::from_rows({"110", "001", "100"});
    transition_matrix b3 = transition_matrix::from_rows({"100", "000", "000"});
    block_potential phi;
    eps_expr zero = parse_weight_expr("0");
    eps_expr log_eps = parse_weight_expr("log(eps)");
    std::map<state_pair, eps_expr> psi;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (a3(i, j)) {
                phi.table[{i, j}] = {zero, zero};
                if (!b3(i, j)) psi[{i, j}] = log_eps;
            }
    perturbation_family f3 = build_family(a3, b3, phi, psi);
    component_classification cls3 = classify_components(f3);
    int empty_block = cls3.decomp.block_index[1];   // state 2 (1-based) has no A-loop
    CHECK_FALSE(cls3.decomp.blocks[empty_block].nonempty_subshift);
    CHECK(lambda_sub(f3, cls3, {empty_block}, 0.1) == 0.0);
}

TEST_CASE("lambda_full reduces to the B system when B equals A") {
    transition_matrix a = transition_matrix::full(2);
    block_potential phi;
    eps_expr e = parse_weight_expr("eps");
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) phi.table[{i, j}] = {e, parse_weight_expr("0")};
    perturbation_family f = build_family(a, a, phi, {});
    CHECK(lambda_full(f, 0.25) == Catch::Approx(2.0 * std::exp(0.25)).epsilon(1e-13));

    // four-component model vs the word-sum oracle
    perturbation_family f53 = models::four_component();
    double lam = lambda_full(f53, 1e-3);
    matrix<double> w = weighted_matrix(f53, 1e-3);
    CHECK(std::fabs(std::log(lam) - pressure_by_words(w, 400).value) < 5e-3);
}

TEST_CASE("coupling scales") {
    perturbation_family f = models::three_component(1.0);
    component_classification cls = classify_components(f);
    double eps = 1e-3;
    CHECK(coupling_scale(f, cls, 0, 1, eps) == Catch::Approx(eps).epsilon(1e-14));
    CHECK(coupling_scale(f, cls, 0, 2, eps) == 0.0);   // A_13 = O

    perturbation_family f53 = models::four_component();
    component_classification c53 = classify_components(f53);
    CHECK(coupling_scale(f53, c53, 2, 3, eps) == Catch::Approx(eps).epsilon(1e-14));
}

TEST_CASE("mv matrix reproduces the displayed four-component form") {
    perturbation_family f = models::four_component();
    component_classification cls = classify_components(f);
    for (double eps : {1e-2, 1e-3}) {
        mv_result<double> mv = mv_matrix(f, cls, eps);
        matrix<double> w = weighted_matrix(f, eps);
        perron_data_t<double> full = perron_data(w);
        const std::vector<double>& g = full.right;   // conformal weights

        CHECK(std::fabs(mv.V(0, 0) - 3.0) < 1e-12);
        CHECK(std::fabs(mv.V(1, 1) - (3.0 + 1.1 * eps)) < 1e-12);
        CHECK(std::fabs(mv.V(0, 1) - 2 * eps) < 1e-12);
        CHECK(std::fabs(mv.V(0, 2) - 2 * eps) < 1e-12);
        CHECK(std::fabs(mv.V(0, 3) - 2 * eps) < 1e-12);
        CHECK(std::fabs(mv.V(1, 0) - 2 * eps) < 1e-12);
        CHECK(std::fabs(mv.V(1, 2) - std::pow(eps, 4.0)) < 1e-14);
        CHECK(mv.V(1, 3) == 0.0);
        CHECK(std::fabs(mv.V(2, 1) - eps) < 1e-12);
        double e34 = eps / 5 * (g[6] + 10 * g[7]) / (g[6] + g[7]);
        double e43 = eps / 5 * (10 * g[4] + g[5]) / (g[4] + g[5]);
        CHECK(std::fabs(mv.V(2, 3) - e34) < 1e-12);
        CHECK(std::fabs(mv.V(3, 2) - e43) < 1e-12);

        // defining property: the representation's Perron root is lambda(eps)
        CHECK(std::fabs(spectral_radius(mv.V) - full.eta) < 1e-9);
    }
}

TEST_CASE("mv matrix of a decoupled pair is diagonal") {
    transition_matrix a(4), b(4);
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                a.set(2 * c + i, 2 * c + j, true);
                b.set(2 * c + i, 2 * c + j, true);
            }
    block_potential phi;
    eps_expr zero = parse_weight_expr("0");
    eps_expr tenth = parse_weight_expr("1/10");
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (a(i, j)) phi.table[{i, j}] = {i / 2 == 0 ? zero : tenth, i / 2 == 0 ? zero : tenth};
    perturbation_family f = build_family(a, b, phi, {});
    component_classification cls = classify_components(f);
    REQUIRE(cls.T0.size() == 1);   // weights differ, so force both into the matrix
    // rebuild with equal weights so #T0 = 2
    for (int i = 2; i < 4; ++i)
        for (int j = 2; j < 4; ++j) phi.table[{i, j}] = {zero, zero};
    f = build_family(a, b, phi, {});
    cls = classify_components(f);
    REQUIRE(cls.T0.size() == 2);
    mv_result<double> mv = mv_matrix(f, cls, 0.01);
    CHECK(mv.V(0, 1) == 0.0);
    CHECK(mv.V(1, 0) == 0.0);
    CHECK(mv.V(0, 0) == Catch::Approx(2.0).epsilon(1e-13));
    CHECK(mv.V(1, 1) == Catch::Approx(2.0).epsilon(1e-13));

    delta_result<double> d = delta2(f, cls, 0.01);
    CHECK(d.degenerate);
}

TEST_CASE("delta2 on symmetric and near-decoupled models") {
    perturbation_family sym = symmetric_components(2);
    component_classification cls = classify_components(sym);
    REQUIRE(cls.T0.size() == 2);
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        delta_result<double> d = delta2(sym, cls, eps);
        REQUIRE_FALSE(d.degenerate);
        CHECK(d.delta[0] == Catch::Approx(0.5).epsilon(1e-10));
        CHECK(d.delta[0] + d.delta[1] == Catch::Approx(1.0).epsilon(1e-12));
    }

    // delta tracks the Gibbs marginals on the asymmetric two-component model
    perturbation_family f = two_of_52(1.0);
    component_classification c2 = classify_components(f);
    REQUIRE(c2.T0.size() == 2);
    double eps = 1e-6;
    delta_result<double> d = delta2(f, c2, eps);
    markov_gibbs_measure mu = gibbs_measure(weighted_matrix(f, eps));
    for (int k = 0; k < 2; ++k) {
        double marg = 0;
        for (int s : c2.decomp.blocks[c2.T0[k]].states) marg += mu.pi[s];
        CHECK(std::fabs(d.delta[k] - marg) < 1e-3);
    }
}

TEST_CASE("delta3 matches the closed forms of the three-component model") {
    perturbation_family f = models::three_component(1.0);
    component_classification cls = classify_components(f);
    REQUIRE(cls.T0.size() == 3);
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        double lam = lambda_full(f, eps);
        delta_result<double> d = delta3(f, cls, eps);
        REQUIRE_FALSE(d.degenerate);
        double d1 = (lam - 2) * (lam - 2) - 4 * std::pow(eps, 2.0);   // s = 1
        double d23 = (lam - 2) * (lam - 2);
        double sum = d1 + 2 * d23;
        CHECK(d.delta[0] == Catch::Approx(d1 / sum).epsilon(1e-9));
        CHECK(d.delta[1] == Catch::Approx(d23 / sum).epsilon(1e-9));
        CHECK(d.delta[0] + d.delta[1] + d.delta[2] == Catch::Approx(1.0).epsilon(1e-12));
    }

    perturbation_family sym = symmetric_components(3);
    component_classification cs = classify_components(sym);
    delta_result<double> ds = delta3(sym, cs, 1e-3);
    for (int k = 0; k < 3; ++k) CHECK(ds.delta[k] == Catch::Approx(1.0 / 3).epsilon(1e-9));

    // s = 1.5: all three weights approach 1/3
    perturbation_family f15 = models::three_component(1.5);
    delta_result<double> d15 = delta3(f15, classify_components(f15), 1e-8);
    for (int k = 0; k < 3; ++k) CHECK(std::fabs(d15.delta[k] - 1.0 / 3) < 0.02);
}

TEST_CASE("delta4 exact identities and divergence diagnostic") {
    perturbation_family f = models::four_component();
    component_classification cls = classify_components(f);
    REQUIRE(cls.T0.size() == 4);

    // lambda(2,eps) = lambda^v(2,eps) = 3 + 1.1 eps exactly
    for (double eps : {1e-2, 1e-4}) {
        double l2 = lambda_sub(f, cls, {cls.T0[1]}, eps);
        CHECK(std::fabs(l2 - (3.0 + 1.1 * eps)) < 1e-12);
        mv_result<double> mv = mv_matrix(f, cls, eps);
        CHECK(std::fabs(mv.V(1, 1) - (3.0 + 1.1 * eps)) < 1e-12);
    }

    delta4_result<double> d = delta4(f, cls, 1e-3);
    CHECK_FALSE(d.degenerate);
    CHECK(!d.warning.empty());
    double sum = 0;
    for (double v : d.candidate) sum += v;
    CHECK(sum == Catch::Approx(1.0).epsilon(1e-9));

    // the diagnostic ratio for ({2,3,4}, 2) grows like eps^{-1/2}: quad precision
    auto ratio_at = [&](double eps_d) {
        qreal eps(eps_d);
        delta4_result<qreal> dq = delta4(f, cls, eps);
        for (const auto& dg : dq.diagnostics) {
            if (dg.triple == std::vector<int>{1, 2, 3} && dg.k == 1 && dg.valid)
                return to_double(dg.ratio);
        }
        return 0.0;
    };
    double r3 = ratio_at(1e-3), r5 = ratio_at(1e-5);
    CHECK(r3 > 1.0);
    CHECK(r5 / r3 == Catch::Approx(10.0).margin(2.0));   // two decades => ~x10

    // fully symmetric four components: weights 1/4 and ratios near 1
    perturbation_family sym = symmetric_components(4);
    component_classification cs = classify_components(sym);
    delta4_result<double> ds = delta4(sym, cs, 1e-4);
    for (int k = 0; k < 4; ++k) CHECK(ds.candidate[k] == Catch::Approx(0.25).epsilon(1e-8));
    for (const auto& dg : ds.diagnostics)
        if (dg.valid) CHECK(dg.ratio == Catch::Approx(1.0).epsilon(0.1));
}

TEST_CASE("c1 c2 and the limit map") {
    perturbation_family sym = symmetric_components(2);
    component_classification cls = classify_components(sym);
    c1c2_result<double> r = c1_c2(sym, cls, 1e-4);
    REQUIRE_FALSE(r.decoupled);
    CHECK(r.c1 == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(std::fabs(r.c2) < 1e-9);
    CHECK(r.self_check_ok);

    perturbation_family f = two_of_52(1.0);
    component_classification c2 = classify_components(f);
    c1c2_result<double> r2 = c1_c2(f, c2, 1e-5);
    CHECK(r2.self_check_ok);

    c2_value zero{c2_value::finite, 0.0};
    auto w0 = limit_from_c2(zero);
    CHECK(w0.first == Catch::Approx(0.5));
    c2_value pinf{c2_value::plus_inf, 0.0};
    CHECK(limit_from_c2(pinf).first == 1.0);
    c2_value minf{c2_value::minus_inf, 0.0};
    CHECK(limit_from_c2(minf).second == 1.0);
    c2_value twelve{c2_value::finite, 12.0};
    CHECK(limit_from_c2(twelve).first ==
          Catch::Approx((1.0 + std::sqrt(3.0) / 2) / 2).epsilon(1e-14));
}

TEST_CASE("monotone containment of sub-collection eigenvalues") {
    perturbation_family f = models::four_component();
    component_classification cls = classify_components(f);
    for (double eps : {1e-2, 1e-5}) {
        for (int mask = 1; mask < 16; ++mask) {
            std::vector<int> ids;
            for (int k = 0; k < 4; ++k)
                if (mask & (1 << k)) ids.push_back(cls.T0[k]);
            double small = lambda_sub(f, cls, ids, eps);
            for (int k = 0; k < 4; ++k) {
                if (mask & (1 << k)) continue;
                std::vector<int> bigger = ids;
                bigger.push_back(cls.T0[k]);
                std::sort(bigger.begin(), bigger.end());
                CHECK(small <= lambda_sub(f, cls, bigger, eps) + 1e-12);
            }
        }
    }
}

TEST_CASE("s=7/9 accumulation structure of the component-1 marginal") {
    // Along sin=+1 the oscillatory coupling weakens to eps^{4/3} and the
    // marginal dies; along sin=-1 it reaches eps^{2/3} and the marginal
    // settles at (1-r)/(3-r) with r = 4/y^2, y the root of y^3 = 4y + 8.
    // The infimum 1/9 over all sequences is attained where the depressed
    // cubic's discriminant vanishes: sin(1/eps) = -1 + 3 ln(3 sqrt3 / 2)/ln(1/eps).
    perturbation_family f = models::three_component(7.0 / 9.0);
    component_classification cls = classify_components(f);

    double y = 2.6494;   // y^3 - 4y - 8 = 0
    {
        double yy = y;
        for (int i = 0; i < 40; ++i) yy = yy - (yy * yy * yy - 4 * yy - 8) / (3 * yy * yy - 4);
        y = yy;
    }
    double r = 4.0 / (y * y);
    double sup = (1 - r) / (3 - r);

    sweep_row plus = evaluate_sweep_row(f, cls, sin_controlled_eps(1e-8, +1));
    sweep_row minus = evaluate_sweep_row(f, cls, sin_controlled_eps(1e-8, -1));
    CHECK(plus.marginals[0] < 1e-3);
    CHECK(std::fabs(minus.marginals[0] - sup) < 1e-3);

    // boundary sequence: theta_n = 2 pi n + 3 pi/2 + sqrt(2 w), w = 3 ln(3 sqrt3/2)/ln(theta)
    double target = 1e10;   // 1/eps scale
    double theta = target;
    for (int it = 0; it < 60; ++it) {
        double w = 3.0 * std::log(3.0 * std::sqrt(3.0) / 2.0) / std::log(theta);
        double n = std::round((target - 3 * M_PI / 2 - std::sqrt(2 * w)) / (2 * M_PI));
        theta = 2 * M_PI * n + 3 * M_PI / 2 + std::sqrt(2 * w);
    }
    sweep_row boundary = evaluate_sweep_row(f, cls, 1.0 / theta);
    CHECK(std::fabs(boundary.marginals[0] - 1.0 / 9) < 2e-3);
}

TEST_CASE("mv Perron root reproduces lambda(eps) on the three-component model") {
    perturbation_family f = models::three_component(1.0);
    component_classification cls = classify_components(f);
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        mv_result<double> mv = mv_matrix(f, cls, eps);
        CHECK(std::fabs(spectral_radius(mv.V) - lambda_full(f, eps)) < 1e-9);
    }
}

TEST_CASE("pressure gap decreases along the grid on the bundled models") {
    std::vector<perturbation_family> fams = {models::three_component(0.5),
                                             models::three_component(1.0),
                                             models::three_component(1.5),
                                             models::four_component()};
    for (const perturbation_family& f : fams) {
        component_classification cls = classify_components(f);
        double target = std::log(cls.lambda_max);
        double prev = -1;
        for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
            double gap = std::fabs(std::log(lambda_full(f, eps)) - target);
            if (prev >= 0) CHECK(gap <= prev * 1.05 + 1e-12);
            prev = gap;
        }
        CHECK(prev <= 1e-3);
    }
}

TEST_CASE("mv family of the four-component model satisfies (M.1)-(M.4)") {
    perturbation_family f = models::four_component();
    component_classification cls = classify_components(f);
    auto fam = [&](double eps) { return mv_matrix(f, cls, eps).V; };
    std::vector<double> grid;
    for (int k = 2; k <= 6; ++k) grid.push_back(std::pow(10.0, -k));
    perturbed_family_report rep = check_perturbed_matrix_family(fam, grid);
    CHECK(rep.all());
    CHECK(rep.T1.empty());   // all diagonal limits equal 3
}

TEST_CASE("gibbs limit analysis classifies the bundled cases") {
    // s = 0.5: mass flees component 1, splits over 2 and 3
    perturbation_family f05 = models::three_component(0.5);
    component_classification c05 = classify_components(f05);
    convergence_report rep = gibbs_limit_analysis(f05, c05, default_eps_grid(1e-6, 1e-1, 4), true);
    CHECK(rep.pressure_converges);
    const sweep_row& last = rep.rows.back();
    CHECK(last.marginals[0] < 0.02);
    CHECK(std::fabs(last.marginals[1] - 0.5) < 0.02);
    CHECK(std::fabs(last.marginals[2] - 0.5) < 0.02);

    // exact symmetry: the verdict fires and the entropy limit is log 2
    perturbation_family sym = symmetric_components(2);
    component_classification csym = classify_components(sym);
    convergence_report srep = gibbs_limit_analysis(sym, csym, default_eps_grid(1e-7, 1e-1, 4), false);
    CHECK(srep.converged);
    CHECK(srep.delta[0] == Catch::Approx(0.5).margin(1e-6));
    CHECK(srep.entropy_limit == Catch::Approx(std::log(2.0)).epsilon(1e-6));

    // s = 7/9: the sin-controlled sequences pin different accumulation points
    perturbation_family f79 = models::three_component(7.0 / 9.0);
    component_classification c79 = classify_components(f79);
    convergence_report osc = gibbs_limit_analysis(f79, c79, default_eps_grid(1e-8, 1e-1, 4), true);
    CHECK(osc.oscillation);
    CHECK_FALSE(osc.converged);
    // computed accumulation values along the two sequences
    CHECK(osc.seq_rows_plus.back().marginals[0] < 0.01);
    CHECK(std::fabs(osc.seq_rows_minus.back().marginals[0] - 0.17701) < 0.01);

    // single maximal component: everything lands on it
    perturbation_family f1 = two_of_52(1.0);
    block_potential phi = f1.phi;
    // tilt component 2 down so T0 = {component 1}
    for (int i = 2; i < 4; ++i)
        for (int j = 2; j < 4; ++j)
            phi.table[{i, j}] = {parse_weight_expr("-1/2"), parse_weight_expr("-1/2")};
    perturbation_family tilted = build_family(f1.A, f1.B, phi, f1.psi, 0.5);
    component_classification ct = classify_components(tilted);
    REQUIRE(ct.T0.size() == 1);
    convergence_report one = gibbs_limit_analysis(tilted, ct, default_eps_grid(1e-7, 1e-1, 4), false);
    CHECK(one.converged);
    CHECK(one.delta[0] == Catch::Approx(1.0).margin(1e-3));
    matrix<double> wb = limit_weighted_matrix_B(tilted, ct.decomp.blocks[ct.T0[0]].states);
    CHECK(one.entropy_limit == Catch::Approx(entropy(gibbs_measure(wb))).margin(1e-3));

    // Sigma.3 violated: the pressure runs to -inf
    perturbation_family acyc = models::random_family(3, [] {
        models::random_model_options o;
        o.force_sigma3 = false;
        o.psi_slope = 4.0;
        return o;
    }());
    component_classification ca = classify_components(acyc);
    CHECK_FALSE(ca.sigma3);
    convergence_report dead = gibbs_limit_analysis(acyc, ca, default_eps_grid(1e-8, 1e-1, 4), false);
    CHECK(dead.pressure_to_minus_inf);
    CHECK(std::log(dead.rows.back().lambda_full) < -10.0);
}
