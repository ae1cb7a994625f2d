#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gibbslab/asymptotics.hpp"
#include "gibbslab/matrep.hpp"
#include "gibbslab/weights.hpp"

// Bundled example families: the 6-state three-component model with the
// oscillatory coupling, the 8-state four-component model, small toys for
// the two-component machinery, and seeded random model generators used by
// the property suites.

namespace gibbslab {
namespace models {

// 6-state model: A = (I I O; O I I; I I I) over 2x2 blocks, B = diag(I,I,I),
// couplings eps on 1->2 and 2->3, eps^s on 3->2, eps^{sin(1/eps)/3+1} on 3->1.
inline perturbation_family three_component(double s) {
    transition_matrix A = transition_matrix::from_rows({
        "111100",
        "111100",
        "001111",
        "001111",
        "111111",
        "111111",
    });
    transition_matrix B = transition_matrix::from_rows({
        "110000",
        "110000",
        "001100",
        "001100",
        "000011",
        "000011",
    });
    std::map<std::string, double> params{{"s", s}};
    eps_expr zero = parse_weight_expr("0");
    eps_expr log_eps = parse_weight_expr("log(eps)");
    eps_expr s_log_eps = parse_weight_expr("s*log(eps)", params);
    eps_expr osc = parse_weight_expr("(sin(1/eps)/3+1)*log(eps)");

    block_potential phi;
    std::map<state_pair, eps_expr> psi;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            if (!A(i, j)) continue;
            phi.table[{i, j}] = {zero, zero};
            if (B(i, j)) continue;
            int bi = i / 2, bj = j / 2;
            if (bi == 0 && bj == 1) psi[{i, j}] = log_eps;
            else if (bi == 1 && bj == 2) psi[{i, j}] = log_eps;
            else if (bi == 2 && bj == 1) psi[{i, j}] = s_log_eps;
            else psi[{i, j}] = osc;   // 3 -> 1 block
        }
    return build_family(A, B, std::move(phi), std::move(psi), 0.5);
}

// 8-state model with four maximal components; the naive 4-component delta
// formula fails here and the divergence diagnostic shows it.
inline perturbation_family four_component() {
    transition_matrix A = transition_matrix::from_rows({
        "11111111",
        "11111111",
        "11110000",
        "11111100",
        "11001111",
        "11111111",
        "11111111",
        "11111111",
    });
    transition_matrix B(8);
    for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) B.set(2 * b + i, 2 * b + j, true);

    eps_expr zero = parse_weight_expr("0");
    eps_expr log2 = parse_weight_expr("log(2)");
    eps_expr log_eps = parse_weight_expr("log(eps)");
    eps_expr four_log_eps = parse_weight_expr("4*log(eps)");
    eps_expr log_eps_tenth = parse_weight_expr("log(eps/10)");

    block_potential phi;
    std::map<state_pair, eps_expr> psi;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            if (!A(i, j)) continue;
            if (B(i, j)) {
                // within a component: log 2 on the diagonal, 0 off it,
                // except the (4,3)/(4,4) entries which move with eps
                if (i == 3 && j == 2)
                    phi.table[{i, j}] = {parse_weight_expr("log(11/10*eps+1)"), zero};
                else if (i == 3 && j == 3)
                    phi.table[{i, j}] = {parse_weight_expr("log(11/10*eps+2)"), log2};
                else
                    phi.table[{i, j}] = {i == j ? log2 : zero, i == j ? log2 : zero};
                continue;
            }
            phi.table[{i, j}] = {zero, zero};
            bool is45 = (i == 3 && (j == 4 || j == 5));
            bool is_tenth = (i == 4 && j == 6) || (i == 5 && j == 6) ||
                            (i == 6 && j == 5) || (i == 7 && j == 5);
            if (is45) psi[{i, j}] = four_log_eps;
            else if (is_tenth) psi[{i, j}] = log_eps_tenth;
            else psi[{i, j}] = log_eps;
        }
    return build_family(A, B, std::move(phi), std::move(psi), 0.5);
}

// Two 2x2 ones-components, full cross couplings; the limit potential shifts
// component k by a_k per unit eps and the cross weights are c eps^{s}.
// Useful for the two-component classifier and its empirical cross-check.
inline perturbation_family two_component_toy(double a1, double a2, int s12, int s21,
                                             double c12 = 1.0, double c21 = 1.0) {
    transition_matrix A = transition_matrix::full(4);
    transition_matrix B(4);
    for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) B.set(2 * b + i, 2 * b + j, true);
    eps_expr zero = parse_weight_expr("0");
    block_potential phi;
    std::map<state_pair, eps_expr> psi;
    auto lin = [](double a) { return parse_weight_expr(std::to_string(a) + "*eps"); };
    auto cross = [](double c, int s) {
        return parse_weight_expr("log(" + std::to_string(c) + "*eps^" + std::to_string(s) + ")");
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int bi = i / 2, bj = j / 2;
            if (bi == bj) {
                phi.table[{i, j}] = {lin(bi == 0 ? a1 : a2), zero};
            } else {
                phi.table[{i, j}] = {lin(bi == 0 ? a1 : a2), zero};
                psi[{i, j}] = bi == 0 ? cross(c12, s12) : cross(c21, s21);
            }
        }
    return build_family(A, B, std::move(phi), std::move(psi), 0.5);
}

// ---- random model generators (seeded, deterministic) ----

struct random_model_options {
    int d = 5;
    bool force_sigma3 = true;       // keep a cycle in B
    double a_density = 0.65;
    double b_density = 0.5;
    double psi_slope = 1.0;         // psi = slope * log(eps)
};

// Random family satisfying Sigma.1-Sigma.2 (and Sigma.3 unless disabled):
// eps-free random phi tables, psi = slope*log(eps) on N.
inline perturbation_family random_family(uint64_t seed, const random_model_options& opt) {
    std::mt19937_64 rng(seed * 6364136223846793005ULL + 1442695040888963407ULL);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int d = opt.d;
    transition_matrix A(d), B(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j)
            if (unif(rng) < opt.a_density) A.set(i, j, true);
        A.set(i, (i + 1) % d, true);   // a Hamiltonian cycle keeps A irreducible
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (A(i, j) && unif(rng) < opt.b_density) B.set(i, j, true);
    if (opt.force_sigma3) {
        B.set(0, 0, true);
        A.set(0, 0, true);
    } else {
        // strictly upper-triangular B is acyclic
        transition_matrix B2(d);
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (B(i, j)) B2.set(i, j, true);
        B = B2;
    }

    block_potential phi;
    std::map<state_pair, eps_expr> psi;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f*log(eps)", opt.psi_slope);
    eps_expr psi_expr = parse_weight_expr(buf);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (!A(i, j)) continue;
            double v = unif(rng) * 2.0 - 1.0;
            std::snprintf(buf, sizeof buf, "%.6f", std::fabs(v));
            eps_expr e = parse_weight_expr(v < 0 ? std::string("-") + buf : std::string(buf));
            phi.table[{i, j}] = {e, e};
            if (!B(i, j)) psi[{i, j}] = psi_expr;
        }
    return build_family(A, B, std::move(phi), std::move(psi), 0.5);
}

// Random family with exactly two maximal components: component 2 is a
// relabeled copy of component 1 (same phi values), optional smaller T1
// component, random couplings with psi = log eps.
inline perturbation_family random_t0_equal_2(uint64_t seed, bool with_t1 = true) {
    std::mt19937_64 rng(seed * 2862933555777941757ULL + 3037000493ULL);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int core = 2;                      // component size
    const int d = with_t1 ? 2 * core + 1 : 2 * core;
    transition_matrix A(d), B(d);
    // two copies of a random irreducible 2-state block
    double p11 = unif(rng), p12 = unif(rng), p21 = unif(rng), p22 = unif(rng);
    double vals[2][2] = {{p11, p12}, {p21, p22}};
    for (int c = 0; c < 2; ++c)
        for (int i = 0; i < core; ++i)
            for (int j = 0; j < core; ++j) {
                A.set(c * core + i, c * core + j, true);
                B.set(c * core + i, c * core + j, true);
            }
    if (with_t1) {
        A.set(d - 1, d - 1, true);
        B.set(d - 1, d - 1, true);
    }
    // couplings: make A irreducible with a cycle through everything
    for (int i = 0; i < d; ++i) A.set(i, (i + 1) % d, true);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i / core != j / core && unif(rng) < 0.4) A.set(i, j, true);

    block_potential phi;
    std::map<state_pair, eps_expr> psi;
    eps_expr zero = parse_weight_expr("0");
    eps_expr log_eps = parse_weight_expr("log(eps)");
    char buf[64];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (!A(i, j)) continue;
            if (B(i, j) && i < 2 * core && j < 2 * core && i / core == j / core) {
                double v = vals[i % core][j % core];   // identical tables on both copies
                std::snprintf(buf, sizeof buf, "%.6f", v);
                eps_expr e = parse_weight_expr(buf);
                phi.table[{i, j}] = {e, e};
            } else if (B(i, j)) {
                // the T1 loop state: weight well below the component roots
                eps_expr e = parse_weight_expr("-2");
                phi.table[{i, j}] = {e, e};
            } else {
                phi.table[{i, j}] = {zero, zero};
                psi[{i, j}] = log_eps;
            }
        }
    return build_family(A, B, std::move(phi), std::move(psi), 0.5);
}

} // namespace models
} // namespace gibbslab
