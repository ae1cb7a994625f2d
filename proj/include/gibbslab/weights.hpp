#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gibbslab/expr.hpp"
#include "gibbslab/sft.hpp"
#include "gibbslab/smallmat.hpp"

// Perturbed potential families Phi(eps,.) = phi(eps,.) + chi_N psi(eps,.)
// for 2-block potentials, and their evaluated weight matrices
// W(ij) = A(ij) exp(Phi(eps,ij)).

namespace gibbslab {

using state_pair = std::pair<int, int>;

struct phi_entry {
    eps_expr expr;                   // phi(eps, ij)
    eps_expr limit;                  // its eps->0 limit (eps-free)
};

struct block_potential {
    int block_order = 2;
    std::map<state_pair, phi_entry> table;
};

struct family_error : std::runtime_error {
    explicit family_error(const std::string& m) : std::runtime_error(m) {}
};

struct perturbation_family {
    transition_matrix A, B;
    block_potential phi;                       // covers every A-admissible pair
    std::map<state_pair, eps_expr> psi;        // covers exactly N
    std::set<state_pair> N;                    // A-edges that are not B-edges
    double eps0 = 1.0;

    bool in_N(int i, int j) const { return N.count({i, j}) != 0; }
};

namespace detail {
inline std::string pair_name(const state_pair& p) {
    return "(" + std::to_string(p.first + 1) + "," + std::to_string(p.second + 1) + ")";
}
} // namespace detail

// Assembles the family and derives N from (A,B).  For entries without an
// explicit limit the expression itself must be eps-free.
inline perturbation_family build_family(const transition_matrix& A, const transition_matrix& B,
                                        block_potential phi, std::map<state_pair, eps_expr> psi,
                                        double eps0 = 1.0) {
    if (A.d != B.d) throw family_error("build_family: A and B have different sizes");
    condition_report cr = check_conditions(A, B);
    if (!cr.sigma2) throw family_error("build_family: B has an edge outside A (Sigma.2 fails)");

    perturbation_family f;
    f.A = A;
    f.B = B;
    f.eps0 = eps0;
    for (int i = 0; i < A.d; ++i)
        for (int j = 0; j < A.d; ++j)
            if (A(i, j) && !B(i, j)) f.N.insert({i, j});

    for (auto& [pr, pe] : phi.table) {
        if (!A(pr.first, pr.second))
            throw family_error("phi entry " + detail::pair_name(pr) + " is not A-admissible");
        if (!pe.limit.valid()) {
            if (depends_on_eps(pe.expr))
                throw family_error("phi entry " + detail::pair_name(pr) +
                                   " depends on eps but has no explicit limit");
            pe.limit = pe.expr;
        } else if (depends_on_eps(pe.limit)) {
            throw family_error("phi limit for " + detail::pair_name(pr) + " must be eps-free");
        }
    }
    for (int i = 0; i < A.d; ++i)
        for (int j = 0; j < A.d; ++j)
            if (A(i, j) && !phi.table.count({i, j}))
                throw family_error("phi table does not cover pair " + detail::pair_name({i, j}));

    for (const auto& [pr, e] : psi) {
        (void)e;
        if (!f.N.count(pr))
            throw family_error("psi entry " + detail::pair_name(pr) + " lies outside N");
    }
    for (const state_pair& pr : f.N)
        if (!psi.count(pr))
            throw family_error("psi table does not cover N pair " + detail::pair_name(pr));

    f.phi = std::move(phi);
    f.psi = std::move(psi);
    return f;
}

template <class T>
T phi_value(const perturbation_family& f, int i, int j, T eps) {
    return eval_expr(f.phi.table.at({i, j}).expr, eps);
}

template <class T>
T big_phi_value(const perturbation_family& f, int i, int j, T eps) {
    T v = phi_value(f, i, j, eps);
    if (f.in_N(i, j)) v += eval_expr(f.psi.at({i, j}), eps);
    return v;
}

inline double phi_limit_value(const perturbation_family& f, int i, int j) {
    return eval_expr(f.phi.table.at({i, j}).limit, 0.0);
}

// W(ij) = exp(Phi(eps,ij)) on A-admissible pairs, 0 elsewhere.
template <class T>
matrix<T> weighted_matrix(const perturbation_family& f, T eps) {
    using std::exp;
    matrix<T> w(f.A.d, f.A.d);
    for (int i = 0; i < f.A.d; ++i)
        for (int j = 0; j < f.A.d; ++j)
            if (f.A(i, j)) w(i, j) = exp(big_phi_value(f, i, j, eps));
    return w;
}

// restriction to a state subset (indices into the subset order)
template <class T>
matrix<T> weighted_matrix(const perturbation_family& f, T eps, const std::vector<int>& states) {
    using std::exp;
    int n = static_cast<int>(states.size());
    matrix<T> w(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (f.A(states[a], states[b]))
                w(a, b) = exp(big_phi_value(f, states[a], states[b], eps));
    return w;
}

// limit weights on B (entries B(ij) exp(phi_limit)); used for T0/T1 classification
inline matrix<double> limit_weighted_matrix_B(const perturbation_family& f, const std::vector<int>& states) {
    int n = static_cast<int>(states.size());
    matrix<double> w(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (f.B(states[a], states[b]))
                w(a, b) = std::exp(phi_limit_value(f, states[a], states[b]));
    return w;
}

// Higher-block recoding: re-present the family on the alphabet of admissible
// (k-1)-words.  Pressure and cylinder measures are invariant.
struct recoded_family {
    perturbation_family family;
    std::vector<std::vector<int>> letters;   // new state -> original (k-1)-word
};

inline recoded_family recode_higher_block(const perturbation_family& f, int k) {
    if (k < 2) throw family_error("recode_higher_block needs k >= 2");
    recoded_family out;
    if (k == 2) {
        out.family = f;
        out.letters.resize(f.A.d);
        for (int i = 0; i < f.A.d; ++i) out.letters[i] = {i};
        return out;
    }

    std::vector<std::vector<int>> words = admissible_words(f.A, k - 1);
    int n = static_cast<int>(words.size());
    if (n == 0) throw family_error("recode_higher_block: no admissible words");
    if (n > 4096) throw family_error("recode_higher_block: recoded alphabet too large");
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index[words[i]] = i;

    transition_matrix A2(n), B2(n);
    auto overlaps = [&](const std::vector<int>& u, const std::vector<int>& v) {
        for (int t = 0; t + 1 < k - 1; ++t)
            if (u[t + 1] != v[t]) return false;
        return true;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!overlaps(words[a], words[b])) continue;
            // both words are A-admissible, so the glued k-word is too
            A2.set(a, b, true);
            bool badm = true;
            for (int t = 0; t + 1 < k - 1; ++t)
                if (!f.B(words[a][t], words[a][t + 1]) || !f.B(words[b][t], words[b][t + 1])) badm = false;
            if (badm) B2.set(a, b, true);
        }

    block_potential phi2;
    std::map<state_pair, eps_expr> psi2;
    eps_expr zero = parse_weight_expr("0");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!A2(a, b)) continue;
            int i = words[a][0], j = words[a][1];
            phi2.table[{a, b}] = f.phi.table.at({i, j});
            if (!B2(a, b)) {
                // Phi carries over: psi contributes only where the original pair was in N
                psi2[{a, b}] = f.in_N(i, j) ? f.psi.at({i, j}) : zero;
            }
        }
    out.family = build_family(A2, B2, std::move(phi2), std::move(psi2), f.eps0);
    out.letters = std::move(words);
    return out;
}

struct potential_condition_report {
    bool phi1_ok = false;       // ||phi(eps,.) - phi||_inf -> 0
    bool phi2_ok = false;       // max_N psi(eps,.) -> -inf
    bool phi3_ok = true;        // trivially satisfied for bounded 2-block tables
    std::vector<double> phi1_sup_diff;   // per grid point
    std::vector<double> phi2_max_psi;    // per grid point
};

// Numeric proxies for (Phi.1)-(Phi.3) along a decreasing grid.
inline potential_condition_report verify_potential_conditions(const perturbation_family& f,
                                                              const std::vector<double>& eps_grid) {
    potential_condition_report r;
    for (double e : eps_grid) {
        double sup = 0, mx = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < f.A.d; ++i)
            for (int j = 0; j < f.A.d; ++j) {
                if (!f.A(i, j)) continue;
                double diff = std::fabs(phi_value(f, i, j, e) - phi_limit_value(f, i, j));
                sup = std::max(sup, diff);
                if (f.in_N(i, j)) mx = std::max(mx, eval_expr(f.psi.at({i, j}), e));
            }
        r.phi1_sup_diff.push_back(sup);
        r.phi2_max_psi.push_back(mx);
    }
    size_t n = eps_grid.size();
    if (n >= 2) {
        r.phi1_ok = r.phi1_sup_diff.back() <= std::max(1e-6, r.phi1_sup_diff.front() * 1e-3) ||
                    r.phi1_sup_diff.front() == 0.0;
        // fit max_N psi against log eps: a positive slope sends it to -inf
        // even when an oscillatory factor makes it non-monotone
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < n; ++i) {
            double x = std::log(eps_grid[i]), y = r.phi2_max_psi[i];
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double denom = n * sxx - sx * sx;
        double slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;
        r.phi2_ok = f.N.empty() ||
                    (slope >= 0.05 && r.phi2_max_psi.back() <= -5.0 &&
                     r.phi2_max_psi.back() <= r.phi2_max_psi.front() - 2.0);
    } else {
        r.phi1_ok = true;
        r.phi2_ok = f.N.empty();
    }
    return r;
}

} // namespace gibbslab
