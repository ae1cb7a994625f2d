#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gibbslab/matrep.hpp"
#include "gibbslab/perron.hpp"
#include "gibbslab/smallmat.hpp"

// Expansion machinery for two maximal components: eigenvalue series
// coefficients via the eigenprojection recursion, the orders s, s(kk'),
// the pairings d(kk'), and the c2-limit classifier.  The standing
// assumptions are T = T0 (no subordinate components) and A_MM = M.

namespace gibbslab {

struct expansion_input {
    transition_matrix A, B;
    component_classification cls;
    int n1 = 0;                          // phi expansion order
    int n2 = 1;                          // exp(psi) expansion order
    matrix<double> phi0;                 // limit potential on A-pairs
    std::vector<matrix<double>> phi_j;   // phi_j, j = 1..n1 (index 0 unused)
    std::vector<matrix<double>> psi_j;   // coefficients of e^psi chi_N, j = 1..n2
};

inline void require_standing_assumptions(const expansion_input& x) {
    if (x.n1 > 3) throw std::invalid_argument("expansion order capped at 3");
    if (!x.cls.T1.empty())
        throw std::invalid_argument("expansion machinery assumes T = T0 (no T1 components)");
    for (int k : x.cls.T0)
        for (int i : x.cls.decomp.blocks[k].states)
            for (int j : x.cls.decomp.blocks[k].states)
                if (x.A(i, j) != x.B(i, j))
                    throw std::invalid_argument("expansion machinery assumes A_MM = M on each component");
}

namespace asymdetail {

// F_j = sum over i1 + 2 i2 + ... + j ij = j of phi_1^{i1} ... phi_j^{ij} / (i1! ... ij!),
// entrywise on the component block; explicit partition enumeration, j <= 3.
inline matrix<double> f_multinomial(const expansion_input& x, const std::vector<int>& states, int j) {
    const int n = static_cast<int>(states.size());
    matrix<double> f(n, n);
    auto phi = [&](int ord, int a, int b) {
        return ord <= x.n1 ? x.phi_j[ord](states[a], states[b]) : 0.0;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double v = 0;
            if (j == 1) {
                v = phi(1, a, b);
            } else if (j == 2) {
                v = phi(2, a, b) + phi(1, a, b) * phi(1, a, b) / 2.0;
            } else if (j == 3) {
                double p1 = phi(1, a, b);
                v = phi(3, a, b) + p1 * phi(2, a, b) + p1 * p1 * p1 / 6.0;
            } else {
                throw std::invalid_argument("expansion order capped at 3");
            }
            f(a, b) = v;
        }
    return f;
}

} // namespace asymdetail

struct series_coefficients {
    std::vector<double> lambda;   // lambda[0] = lambda, lambda[j] = j-th coefficient
};

// lambda(M_k, eps) = lambda + lambda_1 eps + ... via the recursion
//   lambda_{n+1} = sum_{j=1}^{n+1} nu(P_{n+1-j} L_j h)
//   P_{j} = sum_{i=1}^{j} P_{j-i} (lambda_i I - L_i) S
//   S = (L - P_0 - lambda I)^{-1} (I - P_0)
// with L_j the transfer matrix weighted by e^{phi} F_j.
inline series_coefficients lambda_series(const expansion_input& x, int t0_index, int order) {
    if (order < 0 || order > 3) throw std::invalid_argument("lambda_series supports order <= 3");
    require_standing_assumptions(x);
    const std::vector<int>& states = x.cls.decomp.blocks[x.cls.T0[t0_index]].states;
    const int n = static_cast<int>(states.size());

    matrix<double> w0(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (x.B(states[a], states[b])) w0(a, b) = std::exp(x.phi0(states[a], states[b]));

    perron_data_t<double> pd = perron_data(w0);
    if (!pd.irreducible) throw std::invalid_argument("lambda_series: component is not irreducible");
    double lam = pd.eta;
    const std::vector<double>& nu = pd.right;
    const std::vector<double>& h = pd.left;

    matrix<double> L0 = transpose(w0);
    matrix<double> P0(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) P0(a, b) = h[a] * nu[b];   // P0 f = nu(f) h

    // S = (L0 - P0 - lam I)^{-1} (I - P0), the sign convention of the recursion
    matrix<double> m(n, n), rhs(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            m(a, b) = L0(a, b) - P0(a, b) - (a == b ? lam : 0.0);
            rhs(a, b) = (a == b ? 1.0 : 0.0) - P0(a, b);
        }
    matrix<double> S(n, n);
    {
        matrix<double> lu = m;
        std::vector<int> perm;
        int sign;
        if (!lu_factor(lu, perm, sign))
            throw std::invalid_argument("lambda_series: reduced resolvent is singular (lambda not simple)");
        for (int col = 0; col < n; ++col) {
            std::vector<double> b(n);
            for (int a = 0; a < n; ++a) b[a] = rhs(a, col);
            std::vector<double> sol = lu_solve_factored(lu, perm, b);
            for (int a = 0; a < n; ++a) S(a, col) = sol[a];
        }
    }

    std::vector<matrix<double>> L(order + 1, matrix<double>(n, n));
    L[0] = L0;
    for (int j = 1; j <= order; ++j) {
        matrix<double> fj = asymdetail::f_multinomial(x, states, j);
        matrix<double> wj(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) wj(a, b) = w0(a, b) * fj(a, b);
        L[j] = transpose(wj);
    }

    series_coefficients out;
    out.lambda.assign(order + 1, 0.0);
    out.lambda[0] = lam;
    std::vector<matrix<double>> P(order + 1, matrix<double>(n, n));
    P[0] = P0;
    auto nu_of = [&](const std::vector<double>& v) {
        double s = 0;
        for (int a = 0; a < n; ++a) s += nu[a] * v[a];
        return s;
    };
    for (int nn = 0; nn < order; ++nn) {
        double lam_next = 0;
        for (int j = 1; j <= nn + 1; ++j) {
            std::vector<double> v = mul(L[j], h);
            v = mul(P[nn + 1 - j], v);
            lam_next += nu_of(v);
        }
        out.lambda[nn + 1] = lam_next;
        if (nn + 1 <= order) {
            matrix<double> Pn(n, n);
            for (int i = 1; i <= nn + 1; ++i) {
                matrix<double> mid(n, n);
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        mid(a, b) = (a == b ? out.lambda[i] : 0.0) - L[i](a, b);
                matrix<double> term = P[nn + 1 - i] * mid * S;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) Pn(a, b) += term(a, b);
            }
            P[nn + 1] = Pn;
        }
    }
    return out;
}

struct orders_result {
    int s = -1;                 // -1 encodes infinity
    int s_fwd = -1, s_bwd = -1; // s(kk') and s(k'k); -1 encodes infinity
    double d_fwd = 0, d_bwd = 0;
    bool s_infinite() const { return s < 0; }
};

namespace asymdetail {

// first l in 0..n2 with psi_l not identically zero on the cross block;
// psi_0 is the indicator of (A\N), so l=0 means a non-N cross edge exists
inline int first_order(const expansion_input& x, int from_blk, int to_blk) {
    const auto& src = x.cls.decomp.blocks[from_blk].states;
    const auto& dst = x.cls.decomp.blocks[to_blk].states;
    for (int i : src)
        for (int j : dst)
            if (x.A(i, j) && x.B(i, j)) return 0;
    for (int l = 1; l <= x.n2; ++l)
        for (int i : src)
            for (int j : dst)
                if (x.A(i, j) && x.psi_j[l](i, j) != 0.0) return l;
    return -1;
}

// d(kk') = nu_{k'}( L_{A_{kk'},phi}( h_k psi_{s(kk')} ) ) as a finite pairing
inline double pairing_d(const expansion_input& x, int from_blk, int to_blk, int order) {
    const auto& src = x.cls.decomp.blocks[from_blk].states;
    const auto& dst = x.cls.decomp.blocks[to_blk].states;
    auto tsc = [&](const std::vector<int>& states) {
        const int n = static_cast<int>(states.size());
        matrix<double> w(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (x.B(states[a], states[b])) w(a, b) = std::exp(x.phi0(states[a], states[b]));
        return perron_data(w);
    };
    perron_data_t<double> ps = tsc(src), pt = tsc(dst);
    double sum = 0;
    for (size_t a = 0; a < src.size(); ++a)
        for (size_t b = 0; b < dst.size(); ++b) {
            int i = src[a], j = dst[b];
            if (!x.A(i, j)) continue;
            double psi = order == 0 ? (x.B(i, j) ? 1.0 : 0.0) : x.psi_j[order](i, j);
            sum += pt.right[b] * std::exp(x.phi0(i, j)) * psi * ps.left[a];
        }
    return sum;
}

} // namespace asymdetail

inline orders_result expansion_orders(const expansion_input& x, int k = 0, int kp = 1) {
    require_standing_assumptions(x);
    if (x.cls.T0.size() != 2) throw std::invalid_argument("expansion_orders needs #T0 = 2");
    orders_result r;
    series_coefficients s1 = lambda_series(x, k, std::min(x.n1, 3));
    series_coefficients s2 = lambda_series(x, kp, std::min(x.n1, 3));
    double scale = std::max(1.0, s1.lambda[0]);
    for (int l = 1; l < static_cast<int>(s1.lambda.size()); ++l)
        if (std::fabs(s1.lambda[l] - s2.lambda[l]) > 1e-9 * scale) { r.s = l; break; }
    int bk = x.cls.T0[k], bkp = x.cls.T0[kp];
    r.s_fwd = asymdetail::first_order(x, bk, bkp);
    r.s_bwd = asymdetail::first_order(x, bkp, bk);
    if (r.s_fwd >= 0) r.d_fwd = asymdetail::pairing_d(x, bk, bkp, r.s_fwd);
    if (r.s_bwd >= 0) r.d_bwd = asymdetail::pairing_d(x, bkp, bk, r.s_bwd);
    return r;
}

struct c2_classification {
    enum kind_t { finite, plus_inf, minus_inf, inconclusive } kind = inconclusive;
    double value = 0;
    c2_value as_c2_value() const {
        c2_value v;
        v.kind = kind == plus_inf ? c2_value::plus_inf
               : kind == minus_inf ? c2_value::minus_inf : c2_value::finite;
        v.value = value;
        return v;
    }
};

// three-case classifier for the c2 limit
inline c2_classification c2_limit_classify(const expansion_input& x) {
    if (x.cls.T0.size() != 2) throw std::invalid_argument("c2_limit_classify needs #T0 = 2");
    orders_result ord = expansion_orders(x, 0, 1);
    series_coefficients s1 = lambda_series(x, 0, std::min(x.n1, 3));
    series_coefficients s2 = lambda_series(x, 1, std::min(x.n1, 3));

    c2_classification out;
    const bool s_fin = ord.s >= 0;
    const bool f_fin = ord.s_fwd >= 0, b_fin = ord.s_bwd >= 0;
    const int cap = x.n2 + 1;
    int eff_fwd = f_fin ? std::min(ord.s_fwd, cap) : cap;
    int eff_bwd = b_fin ? std::min(ord.s_bwd, cap) : cap;

    double diff = s_fin ? s1.lambda[ord.s] - s2.lambda[ord.s] : 0.0;
    if (s_fin && f_fin && b_fin && 2 * ord.s == ord.s_fwd + ord.s_bwd) {
        out.kind = c2_classification::finite;
        out.value = std::fabs(diff) * diff / (ord.d_fwd * ord.d_bwd);
        return out;
    }
    if (f_fin && b_fin && (!s_fin || 2 * ord.s > ord.s_fwd + ord.s_bwd)) {
        out.kind = c2_classification::finite;
        out.value = 0.0;
        return out;
    }
    if (s_fin && 2 * ord.s < eff_fwd + eff_bwd) {
        out.kind = diff > 0 ? c2_classification::plus_inf : c2_classification::minus_inf;
        return out;
    }
    out.kind = c2_classification::inconclusive;
    return out;
}

} // namespace gibbslab
