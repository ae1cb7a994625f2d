#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gibbslab/perron.hpp"
#include "gibbslab/smallmat.hpp"

// Pressure, Gibbs measures and entropy for 2-block potentials through the
// weighted-matrix reduction.  Conventions: W(ij) = A(ij) e^{Phi(ij)},
// nu = right Perron vector of W (conformal weights, probability-normalized),
// h = left Perron vector (transfer-operator eigenfunction, nu(h) = 1),
// pi(i) = h(i) nu(i), P(i->j) = W(ij) nu(j) / (lambda nu(i)).

namespace gibbslab {

struct pressure_value {
    double value = 0;
    bool neg_inf = false;   // empty subshift / zero radius
};

template <class T>
pressure_value pressure(const matrix<T>& w) {
    using std::log;
    T rad = spectral_radius(w);
    pressure_value p;
    if (!(rad > T(0))) {
        p.neg_inf = true;
        p.value = -std::numeric_limits<double>::infinity();
        return p;
    }
    p.value = to_double(log(rad));
    return p;
}

// Definition-based oracle: (1/n) log sum over admissible words of
// exp(sup_cylinder S_n Phi); exact for 2-block potentials where the sup only
// touches the one coordinate beyond the word.
inline pressure_value pressure_by_words(const matrix<double>& w, int n) {
    if (n < 2) throw std::invalid_argument("pressure_by_words needs n >= 2");
    const int d = w.rows;
    std::vector<double> tail(d, 0.0);   // max_j W(i,j): the free coordinate past the word
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) tail[i] = std::max(tail[i], w(i, j));

    // weight[i] = sum over admissible words of length L ending at i of prod W
    std::vector<double> acc(d, 1.0);
    for (int step = 1; step < n; ++step) {
        std::vector<double> nxt(d, 0.0);
        for (int i = 0; i < d; ++i) {
            if (acc[i] == 0) continue;
            for (int j = 0; j < d; ++j)
                if (w(i, j) > 0) nxt[j] += acc[i] * w(i, j);
        }
        acc.swap(nxt);
    }
    double total = 0;
    for (int i = 0; i < d; ++i) total += acc[i] * tail[i];
    pressure_value p;
    if (total <= 0) {
        p.neg_inf = true;
        p.value = -std::numeric_limits<double>::infinity();
        return p;
    }
    p.value = std::log(total) / n;
    return p;
}

template <class T>
struct markov_gibbs_measure_t {
    std::vector<int> states;    // original state ids (identity if unrestricted)
    T lambda = T(0);
    std::vector<T> h, nu, pi;   // local indexing
    matrix<T> kernel;           // row-stochastic
};

using markov_gibbs_measure = markov_gibbs_measure_t<double>;

struct reducible_error : std::runtime_error {
    explicit reducible_error(const std::string& m) : std::runtime_error(m) {}
};

template <class T>
markov_gibbs_measure_t<T> gibbs_measure(const matrix<T>& w, std::vector<int> states = {}) {
    perron_data_t<T> pd = perron_data(w);
    if (!pd.irreducible) {
        // point the caller at the component structure
        transition_matrix sup = perrondetail::support_of(w);
        component_decomposition dec = scc_decompose(sup);
        throw reducible_error("gibbs_measure: matrix is reducible (" +
                              std::to_string(dec.blocks.size()) +
                              " components); restrict to one transitive component");
    }
    const int n = w.rows;
    markov_gibbs_measure_t<T> mu;
    mu.states.resize(n);
    for (int i = 0; i < n; ++i) mu.states[i] = states.empty() ? i : states[i];
    mu.lambda = pd.eta;
    mu.nu = pd.right;
    mu.h = pd.left;
    mu.pi.resize(n);
    for (int i = 0; i < n; ++i) mu.pi[i] = mu.h[i] * mu.nu[i];
    mu.kernel = matrix<T>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mu.kernel(i, j) = w(i, j) * mu.nu[j] / (mu.lambda * mu.nu[i]);
    return mu;
}

// mu([w]) = pi(w0) prod P(w_k -> w_{k+1}), in the measure's local indexing.
template <class T>
T cylinder_measure(const markov_gibbs_measure_t<T>& mu, const std::vector<int>& word) {
    if (word.empty()) return T(1);
    const int n = static_cast<int>(mu.pi.size());
    for (int s : word)
        if (s < 0 || s >= n) return T(0);
    T m = mu.pi[word[0]];
    for (size_t k = 0; k + 1 < word.size(); ++k) {
        m *= mu.kernel(word[k], word[k + 1]);
        if (m == T(0)) return T(0);
    }
    return m;
}

// Gibbs constant estimate: the worst two-sided ratio between cylinder mass
// and exp(-nP + S_n Phi) over all cylinders of length <= n_max.
template <class T>
T gibbs_constant_check(const markov_gibbs_measure_t<T>& mu, const matrix<T>& w, int n_max) {
    using std::exp;
    using std::log;
    if (n_max > 10) throw std::invalid_argument("gibbs_constant_check: n_max > 10");
    const int d = w.rows;
    std::vector<T> tail(d, T(0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (w(i, j) > tail[i]) tail[i] = w(i, j);

    T worst(1);
    std::vector<int> word;
    std::function<void(int, T, T)> rec = [&](int len, T mass, T weight) {
        if (len > 0) {
            // weight = prod W over the word's pairs; the sup over the cylinder
            // contributes one more factor max_j W(last, j); exp(-nP) = lambda^{-n}
            T lam_pow(1);
            for (int t = 0; t < len; ++t) lam_pow *= mu.lambda;
            T gibbs = weight * tail[word.back()] / lam_pow;
            if (mass > T(0) && gibbs > T(0)) {
                T ratio = mass / gibbs;
                if (ratio < T(1)) ratio = T(1) / ratio;
                if (ratio > worst) worst = ratio;
            }
        }
        if (len == n_max) return;
        for (int s = 0; s < d; ++s) {
            if (len > 0 && !(w(word.back(), s) > T(0))) continue;
            T m2 = len == 0 ? mu.pi[s] : mass * mu.kernel(word.back(), s);
            T w2 = len == 0 ? T(1) : weight * w(word.back(), s);
            word.push_back(s);
            rec(len + 1, m2, w2);
            word.pop_back();
        }
    };
    rec(0, T(1), T(1));
    return worst;
}

// Shannon entropy rate of the stationary chain; equals log lambda - int Phi dmu.
template <class T>
T entropy(const markov_gibbs_measure_t<T>& mu) {
    using std::log;
    const int n = static_cast<int>(mu.pi.size());
    T h(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            T p = mu.kernel(i, j);
            if (p > T(0)) h -= mu.pi[i] * p * log(p);
        }
    return h;
}

template <class T>
T integral_phi(const markov_gibbs_measure_t<T>& mu, const matrix<T>& w) {
    using std::log;
    const int n = static_cast<int>(mu.pi.size());
    T s(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            T m = mu.pi[i] * mu.kernel(i, j);
            if (m > T(0)) s += m * log(w(i, j));
        }
    return s;
}

struct variational_entry {
    double lhs = 0;        // h(m) + int Phi dm
    bool invariant = false;
    bool satisfied = false;
};

struct variational_report {
    double pressure = 0;
    std::vector<variational_entry> entries;
    bool all_satisfied = true;
    bool gibbs_attains = false;
};

// Markov trial measure: a stochastic kernel supported inside the SFT plus
// its stationary vector.
struct markov_trial_measure {
    std::vector<double> pi;
    matrix<double> kernel;
};

inline variational_report variational_check(const matrix<double>& w,
                                            const std::vector<markov_trial_measure>& trials,
                                            double tol = 1e-10) {
    variational_report rep;
    pressure_value p = pressure(w);
    if (p.neg_inf) throw std::invalid_argument("variational_check: empty subshift");
    rep.pressure = p.value;
    const int n = w.rows;
    for (const markov_trial_measure& t : trials) {
        variational_entry e;
        // invariance: pi P = pi and rows sum to 1 on the support
        e.invariant = true;
        for (int i = 0; i < n; ++i) {
            double rs = 0;
            for (int j = 0; j < n; ++j) {
                if (t.kernel(i, j) > 0 && !(w(i, j) > 0)) e.invariant = false;
                rs += t.kernel(i, j);
            }
            if (t.pi[i] > 0 && std::fabs(rs - 1.0) > 1e-9) e.invariant = false;
        }
        std::vector<double> piP = mul_left(t.pi, t.kernel);
        for (int j = 0; j < n; ++j)
            if (std::fabs(piP[j] - t.pi[j]) > 1e-9) e.invariant = false;
        if (!e.invariant) {
            e.satisfied = false;
            rep.entries.push_back(e);
            rep.all_satisfied = false;
            continue;
        }
        double hm = 0, iphi = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double m = t.pi[i] * t.kernel(i, j);
                if (m > 0) {
                    hm -= m * std::log(t.kernel(i, j));
                    iphi += m * std::log(w(i, j));
                }
            }
        e.lhs = hm + iphi;
        e.satisfied = e.lhs <= rep.pressure + tol;
        if (!e.satisfied) rep.all_satisfied = false;
        if (std::fabs(e.lhs - rep.pressure) <= tol) rep.gibbs_attains = true;
        rep.entries.push_back(e);
    }
    return rep;
}

} // namespace gibbslab
