#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

// One-sided subshifts of finite type: 0-1 transition matrices, admissible
// words, strong connectivity and the block-triangular component
// decomposition. States are 0-based in code; files and reports use 1..d.

namespace gibbslab {

struct transition_matrix {
    int d = 0;
    std::vector<uint8_t> bits;

    transition_matrix() = default;
    explicit transition_matrix(int d_) : d(d_), bits(static_cast<size_t>(d_) * d_, 0) {
        if (d_ < 1) throw std::invalid_argument("transition matrix needs d >= 1");
    }

    static transition_matrix full(int d_) {
        transition_matrix m(d_);
        std::fill(m.bits.begin(), m.bits.end(), uint8_t(1));
        return m;
    }

    // rows as contiguous 0/1 strings, e.g. {"110","011","101"}
    static transition_matrix from_rows(const std::vector<std::string>& rows) {
        transition_matrix m(static_cast<int>(rows.size()));
        for (int i = 0; i < m.d; ++i) {
            if (static_cast<int>(rows[i].size()) != m.d)
                throw std::invalid_argument("matrix row " + std::to_string(i + 1) + " has wrong length");
            for (int j = 0; j < m.d; ++j) {
                char c = rows[i][j];
                if (c != '0' && c != '1')
                    throw std::invalid_argument("matrix entries must be 0 or 1");
                m.set(i, j, c == '1');
            }
        }
        return m;
    }

    int operator()(int i, int j) const { return bits[static_cast<size_t>(i) * d + j]; }
    void set(int i, int j, bool v) { bits[static_cast<size_t>(i) * d + j] = v ? 1 : 0; }

    int edge_count() const {
        int n = 0;
        for (uint8_t b : bits) n += b;
        return n;
    }

    bool operator==(const transition_matrix& o) const { return d == o.d && bits == o.bits; }
};

struct component {
    std::vector<int> states;      // ascending original state ids
    bool nonempty_subshift = false;
};

struct component_decomposition {
    std::vector<int> permutation;   // permutation[k] = original state at position k
    std::vector<component> blocks;  // order makes the permuted matrix block upper triangular
    std::vector<int> block_index;   // state -> block id
};

namespace detail {

// iterative Tarjan
inline std::vector<int> tarjan_scc(const transition_matrix& m, int& n_comp) {
    int d = m.d;
    std::vector<int> index(d, -1), low(d, 0), comp(d, -1);
    std::vector<uint8_t> on_stack(d, 0);
    std::vector<int> stack, call_v, call_j;
    int next_index = 0;
    n_comp = 0;
    for (int root = 0; root < d; ++root) {
        if (index[root] != -1) continue;
        call_v.push_back(root);
        call_j.push_back(0);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call_v.empty()) {
            int v = call_v.back();
            int& j = call_j.back();
            bool descended = false;
            while (j < d) {
                int w = j++;
                if (!m(v, w)) continue;
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call_v.push_back(w);
                    call_j.push_back(0);
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = n_comp;
                    if (w == v) break;
                }
                ++n_comp;
            }
            call_v.pop_back();
            call_j.pop_back();
            if (!call_v.empty()) {
                int parent = call_v.back();
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return comp;
}

} // namespace detail

// Block-triangular decomposition of B: diagonal blocks are the strongly
// connected components, ordered so that every edge points to an equal or
// later block.  Incomparable blocks are ordered by smallest contained state.
inline component_decomposition scc_decompose(const transition_matrix& b) {
    int d = b.d;
    int n_comp = 0;
    std::vector<int> comp = detail::tarjan_scc(b, n_comp);

    std::vector<std::vector<int>> members(n_comp);
    for (int i = 0; i < d; ++i) members[comp[i]].push_back(i);
    std::vector<int> min_state(n_comp, d);
    for (int c = 0; c < n_comp; ++c) min_state[c] = members[c].front();

    // condensation edges c -> c'
    std::vector<std::vector<int>> succ(n_comp);
    std::vector<int> indeg(n_comp, 0);
    {
        std::vector<std::vector<uint8_t>> seen(n_comp, std::vector<uint8_t>(n_comp, 0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (b(i, j) && comp[i] != comp[j] && !seen[comp[i]][comp[j]]) {
                    seen[comp[i]][comp[j]] = 1;
                    succ[comp[i]].push_back(comp[j]);
                    ++indeg[comp[j]];
                }
    }

    // Kahn with min-state tie-break for a deterministic topological order
    std::vector<int> order;
    std::vector<uint8_t> used(n_comp, 0);
    for (int step = 0; step < n_comp; ++step) {
        int pick = -1;
        for (int c = 0; c < n_comp; ++c)
            if (!used[c] && indeg[c] == 0 && (pick == -1 || min_state[c] < min_state[pick])) pick = c;
        if (pick == -1) throw std::logic_error("condensation is not a DAG");
        used[pick] = 1;
        order.push_back(pick);
        for (int nxt : succ[pick]) --indeg[nxt];
    }

    component_decomposition out;
    out.block_index.assign(d, -1);
    for (int pos = 0; pos < n_comp; ++pos) {
        int c = order[pos];
        component blk;
        blk.states = members[c];
        if (blk.states.size() > 1) {
            blk.nonempty_subshift = true;
        } else {
            int s = blk.states[0];
            blk.nonempty_subshift = b(s, s) != 0;
        }
        for (int s : blk.states) {
            out.permutation.push_back(s);
            out.block_index[s] = pos;
        }
        out.blocks.push_back(std::move(blk));
    }
    return out;
}

inline bool is_irreducible(const transition_matrix& m) {
    int n_comp = 0;
    detail::tarjan_scc(m, n_comp);
    return n_comp == 1;
}

inline bool has_cycle(const transition_matrix& m) {
    component_decomposition dec = scc_decompose(m);
    for (const component& c : dec.blocks)
        if (c.nonempty_subshift) return true;
    return false;
}

struct condition_report {
    bool sigma1 = false;   // A irreducible
    bool sigma2 = false;   // B(ij)=1 => A(ij)=1
    bool sigma3 = false;   // Sigma_B^+ nonempty (B has a cycle)
    bool all() const { return sigma1 && sigma2 && sigma3; }
};

inline condition_report check_conditions(const transition_matrix& a, const transition_matrix& b) {
    if (a.d != b.d) throw std::invalid_argument("check_conditions: A and B have different sizes");
    condition_report r;
    r.sigma1 = is_irreducible(a);
    r.sigma2 = true;
    for (int i = 0; i < a.d; ++i)
        for (int j = 0; j < a.d; ++j)
            if (b(i, j) && !a(i, j)) r.sigma2 = false;
    r.sigma3 = has_cycle(b);
    return r;
}

// Exact count of M-admissible words of length n (entrywise sum of M^{n-1}).
inline uint64_t count_admissible_words(const transition_matrix& m, int n) {
    if (n <= 0) return 0;
    if (n == 1) return static_cast<uint64_t>(m.d);
    std::vector<uint64_t> cnt(m.d, 1);  // words of length 1 starting at each state
    for (int step = 1; step < n; ++step) {
        std::vector<uint64_t> nxt(m.d, 0);
        for (int i = 0; i < m.d; ++i) {
            if (cnt[i] == 0) continue;
            for (int j = 0; j < m.d; ++j)
                if (m(i, j)) nxt[j] += cnt[i];
        }
        // counting from the word's tail: nxt[j] = number of length-(step+1) words ending at j
        cnt.swap(nxt);
    }
    uint64_t total = 0;
    for (uint64_t c : cnt) total += c;
    return total;
}

// Streams every admissible word of length n (as 0-based state vectors).
template <class F>
void for_each_admissible_word(const transition_matrix& m, int n, F&& fn) {
    if (n <= 0) return;
    std::vector<int> w(n);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
            fn(const_cast<const std::vector<int>&>(w));
            return;
        }
        for (int s = 0; s < m.d; ++s) {
            if (pos > 0 && !m(w[pos - 1], s)) continue;
            w[pos] = s;
            rec(pos + 1);
        }
    };
    rec(0);
}

inline std::vector<std::vector<int>> admissible_words(const transition_matrix& m, int n) {
    std::vector<std::vector<int>> out;
    for_each_admissible_word(m, n, [&](const std::vector<int>& w) { out.push_back(w); });
    return out;
}

inline bool word_admissible(const transition_matrix& m, const std::vector<int>& w) {
    for (size_t k = 0; k + 1 < w.size(); ++k)
        if (!m(w[k], w[k + 1])) return false;
    return !w.empty();
}

} // namespace gibbslab
