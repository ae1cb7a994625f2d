#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gibbslab/matrep.hpp"
#include "gibbslab/weights.hpp"

// Line-oriented model files.  Sections: [meta], [A], [B], [phi], [psi],
// [grid].  Matrix rows are contiguous 0/1 strings; potential entries are
// `i j : <expr>`, block entries `block ki kj : <expr>` expand over the
// component-pair product, `limit ...` lines give the eps->0 table for phi.
// '#' starts a comment; states and components are 1-based in files.

namespace gibbslab {

struct model_parse_error : std::runtime_error {
    int line;
    model_parse_error(const std::string& msg, int ln)
        : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

struct model_file {
    int d = 0;
    double eps0 = 0.5;
    std::map<std::string, double> params;
    transition_matrix A, B;
    perturbation_family family;
    component_classification cls;
    double grid_lo = 1e-9, grid_hi = 1e-1;
    int grid_per_decade = 4;
    bool has_sin = false;
};

namespace modeldetail {

inline std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_number_or_ratio(const std::string& text, int line) {
    try {
        size_t slash = text.find('/');
        if (slash != std::string::npos) {
            double num = std::stod(strip(text.substr(0, slash)));
            double den = std::stod(strip(text.substr(slash + 1)));
            if (den == 0) throw model_parse_error("zero denominator", line);
            return num / den;
        }
        return std::stod(text);
    } catch (const model_parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw model_parse_error("bad numeric value '" + text + "'", line);
    }
}

inline bool contains_sin(const expr_node* n) {
    if (!n) return false;
    if (n->kind == expr_node::k_sin) return true;
    return contains_sin(n->lhs.get()) || contains_sin(n->rhs.get());
}

struct pot_line {
    int line;
    bool is_limit;
    bool is_block;
    int i, j;         // states or component ids, 0-based
    eps_expr expr;
};

} // namespace modeldetail

inline model_file parse_model(std::istream& in, const std::map<std::string, double>& extra_params = {}) {
    using modeldetail::strip;
    model_file mf;
    std::string section;
    std::vector<std::string> a_rows, b_rows;
    std::vector<modeldetail::pot_line> phi_lines, psi_lines;
    std::map<std::string, double> params;

    std::string raw;
    int ln = 0;
    std::vector<std::pair<int, std::string>> lines;
    while (std::getline(in, raw)) {
        ++ln;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string s = strip(raw);
        if (!s.empty()) lines.emplace_back(ln, s);
    }

    // first pass: meta only, so parameters are known before expressions
    for (auto& [no, s] : lines) {
        if (s.front() == '[') {
            section = s;
            continue;
        }
        if (section != "[meta]") continue;
        std::istringstream ls(s);
        std::string key;
        ls >> key;
        if (key == "param") {
            std::string name, eq, val;
            ls >> name >> eq >> val;
            if (eq != "=" || name.empty() || val.empty())
                throw model_parse_error("expected 'param name = value'", no);
            params[name] = modeldetail::parse_number_or_ratio(val, no);
        } else {
            std::string eq, val;
            ls >> eq >> val;
            if (eq != "=" || val.empty()) throw model_parse_error("expected 'key = value'", no);
            if (key == "d") mf.d = static_cast<int>(modeldetail::parse_number_or_ratio(val, no));
            else if (key == "eps0") mf.eps0 = modeldetail::parse_number_or_ratio(val, no);
            else throw model_parse_error("unknown meta key '" + key + "'", no);
        }
    }
    for (auto& [k, v] : extra_params) params[k] = v;
    mf.params = params;
    if (mf.d < 1) throw model_parse_error("missing or invalid 'd' in [meta]", 1);

    auto parse_expr_at = [&](const std::string& text, int no) {
        try {
            eps_expr e = parse_weight_expr(text, params);
            if (modeldetail::contains_sin(e.get())) mf.has_sin = true;
            return e;
        } catch (const expr_syntax_error& ex) {
            throw model_parse_error(std::string("expression error: ") + ex.what(), no);
        }
    };

    auto parse_pot_line = [&](const std::string& s, int no) {
        modeldetail::pot_line pl;
        pl.line = no;
        size_t colon = s.find(':');
        if (colon == std::string::npos) throw model_parse_error("expected ':' in potential entry", no);
        std::istringstream head(s.substr(0, colon));
        std::string tok;
        head >> tok;
        pl.is_limit = tok == "limit";
        if (pl.is_limit) head >> tok;
        pl.is_block = tok == "block";
        int i, j;
        if (pl.is_block) {
            if (!(head >> i >> j)) throw model_parse_error("expected 'block ki kj : expr'", no);
        } else {
            try {
                i = std::stoi(tok);
            } catch (const std::exception&) {
                throw model_parse_error("expected state index, got '" + tok + "'", no);
            }
            if (!(head >> j)) throw model_parse_error("expected 'i j : expr'", no);
        }
        std::string rest;
        if (head >> rest) throw model_parse_error("unexpected token '" + rest + "'", no);
        pl.i = i - 1;
        pl.j = j - 1;
        pl.expr = parse_expr_at(strip(s.substr(colon + 1)), no);
        return pl;
    };

    section.clear();
    for (auto& [no, s] : lines) {
        if (s.front() == '[') {
            if (s != "[meta]" && s != "[A]" && s != "[B]" && s != "[phi]" && s != "[psi]" && s != "[grid]")
                throw model_parse_error("unknown section " + s, no);
            section = s;
            continue;
        }
        if (section == "[meta]") continue;
        if (section == "[A]") a_rows.push_back(s);
        else if (section == "[B]") b_rows.push_back(s);
        else if (section == "[phi]") phi_lines.push_back(parse_pot_line(s, no));
        else if (section == "[psi]") psi_lines.push_back(parse_pot_line(s, no));
        else if (section == "[grid]") {
            std::istringstream ls(s);
            std::string key, eq, val;
            ls >> key >> eq >> val;
            if (eq != "=" || val.empty()) throw model_parse_error("expected 'key = value'", no);
            if (key == "lo") mf.grid_lo = modeldetail::parse_number_or_ratio(val, no);
            else if (key == "hi") mf.grid_hi = modeldetail::parse_number_or_ratio(val, no);
            else if (key == "per_decade") mf.grid_per_decade = static_cast<int>(modeldetail::parse_number_or_ratio(val, no));
            else throw model_parse_error("unknown grid key '" + key + "'", no);
        } else {
            throw model_parse_error("content outside any section", no);
        }
    }

    auto build_matrix = [&](const std::vector<std::string>& rows, const char* name) {
        if (static_cast<int>(rows.size()) != mf.d)
            throw model_parse_error(std::string(name) + " has " + std::to_string(rows.size()) +
                                        " rows, expected " + std::to_string(mf.d), 1);
        try {
            return transition_matrix::from_rows(rows);
        } catch (const std::exception& ex) {
            throw model_parse_error(std::string(name) + ": " + ex.what(), 1);
        }
    };
    mf.A = build_matrix(a_rows, "[A]");
    mf.B = build_matrix(b_rows, "[B]");

    component_decomposition dec = scc_decompose(mf.B);
    const int nblocks = static_cast<int>(dec.blocks.size());

    auto expand = [&](const modeldetail::pot_line& pl, bool for_psi) {
        std::vector<state_pair> out;
        if (pl.is_block) {
            if (pl.i < 0 || pl.i >= nblocks || pl.j < 0 || pl.j >= nblocks)
                throw model_parse_error("component id out of range (have " +
                                            std::to_string(nblocks) + " components)", pl.line);
            for (int a : dec.blocks[pl.i].states)
                for (int b : dec.blocks[pl.j].states) {
                    if (!mf.A(a, b)) continue;
                    if (for_psi && mf.B(a, b)) continue;   // block psi lines cover only N pairs
                    out.push_back({a, b});
                }
        } else {
            if (pl.i < 0 || pl.i >= mf.d || pl.j < 0 || pl.j >= mf.d)
                throw model_parse_error("state index out of range", pl.line);
            out.push_back({pl.i, pl.j});
        }
        return out;
    };

    std::map<state_pair, eps_expr> phi_expr, phi_limit, psi_expr;
    for (const auto& pl : phi_lines)
        for (const state_pair& pr : expand(pl, false)) (pl.is_limit ? phi_limit : phi_expr)[pr] = pl.expr;
    for (const auto& pl : psi_lines) {
        if (pl.is_limit) throw model_parse_error("'limit' entries belong in [phi]", pl.line);
        for (const state_pair& pr : expand(pl, true)) psi_expr[pr] = pl.expr;
        if (!pl.is_block) {
            // explicit psi pairs must lie in N; report the named pair early
            state_pair pr{pl.i, pl.j};
            if (!mf.A(pr.first, pr.second) || mf.B(pr.first, pr.second))
                throw model_parse_error("psi entry " + detail::pair_name(pr) + " lies outside N", pl.line);
        }
    }

    block_potential phi;
    for (auto& [pr, e] : phi_expr) {
        phi_entry pe;
        pe.expr = e;
        auto it = phi_limit.find(pr);
        if (it != phi_limit.end()) pe.limit = it->second;
        phi.table[pr] = pe;
    }
    try {
        mf.family = build_family(mf.A, mf.B, std::move(phi), std::move(psi_expr), mf.eps0);
    } catch (const family_error& ex) {
        throw model_parse_error(ex.what(), 1);
    }
    mf.cls = classify_components(mf.family);
    return mf;
}

inline model_file parse_model(const std::string& path, const std::map<std::string, double>& extra_params = {}) {
    std::ifstream in(path);
    if (!in) throw model_parse_error("cannot open model file '" + path + "'", 0);
    return parse_model(in, extra_params);
}

} // namespace gibbslab
