#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gibbslab/quadreal.hpp"

// Small weight-expression language:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' rational]
//   atom   := number | 'eps' | '(' expr ')' | ('log'|'exp'|'sin'|'-') '(' expr ')'
// with unary minus also allowed as a prefix.  Whitespace is insignificant.
// Named parameters (when supplied) fold to numeric literals at parse time.

namespace gibbslab {

struct expr_syntax_error : std::runtime_error {
    size_t position;
    expr_syntax_error(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct expr_eval_error : std::runtime_error {
    explicit expr_eval_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct expr_node;
using expr_ptr = std::shared_ptr<const expr_node>;

struct expr_node {
    enum kind_t { k_number, k_eps, k_neg, k_log, k_exp, k_sin, k_add, k_sub, k_mul, k_div, k_pow } kind;
    std::string literal;   // number: source text (canonical); pow: exponent text "p/q" or decimal
    double num = 0;        // number value / pow exponent value
    expr_ptr lhs, rhs;
};

class eps_expr {
public:
    eps_expr() = default;
    explicit eps_expr(expr_ptr r) : root_(std::move(r)) {}
    const expr_node* get() const { return root_.get(); }
    expr_ptr ptr() const { return root_; }
    bool valid() const { return root_ != nullptr; }

private:
    expr_ptr root_;
};

namespace exprdetail {

inline expr_ptr node(expr_node::kind_t k, expr_ptr l = nullptr, expr_ptr r = nullptr) {
    auto n = std::make_shared<expr_node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

inline expr_ptr number_node(std::string text, double value) {
    auto n = std::make_shared<expr_node>();
    n->kind = expr_node::k_number;
    n->literal = std::move(text);
    n->num = value;
    return n;
}

struct parser {
    std::string_view src;
    size_t pos = 0;
    const std::map<std::string, double>* params = nullptr;

    void skip_ws() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }

    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    std::string read_ident() {
        skip_ws();
        size_t start = pos;
        while (pos < src.size() && ident_char(src[pos]) && !std::isdigit(static_cast<unsigned char>(src[pos])))
            ++pos;
        while (pos < src.size() && ident_char(src[pos])) ++pos;
        return std::string(src.substr(start, pos - start));
    }

    expr_ptr read_number() {
        skip_ws();
        size_t start = pos;
        while (pos < src.size() && (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.')) ++pos;
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            size_t mark = pos;
            ++pos;
            if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
            if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            } else {
                pos = mark;   // the 'e' belonged to something else
            }
        }
        std::string text(src.substr(start, pos - start));
        try {
            return number_node(text, std::stod(text));
        } catch (const std::exception&) {
            throw expr_syntax_error("bad numeric literal '" + text + "'", start);
        }
    }

    expr_ptr parse_atom() {
        skip_ws();
        if (pos >= src.size()) throw expr_syntax_error("unexpected end of expression", pos);
        char c = src[pos];
        if (c == '(') {
            ++pos;
            expr_ptr e = parse_expr();
            if (!eat(')')) throw expr_syntax_error("expected ')'", pos);
            return e;
        }
        if (c == '-') {
            ++pos;
            return node(expr_node::k_neg, parse_factor());
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return read_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            std::string id = read_ident();
            if (id == "eps") return node(expr_node::k_eps);
            expr_node::kind_t fk;
            if (id == "log") fk = expr_node::k_log;
            else if (id == "exp") fk = expr_node::k_exp;
            else if (id == "sin") fk = expr_node::k_sin;
            else {
                if (params) {
                    auto it = params->find(id);
                    if (it != params->end()) {
                        char buf[40];
                        std::snprintf(buf, sizeof buf, "%.17g", it->second);
                        if (it->second < 0)
                            return node(expr_node::k_neg, number_node(buf + 1, -it->second));
                        return number_node(buf, it->second);
                    }
                }
                throw expr_syntax_error("unknown identifier '" + id + "'", start);
            }
            if (!eat('(')) throw expr_syntax_error("expected '(' after '" + id + "'", pos);
            expr_ptr arg = parse_expr();
            if (!eat(')')) throw expr_syntax_error("expected ')'", pos);
            return node(fk, arg);
        }
        throw expr_syntax_error(std::string("unexpected character '") + c + "'", pos);
    }

    // rational exponent: [ '(' ] signed decimal [ '/' decimal ] [ ')' ]
    expr_ptr parse_exponent(expr_ptr base) {
        skip_ws();
        bool paren = eat('(');
        bool neg = eat('-');
        size_t start = pos;
        expr_ptr p = read_number();
        double val = p->num;
        std::string text = p->literal;
        if (eat('/')) {
            expr_ptr q = read_number();
            if (q->num == 0) throw expr_syntax_error("zero denominator in exponent", start);
            val /= q->num;
            text += "/" + q->literal;
        }
        if (neg) { val = -val; text = "-" + text; }
        if (paren && !eat(')')) throw expr_syntax_error("expected ')' in exponent", pos);
        auto n = std::make_shared<expr_node>();
        n->kind = expr_node::k_pow;
        n->lhs = std::move(base);
        n->literal = text;
        n->num = val;
        return n;
    }

    expr_ptr parse_factor() {
        expr_ptr a = parse_atom();
        if (peek() == '^') {
            ++pos;
            a = parse_exponent(std::move(a));
        }
        return a;
    }

    expr_ptr parse_term() {
        expr_ptr a = parse_factor();
        while (true) {
            char c = peek();
            if (c == '*') { ++pos; a = node(expr_node::k_mul, a, parse_factor()); }
            else if (c == '/') { ++pos; a = node(expr_node::k_div, a, parse_factor()); }
            else break;
        }
        return a;
    }

    expr_ptr parse_expr() {
        expr_ptr a = parse_term();
        while (true) {
            char c = peek();
            if (c == '+') { ++pos; a = node(expr_node::k_add, a, parse_term()); }
            else if (c == '-') { ++pos; a = node(expr_node::k_sub, a, parse_term()); }
            else break;
        }
        return a;
    }
};

} // namespace exprdetail

inline eps_expr parse_weight_expr(std::string_view text, const std::map<std::string, double>* params = nullptr) {
    exprdetail::parser p;
    p.src = text;
    p.params = params;
    expr_ptr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw expr_syntax_error("trailing input", p.pos);
    return eps_expr(e);
}

inline eps_expr parse_weight_expr(std::string_view text, const std::map<std::string, double>& params) {
    return parse_weight_expr(text, &params);
}

inline std::string to_string(const expr_node* n) {
    switch (n->kind) {
        case expr_node::k_number: return n->literal;
        case expr_node::k_eps: return "eps";
        case expr_node::k_neg: return "-(" + to_string(n->lhs.get()) + ")";
        case expr_node::k_log: return "log(" + to_string(n->lhs.get()) + ")";
        case expr_node::k_exp: return "exp(" + to_string(n->lhs.get()) + ")";
        case expr_node::k_sin: return "sin(" + to_string(n->lhs.get()) + ")";
        case expr_node::k_add: return "(" + to_string(n->lhs.get()) + "+" + to_string(n->rhs.get()) + ")";
        case expr_node::k_sub: return "(" + to_string(n->lhs.get()) + "-" + to_string(n->rhs.get()) + ")";
        case expr_node::k_mul: return "(" + to_string(n->lhs.get()) + "*" + to_string(n->rhs.get()) + ")";
        case expr_node::k_div: return "(" + to_string(n->lhs.get()) + "/" + to_string(n->rhs.get()) + ")";
        case expr_node::k_pow: return "(" + to_string(n->lhs.get()) + ")^(" + n->literal + ")";
    }
    return "?";
}

inline std::string to_string(const eps_expr& e) { return to_string(e.get()); }

inline bool structurally_equal(const expr_node* a, const expr_node* b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case expr_node::k_number: return a->num == b->num;
        case expr_node::k_eps: return true;
        case expr_node::k_pow:
            return a->num == b->num && structurally_equal(a->lhs.get(), b->lhs.get());
        default:
            break;
    }
    if (a->lhs || b->lhs)
        if (!structurally_equal(a->lhs.get(), b->lhs.get())) return false;
    if (a->rhs || b->rhs)
        if (!structurally_equal(a->rhs.get(), b->rhs.get())) return false;
    return true;
}

inline bool structurally_equal(const eps_expr& a, const eps_expr& b) {
    return structurally_equal(a.get(), b.get());
}

inline bool depends_on_eps(const expr_node* n) {
    if (!n) return false;
    if (n->kind == expr_node::k_eps) return true;
    return depends_on_eps(n->lhs.get()) || depends_on_eps(n->rhs.get());
}

inline bool depends_on_eps(const eps_expr& e) { return depends_on_eps(e.get()); }

template <class T>
T eval_node(const expr_node* n, T eps) {
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    T v;
    switch (n->kind) {
        case expr_node::k_number: v = real_traits<T>::from_decimal(n->literal); break;
        case expr_node::k_eps: v = eps; break;
        case expr_node::k_neg: v = -eval_node(n->lhs.get(), eps); break;
        case expr_node::k_log: v = log(eval_node(n->lhs.get(), eps)); break;
        case expr_node::k_exp: v = exp(eval_node(n->lhs.get(), eps)); break;
        case expr_node::k_sin: v = sin(eval_node(n->lhs.get(), eps)); break;
        case expr_node::k_add: v = eval_node(n->lhs.get(), eps) + eval_node(n->rhs.get(), eps); break;
        case expr_node::k_sub: v = eval_node(n->lhs.get(), eps) - eval_node(n->rhs.get(), eps); break;
        case expr_node::k_mul: v = eval_node(n->lhs.get(), eps) * eval_node(n->rhs.get(), eps); break;
        case expr_node::k_div: v = eval_node(n->lhs.get(), eps) / eval_node(n->rhs.get(), eps); break;
        case expr_node::k_pow: v = pow(eval_node(n->lhs.get(), eps), T(n->num)); break;
        default: throw expr_eval_error("corrupt expression node");
    }
    using std::isfinite;
    if (!isfinite(v)) throw expr_eval_error("non-finite value in subexpression " + to_string(n));
    return v;
}

template <class T>
T eval_expr(const eps_expr& e, T eps) {
    if (!e.valid()) throw expr_eval_error("empty expression");
    return eval_node(e.get(), eps);
}

} // namespace gibbslab
