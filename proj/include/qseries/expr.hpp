#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "qseries/appell.hpp"
#include "qseries/eulerian.hpp"
#include "qseries/hecke.hpp"
#include "qseries/theta.hpp"

namespace qseries {

/// Evaluation failure inside a parsed expression, carrying the byte offset
/// of the responsible subexpression.
struct EvalError : Error {
    EvalError(const std::string& what, std::size_t offset) : Error(what), offset(offset) {}
    std::size_t offset;
};

/// Expression AST. Precedence: ^  >  unary -  >  * /  >  + -, binaries
/// left-associative. Calls take integer structure parameters and signed
/// q-power (monomial) arguments; f and g separate the two groups with ';'.
struct Expr {
    enum class Kind { Rational, Q, Call, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind;
    std::size_t offset = 0;

    Rat value;                    // Rational
    std::string name;             // Call
    std::vector<long long> ints;  // Call: structure parameters
    std::vector<QMonomial> mons;  // Call: monomial arguments
    bool inf = false;             // poch(x, inf)
    std::shared_ptr<const Expr> a, b;
    long long ipow = 0;           // Pow exponent
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Structural equality; offsets are ignored.
inline bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
    if (!x || !y) return !x && !y;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
        case Expr::Kind::Rational: return x->value == y->value;
        case Expr::Kind::Q: return true;
        case Expr::Kind::Call:
            return x->name == y->name && x->ints == y->ints && x->mons == y->mons &&
                   x->inf == y->inf;
        case Expr::Kind::Neg: return expr_equal(x->a, y->a);
        case Expr::Kind::Pow: return x->ipow == y->ipow && expr_equal(x->a, y->a);
        default: return expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
    }
}

namespace expr_detail {

struct Token {
    enum class Type { Int, Name, Punct, End };
    Type type = Type::End;
    std::string text;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        tok_.offset = pos_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::Type::End, "", pos_};
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            tok_ = {Token::Type::Int, src_.substr(start, pos_ - start), start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Type::Name, src_.substr(start, pos_ - start), start};
            return;
        }
        tok_ = {Token::Type::Punct, std::string(1, c), pos_};
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    ExprPtr parse() {
        ExprPtr e = parse_expr();
        if (lex_.peek().type != Token::Type::End)
            fail("end of input", lex_.peek());
        return e;
    }

private:
    Lexer lex_;

    [[noreturn]] void fail(const std::string& expected, const Token& got) {
        std::string what = "expected " + expected + " at offset " +
                           std::to_string(got.offset);
        if (got.type == Token::Type::End)
            what += " (end of input)";
        else
            what += ", found '" + got.text + "'";
        throw ParseError(what, got.offset);
    }

    bool accept_punct(const std::string& p) {
        if (lex_.peek().type == Token::Type::Punct && lex_.peek().text == p) {
            lex_.next();
            return true;
        }
        return false;
    }

    void expect_punct(const std::string& p) {
        if (!accept_punct(p)) fail("'" + p + "'", lex_.peek());
    }

    // literals are capped: larger exponents or moduli would force series
    // whose valuation is quadratic in the exponent, far beyond dense storage
    long long parse_int() {
        bool neg = accept_punct("-");
        if (!neg && accept_punct("+")) {}
        Token t = lex_.peek();
        if (t.type != Token::Type::Int) fail("integer", t);
        lex_.next();
        long long v = 0;
        try {
            v = std::stoll(t.text);
        } catch (const std::exception&) {
            v = 1001;
        }
        if (v > 1000)
            throw ParseError("integer literal " + t.text +
                                 " exceeds the supported magnitude 1000 at offset " +
                                 std::to_string(t.offset),
                             t.offset);
        return neg ? -v : v;
    }

    QMonomial parse_monomial() {
        Token start = lex_.peek();
        int sign = 1;
        if (accept_punct("-")) sign = -1;
        else if (accept_punct("+")) sign = 1;
        Token t = lex_.peek();
        if (t.type == Token::Type::Name && t.text == "q") {
            lex_.next();
            long long e = 1;
            if (accept_punct("^")) e = parse_int();
            return QMonomial(sign, e);
        }
        if (t.type == Token::Type::Int && t.text == "1") {
            lex_.next();
            return QMonomial(sign, 0);
        }
        (void)start;
        fail("monomial (q, q^k, 1 or -1 with optional sign)", t);
    }

    ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            std::size_t off = lex_.peek().offset;
            if (accept_punct("+")) {
                Expr n;
                n.kind = Expr::Kind::Add;
                n.offset = off;
                n.a = e;
                n.b = parse_term();
                e = make(std::move(n));
            } else if (accept_punct("-")) {
                Expr n;
                n.kind = Expr::Kind::Sub;
                n.offset = off;
                n.a = e;
                n.b = parse_term();
                e = make(std::move(n));
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            std::size_t off = lex_.peek().offset;
            if (accept_punct("*")) {
                Expr n;
                n.kind = Expr::Kind::Mul;
                n.offset = off;
                n.a = e;
                n.b = parse_factor();
                e = make(std::move(n));
            } else if (accept_punct("/")) {
                Expr n;
                n.kind = Expr::Kind::Div;
                n.offset = off;
                n.a = e;
                n.b = parse_factor();
                e = make(std::move(n));
            } else {
                return e;
            }
        }
    }

    // '^' binds tighter than unary '-', so -q^2 is -(q^2).
    ExprPtr parse_factor() {
        std::size_t off = lex_.peek().offset;
        if (accept_punct("-")) {
            Expr n;
            n.kind = Expr::Kind::Neg;
            n.offset = off;
            n.a = parse_factor();
            return make(std::move(n));
        }
        ExprPtr base = parse_base();
        if (accept_punct("^")) {
            Expr n;
            n.kind = Expr::Kind::Pow;
            n.offset = off;
            n.a = base;
            n.ipow = parse_int();
            return make(std::move(n));
        }
        return base;
    }

    ExprPtr parse_base() {
        Token t = lex_.peek();
        if (t.type == Token::Type::Int) {
            lex_.next();
            Expr n;
            n.kind = Expr::Kind::Rational;
            n.offset = t.offset;
            n.value = rat_from_string(t.text);
            return make(std::move(n));
        }
        if (accept_punct("(")) {
            ExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        if (t.type == Token::Type::Name) {
            lex_.next();
            if (t.text == "q" &&
                !(lex_.peek().type == Token::Type::Punct && lex_.peek().text == "(")) {
                Expr n;
                n.kind = Expr::Kind::Q;
                n.offset = t.offset;
                return make(std::move(n));
            }
            return parse_call(t);
        }
        fail("a rational, 'q', '(' or a function call", t);
    }

    ExprPtr parse_call(const Token& name) {
        Expr n;
        n.kind = Expr::Kind::Call;
        n.offset = name.offset;
        n.name = name.text;
        expect_punct("(");
        if (name.text == "J") {
            n.ints.push_back(parse_int());
            if (accept_punct(",")) n.ints.push_back(parse_int());
        } else if (name.text == "JB" || name.text == "ptheta") {
            n.ints.push_back(parse_int());
            expect_punct(",");
            n.ints.push_back(parse_int());
        } else if (name.text == "jt") {
            n.mons.push_back(parse_monomial());
            expect_punct(",");
            n.ints.push_back(parse_int());
        } else if (name.text == "m") {
            n.mons.push_back(parse_monomial());
            expect_punct(",");
            n.ints.push_back(parse_int());
            expect_punct(",");
            n.mons.push_back(parse_monomial());
        } else if (name.text == "f" || name.text == "g") {
            int k = name.text == "f" ? 3 : 6;
            for (int i = 0; i < k; ++i) {
                if (i) expect_punct(",");
                n.ints.push_back(parse_int());
            }
            expect_punct(";");
            int nm = name.text == "f" ? 2 : 3;
            for (int i = 0; i < nm; ++i) {
                if (i) expect_punct(",");
                n.mons.push_back(parse_monomial());
            }
        } else if (name.text == "chi0" || name.text == "chi1" || name.text == "klA" ||
                   name.text == "klB") {
            // no arguments
        } else if (name.text == "poch") {
            n.mons.push_back(parse_monomial());
            expect_punct(",");
            if (lex_.peek().type == Token::Type::Name && lex_.peek().text == "inf") {
                lex_.next();
                n.inf = true;
            } else {
                n.ints.push_back(parse_int());
            }
        } else {
            throw ParseError("unknown function '" + name.text + "' at offset " +
                                 std::to_string(name.offset),
                             name.offset);
        }
        expect_punct(")");
        return make(std::move(n));
    }
};

inline int precedence(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

inline void print_to(const ExprPtr& e, std::string& out);

inline void print_child(const ExprPtr& c, int min_prec, std::string& out) {
    bool parens = precedence(c) < min_prec;
    if (parens) out += "(";
    print_to(c, out);
    if (parens) out += ")";
}

inline void print_to(const ExprPtr& e, std::string& out) {
    switch (e->kind) {
        case Expr::Kind::Rational: out += e->value.get_str(); return;
        case Expr::Kind::Q: out += "q"; return;
        case Expr::Kind::Neg:
            out += "-";
            print_child(e->a, 3, out);
            return;
        case Expr::Kind::Pow:
            print_child(e->a, 5, out);
            out += "^" + std::to_string(e->ipow);
            return;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            print_child(e->a, 1, out);
            out += e->kind == Expr::Kind::Add ? " + " : " - ";
            print_child(e->b, 2, out);
            return;
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
            print_child(e->a, 2, out);
            out += e->kind == Expr::Kind::Mul ? "*" : "/";
            print_child(e->b, 3, out);
            return;
        case Expr::Kind::Call: {
            out += e->name + "(";
            bool first = true;
            if (e->name == "jt" || e->name == "m" || e->name == "poch") {
                out += e->mons[0].str();
                first = false;
                for (long long i : e->ints) out += ", " + std::to_string(i);
                if (e->name == "m") out += ", " + e->mons[1].str();
                if (e->name == "poch" && e->inf) out += ", inf";
            } else {
                for (long long i : e->ints) {
                    if (!first) out += ", ";
                    out += std::to_string(i);
                    first = false;
                }
                if (!e->mons.empty()) {
                    out += "; ";
                    for (std::size_t i = 0; i < e->mons.size(); ++i) {
                        if (i) out += ", ";
                        out += e->mons[i].str();
                    }
                }
            }
            out += ")";
            return;
        }
    }
}

} // namespace expr_detail

inline ExprPtr parse(const std::string& text) { return expr_detail::Parser(text).parse(); }

/// Canonical text form; parse(print(e)) reproduces e structurally.
inline std::string print(const ExprPtr& e) {
    std::string out;
    expr_detail::print_to(e, out);
    return out;
}

namespace expr_detail {

inline QSeries eval_at(const ExprPtr& e, long long w);

inline QSeries eval_call(const Expr& e, long long w) {
    const auto& I = e.ints;
    const auto& M = e.mons;
    if (e.name == "J") {
        if (I.size() == 1) return eta_product(I[0], w);
        return J_am(I[0], I[1], w);
    }
    if (e.name == "JB") return Jbar_am(I[0], I[1], w);
    if (e.name == "jt") return jtheta(M[0], I[0], w);
    if (e.name == "m") return appell_m(M[0], I[0], M[1], w);
    if (e.name == "f") return hecke_f(HeckeParams2(I[0], I[1], I[2]), M[0], M[1], w);
    if (e.name == "g")
        return hecke_g(HeckeParams3(I[0], I[1], I[2], I[3], I[4], I[5]), M[0], M[1],
                       M[2], w);
    if (e.name == "chi0") return chi0(w);
    if (e.name == "chi1") return chi1(w);
    if (e.name == "klA") return kl_lhs_A(w);
    if (e.name == "klB") return kl_lhs_B(w);
    if (e.name == "ptheta") return partial_theta(PartialThetaSpec(I[0], I[1]), w);
    if (e.name == "poch") {
        if (e.inf) return pochhammer_inf(M[0], w);
        return pochhammer(M[0], I[0], w);
    }
    throw EvalError("unknown function '" + e.name + "'", e.offset);
}

inline QSeries eval_at(const ExprPtr& e, long long w) {
    switch (e->kind) {
        case Expr::Kind::Rational: return QSeries::constant(e->value, w);
        case Expr::Kind::Q: return QSeries::monomial(Rat(1), 1, w);
        case Expr::Kind::Neg: return -eval_at(e->a, w);
        case Expr::Kind::Add: return eval_at(e->a, w) + eval_at(e->b, w);
        case Expr::Kind::Sub: return eval_at(e->a, w) - eval_at(e->b, w);
        case Expr::Kind::Mul: return eval_at(e->a, w) * eval_at(e->b, w);
        case Expr::Kind::Div:
            try {
                return div(eval_at(e->a, w), eval_at(e->b, w));
            } catch (const EvalError&) {
                throw;
            } catch (const Error& err) {
                throw EvalError(std::string(err.what()) + " (at offset " +
                                    std::to_string(e->offset) + ")",
                                e->offset);
            }
        case Expr::Kind::Pow: {
            if (e->ipow > 4096 || e->ipow < -4096)
                throw EvalError("exponent " + std::to_string(e->ipow) +
                                    " too large for series power (at offset " +
                                    std::to_string(e->offset) + ")",
                                e->offset);
            QSeries base = eval_at(e->a, w);
            try {
                if (e->ipow >= 0) return pow(base, e->ipow);
                return pow(invert(base), -e->ipow);
            } catch (const EvalError&) {
                throw;
            } catch (const Error& err) {
                throw EvalError(std::string(err.what()) + " (at offset " +
                                    std::to_string(e->offset) + ")",
                                e->offset);
            }
        }
        case Expr::Kind::Call:
            try {
                return eval_call(*e, w);
            } catch (const EvalError&) {
                throw;
            } catch (const Error& err) {
                throw EvalError(std::string(err.what()) + " (in '" + e->name +
                                    "' at offset " + std::to_string(e->offset) + ")",
                                e->offset);
            }
    }
    throw EvalError("malformed expression", e->offset);
}

} // namespace expr_detail

/// Evaluates a parsed expression as a series known through `order`.
inline QSeries eval(const ExprPtr& e, long long order) {
    return to_order(order, [&](long long w) { return expr_detail::eval_at(e, w); });
}

} // namespace qseries
