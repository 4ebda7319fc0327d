#include "difflarge/parser.hpp"

#include <algorithm>
#include <cctype>

namespace difflarge {

namespace {

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& gens, unsigned cap)
        : s_(text), gens_(gens), cap_(cap) {}

    Ast run() {
        Ast e = expr();
        skip();
        if (pos_ < s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) { throw SyntaxError(what, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Ast node(Ast::Kind k, std::size_t at, std::vector<Ast> kids) {
        Ast a;
        a.kind = k;
        a.offset = at;
        a.kids = std::move(kids);
        return a;
    }

    Ast expr() {
        Ast lhs = term();
        for (;;) {
            skip();
            std::size_t at = pos_;
            if (eat('+')) lhs = node(Ast::Kind::Sum, at, {std::move(lhs), term()});
            else if (eat('-')) lhs = node(Ast::Kind::Difference, at, {std::move(lhs), term()});
            else return lhs;
        }
    }

    Ast term() {
        Ast lhs = unary();
        for (;;) {
            skip();
            std::size_t at = pos_;
            if (eat('*')) lhs = node(Ast::Kind::Product, at, {std::move(lhs), unary()});
            else if (eat('/')) lhs = node(Ast::Kind::Quotient, at, {std::move(lhs), unary()});
            else return lhs;
        }
    }

    Ast unary() {
        skip();
        std::size_t at = pos_;
        if (eat('-')) return node(Ast::Kind::Neg, at, {unary()});
        if (eat('+')) return unary();
        return power();
    }

    Ast power() {
        Ast base = atom();
        for (;;) {
            skip();
            std::size_t at = pos_;
            if (!eat('^')) return base;
            bool paren = eat('(');
            skip();
            if (eat('-')) fail("negative exponent");
            unsigned long e = integer("exponent");
            if (paren) {
                skip();
                if (pos_ < s_.size() && s_[pos_] == '/') fail("fractional exponent");
                if (!eat(')')) fail("expected ')'");
            }
            Ast p = node(Ast::Kind::Power, at, {std::move(base)});
            p.index = static_cast<unsigned>(e);
            base = std::move(p);
        }
    }

    unsigned long integer(const char* what) {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail(std::string("expected ") + what);
        if (pos_ - start > 9) {
            pos_ = start;
            fail(std::string(what) + " too large");
        }
        return std::stoul(std::string(s_.substr(start, pos_ - start)));
    }

    Ast derivative(std::size_t at, unsigned long k) {
        if (k > cap_) {
            throw DerivativeCapExceeded("derivative index " + std::to_string(k) + " at offset " +
                                        std::to_string(at) + " exceeds cap " +
                                        std::to_string(cap_));
        }
        Ast a = node(Ast::Kind::Derivative, at, {});
        a.index = static_cast<unsigned>(k);
        return a;
    }

    Ast atom() {
        skip();
        std::size_t at = pos_;
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Ast e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Ast a = node(Ast::Kind::Number, at, {});
            a.value = Rational(Integer(std::string(s_.substr(start, pos_ - start))));
            return a;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (name == "x") {
                if (s_.substr(pos_, 2) == "^(") {
                    pos_ += 2;
                    unsigned long k = integer("derivative order");
                    if (!eat(')')) fail("expected ')'");
                    return derivative(at, k);
                }
                unsigned long k = 0;
                while (pos_ < s_.size() && s_[pos_] == '\'') {
                    ++pos_;
                    ++k;
                }
                return derivative(at, k);
            }
            auto it = std::find(gens_.begin(), gens_.end(), name);
            if (it == gens_.end()) throw UnknownIdentifier(name, at);
            Ast a = node(Ast::Kind::Generator, at, {});
            a.index = static_cast<unsigned>(it - gens_.begin());
            return a;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    const std::vector<std::string>& gens_;
    unsigned cap_;
    std::size_t pos_ = 0;
};

std::string poly_string(const MultiPoly& p, const BaseFieldSpec& base);

std::string monomial_string(const Monomial& m, const BaseFieldSpec& base) {
    std::string out;
    for (Var v = m.width(); v-- > 0;) {
        auto e = m.exponent(v);
        if (e == 0) continue;
        if (!out.empty()) out += "*";
        out += base.is_x_var(v) ? x_name(v - base.size()) : base.generators()[v];
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

// Appends "c*m" with its sign folded into the separator.
void append_term(std::string& out, Rational c, const std::string& mono) {
    bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty()) out = neg ? "-" : "";
    else out += neg ? " - " : " + ";
    if (mono.empty()) out += to_string(c);
    else if (c == 1) out += mono;
    else out += to_string(c) + "*" + mono;
}

std::string poly_string(const MultiPoly& p, const BaseFieldSpec& base) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p.terms()) append_term(out, c, monomial_string(m, base));
    return out;
}

bool is_single_power(const MultiPoly& p) {
    return p.is_monomial() && p.leading_coefficient() == 1 &&
           p.leading_monomial().exponents().size() -
                   std::count(p.leading_monomial().exponents().begin(),
                              p.leading_monomial().exponents().end(), 0u) == 1;
}

} // namespace

std::string x_name(unsigned j) {
    if (j <= 3) return "x" + std::string(j, '\'');
    return "x^(" + std::to_string(j) + ")";
}

Ast parse_ast(std::string_view text, const std::vector<std::string>& generators,
              unsigned derivative_cap) {
    return Parser(text, generators, derivative_cap).run();
}

DiffPoly to_diffpoly(const Ast& a, const BaseFieldPtr& base) {
    switch (a.kind) {
    case Ast::Kind::Number:
        return DiffPoly::constant(base, a.value);
    case Ast::Kind::Generator:
        return DiffPoly::constant(base, RatFunc::variable(a.index));
    case Ast::Kind::Derivative:
        return DiffPoly::x(base, a.index);
    case Ast::Kind::Neg:
        return -to_diffpoly(a.kids[0], base);
    case Ast::Kind::Sum:
        return to_diffpoly(a.kids[0], base) + to_diffpoly(a.kids[1], base);
    case Ast::Kind::Difference:
        return to_diffpoly(a.kids[0], base) - to_diffpoly(a.kids[1], base);
    case Ast::Kind::Product:
        return to_diffpoly(a.kids[0], base) * to_diffpoly(a.kids[1], base);
    case Ast::Kind::Quotient: {
        DiffPoly d = to_diffpoly(a.kids[1], base);
        if (d.is_zero()) throw SyntaxError("division by zero", a.offset);
        if (!d.is_x_free()) throw SyntaxError("divisor involves x", a.offset);
        DiffPoly n = to_diffpoly(a.kids[0], base);
        return DiffPoly(base, n.expr() / d.expr());
    }
    case Ast::Kind::Power:
        return to_diffpoly(a.kids[0], base).pow(a.index);
    }
    throw InternalError("unknown syntax node");
}

DiffPoly parse_diffpoly(std::string_view text, const BaseFieldPtr& base, unsigned derivative_cap) {
    return to_diffpoly(parse_ast(text, base->generators(), derivative_cap), base);
}

FieldElem parse_field_elem(std::string_view text, const BaseFieldSpec& base) {
    // Evaluate over a derivation-free copy so this also serves while the
    // base itself is being configured.
    auto plain = std::make_shared<const BaseFieldSpec>(
        base.generators(), std::vector<FieldElem>(base.size()));
    DiffPoly p = parse_diffpoly(text, plain);
    if (!p.is_x_free()) throw SyntaxError("base field element mentions x", 0);
    return p.expr();
}

std::string print_field_elem(const FieldElem& e, const BaseFieldSpec& base) {
    std::string n = poly_string(e.num(), base);
    if (e.is_polynomial()) return n;
    if (e.num().size() > 1) n = "(" + n + ")";
    std::string d = poly_string(e.den(), base);
    if (!is_single_power(e.den())) d = "(" + d + ")";
    return n + "/" + d;
}

std::string print_diffpoly(const DiffPoly& f) {
    const auto& base = *f.base();
    auto terms = x_terms(f);
    if (terms.empty()) return "0";
    auto key_less = [](const XTerm& a, const XTerm& b) {
        // Ascending (order, leader degree, grlex); printed in reverse.
        int oa = static_cast<int>(a.exps.size()), ob = static_cast<int>(b.exps.size());
        if (oa != ob) return oa < ob;
        if (!a.exps.empty() && a.exps.back() != b.exps.back()) return a.exps.back() < b.exps.back();
        Monomial ma(std::vector<std::uint32_t>(a.exps.begin(), a.exps.end()));
        Monomial mb(std::vector<std::uint32_t>(b.exps.begin(), b.exps.end()));
        return grlex_compare(ma, mb) == std::strong_ordering::less;
    };
    std::sort(terms.begin(), terms.end(), [&](const XTerm& a, const XTerm& b) { return key_less(b, a); });

    std::string out;
    for (const auto& t : terms) {
        std::vector<std::uint32_t> shifted(base.size(), 0);
        shifted.insert(shifted.end(), t.exps.begin(), t.exps.end());
        std::string xm = monomial_string(Monomial(shifted), base);
        const FieldElem& c = t.coeff;
        if (c.is_constant()) {
            append_term(out, c.constant_value(), xm);
            continue;
        }
        std::string body;
        bool neg = false;
        if (c.is_polynomial() && c.num().is_monomial()) {
            Rational lc = c.num().leading_coefficient();
            neg = lc < 0;
            body = poly_string(neg ? -c.num() : c.num(), base);
        } else if (c.num().is_monomial()) {
            Rational lc = c.num().leading_coefficient();
            neg = lc < 0;
            body = print_field_elem(neg ? -c : c, base);
        } else {
            body = print_field_elem(c, base);
            if (c.is_polynomial()) body = "(" + body + ")";
        }
        if (!xm.empty()) body += "*" + xm;
        if (out.empty()) out = neg ? "-" + body : body;
        else out += (neg ? " - " : " + ") + body;
    }
    return out;
}

} // namespace difflarge
