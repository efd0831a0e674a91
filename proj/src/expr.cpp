#include "hmc/expr.hpp"

#include <cctype>
#include <charconv>
#include <numbers>

namespace hmc {

namespace {

ExprPtr make(Expr::Op op, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

ExprPtr make_literal(Complex v) {
    auto e = std::make_shared<Expr>();
    e->op = Expr::Op::literal;
    e->value = v;
    return e;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    ExprPtr run() {
        if (src_.empty()) throw ParseError("empty expression", 0);
        ExprPtr e = sum();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr sum() {
        ExprPtr e = product();
        for (;;) {
            if (consume('+'))
                e = make(Expr::Op::add, e, product());
            else if (consume('-'))
                e = make(Expr::Op::sub, e, product());
            else
                return e;
        }
    }

    ExprPtr product() {
        ExprPtr e = unary();
        for (;;) {
            if (consume('*'))
                e = make(Expr::Op::mul, e, unary());
            else if (consume('/'))
                e = make(Expr::Op::div, e, unary());
            else
                return e;
        }
    }

    ExprPtr unary() {
        if (consume('-')) return make(Expr::Op::neg, unary());
        return power();
    }

    // '^' binds tighter than unary minus and associates to the right;
    // the exponent re-enters at unary so "z^-2" works.
    ExprPtr power() {
        ExprPtr base = atom();
        if (consume('^')) return make(Expr::Op::pow, base, unary());
        return base;
    }

    ExprPtr atom() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            ExprPtr e = sum();
            if (!consume(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw ParseError("expected a value", pos_);
    }

    ExprPtr number() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            } else {
                pos_ = mark;  // 'e' belonged to something else
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (ec != std::errc() || ptr != src_.data() + pos_)
            throw ParseError("malformed number", start);
        // Trailing 'i' makes the literal imaginary: 4i, 0.5i.
        if (pos_ < src_.size() && src_[pos_] == 'i' &&
            !(pos_ + 1 < src_.size() &&
              (std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '_'))) {
            ++pos_;
            return make_literal(Complex(0.0, v));
        }
        return make_literal(Complex(v, 0.0));
    }

    ExprPtr identifier() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "z") return make(Expr::Op::var_z);
        if (name == "i") return make(Expr::Op::const_i);
        if (name == "pi") return make(Expr::Op::const_pi);

        Expr::Op fn;
        if (name == "exp") fn = Expr::Op::exp;
        else if (name == "log") fn = Expr::Op::log;
        else if (name == "sqrt") fn = Expr::Op::sqrt;
        else if (name == "sin") fn = Expr::Op::sin;
        else if (name == "cos") fn = Expr::Op::cos;
        else throw ParseError("unknown identifier '" + std::string(name) + "'", start);

        if (!consume('(')) throw ParseError("expected '(' after function name", pos_);
        ExprPtr arg = sum();
        if (!consume(')')) throw ParseError("expected ')'", pos_);
        return make(fn, arg);
    }
};

int precedence(Expr::Op op) {
    switch (op) {
        case Expr::Op::add:
        case Expr::Op::sub: return 1;
        case Expr::Op::mul:
        case Expr::Op::div: return 2;
        case Expr::Op::neg: return 3;
        case Expr::Op::pow: return 4;
        default: return 5;  // atoms and function calls
    }
}

std::string print_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void print_rec(const Expr& e, int parent_prec, std::string& out) {
    const int prec = precedence(e.op);
    switch (e.op) {
        case Expr::Op::literal: {
            const bool imag = e.value.real() == 0.0 && e.value.imag() != 0.0;
            const double v = imag ? e.value.imag() : e.value.real();
            const bool needs_parens = v < 0.0 && parent_prec > 1;
            if (needs_parens) out += '(';
            out += print_double(v);
            if (imag) out += 'i';
            if (needs_parens) out += ')';
            return;
        }
        case Expr::Op::var_z: out += 'z'; return;
        case Expr::Op::const_i: out += 'i'; return;
        case Expr::Op::const_pi: out += "pi"; return;
        case Expr::Op::neg:
            if (prec < parent_prec) out += '(';
            out += '-';
            print_rec(*e.lhs, prec, out);
            if (prec < parent_prec) out += ')';
            return;
        case Expr::Op::add:
        case Expr::Op::sub:
        case Expr::Op::mul:
        case Expr::Op::div:
        case Expr::Op::pow: {
            const char sym = e.op == Expr::Op::add ? '+'
                           : e.op == Expr::Op::sub ? '-'
                           : e.op == Expr::Op::mul ? '*'
                           : e.op == Expr::Op::div ? '/'
                                                   : '^';
            if (prec < parent_prec) out += '(';
            // Left child needs strictly-higher precedence on the right-assoc
            // '^'; right child needs it on the left-assoc operators.
            print_rec(*e.lhs, e.op == Expr::Op::pow ? prec + 1 : prec, out);
            out += sym;
            print_rec(*e.rhs, e.op == Expr::Op::pow ? prec : prec + 1, out);
            if (prec < parent_prec) out += ')';
            return;
        }
        case Expr::Op::exp: out += "exp("; break;
        case Expr::Op::log: out += "log("; break;
        case Expr::Op::sqrt: out += "sqrt("; break;
        case Expr::Op::sin: out += "sin("; break;
        case Expr::Op::cos: out += "cos("; break;
    }
    print_rec(*e.lhs, 0, out);
    out += ')';
}

}  // namespace

ExprPtr parse_expr(std::string_view source) { return Parser(source).run(); }

std::string print_expr(const Expr& e) {
    std::string out;
    print_rec(e, 0, out);
    return out;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.op != b.op) return false;
    if (a.op == Expr::Op::literal &&
        (a.value.real() != b.value.real() || a.value.imag() != b.value.imag()))
        return false;
    if ((a.lhs == nullptr) != (b.lhs == nullptr)) return false;
    if ((a.rhs == nullptr) != (b.rhs == nullptr)) return false;
    if (a.lhs && !expr_equal(*a.lhs, *b.lhs)) return false;
    if (a.rhs && !expr_equal(*a.rhs, *b.rhs)) return false;
    return true;
}

ComplexJet eval_jet(const Expr& e, Complex z) {
    switch (e.op) {
        case Expr::Op::literal: return ComplexJet::constant(e.value);
        case Expr::Op::var_z: return ComplexJet::variable(z);
        case Expr::Op::const_i: return ComplexJet::constant(Complex(0.0, 1.0));
        case Expr::Op::const_pi: return ComplexJet::constant(Complex(std::numbers::pi, 0.0));
        case Expr::Op::add: return eval_jet(*e.lhs, z) + eval_jet(*e.rhs, z);
        case Expr::Op::sub: return eval_jet(*e.lhs, z) - eval_jet(*e.rhs, z);
        case Expr::Op::mul: return eval_jet(*e.lhs, z) * eval_jet(*e.rhs, z);
        case Expr::Op::div: return eval_jet(*e.lhs, z) / eval_jet(*e.rhs, z);
        case Expr::Op::neg: return -eval_jet(*e.lhs, z);
        case Expr::Op::pow: {
            const ComplexJet base = eval_jet(*e.lhs, z);
            const ComplexJet expo = eval_jet(*e.rhs, z);
            // Constant exponents are by far the common case and keep the
            // integer fast path available; a z-dependent exponent goes
            // through exp(w*log(base)).
            if (expo.c1 == 0.0 && expo.c2 == 0.0 && expo.c3 == 0.0)
                return pow(base, expo.c0);
            return exp(expo * log(base));
        }
        case Expr::Op::exp: return exp(eval_jet(*e.lhs, z));
        case Expr::Op::log: return log(eval_jet(*e.lhs, z));
        case Expr::Op::sqrt: return sqrt(eval_jet(*e.lhs, z));
        case Expr::Op::sin: return sin(eval_jet(*e.lhs, z));
        case Expr::Op::cos: return cos(eval_jet(*e.lhs, z));
    }
    throw EvalError("corrupt expression node");
}

Complex eval_value(const Expr& e, Complex z) { return eval_jet(e, z).c0; }

}  // namespace hmc
