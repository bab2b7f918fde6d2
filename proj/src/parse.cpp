#include "orecalc/parse.hpp"

#include "orecalc/errors.hpp"

#include <cctype>

namespace orecalc {

namespace {

class Parser {
public:
    Parser(const std::string &s, const SigPtr &sig, bool allow_d) : s_(s), sig_(sig), allow_d_(allow_d) {}

    OreOperator parse() {
        OreOperator r = expr();
        skip();
        if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, p_); }

    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }

    bool eat(char c) {
        skip();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }

    OreOperator expr() {
        OreOperator r = term();
        while (true) {
            if (eat('+'))
                r += term();
            else if (eat('-'))
                r -= term();
            else
                return r;
        }
    }

    OreOperator term() {
        OreOperator r = unary();
        while (true) {
            if (eat('*')) {
                r = r * unary();
            } else if (eat('/')) {
                std::size_t at = p_;
                OreOperator d = unary();
                r = divide(r, d, at);
            } else {
                return r;
            }
        }
    }

    OreOperator divide(const OreOperator &a, const OreOperator &d, std::size_t at) const {
        Exponent zero(2 * sig_->n(), 0);
        if (d.size() != 1 || d.terms().begin()->first != zero)
            throw ParseError("division only by a nonzero constant", at);
        const Scalar &c = d.terms().begin()->second;
        OreOperator r(sig_);
        for (const auto &[e, v] : a.terms()) {
            Scalar q(sig_->domain());
            if (!divides(c, v, &q)) throw ParseError("inexact division by " + c.str(), at);
            r.add_term(e, q);
        }
        return r;
    }

    OreOperator unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        OreOperator b = primary();
        if (eat('^')) {
            skip();
            std::size_t start = p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
            if (start == p_) fail("expected exponent");
            unsigned long e = std::stoul(s_.substr(start, p_ - start));
            if (e > 100000) throw ParseError("exponent too large", start);
            b = b.pow(static_cast<unsigned>(e));
        }
        return b;
    }

    OreOperator primary() {
        skip();
        if (p_ >= s_.size()) fail("unexpected end of input");
        char c = s_[p_];
        if (c == '(') {
            ++p_;
            OreOperator r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        Domain d = sig_->domain();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
            return OreOperator::constant(sig_, Scalar(d, mpz_class(s_.substr(start, p_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = p_;
            while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
            std::string id = s_.substr(start, p_ - start);
            for (std::size_t i = 0; i < sig_->n(); ++i) {
                if (id == sig_->pair(i).name) return OreOperator::x(sig_, i);
                if (allow_d_ && id == sig_->d_name(i)) return OreOperator::d(sig_, i);
            }
            if (id == "t") {
                if (d != Domain::QQ_t) throw ParseError("parameter t needs the QQ_t domain", start);
                return OreOperator::constant(sig_, Scalar::t());
            }
            throw ParseError("unknown symbol '" + id + "'", start);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string &s_;
    SigPtr sig_;
    bool allow_d_;
    std::size_t p_ = 0;
};

} // namespace

OreOperator parse_operator(const std::string &text, const SigPtr &sig) { return Parser(text, sig, true).parse(); }

MultiPoly parse_poly(const std::string &text, Domain d, const std::vector<std::string> &names) {
    SigPtr sig = OreSignature::commutative(d, names);
    OreOperator op = Parser(text, sig, false).parse();
    return op.coeff(0);
}

} // namespace orecalc
