#include "bohm/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

namespace bohm {

namespace {

using cplx = std::complex<double>;

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    cplx parse() {
        cplx value = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return value;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ExpressionError("cannot evaluate '" + std::string(text_) + "': " + why + " at offset " +
                              std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    cplx expr() {
        cplx value = term();
        for (;;) {
            if (accept('+'))
                value += term();
            else if (accept('-'))
                value -= term();
            else
                return value;
        }
    }

    cplx term() {
        cplx value = unary();
        for (;;) {
            if (accept('*')) {
                value *= unary();
            } else if (accept('/')) {
                const cplx d = unary();
                if (d == cplx(0.0, 0.0)) fail("division by zero");
                value /= d;
            } else {
                return value;
            }
        }
    }

    cplx unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    cplx power() {
        cplx base = primary();
        if (accept('^')) {
            const cplx exponent = unary();
            if (base.imag() == 0.0 && exponent.imag() == 0.0) return std::pow(base.real(), exponent.real());
            return std::pow(base, exponent);
        }
        return base;
    }

    cplx primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            cplx value = expr();
            if (!accept(')')) fail("missing ')'");
            return value;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    cplx number() {
        double value = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc()) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - first);
        if (pos_ < text_.size() && text_[pos_] == 'i' &&
            (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
            ++pos_;
            return {0.0, value};
        }
        return {value, 0.0};
    }

    cplx identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "pi") return {std::numbers::pi, 0.0};
        if (name == "i") return {0.0, 1.0};
        if (!accept('(')) fail("unknown name '" + std::string(name) + "'");
        const cplx arg = expr();
        if (!accept(')')) fail("missing ')'");
        const bool real = arg.imag() == 0.0;
        if (name == "sqrt") {
            if (real && arg.real() >= 0.0) return std::sqrt(arg.real());
            return std::sqrt(arg);
        }
        if (name == "exp") return real ? cplx(std::exp(arg.real())) : std::exp(arg);
        if (name == "cos") return real ? cplx(std::cos(arg.real())) : std::cos(arg);
        if (name == "sin") return real ? cplx(std::sin(arg.real())) : std::sin(arg);
        fail("unknown function '" + std::string(name) + "'");
    }
};

} // namespace

std::complex<double> evaluate_expression(std::string_view text) { return Parser(text).parse(); }

double evaluate_real(std::string_view text) {
    const auto value = evaluate_expression(text);
    if (value.imag() != 0.0)
        throw ExpressionError("expected a real value for '" + std::string(text) + "'");
    return value.real();
}

} // namespace bohm
