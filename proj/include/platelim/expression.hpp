#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace platelim {

class ExpressionError : public std::runtime_error {
  public:
    ExpressionError(const std::string& what, size_t pos)
        : std::runtime_error("expression error at position " + std::to_string(pos) + ": " + what) {}
};

// Arithmetic expression in the variables x1, x2 with +, -, *, /, ^ (right
// associative), unary minus, cos/sin/exp, parentheses and the constant pi.
// Example: (cos(16*pi/3*x1)+1)*(cos(6*pi*x2)+1)+1
class Expression {
  public:
    Expression() = default;

    static Expression parse(const std::string& text) {
        Expression expr;
        expr.text_ = text;
        Parser p{text, 0, &expr.code_};
        p.parse_sum();
        p.skip_ws();
        if (p.pos != text.size()) throw ExpressionError("unexpected trailing input", p.pos);
        if (expr.code_.empty()) throw ExpressionError("empty expression", 0);
        return expr;
    }

    double eval(double x1, double x2) const {
        double stack[80];
        int top = 0;
        for (const Instr& in : code_) {
            switch (in.op) {
                case Op::push: stack[top++] = in.value; break;
                case Op::var_x1: stack[top++] = x1; break;
                case Op::var_x2: stack[top++] = x2; break;
                case Op::add: --top; stack[top - 1] += stack[top]; break;
                case Op::sub: --top; stack[top - 1] -= stack[top]; break;
                case Op::mul: --top; stack[top - 1] *= stack[top]; break;
                case Op::div: --top; stack[top - 1] /= stack[top]; break;
                case Op::pow: --top; stack[top - 1] = std::pow(stack[top - 1], stack[top]); break;
                case Op::neg: stack[top - 1] = -stack[top - 1]; break;
                case Op::cos: stack[top - 1] = std::cos(stack[top - 1]); break;
                case Op::sin: stack[top - 1] = std::sin(stack[top - 1]); break;
                case Op::exp: stack[top - 1] = std::exp(stack[top - 1]); break;
            }
        }
        return stack[0];
    }

    const std::string& text() const { return text_; }
    bool empty() const { return code_.empty(); }

  private:
    enum class Op { push, var_x1, var_x2, add, sub, mul, div, pow, neg, cos, sin, exp };
    struct Instr {
        Op op;
        double value = 0.0;
    };

    struct Parser {
        const std::string& s;
        size_t pos;
        std::vector<Instr>* out;
        int depth = 0;

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }

        bool eat(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }

        void emit(Op op, double v = 0.0) { out->push_back({op, v}); }

        void parse_sum() {
            parse_product();
            while (true) {
                if (eat('+')) {
                    parse_product();
                    emit(Op::add);
                } else if (eat('-')) {
                    parse_product();
                    emit(Op::sub);
                } else {
                    return;
                }
            }
        }

        void parse_product() {
            parse_unary();
            while (true) {
                if (eat('*')) {
                    parse_unary();
                    emit(Op::mul);
                } else if (eat('/')) {
                    parse_unary();
                    emit(Op::div);
                } else {
                    return;
                }
            }
        }

        void parse_unary() {
            if (eat('-')) {
                parse_unary();
                emit(Op::neg);
            } else if (eat('+')) {
                parse_unary();
            } else {
                parse_power();
            }
        }

        void parse_power() {
            parse_atom();
            if (eat('^')) {
                // right associative, and -x^2 parses as -(x^2)
                parse_unary();
                emit(Op::pow);
            }
        }

        void parse_atom() {
            if (++depth > 64) throw ExpressionError("expression too deeply nested", pos);
            skip_ws();
            if (pos >= s.size()) throw ExpressionError("unexpected end of expression", pos);
            const char c = s[pos];
            if (c == '(') {
                ++pos;
                parse_sum();
                if (!eat(')')) throw ExpressionError("expected ')'", pos);
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                size_t used = 0;
                double v;
                try {
                    v = std::stod(s.substr(pos), &used);
                } catch (const std::exception&) {
                    throw ExpressionError("bad number literal", pos);
                }
                pos += used;
                emit(Op::push, v);
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                size_t end = pos;
                while (end < s.size() &&
                       (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_'))
                    ++end;
                const std::string name = s.substr(pos, end - pos);
                pos = end;
                if (name == "x1") emit(Op::var_x1);
                else if (name == "x2") emit(Op::var_x2);
                else if (name == "pi") emit(Op::push, M_PI);
                else if (name == "cos" || name == "sin" || name == "exp") {
                    if (!eat('(')) throw ExpressionError("expected '(' after " + name, pos);
                    parse_sum();
                    if (!eat(')')) throw ExpressionError("expected ')'", pos);
                    emit(name == "cos" ? Op::cos : (name == "sin" ? Op::sin : Op::exp));
                } else {
                    throw ExpressionError("unknown identifier '" + name + "'", pos - name.size());
                }
            } else {
                throw ExpressionError(std::string("unexpected character '") + c + "'", pos);
            }
            --depth;
        }
    };

    std::string text_;
    std::vector<Instr> code_;
};

}  // namespace platelim
