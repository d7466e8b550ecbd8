#include "drb/expression.hpp"

#include "drb/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <vector>

namespace drb {

struct Expression::Node {
    enum class Kind { Constant, Variable, Add, Sub, Mul, Neg, Max, Min };
    Kind kind;
    double value = 0.0;     // Constant
    std::size_t index = 0;  // Variable (0-based)
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;

    double eval(std::span<const double> x) const {
        switch (kind) {
        case Kind::Constant: return value;
        case Kind::Variable: return x[index];
        case Kind::Add: return lhs->eval(x) + rhs->eval(x);
        case Kind::Sub: return lhs->eval(x) - rhs->eval(x);
        case Kind::Mul: return lhs->eval(x) * rhs->eval(x);
        case Kind::Neg: return -lhs->eval(x);
        case Kind::Max: return std::max(lhs->eval(x), rhs->eval(x));
        case Kind::Min: return std::min(lhs->eval(x), rhs->eval(x));
        }
        throw internal_consistency_error("Expression: unknown node kind");
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

class Parser {
public:
    Parser(const std::string& text, std::size_t dimension)
        : text_(text), dimension_(dimension) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    const std::string& text_;
    std::size_t dimension_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw invalid_parameter("Expression: " + why + " at position " +
                                std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool consume_word(const char* w) {
        skip_ws();
        std::size_t len = 0;
        while (w[len] != '\0') ++len;
        if (text_.compare(pos_, len, w) == 0) {
            const std::size_t after = pos_ + len;
            if (after < text_.size() &&
                std::isalnum(static_cast<unsigned char>(text_[after]))) {
                return false;
            }
            pos_ = after;
            return true;
        }
        return false;
    }

    static NodePtr make(Expression::Node n) {
        return std::make_shared<const Expression::Node>(std::move(n));
    }

    NodePtr expr() {
        NodePtr left = term();
        for (;;) {
            if (consume('+')) {
                left = make({Expression::Node::Kind::Add, 0.0, 0, left, term()});
            } else if (consume('-')) {
                left = make({Expression::Node::Kind::Sub, 0.0, 0, left, term()});
            } else {
                return left;
            }
        }
    }

    NodePtr term() {
        NodePtr left = unary();
        while (consume('*')) {
            left = make({Expression::Node::Kind::Mul, 0.0, 0, left, unary()});
        }
        return left;
    }

    NodePtr unary() {
        if (consume('-')) {
            return make({Expression::Node::Kind::Neg, 0.0, 0, unary(), nullptr});
        }
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (consume_word("max")) return binary_call(Expression::Node::Kind::Max);
        if (consume_word("min")) return binary_call(Expression::Node::Kind::Min);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        if (c == 'x') return variable();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        fail("unexpected character");
    }

    NodePtr binary_call(Expression::Node::Kind kind) {
        if (!consume('(')) fail("expected '(' after function name");
        NodePtr a = expr();
        if (!consume(',')) fail("expected ','");
        NodePtr b = expr();
        if (!consume(')')) fail("expected ')'");
        return make({kind, 0.0, 0, a, b});
    }

    NodePtr variable() {
        ++pos_; // past 'x'
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ == start) fail("expected variable index after 'x'");
        std::size_t idx = 0;
        std::from_chars(text_.data() + start, text_.data() + pos_, idx);
        if (idx < 1 || idx > dimension_) fail("variable index out of range");
        return make({Expression::Node::Kind::Variable, 0.0, idx - 1, nullptr, nullptr});
    }

    NodePtr number() {
        skip_ws();
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{}) fail("invalid numeric literal");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return make({Expression::Node::Kind::Constant, v, 0, nullptr, nullptr});
    }
};

} // namespace

Expression::Expression(std::shared_ptr<const Node> root, std::size_t dimension, std::string text)
    : root_(std::move(root)), dimension_(dimension), text_(std::move(text)) {}

Expression Expression::parse(const std::string& text, std::size_t dimension) {
    if (dimension == 0) throw invalid_parameter("Expression: dimension must be positive");
    Parser parser(text, dimension);
    return Expression(parser.run(), dimension, text);
}

double Expression::evaluate(std::span<const double> x) const {
    if (x.size() != dimension_) {
        throw invalid_parameter("Expression: argument dimension mismatch");
    }
    return root_->eval(x);
}

} // namespace drb
