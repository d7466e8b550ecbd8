#pragma once

#include <memory>
#include <span>
#include <string>

namespace drb {

/// A restricted arithmetic expression over variables x1..xn: +, -, *, max,
/// min, parentheses and numeric constants. Deliberately too weak to encode
/// anything but piecewise-linear payoffs, so no user code ever executes.
class Expression {
public:
    static Expression parse(const std::string& text, std::size_t dimension);

    double evaluate(std::span<const double> x) const;
    std::size_t dimension() const { return dimension_; }
    const std::string& text() const { return text_; }

    struct Node;

private:
    Expression(std::shared_ptr<const Node> root, std::size_t dimension, std::string text);

    std::shared_ptr<const Node> root_;
    std::size_t dimension_;
    std::string text_;
};

} // namespace drb
