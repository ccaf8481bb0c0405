#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lightlike/errors.hpp"
#include "lightlike/jet.hpp"

namespace lightlike {

// Closed-form scalar expressions in up to two named parameters. Trees are
// immutable and shared; evaluation is pure and runs on any scalar with
// arithmetic plus sqrt/log/exp/sin/cos/pow (double and Jet).
class Expr {
  public:
    enum class Op { Add, Sub, Mul, Div, Pow };
    enum class Fn { Sqrt, Log, Exp, Sin, Cos, Neg };

    struct Node {
        enum class Kind { Constant, Var, Unary, Binary } kind;
        double constant = 0.0;
        int var = 0;
        Fn fn = Fn::Neg;
        Op op = Op::Add;
        std::shared_ptr<const Node> a, b;
    };

    Expr() = default;

    // Grammar: ^ binds tightest, then unary minus, then * /, then + -.
    // All binary operators associate left; parentheses group. Identifiers
    // must appear in `vocabulary` (parameter names) or be a function name.
    static Expr parse(const std::string& text, std::span<const std::string> vocabulary);

    static Expr constant(double c);
    static Expr var(int index);

    bool valid() const { return root_ != nullptr; }
    std::string str(std::span<const std::string> vocabulary) const;
    bool same_tree(const Expr& other) const;

    template <class S>
    S eval(std::span<const S> params) const {
        if (!root_) throw EvalError("empty expression");
        return eval_node<S>(*root_, params);
    }

  private:
    explicit Expr(std::shared_ptr<const Node> r) : root_(std::move(r)) {}

    template <class S>
    static S eval_node(const Node& n, std::span<const S> params) {
        switch (n.kind) {
            case Node::Kind::Constant: return scalar_of<S>(n.constant);
            case Node::Kind::Var: return params[static_cast<std::size_t>(n.var)];
            case Node::Kind::Unary: {
                S a = eval_node<S>(*n.a, params);
                using std::cos;
                using std::exp;
                using std::log;
                using std::sin;
                using std::sqrt;
                switch (n.fn) {
                    case Fn::Neg: return -a;
                    case Fn::Sqrt:
                        if constexpr (std::is_same_v<S, double>) {
                            if (a < 0.0) throw EvalError("sqrt of negative value");
                        }
                        return sqrt(a);
                    case Fn::Log:
                        if constexpr (std::is_same_v<S, double>) {
                            if (a <= 0.0) throw EvalError("log of non-positive value");
                        }
                        return log(a);
                    case Fn::Exp: return exp(a);
                    case Fn::Sin: return sin(a);
                    case Fn::Cos: return cos(a);
                }
                throw EvalError("bad function node");
            }
            case Node::Kind::Binary: {
                S a = eval_node<S>(*n.a, params);
                S b = eval_node<S>(*n.b, params);
                using std::pow;
                switch (n.op) {
                    case Op::Add: return a + b;
                    case Op::Sub: return a - b;
                    case Op::Mul: return a * b;
                    case Op::Div:
                        if constexpr (std::is_same_v<S, double>) {
                            if (b == 0.0) throw EvalError("division by zero");
                        }
                        return a / b;
                    case Op::Pow:
                        if constexpr (std::is_same_v<S, double>) {
                            return eval_pow_double(a, b);
                        } else {
                            return pow(a, b);
                        }
                }
                throw EvalError("bad operator node");
            }
        }
        throw EvalError("bad node");
    }

    static double eval_pow_double(double a, double b);

    std::string print_node(const Node& n, std::span<const std::string> vocab, int parent_prec) const;

    std::shared_ptr<const Node> root_;
};

} // namespace lightlike
