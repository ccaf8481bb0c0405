#include "lightlike/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

namespace lightlike {

namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    double number = 0.0;
    std::string ident;
    std::size_t pos = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= text_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        const char c = text_[i_];
        switch (c) {
            case '+': tok_.kind = Token::Kind::Plus; ++i_; return;
            case '-': tok_.kind = Token::Kind::Minus; ++i_; return;
            case '*': tok_.kind = Token::Kind::Star; ++i_; return;
            case '/': tok_.kind = Token::Kind::Slash; ++i_; return;
            case '^': tok_.kind = Token::Kind::Caret; ++i_; return;
            case '(': tok_.kind = Token::Kind::LParen; ++i_; return;
            case ')': tok_.kind = Token::Kind::RParen; ++i_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* start = text_.c_str() + i_;
            char* end = nullptr;
            tok_.number = std::strtod(start, &end);
            if (end == start) throw ParseError("malformed number", i_);
            i_ += static_cast<std::size_t>(end - start);
            tok_.kind = Token::Kind::Number;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
                ++j;
            tok_.ident = text_.substr(i_, j - i_);
            tok_.kind = Token::Kind::Ident;
            i_ = j;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }

    const std::string& text_;
    std::size_t i_ = 0;
    Token tok_;
};

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_constant(double c) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Node::Kind::Constant;
    n->constant = c;
    return n;
}

NodePtr make_var(int idx) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Node::Kind::Var;
    n->var = idx;
    return n;
}

NodePtr make_unary(Expr::Fn fn, NodePtr a) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Node::Kind::Unary;
    n->fn = fn;
    n->a = std::move(a);
    return n;
}

NodePtr make_binary(Expr::Op op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Node::Kind::Binary;
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
  public:
    Parser(const std::string& text, std::span<const std::string> vocab)
        : lex_(text), vocab_(vocab) {}

    NodePtr run() {
        NodePtr e = sum();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End) {
            if (t.kind == Token::Kind::RParen) throw ParseError("unbalanced ')'", t.pos);
            throw ParseError("trailing input", t.pos);
        }
        return e;
    }

  private:
    NodePtr sum() {
        NodePtr left = term();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Kind::Plus) {
                lex_.take();
                left = make_binary(Expr::Op::Add, left, term());
            } else if (t.kind == Token::Kind::Minus) {
                lex_.take();
                left = make_binary(Expr::Op::Sub, left, term());
            } else {
                return left;
            }
        }
    }

    NodePtr term() {
        NodePtr left = unary();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Kind::Star) {
                lex_.take();
                left = make_binary(Expr::Op::Mul, left, unary());
            } else if (t.kind == Token::Kind::Slash) {
                lex_.take();
                left = make_binary(Expr::Op::Div, left, unary());
            } else {
                return left;
            }
        }
    }

    NodePtr unary() {
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            return make_unary(Expr::Fn::Neg, unary());
        }
        return power();
    }

    NodePtr power() {
        NodePtr left = primary();
        while (lex_.peek().kind == Token::Kind::Caret) {
            lex_.take();
            left = make_binary(Expr::Op::Pow, left, primary());
        }
        return left;
    }

    NodePtr primary() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Kind::Number: return make_constant(t.number);
            case Token::Kind::LParen: {
                NodePtr e = sum();
                Token close = lex_.take();
                if (close.kind != Token::Kind::RParen)
                    throw ParseError("unbalanced '(': expected ')'", close.pos);
                return e;
            }
            case Token::Kind::Ident: {
                static const std::map<std::string, Expr::Fn> fns = {
                    {"sqrt", Expr::Fn::Sqrt}, {"log", Expr::Fn::Log}, {"exp", Expr::Fn::Exp},
                    {"sin", Expr::Fn::Sin},   {"cos", Expr::Fn::Cos}};
                auto fn = fns.find(t.ident);
                if (fn != fns.end()) {
                    Token open = lex_.take();
                    if (open.kind != Token::Kind::LParen)
                        throw ParseError("expected '(' after " + t.ident, open.pos);
                    NodePtr arg = sum();
                    Token close = lex_.take();
                    if (close.kind != Token::Kind::RParen)
                        throw ParseError("unbalanced '(': expected ')'", close.pos);
                    return make_unary(fn->second, arg);
                }
                for (std::size_t k = 0; k < vocab_.size(); ++k)
                    if (vocab_[k] == t.ident) return make_var(static_cast<int>(k));
                throw ParseError("unknown identifier '" + t.ident + "'", t.pos);
            }
            case Token::Kind::End: throw ParseError("unexpected end of input", t.pos);
            default: throw ParseError("unexpected token", t.pos);
        }
    }

    Lexer lex_;
    std::span<const std::string> vocab_;
};

bool node_equal(const Expr::Node& a, const Expr::Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Node::Kind::Constant: return a.constant == b.constant;
        case Expr::Node::Kind::Var: return a.var == b.var;
        case Expr::Node::Kind::Unary: return a.fn == b.fn && node_equal(*a.a, *b.a);
        case Expr::Node::Kind::Binary:
            return a.op == b.op && node_equal(*a.a, *b.a) && node_equal(*a.b, *b.b);
    }
    return false;
}

std::string format_number(double v) {
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Expr Expr::parse(const std::string& text, std::span<const std::string> vocabulary) {
    return Expr(Parser(text, vocabulary).run());
}

Expr Expr::constant(double c) { return Expr(make_constant(c)); }
Expr Expr::var(int index) { return Expr(make_var(index)); }

bool Expr::same_tree(const Expr& other) const {
    if (!root_ || !other.root_) return root_ == other.root_;
    return node_equal(*root_, *other.root_);
}

double Expr::eval_pow_double(double a, double b) {
    const double r = std::round(b);
    if (std::abs(b - r) < 1e-12 && std::abs(r) <= 64.0) {
        if (a == 0.0 && r < 0.0) throw EvalError("zero base with negative exponent");
        return std::pow(a, r);
    }
    if (a <= 0.0) throw EvalError("pow with fractional exponent needs positive base");
    return std::pow(a, b);
}

// Precedence levels: sum 1, product 2, unary minus 3, power 4.
std::string Expr::print_node(const Node& n, std::span<const std::string> vocab,
                             int parent_prec) const {
    std::string body;
    int prec = 5;
    switch (n.kind) {
        case Node::Kind::Constant: body = format_number(n.constant); break;
        case Node::Kind::Var: body = vocab[static_cast<std::size_t>(n.var)]; break;
        case Node::Kind::Unary: {
            if (n.fn == Fn::Neg) {
                prec = 3;
                body = "-" + print_node(*n.a, vocab, 3);
            } else {
                const char* name = n.fn == Fn::Sqrt ? "sqrt"
                                   : n.fn == Fn::Log ? "log"
                                   : n.fn == Fn::Exp ? "exp"
                                   : n.fn == Fn::Sin ? "sin"
                                                     : "cos";
                body = std::string(name) + "(" + print_node(*n.a, vocab, 0) + ")";
            }
            break;
        }
        case Node::Kind::Binary: {
            const char* sym = nullptr;
            int right_bump = 1; // left-associative: parenthesize equal-precedence right child
            switch (n.op) {
                case Op::Add: prec = 1; sym = " + "; break;
                case Op::Sub: prec = 1; sym = " - "; break;
                case Op::Mul: prec = 2; sym = "*"; break;
                case Op::Div: prec = 2; sym = "/"; break;
                case Op::Pow: prec = 4; sym = "^"; break;
            }
            body = print_node(*n.a, vocab, prec) + sym + print_node(*n.b, vocab, prec + right_bump);
            break;
        }
    }
    if (prec < parent_prec) return "(" + body + ")";
    return body;
}

std::string Expr::str(std::span<const std::string> vocabulary) const {
    if (!root_) return "";
    return print_node(*root_, vocabulary, 0);
}

} // namespace lightlike
