#include "paraplex/expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace paraplex {

namespace {

const std::set<std::string>& known_functions() {
  static const std::set<std::string> f = {"sqrt", "exp", "log", "sin", "cos", "abs2", "re", "im", "conj", "i"};
  return f;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k];
  return s;
}

enum class Tok { Number, Ident, Op, LParen, RParen, Comma, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : src_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        const size_t start = pos_;
        while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) advance();
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
          size_t look = pos_ + 1;
          if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
          if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
            while (pos_ < look) advance();
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
          }
        }
        t.kind = Tok::Number;
        t.text = std::string(src_.substr(start, pos_ - start));
        char* end = nullptr;
        t.number = std::strtod(t.text.c_str(), &end);
        if (end != t.text.c_str() + t.text.size())
          throw SyntaxError(t.line, t.column, {"number"}, "malformed number '" + t.text + "'");
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        t.kind = Tok::Ident;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
        t.kind = Tok::Op;
        t.text = std::string(1, c);
        advance();
      } else if (c == '(') {
        t.kind = Tok::LParen;
        t.text = "(";
        advance();
      } else if (c == ')') {
        t.kind = Tok::RParen;
        t.text = ")";
        advance();
      } else if (c == ',') {
        t.kind = Tok::Comma;
        t.text = ",";
        advance();
      } else {
        throw SyntaxError(t.line, t.column, {"number", "identifier", "operator", "("},
                          std::string("unexpected character '") + c + "'");
      }
      out.push_back(t);
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

ExprPtr make_number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Number;
  n->number = v;
  return n;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr run() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) fail({"operator", "end of input"});
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    const Token& t = peek();
    const std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.column, expected, "expected " + join(expected) + ", got " + got);
  }

  bool at_op(char c) const { return peek().kind == Tok::Op && peek().text[0] == c; }

  ExprPtr binary(char op, ExprPtr a, ExprPtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Binary;
    n->op = op;
    n->children = {std::move(a), std::move(b)};
    return n;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (at_op('+') || at_op('-')) {
      const char op = take().text[0];
      lhs = binary(op, lhs, term());
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (at_op('*') || at_op('/')) {
      const char op = take().text[0];
      lhs = binary(op, lhs, unary());
    }
    return lhs;
  }

  ExprPtr unary() {
    if (at_op('-')) {
      take();
      auto n = std::make_shared<ExprNode>();
      n->kind = NodeKind::Unary;
      n->op = '-';
      n->children = {unary()};
      return n;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (at_op('^')) {
      take();
      return binary('^', base, unary());
    }
    return base;
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      return make_number(take().number);
    }
    if (t.kind == Tok::Ident) {
      Token id = take();
      if (peek().kind == Tok::LParen) {
        if (!known_functions().count(id.text))
          throw Error(ErrorKind::UnknownFunction, "'" + id.text + "' at line " + std::to_string(id.line) +
                                                      ", column " + std::to_string(id.column));
        take();
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Call;
        n->name = id.text;
        if (peek().kind != Tok::RParen) {
          n->children.push_back(expr());
          while (peek().kind == Tok::Comma) {
            take();
            n->children.push_back(expr());
          }
        }
        if (peek().kind != Tok::RParen) fail({")", ","});
        take();
        const size_t want = id.text == "i" ? 0 : 1;
        if (n->children.size() != want)
          throw SyntaxError(id.line, id.column, {std::to_string(want) + " argument(s)"},
                            "'" + id.text + "' takes " + std::to_string(want) + " argument(s)");
        return n;
      }
      auto n = std::make_shared<ExprNode>();
      n->kind = NodeKind::Variable;
      n->name = id.text;
      return n;
    }
    if (t.kind == Tok::LParen) {
      take();
      ExprPtr e = expr();
      if (peek().kind != Tok::RParen) fail({")"});
      take();
      return e;
    }
    fail({"number", "identifier", "("});
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::Binary:
      if (n.op == '+' || n.op == '-') return 1;
      if (n.op == '*' || n.op == '/') return 2;
      return 4;
    case NodeKind::Unary: return 3;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_node(const ExprNode& n, std::string& out);

void print_child(const ExprNode& c, bool parens, std::string& out) {
  if (parens) out += '(';
  print_node(c, out);
  if (parens) out += ')';
}

void print_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Number: out += format_number(n.number); return;
    case NodeKind::Variable: out += n.name; return;
    case NodeKind::Call:
      out += n.name;
      out += '(';
      for (size_t k = 0; k < n.children.size(); ++k) {
        if (k) out += ", ";
        print_node(*n.children[k], out);
      }
      out += ')';
      return;
    case NodeKind::Unary:
      out += '-';
      print_child(*n.children[0], precedence(*n.children[0]) < 3, out);
      return;
    case NodeKind::Binary: {
      const int p = precedence(n);
      const ExprNode& a = *n.children[0];
      const ExprNode& b = *n.children[1];
      if (n.op == '^') {
        print_child(a, precedence(a) <= p, out);
        out += '^';
        print_child(b, precedence(b) < 3, out);
      } else {
        print_child(a, precedence(a) < p, out);
        out += ' ';
        out += n.op;
        out += ' ';
        print_child(b, precedence(b) <= p, out);
      }
      return;
    }
  }
}

int depth_of(const ExprNode& n) {
  int d = 0;
  for (const auto& c : n.children) d = std::max(d, depth_of(*c));
  const bool counts = n.kind == NodeKind::Unary || n.kind == NodeKind::Binary;
  return d + (counts ? 1 : 0);
}

void collect_variables(const ExprNode& n, std::set<std::string>& out) {
  if (n.kind == NodeKind::Variable) out.insert(n.name);
  for (const auto& c : n.children) collect_variables(*c, out);
}

template <class T>
ComplexT<T> eval_node(const ExprNode& n, const BindingSet<T>& b) {
  switch (n.kind) {
    case NodeKind::Number: return ComplexT<T>(T(n.number));
    case NodeKind::Variable: {
      auto it = b.find(n.name);
      if (it == b.end()) throw Error(ErrorKind::UnboundVariable, "'" + n.name + "' is not bound");
      return it->second;
    }
    case NodeKind::Unary: return -eval_node(*n.children[0], b);
    case NodeKind::Binary: {
      const ComplexT<T> x = eval_node(*n.children[0], b);
      const ComplexT<T> y = eval_node(*n.children[1], b);
      switch (n.op) {
        case '+': return x + y;
        case '-': return x - y;
        case '*': return x * y;
        case '/': return x / y;
        default: return cpow(x, y);
      }
    }
    case NodeKind::Call: {
      if (n.name == "i") return ComplexT<T>(T(0.0), T(1.0));
      const ComplexT<T> x = eval_node(*n.children[0], b);
      if (n.name == "sqrt") return csqrt(x);
      if (n.name == "exp") return cexp(x);
      if (n.name == "log") return clog(x);
      if (n.name == "sin") return csin(x);
      if (n.name == "cos") return ccos(x);
      if (n.name == "abs2") return ComplexT<T>(abs2(x));
      if (n.name == "re") return ComplexT<T>(x.re);
      if (n.name == "im") return ComplexT<T>(x.im);
      if (n.name == "conj") return conj(x);
      throw Error(ErrorKind::UnknownFunction, n.name);
    }
  }
  throw Error(ErrorKind::DomainError, "malformed expression node");
}

}  // namespace

SyntaxError::SyntaxError(int line, int column, std::vector<std::string> expected, const std::string& what)
    : Error(ErrorKind::SyntaxError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

std::string Expr::print() const {
  std::string out;
  if (root_) print_node(*root_, out);
  return out;
}

int Expr::depth() const { return root_ ? depth_of(*root_) : 0; }

std::set<std::string> Expr::variables() const {
  std::set<std::string> out;
  if (root_) collect_variables(*root_, out);
  return out;
}

Expr parse(std::string_view source) {
  Lexer lex(source);
  Parser p(lex.run());
  return Expr(p.run());
}

Expr parse(std::string_view source, const std::set<std::string>& declared) {
  Expr e = parse(source);
  for (const auto& v : e.variables())
    if (!declared.count(v)) throw Error(ErrorKind::UnboundVariable, "'" + v + "' is not declared by the chart");
  return e;
}

ComplexT<double> eval(const Expr& e, const BindingSet<double>& b) { return eval_node(e.root(), b); }
ComplexJet eval(const Expr& e, const BindingSet<Jet2>& b) { return eval_node(e.root(), b); }

std::set<std::string> ChartBindings::declared() const {
  std::set<std::string> s;
  for (const auto& n : names) s.insert(n.name);
  return s;
}

BindingSet<Jet2> ChartBindings::bind(const JetPoint& x) const {
  BindingSet<Jet2> b;
  for (const auto& n : names)
    b[n.name] = n.im_axis < 0 ? ComplexJet(x[n.re_axis]) : ComplexJet(x[n.re_axis], x[n.im_axis]);
  return b;
}

BindingSet<double> ChartBindings::bind(const Point& x) const {
  BindingSet<double> b;
  for (const auto& n : names)
    b[n.name] = n.im_axis < 0 ? ComplexT<double>(x[n.re_axis]) : ComplexT<double>(x[n.re_axis], x[n.im_axis]);
  return b;
}

ChartBindings ChartBindings::real(const std::vector<std::string>& names) {
  ChartBindings c;
  for (int a = 0; a < static_cast<int>(names.size()); ++a) c.names.push_back({names[a], a, -1});
  return c;
}

ChartBindings ChartBindings::complex_pair(const std::string& z1, const std::string& z2) {
  ChartBindings c;
  c.names.push_back({z1, 0, 1});
  c.names.push_back({z2, 2, 3});
  return c;
}

ComplexProgram compile(const Expr& e, const ChartBindings& chart) {
  for (const auto& v : e.variables())
    if (!chart.declared().count(v)) throw Error(ErrorKind::UnboundVariable, "'" + v + "' is not declared by the chart");
  return [e, chart](const JetPoint& x) { return eval(e, chart.bind(x)); };
}

ScalarProgram compile_real(const Expr& e, const ChartBindings& chart) {
  ComplexProgram f = compile(e, chart);
  return [f](const JetPoint& x) {
    ComplexJet z = f(x);
    if (std::abs(z.im.value) > 1e-10) throw Error(ErrorKind::DomainError, "real-valued field has imaginary part");
    return z.re;
  };
}

}  // namespace paraplex
