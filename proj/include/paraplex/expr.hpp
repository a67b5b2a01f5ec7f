#pragma once

// Expression language for scalar fields. Every expression evaluates as a complex value over
// double or Jet2.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "paraplex/complex_jet.hpp"

namespace paraplex {

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, std::vector<std::string> expected, const std::string& what);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

enum class NodeKind { Number, Variable, Unary, Binary, Call };

struct ExprNode {
  NodeKind kind = NodeKind::Number;
  double number = 0.0;
  std::string name;  // variable or function name
  char op = 0;       // '+', '-', '*', '/', '^' or unary '-'
  std::vector<std::shared_ptr<const ExprNode>> children;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

class Expr {
 public:
  Expr() = default;
  explicit Expr(ExprPtr root) : root_(std::move(root)) {}

  const ExprNode& root() const { return *root_; }
  bool empty() const { return !root_; }

  std::string print() const;
  // Nesting depth of arithmetic operators; calls, variables and numbers do not add a level.
  int depth() const;
  std::set<std::string> variables() const;

 private:
  ExprPtr root_;
};

Expr parse(std::string_view source);
// Also rejects identifiers outside `declared` with UnboundVariable.
Expr parse(std::string_view source, const std::set<std::string>& declared);

template <class T>
using BindingSet = std::map<std::string, ComplexT<T>, std::less<>>;

ComplexT<double> eval(const Expr& e, const BindingSet<double>& b);
ComplexJet eval(const Expr& e, const BindingSet<Jet2>& b);

// Names of a chart: a real name reads one coordinate, a complex name reads (re, im) coordinates.
struct Binding {
  std::string name;
  int re_axis = 0;
  int im_axis = -1;
};

struct ChartBindings {
  std::vector<Binding> names;

  std::set<std::string> declared() const;
  BindingSet<Jet2> bind(const JetPoint& x) const;
  BindingSet<double> bind(const Point& x) const;

  static ChartBindings real(const std::vector<std::string>& names);
  static ChartBindings complex_pair(const std::string& z1, const std::string& z2);
};

ComplexProgram compile(const Expr& e, const ChartBindings& chart);
// Real-valued field; throws DomainError when |im| exceeds 1e-10 at an evaluation point.
ScalarProgram compile_real(const Expr& e, const ChartBindings& chart);

}  // namespace paraplex
