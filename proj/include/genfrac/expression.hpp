#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace genfrac {

/// Small arithmetic expressions used by configuration files: numbers, named
/// variables, the constant pi, + - * / ^ (right associative), unary minus,
/// parentheses and the functions sin cos tan sinh cosh tanh exp log sqrt abs.
/// Parsed once into a stack program; evaluation works for double and for
/// std::complex<double>. Parse errors throw ValidationError with the offset.
class Expression {
 public:
  static Expression parse(std::string_view text, std::vector<std::string> variables);

  /// Values bound in the order the variables were declared.
  double operator()(std::span<const double> values) const { return eval<double>(values); }
  double operator()(std::initializer_list<double> values) const { return eval<double>({values.begin(), values.size()}); }
  std::complex<double> operator()(std::span<const std::complex<double>> values) const {
    return eval<std::complex<double>>(values);
  }

  template <class T>
  T eval(std::span<const T> values) const;

  const std::string& text() const { return text_; }
  const std::vector<std::string>& variables() const { return variables_; }
  /// True if variable `name` occurs in the expression.
  bool uses(std::string_view name) const;

  enum class Op { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };
  enum class Fn { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs };
  struct Instr {
    Op op;
    double number = 0.0;
    int index = 0;  // variable index
    Fn fn = Fn::Sin;
  };

 private:
  std::string text_;
  std::vector<std::string> variables_;
  std::vector<Instr> program_;
  int max_depth_ = 0;
};

extern template double Expression::eval<double>(std::span<const double>) const;
extern template std::complex<double> Expression::eval<std::complex<double>>(std::span<const std::complex<double>>) const;

}  // namespace genfrac
