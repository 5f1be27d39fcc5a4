#include "genfrac/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "genfrac/errors.hpp"

namespace genfrac {

namespace {

using Instr = Expression::Instr;
using Op = Expression::Op;
using Fn = Expression::Fn;

constexpr std::pair<std::string_view, Fn> kFunctions[] = {
    {"sin", Fn::Sin},   {"cos", Fn::Cos},   {"tan", Fn::Tan}, {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh},
    {"tanh", Fn::Tanh}, {"exp", Fn::Exp},   {"log", Fn::Log}, {"sqrt", Fn::Sqrt}, {"abs", Fn::Abs},
};

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  std::vector<Instr> run() {
    expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("expression \"" + std::string(s_) + "\" at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expr() {
    term();
    for (;;) {
      if (accept('+')) {
        term();
        out_.push_back({Op::Add});
      } else if (accept('-')) {
        term();
        out_.push_back({Op::Sub});
      } else {
        return;
      }
    }
  }

  void term() {
    unary();
    for (;;) {
      if (accept('*')) {
        unary();
        out_.push_back({Op::Mul});
      } else if (accept('/')) {
        unary();
        out_.push_back({Op::Div});
      } else {
        return;
      }
    }
  }

  void unary() {
    if (accept('-')) {
      unary();
      out_.push_back({Op::Neg});
    } else if (accept('+')) {
      unary();
    } else {
      power();
    }
  }

  void power() {
    primary();
    if (accept('^')) {
      unary();
      out_.push_back({Op::Pow});
    }
  }

  void primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      expr();
      if (!accept(')')) fail("expected ')'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (accept('(')) {
        const auto it = std::find_if(std::begin(kFunctions), std::end(kFunctions),
                                     [&](const auto& f) { return f.first == name; });
        if (it == std::end(kFunctions)) fail("unknown function '" + std::string(name) + "'");
        expr();
        if (!accept(')')) fail("expected ')'");
        out_.push_back({Op::Call, 0.0, 0, it->second});
        return;
      }
      const auto v = std::find(vars_.begin(), vars_.end(), name);
      if (v != vars_.end()) {
        out_.push_back({Op::Variable, 0.0, static_cast<int>(v - vars_.begin())});
        return;
      }
      if (name == "pi") {
        out_.push_back({Op::Number, std::numbers::pi});
        return;
      }
      fail("unknown name '" + std::string(name) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  void number() {
    double value = 0.0;
    const char* first = s_.data() + pos_;
    const auto [end, ec] = std::from_chars(first, s_.data() + s_.size(), value);
    if (ec != std::errc{} || end == first) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - first);
    out_.push_back({Op::Number, value});
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
  std::vector<Instr> out_;
};

template <class T>
T apply(Fn fn, T x) {
  switch (fn) {
    case Fn::Sin: return std::sin(x);
    case Fn::Cos: return std::cos(x);
    case Fn::Tan: return std::tan(x);
    case Fn::Sinh: return std::sinh(x);
    case Fn::Cosh: return std::cosh(x);
    case Fn::Tanh: return std::tanh(x);
    case Fn::Exp: return std::exp(x);
    case Fn::Log: return std::log(x);
    case Fn::Sqrt: return std::sqrt(x);
    case Fn::Abs: return T(std::abs(x));
  }
  return x;
}

}  // namespace

Expression Expression::parse(std::string_view text, std::vector<std::string> variables) {
  Expression e;
  e.text_ = std::string(text);
  e.variables_ = std::move(variables);
  e.program_ = Parser(e.text_, e.variables_).run();
  int depth = 0;
  for (const auto& in : e.program_) {
    switch (in.op) {
      case Op::Number:
      case Op::Variable: ++depth; break;
      case Op::Neg:
      case Op::Call: break;
      default: --depth;
    }
    e.max_depth_ = std::max(e.max_depth_, depth);
  }
  return e;
}

bool Expression::uses(std::string_view name) const {
  const auto v = std::find(variables_.begin(), variables_.end(), name);
  if (v == variables_.end()) return false;
  const int index = static_cast<int>(v - variables_.begin());
  return std::any_of(program_.begin(), program_.end(),
                     [&](const Instr& in) { return in.op == Op::Variable && in.index == index; });
}

template <class T>
T Expression::eval(std::span<const T> values) const {
  if (values.size() != variables_.size())
    throw ValidationError("expression \"" + text_ + "\": expected " + std::to_string(variables_.size()) +
                          " values, got " + std::to_string(values.size()));
  std::vector<T> stack;
  stack.reserve(static_cast<std::size_t>(max_depth_));
  for (const auto& in : program_) {
    switch (in.op) {
      case Op::Number: stack.push_back(T(in.number)); continue;
      case Op::Variable: stack.push_back(values[in.index]); continue;
      case Op::Neg: stack.back() = -stack.back(); continue;
      case Op::Call: stack.back() = apply(in.fn, stack.back()); continue;
      default: break;
    }
    const T b = stack.back();
    stack.pop_back();
    T& a = stack.back();
    switch (in.op) {
      case Op::Add: a += b; break;
      case Op::Sub: a -= b; break;
      case Op::Mul: a *= b; break;
      case Op::Div: a /= b; break;
      case Op::Pow: a = std::pow(a, b); break;
      default: break;
    }
  }
  return stack.back();
}

template double Expression::eval<double>(std::span<const double>) const;
template std::complex<double> Expression::eval<std::complex<double>>(std::span<const std::complex<double>>) const;

}  // namespace genfrac
