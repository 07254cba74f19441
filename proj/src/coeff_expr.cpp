#include "eqindex/coeff_expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace eqindex {

namespace {

class Parser {
 public:
  Parser(std::string text, int base_dim) : text_(std::move(text)), dim_(base_dim) {}

  ScalarExpression parse() {
    auto e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "coefficient expression '" << text_ << "': " << what << " at position " << pos_;
    throw std::invalid_argument(os.str());
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_word(const std::string& w) {
    skip_ws();
    if (text_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  double number() {
    skip_ws();
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stoi(text_.substr(start, pos_ - start));
  }

  int coordinate() {
    if (!accept('x')) fail("expected a coordinate x1..xn");
    const int k = integer();
    if (k < 1 || k > dim_) fail("coordinate index out of range");
    return k - 1;
  }

  ScalarExpression expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    ScalarExpression acc = term();
    if (negate) acc = [a = acc](const VectorXd& x) { return -a(x); };
    for (;;) {
      if (accept('+')) {
        acc = [a = acc, b = term()](const VectorXd& x) { return a(x) + b(x); };
      } else if (accept('-')) {
        acc = [a = acc, b = term()](const VectorXd& x) { return a(x) - b(x); };
      } else {
        return acc;
      }
    }
  }

  ScalarExpression term() {
    ScalarExpression acc = factor();
    while (accept('*')) acc = [a = acc, b = factor()](const VectorXd& x) { return a(x) * b(x); };
    return acc;
  }

  ScalarExpression factor() {
    skip_ws();
    if (accept('(')) {
      auto e = expr();
      expect(')');
      return e;
    }
    for (const char* fn : {"sin", "cos"}) {
      if (accept_word(fn)) {
        const bool is_sin = fn[0] == 's';
        expect('(');
        double freq = 1.0;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] != 'x') {
          freq = number();
          expect('*');
        }
        const int k = coordinate();
        expect(')');
        return [is_sin, freq, k](const VectorXd& x) -> cdouble {
          return is_sin ? std::sin(freq * x(k)) : std::cos(freq * x(k));
        };
      }
    }
    if (pos_ < text_.size() && text_[pos_] == 'x') {
      const int k = coordinate();
      int power = 1;
      if (accept('^')) power = integer();
      return [k, power](const VectorXd& x) -> cdouble { return std::pow(x(k), power); };
    }
    if (accept('i')) return [](const VectorXd&) { return kI; };
    const double v = number();
    return [v](const VectorXd&) -> cdouble { return v; };
  }

  std::string text_;
  int dim_;
  std::size_t pos_ = 0;
};

MultiIndex parse_multi_index(const std::string& text, int base_dim) {
  MultiIndex alpha;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      alpha.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed multi-index '" + text + "'");
    }
  }
  if (static_cast<int>(alpha.size()) != base_dim)
    throw std::invalid_argument("multi-index '" + text + "' does not match the base dimension");
  return alpha;
}

}  // namespace

ScalarExpression parse_coefficient_expression(const std::string& text, int base_dim) {
  if (base_dim < 1) throw std::invalid_argument("base dimension must be positive");
  return Parser(text, base_dim).parse();
}

DiffOpCoefficients parse_scalar_operator(int order, int base_dim,
                                         const std::vector<std::pair<std::string, std::string>>& terms) {
  DiffOpCoefficients op(order, base_dim, 1, 1);
  for (const auto& [key, text] : terms) {
    auto coefficient = parse_coefficient_expression(text, base_dim);
    op.add_term(parse_multi_index(key, base_dim),
                [coefficient](const VectorXd& x) { return MatrixXcd::Constant(1, 1, coefficient(x)); });
  }
  return op;
}

}  // namespace eqindex
