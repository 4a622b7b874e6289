#pragma once

#include <complex>
#include <memory>
#include <string>

namespace gaborheat {

/**
 * Compiled arithmetic expression over the variables t, x, xi.
 *
 * Grammar: numbers, the constants pi, e and i, the binary operators
 * + - * / ^, unary minus, parentheses, and the functions sin cos tan exp log
 * sqrt tanh sinh cosh abs re im conj. Evaluation is complex-valued and pure.
 */
class Expression {
 public:
  static Expression parse(const std::string& text);

  std::complex<double> operator()(double t, double x, double xi) const;
  const std::string& text() const noexcept { return text_; }
  bool uses_time() const noexcept { return uses_t_; }
  bool uses_x() const noexcept { return uses_x_; }
  bool uses_xi() const noexcept { return uses_xi_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
  bool uses_t_ = false;
  bool uses_x_ = false;
  bool uses_xi_ = false;
};

}  // namespace gaborheat
