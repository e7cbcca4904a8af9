#pragma once

#include <array>
#include <map>
#include <string>

#include "ncgf/common.hpp"
#include "ncgf/groups.hpp"

namespace ncgf {

/// Ordered polynomial in the dual coordinates X_i; exponent vectors are the
/// keys, so monomials are stored in a canonical (symmetrized) form.
class DualPolynomial {
 public:
  using Exponents = std::array<int, 3>;

  explicit DualPolynomial(int dim = 1) : dim_(dim) {}

  int dim() const { return dim_; }
  int degree() const;
  bool empty() const { return terms_.empty(); }
  const std::map<Exponents, Complex>& terms() const { return terms_; }

  void add_term(const Exponents& e, Complex coeff, double drop_tol = 0.0);
  Complex coefficient(const Exponents& e) const;

  Complex evaluate(const AlgebraVector& x) const;

  DualPolynomial laplacian() const;
  DualPolynomial scaled(Complex s) const;
  DualPolynomial plus(const DualPolynomial& other) const;

  std::string to_string() const;

 private:
  int dim_;
  std::map<Exponents, Complex> terms_;
};

}  // namespace ncgf
