#include "ncgf/polynomial.hpp"

#include <cmath>
#include <sstream>

namespace ncgf {

int DualPolynomial::degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e[0] + e[1] + e[2]);
  return deg;
}

void DualPolynomial::add_term(const Exponents& e, Complex coeff, double drop_tol) {
  auto it = terms_.find(e);
  const Complex next = (it == terms_.end() ? Complex(0) : it->second) + coeff;
  if (std::abs(next) <= drop_tol) {
    if (it != terms_.end()) terms_.erase(it);
    return;
  }
  terms_[e] = next;
}

Complex DualPolynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex(0) : it->second;
}

Complex DualPolynomial::evaluate(const AlgebraVector& x) const {
  Complex acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = 1.0;
    for (int i = 0; i < dim_; ++i)
      for (int p = 0; p < e[i]; ++p) m *= x.c[i];
    acc += c * m;
  }
  return acc;
}

DualPolynomial DualPolynomial::laplacian() const {
  DualPolynomial out(dim_);
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < dim_; ++i) {
      if (e[i] < 2) continue;
      Exponents d = e;
      d[i] -= 2;
      out.add_term(d, c * static_cast<double>(e[i]) * static_cast<double>(e[i] - 1));
    }
  }
  return out;
}

DualPolynomial DualPolynomial::scaled(Complex s) const {
  DualPolynomial out(dim_);
  for (const auto& [e, c] : terms_) out.add_term(e, s * c);
  return out;
}

DualPolynomial DualPolynomial::plus(const DualPolynomial& other) const {
  DualPolynomial out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

std::string DualPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
    os << ")";
    for (int i = 0; i < dim_; ++i) {
      if (e[i] == 0) continue;
      os << "*X" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace ncgf
