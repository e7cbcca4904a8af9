#include "ncgf/hamiltonian.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace ncgf {

namespace {

const Complex kImag(0.0, 1.0);

std::vector<DualPolynomial::Exponents> quadratic_basis(int d) {
  std::vector<DualPolynomial::Exponents> basis;
  basis.push_back({0, 0, 0});
  for (int i = 0; i < d; ++i) {
    DualPolynomial::Exponents e{0, 0, 0};
    e[i] = 1;
    basis.push_back(e);
  }
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      DualPolynomial::Exponents e{0, 0, 0};
      e[i] += 1;
      e[j] += 1;
      basis.push_back(e);
    }
  return basis;
}

double monomial_value(const DualPolynomial::Exponents& e, const AlgebraVector& x) {
  double m = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int p = 0; p < e[i]; ++p) m *= x.c[i];
  return m;
}

}  // namespace

HamiltonianSymbol free_particle_symbol(const Chart& chart, double fd_step, double fit_tol,
                                       std::uint64_t seed) {
  const LieGroupModel& model = chart.group();
  const int d = model.dim();
  const auto basis = quadratic_basis(d);

  // Sample points: random ball |X| <= 2.5 plus axes, 4x overdetermined.
  Rng rng(seed);
  std::vector<AlgebraVector> xs;
  for (int i = 0; i < d; ++i) {
    AlgebraVector x = zero_vector(model);
    x.c[i] = 1.0;
    xs.push_back(x);
    x.c[i] = -2.0;
    xs.push_back(x);
  }
  while (xs.size() < 4 * basis.size() + 8) {
    AlgebraVector x = zero_vector(model);
    for (int i = 0; i < d; ++i) x.c[i] = rng.uniform(-2.5, 2.5);
    xs.push_back(x);
  }

  Eigen::MatrixXd a(xs.size(), basis.size());
  Eigen::VectorXd rhs(xs.size());
  double max_imag = 0.0;
  for (std::size_t r = 0; r < xs.size(); ++r) {
    Complex value = 0.0;
    for (int i = 0; i < d; ++i) {
      const std::array<int, 2> ii{i, i};
      value += 0.5 * star_monomial_richardson(chart, ii, xs[r], fd_step);
    }
    max_imag = std::max(max_imag, std::abs(value.imag()));
    rhs(r) = value.real();
    for (std::size_t c = 0; c < basis.size(); ++c) a(r, c) = monomial_value(basis[c], xs[r]);
  }

  const Eigen::VectorXd coeff = a.colPivHouseholderQr().solve(rhs);
  const double residual = (a * coeff - rhs).lpNorm<Eigen::Infinity>();
  if (residual > fit_tol || max_imag > fit_tol)
    throw ChartAnomalyError("free_particle_symbol: kinetic symbol is not quadratic (residual " +
                            std::to_string(residual) + ")");

  HamiltonianSymbol h{chart, DualPolynomial(d), std::nullopt, residual};
  // drop least-squares noise: genuine coefficients sit at O(1)
  for (std::size_t c = 0; c < basis.size(); ++c)
    h.kinetic.add_term(basis[c], coeff(c), 10.0 * fit_tol);
  return h;
}

std::vector<double> omega_inverse_taylor(const Chart& chart, int max_order, double step) {
  // f(r) = omega^{-1}(r) is even and smooth; a_k = f^(2k)(0) / (2k)!.
  std::vector<double> a(max_order + 1, 0.0);
  a[0] = chart.omega_inverse_radial(0.0);
  auto f = [&](double r) { return chart.omega_inverse_radial(r); };
  if (max_order >= 1) {
    // 4th-order central second derivative.
    const double d2 = (-f(2 * step) + 16 * f(step) - 30 * f(0) + 16 * f(-step) - f(-2 * step)) /
                      (12 * step * step);
    a[1] = d2 / 2.0;
  }
  if (max_order >= 2) {
    const double d4 = (f(2 * step) - 4 * f(step) + 6 * f(0) - 4 * f(-step) + f(-2 * step)) /
                      std::pow(step, 4);
    a[2] = d4 / 24.0;
  }
  if (max_order >= 3) throw std::invalid_argument("omega_inverse_taylor: order > 2 unsupported");
  return a;
}

CorrectedHamiltonian quantum_correct(const HamiltonianSymbol& h) {
  const int deg = h.kinetic.degree();
  if (deg > 4) throw std::invalid_argument("quantum_correct: kinetic degree > 4 unsupported");
  const int orders = deg / 2;  // derivatives beyond the degree annihilate
  const auto taylor = omega_inverse_taylor(h.chart, orders);

  CorrectedHamiltonian out{h, h.kinetic, {}};
  DualPolynomial derivative = h.kinetic;
  for (int k = 1; k <= orders; ++k) {
    // r^{2k} -> (-Laplacian)^k
    derivative = derivative.laplacian().scaled(-1.0);
    const DualPolynomial term = derivative.scaled(taylor[k]);
    if (term.empty()) continue;
    out.corrected_kinetic = out.corrected_kinetic.plus(term);
    out.correction_terms.emplace_back(term.to_string(), taylor[k]);
  }
  return out;
}

DualFunction apply_canonical_operator(CanonicalOperator which, int i, const DualFunction& phi,
                                      double fd_step) {
  const GroupGrid& grid = *phi.grid;
  const int d = grid.chart().group().dim();
  if (i < 0 || i >= d) throw std::invalid_argument("apply_canonical_operator: bad index");
  DualFunction out{phi.grid, std::vector<Complex>(grid.size())};
  if (which == CanonicalOperator::Zhat) {
    for (int k = 0; k < grid.size(); ++k) out.z_density[k] = grid.node(k).c[i] * phi.z_density[k];
    return out;
  }
  // Xhat(i) = -i L_i on the group-side preimage.
  for (int k = 0; k < grid.size(); ++k) {
    const GroupElement g = grid.element(k);
    const Complex deriv = left_derivative(
        [&](const GroupElement& gg) { return grid.interpolate_at(phi.z_density, gg); }, g, i,
        fd_step);
    out.z_density[k] = -kImag * deriv;
  }
  return out;
}

double poisson_bracket(const Chart& chart, const PhaseSpaceFunction& f,
                       const PhaseSpaceFunction& g, const AlgebraVector& z,
                       const AlgebraVector& x, double step) {
  const LieGroupModel& model = chart.group();
  const int d = model.dim();
  const GroupElement at = chart.point(z);

  auto dx = [&](const PhaseSpaceFunction& fn, int i) {
    AlgebraVector xp = x, xm = x;
    xp.c[i] += step;
    xm.c[i] -= step;
    return (fn(z, xp) - fn(z, xm)) / (2 * step);
  };
  auto lg = [&](const PhaseSpaceFunction& fn, int i) {
    AlgebraVector dir = zero_vector(model);
    dir.c[i] = step;
    const AlgebraVector zp = chart.coordinates(multiply(at, exponential_map(dir)));
    dir.c[i] = -step;
    const AlgebraVector zm = chart.coordinates(multiply(at, exponential_map(dir)));
    return (fn(zp, x) - fn(zm, x)) / (2 * step);
  };

  double acc = 0.0;
  std::vector<double> dfx(d), dgx(d);
  for (int i = 0; i < d; ++i) {
    dfx[i] = dx(f, i);
    dgx[i] = dx(g, i);
    acc += dfx[i] * lg(g, i) - dgx[i] * lg(f, i);
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        acc += model.structure_constant(i, j, k) * x.c[k] * dfx[i] * dgx[j];
  return acc;
}

double correspondence_check(const Chart& chart, int i, int j,
                            std::span<const AlgebraVector> samples, double step) {
  const LieGroupModel& model = chart.group();
  PhaseSpaceFunction xi = [i](const AlgebraVector&, const AlgebraVector& x) { return x.c[i]; };
  PhaseSpaceFunction xj = [j](const AlgebraVector&, const AlgebraVector& x) { return x.c[j]; };
  const std::array<int, 2> ij{i, j};
  const std::array<int, 2> ji{j, i};
  double worst = 0.0;
  for (const AlgebraVector& x : samples) {
    const Complex comm = star_monomial_richardson(chart, ij, x, step) -
                         star_monomial_richardson(chart, ji, x, step);
    const double pb = poisson_bracket(chart, xi, xj, zero_vector(model), x, step);
    worst = std::max(worst, std::abs(kImag * comm - Complex(pb)));
  }
  return worst;
}

}  // namespace ncgf
