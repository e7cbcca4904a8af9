#include "ncgf/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace ncgf {

namespace {

const Complex kImag(0.0, 1.0);

void check_tail(double dropped, double tol, const char* what) {
  if (dropped > tol) throw std::runtime_error(std::string(what) + ": truncation tail too large");
}

}  // namespace

double u1_heat_kernel(double theta, double t, const SpectralTruncation& trunc) {
  if (t <= 0) throw std::invalid_argument("u1_heat_kernel: t must be positive");
  const int n_max = static_cast<int>(trunc.max_mode);
  double acc = 1.0;
  for (int n = 1; n <= n_max; ++n) acc += 2.0 * std::cos(n * theta) * std::exp(-0.5 * t * n * n);
  const int m = n_max + 1;
  check_tail(2.0 * std::exp(-0.5 * t * m * m) / (1.0 - std::exp(-0.5 * t * m)), trunc.tail_tol,
             "u1_heat_kernel");
  return std::exp(-t * trunc.constant_shift) * acc / kTwoPi;
}

double u1_heat_kernel_images(double theta, double t, const SpectralTruncation& trunc) {
  if (t <= 0) throw std::invalid_argument("u1_heat_kernel_images: t must be positive");
  const int m_max = static_cast<int>(trunc.max_mode);
  double acc = 0.0;
  for (int m = -m_max; m <= m_max; ++m) {
    const double u = theta + kTwoPi * m;
    acc += std::exp(-u * u / (2 * t));
  }
  return std::exp(-t * trunc.constant_shift) * acc / std::sqrt(kTwoPi * t);
}

double su2_character(double j, double theta) {
  const double k = 2 * j + 1;
  const double s = std::sin(0.5 * theta);
  if (std::abs(s) < 1e-8) {
    // chi_j near the identity: k + (1-k^2) k theta^2 / 24 + ...
    const double t2 = theta * theta;
    return k * (1.0 + (1.0 - k * k) * t2 / 24.0);
  }
  return std::sin(0.5 * k * theta) / s;
}

double su_heat_kernel_angle(const LieGroupModel& model, double theta, double t,
                            const SpectralTruncation& trunc) {
  if (t <= 0) throw std::invalid_argument("su_heat_kernel: t must be positive");
  const bool half_integers = model.kind() == GroupKind::SU2;
  if (!half_integers && model.kind() != GroupKind::SO3)
    throw std::invalid_argument("su_heat_kernel: SU(2)/SO(3) only");
  const double step = half_integers ? 0.5 : 1.0;
  double acc = 0.0;
  double j = 0.0;
  for (; j <= trunc.max_mode + 1e-12; j += step) {
    const double lambda = 0.5 * j * (j + 1);
    acc += (2 * j + 1) * su2_character(j, theta) * std::exp(-t * lambda);
  }
  const double jn = j;
  check_tail((2 * jn + 1) * (2 * jn + 1) * std::exp(-0.5 * t * jn * (jn + 1)) /
                 (1.0 - std::exp(-0.5 * t * jn)),
             trunc.tail_tol, "su_heat_kernel");
  return std::exp(-t * trunc.constant_shift) * acc / model.volume();
}

double su_heat_kernel(const GroupElement& g, double t, const SpectralTruncation& trunc) {
  const double w = g.a[0];
  const double vn = std::sqrt(g.a[1] * g.a[1] + g.a[2] * g.a[2] + g.a[3] * g.a[3]);
  const double theta = 2.0 * std::atan2(vn, w);
  return su_heat_kernel_angle(*g.model, theta, t, trunc);
}

double rd_gaussian_kernel(std::span<const double> x, double t) {
  if (t <= 0) throw std::invalid_argument("rd_gaussian_kernel: t must be positive");
  double n2 = 0;
  for (double xi : x) n2 += xi * xi;
  return std::pow(kTwoPi * t, -0.5 * static_cast<double>(x.size())) * std::exp(-n2 / (2 * t));
}

double character_coefficient(const GroupGrid& grid, std::span<const Complex> kernel, double j,
                             double centrality_tol) {
  const LieGroupModel& model = grid.chart().group();
  if (model.kind() != GroupKind::SU2 && model.kind() != GroupKind::SO3)
    throw std::invalid_argument("character_coefficient: SU(2)/SO(3) only");
  if (static_cast<int>(kernel.size()) != grid.size())
    throw GridMismatchError("character_coefficient: sample count != node count");

  // Centrality probe: a central kernel depends only on |Z| in either chart.
  // Tensor nodes related by coordinate permutations and sign flips share the
  // radius exactly, so sorting by radius exposes equal-class node sets.
  double max_abs = 0.0;
  for (int k = 0; k < grid.size(); ++k) max_abs = std::max(max_abs, std::abs(kernel[k]));
  std::vector<std::pair<double, int>> by_radius(grid.size());
  for (int k = 0; k < grid.size(); ++k) by_radius[k] = {grid.node(k).norm(), k};
  std::sort(by_radius.begin(), by_radius.end());
  double max_dev = 0.0;
  for (int k = 1; k < grid.size(); ++k) {
    if (by_radius[k].first - by_radius[k - 1].first > 1e-12) continue;
    max_dev = std::max(max_dev,
                       std::abs(kernel[by_radius[k].second] - kernel[by_radius[k - 1].second]));
  }
  if (max_abs > 0 && max_dev / max_abs > centrality_tol)
    throw std::invalid_argument("character_coefficient: kernel is not central");

  Complex acc = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    const GroupElement g = grid.element(k);
    const double w = g.a[0];
    const double vn = std::sqrt(g.a[1] * g.a[1] + g.a[2] * g.a[2] + g.a[3] * g.a[3]);
    const double theta = 2.0 * std::atan2(vn, w);
    acc += grid.weight(k) * kernel[k] * su2_character(j, theta);
  }
  return acc.real() / model.volume();
}

std::vector<Complex> exact_evolve_u1(const GroupGrid& grid, std::span<const Complex> psi,
                                     double t, EvolutionScheme scheme,
                                     std::span<const Complex> potential, int n_max,
                                     double constant_shift, double tail_tol) {
  const LieGroupModel& model = grid.chart().group();
  if (model.kind() != GroupKind::U1) throw std::invalid_argument("exact_evolve_u1: U(1) only");
  if (static_cast<int>(psi.size()) != grid.size())
    throw GridMismatchError("exact_evolve_u1: sample count != node count");

  const int modes = 2 * n_max + 1;
  // Fourier coefficients from grid samples (exact for band-limited psi).
  Eigen::VectorXcd coeff(modes);
  for (int n = -n_max; n <= n_max; ++n) {
    Complex acc = 0.0;
    for (int k = 0; k < grid.size(); ++k)
      acc += grid.weight(k) * psi[k] * std::exp(-kImag * (static_cast<double>(n) * grid.node(k).c[0]));
    coeff(n + n_max) = acc / kTwoPi;
  }
  // Truncation adequacy: energy in the top modes must be negligible.
  double tail = 0.0, total = 0.0;
  for (int n = -n_max; n <= n_max; ++n) {
    const double p = std::norm(coeff(n + n_max));
    total += p;
    if (std::abs(n) >= n_max - 1) tail += p;
  }
  if (total > 0) check_tail(tail / total, tail_tol, "exact_evolve_u1");

  Eigen::VectorXcd evolved(modes);
  if (potential.empty()) {
    for (int n = -n_max; n <= n_max; ++n) {
      const double lambda = 0.5 * n * n + constant_shift;
      const Complex phase = scheme == EvolutionScheme::RealTime
                                ? std::exp(-kImag * (t * lambda))
                                : Complex(std::exp(-t * lambda));
      evolved(n + n_max) = phase * coeff(n + n_max);
    }
  } else {
    // Dense Hermitian H_{nm} = (n^2/2 + shift) delta_{nm} + Vhat(n - m).
    if (static_cast<int>(potential.size()) != grid.size())
      throw GridMismatchError("exact_evolve_u1: potential sample count != node count");
    std::vector<Complex> vhat(4 * n_max + 1, 0.0);
    for (int q = -2 * n_max; q <= 2 * n_max; ++q) {
      Complex acc = 0.0;
      for (int k = 0; k < grid.size(); ++k)
        acc += grid.weight(k) * potential[k] *
               std::exp(-kImag * (static_cast<double>(q) * grid.node(k).c[0]));
      vhat[q + 2 * n_max] = acc / kTwoPi;
    }
    Eigen::MatrixXcd h(modes, modes);
    for (int n = -n_max; n <= n_max; ++n)
      for (int m = -n_max; m <= n_max; ++m) {
        Complex v = vhat[(n - m) + 2 * n_max];
        if (n == m) v += 0.5 * n * n + constant_shift;
        h(n + n_max, m + n_max) = v;
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    Eigen::VectorXcd y = eig.eigenvectors().adjoint() * coeff;
    for (int m = 0; m < modes; ++m) {
      const double lambda = eig.eigenvalues()(m);
      const Complex phase = scheme == EvolutionScheme::RealTime
                                ? std::exp(-kImag * (t * lambda))
                                : Complex(std::exp(-t * lambda));
      y(m) *= phase;
    }
    evolved = eig.eigenvectors() * y;
  }

  std::vector<Complex> out(grid.size(), 0.0);
  for (int k = 0; k < grid.size(); ++k) {
    Complex acc = 0.0;
    for (int n = -n_max; n <= n_max; ++n)
      acc += evolved(n + n_max) * std::exp(kImag * (static_cast<double>(n) * grid.node(k).c[0]));
    out[k] = acc;
  }
  return out;
}

}  // namespace ncgf
