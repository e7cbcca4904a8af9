#include "ncgf/propagator.hpp"

#include <cmath>

#include "ncgf/threading.hpp"

namespace ncgf {

namespace {

const Complex kImag(0.0, 1.0);

// Kinetic polynomial must be a |X|^2 + b; extracts (a, b).
std::pair<double, double> isotropic_quadratic(const DualPolynomial& kinetic, int dim) {
  double a = 0.0, b = 0.0;
  for (const auto& [e, c] : kinetic.terms()) {
    if (std::abs(c) <= 1e-7) continue;  // residual fit noise
    const int deg = e[0] + e[1] + e[2];
    if (deg == 0) {
      b = c.real();
      continue;
    }
    bool diagonal = false;
    for (int i = 0; i < dim; ++i) diagonal |= e[i] == 2;
    if (deg != 2 || !diagonal || std::abs(c.imag()) > 1e-9)
      throw std::invalid_argument("propagator: kinetic symbol must be a|X|^2 + b");
    if (a == 0.0) a = c.real();
    if (std::abs(c.real() - a) > 1e-7)
      throw std::invalid_argument("propagator: anisotropic kinetic symbol unsupported");
  }
  if (a <= 0.0) throw std::invalid_argument("propagator: kinetic coefficient must be positive");
  return {a, b};
}

Complex slice_variance(const PropagatorConfig& config, double a) {
  // K(Z) = e^{-eps b (or -i eps b)} (4 pi alpha)^{-d/2} e^{-|Z|^2 / 4 alpha}.
  if (config.scheme == EvolutionScheme::ImaginaryTime) return Complex(config.epsilon * a, 0.0);
  Complex alpha(0.0, config.epsilon * a);
  if (config.regulator_scale > 0) {
    const double sigma = config.regulator_scale / config.epsilon;
    alpha += Complex(0.5 / (sigma * sigma), 0.0);
  }
  return alpha;
}

Complex shift_factor(const PropagatorConfig& config, double b) {
  if (config.scheme == EvolutionScheme::ImaginaryTime) return std::exp(-config.epsilon * b);
  return std::exp(-kImag * (config.epsilon * b));
}

Complex gaussian_kernel_value(Complex alpha, int d, double z2) {
  const Complex norm = std::pow(4.0 * kPi * alpha, -0.5 * d);
  return norm * std::exp(-z2 / (4.0 * alpha));
}

// Radial slice evaluator with all constants hoisted; |Z(g)|^2 is computed
// from the compact element payload without exceptions.  Kernels extend
// continuously to the cut locus, so only the restricted SU(2) trace patch
// zeroes out.
struct SliceEvaluator {
  GroupKind group;
  ChartKind chart;
  int d;
  Complex prefactor;    // shift factor * normalization
  Complex inv_4alpha;   // 1 / (4 alpha)

  Complex operator()(const GroupElement& g) const {
    double z2 = 0.0;
    switch (group) {
      case GroupKind::U1: {
        if (chart == ChartKind::Trace) {
          const double s = 2.0 * std::sin(0.5 * g.a[0]);
          z2 = s * s;
        } else {
          z2 = g.a[0] * g.a[0];
        }
        break;
      }
      case GroupKind::Rd:
        for (int i = 0; i < d; ++i) z2 += g.a[i] * g.a[i];
        break;
      case GroupKind::SU2:
      case GroupKind::SO3: {
        const double v2 = g.a[1] * g.a[1] + g.a[2] * g.a[2] + g.a[3] * g.a[3];
        if (chart == ChartKind::Trace) {
          if (group == GroupKind::SU2 && g.a[0] <= 0.0) return 0.0;
          z2 = 4.0 * v2;
        } else {
          const double theta = 2.0 * std::atan2(std::sqrt(v2), g.a[0]);
          z2 = theta * theta;
        }
        break;
      }
    }
    return prefactor * std::exp(-z2 * inv_4alpha);
  }
};

SliceEvaluator make_slice_evaluator(const PropagatorConfig& config) {
  const int d = config.chart.group().dim();
  const auto [a, b] = isotropic_quadratic(config.hamiltonian.corrected_kinetic, d);
  const Complex alpha = slice_variance(config, a);
  SliceEvaluator ev;
  ev.group = config.chart.group().kind();
  ev.chart = config.chart.kind();
  ev.d = d;
  ev.prefactor = shift_factor(config, b) * std::pow(4.0 * kPi * alpha, -0.5 * d);
  ev.inv_4alpha = 1.0 / (4.0 * alpha);
  return ev;
}

}  // namespace

Complex slice_kernel_value(const PropagatorConfig& config, const GroupElement& g) {
  return make_slice_evaluator(config)(g);
}

Kernel short_time_kernel(const PropagatorConfig& config) {
  const auto [a, b] = isotropic_quadratic(config.hamiltonian.corrected_kinetic,
                                          config.chart.group().dim());
  auto grid = GroupGrid::build(config.chart, config.n_per_dim, config.box_radius);
  Kernel k;
  k.grid = grid;
  k.scheme = config.scheme;
  k.total_time = config.epsilon;
  k.kinetic_a = a;
  k.shift_b = b;
  k.variance = slice_variance(config, a);
  k.values.resize(grid->size());
  const Complex sf = shift_factor(config, b);
  const int d = config.chart.group().dim();
  for (int j = 0; j < grid->size(); ++j) {
    const AlgebraVector z = grid->node(j);
    k.values[j] = sf * gaussian_kernel_value(k.variance, d, dot(z, z));
  }
  return k;
}

Kernel short_time_kernel_quadrature(const PropagatorConfig& config, const DualGrid& dual,
                                    const DampingSpec& damping) {
  const auto [a, b] = isotropic_quadratic(config.hamiltonian.corrected_kinetic,
                                          config.chart.group().dim());
  auto grid = GroupGrid::build(config.chart, config.n_per_dim, config.box_radius);
  if (dual.dim() != grid->dim()) throw GridMismatchError("dual grid dimension mismatch");

  Kernel k;
  k.grid = grid;
  k.scheme = config.scheme;
  k.total_time = config.epsilon;
  k.kinetic_a = a;
  k.shift_b = b;
  k.variance = slice_variance(config, a);
  k.values.resize(grid->size());
  const Complex sf = shift_factor(config, b);
  const bool imaginary = config.scheme == EvolutionScheme::ImaginaryTime;
  const double eps = config.epsilon;

  parallel_for(grid->size(), [&](std::int64_t jj) {
    const int j = static_cast<int>(jj);
    const AlgebraVector z = grid->node(j);
    Complex acc = 0.0;
    for (int m = 0; m < dual.size(); ++m) {
      const auto x = dual.node(m);
      const double x2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
      const double zx = z.c[0] * x[0] + z.c[1] * x[1] + z.c[2] * x[2];
      const Complex ham = imaginary ? Complex(-eps * a * x2) : -kImag * (eps * a * x2);
      const double w = damping_multiplier(damping, dual.lambda(), std::sqrt(x2));
      acc += w * std::exp(kImag * zx + ham);
    }
    k.values[j] = sf * acc * dual.cell_weight();
  });
  return k;
}

Kernel compose_kernels(const Kernel& a, const Kernel& b) {
  if (a.grid != b.grid) throw GridMismatchError("compose_kernels: kernels on different grids");
  if (a.scheme != b.scheme)
    throw std::invalid_argument("compose_kernels: mixed evolution schemes");
  Kernel out;
  out.grid = a.grid;
  out.scheme = a.scheme;
  out.total_time = a.total_time + b.total_time;
  out.kinetic_a = a.kinetic_a;
  out.shift_b = a.shift_b;
  out.variance = a.variance + b.variance;
  out.values = group_convolve(*a.grid, a.values, b.values);
  return out;
}

PropagateResult propagate(const PropagatorConfig& config) {
  PropagateResult result;
  result.kernel = short_time_kernel(config);
  const GroupGrid& grid = *result.kernel.grid;
  result.slice_mass.push_back(integrate_group(grid, std::span<const Complex>(result.kernel.values)).real());

  // Narrow slice factor: analytic evaluation at exact group arguments by
  // default, interpolated sampled lookup when requested.
  const SliceEvaluator slice = make_slice_evaluator(config);
  const std::vector<Complex> slice_samples = result.kernel.values;
  for (int step = 1; step < config.steps; ++step) {
    if (config.sampled_composition) {
      result.kernel.values = group_convolve(grid, result.kernel.values, slice_samples);
    } else {
      result.kernel.values = group_convolve(
          grid, result.kernel.values, [&](const GroupElement& g) { return slice(g); });
    }
    result.kernel.total_time += config.epsilon;
    result.slice_mass.push_back(
        integrate_group(grid, std::span<const Complex>(result.kernel.values)).real());
  }
  return result;
}

GroupFunction apply_kernel(const PropagatorConfig& config, const GroupFunction& psi) {
  Kernel k = short_time_kernel(config);
  if (psi.grid->size() != k.grid->size())
    throw GridMismatchError("apply_kernel: psi grid mismatch");
  std::vector<Complex> weighted = psi.values;
  if (config.potential) {
    const auto& v = config.potential->values;
    for (int i = 0; i < k.grid->size(); ++i) {
      const Complex phase = config.scheme == EvolutionScheme::ImaginaryTime
                                ? std::exp(-config.epsilon * v[i])
                                : std::exp(-kImag * (config.epsilon * v[i]));
      weighted[i] *= phase;
    }
  }
  return GroupFunction{psi.grid, group_convolve(*psi.grid, weighted, k.values)};
}

double schrodinger_residual(const PropagatorConfig& config, const GroupFunction& psi0,
                            int oracle_modes) {
  if (config.chart.group().kind() != GroupKind::U1)
    throw std::invalid_argument("schrodinger_residual: spectral oracle exists on U(1) only");
  const GroupGrid& grid = *psi0.grid;

  PropagatorConfig one = config;
  one.steps = 1;
  const GroupFunction evolved = apply_kernel(one, psi0);

  std::span<const Complex> pot =
      config.potential ? std::span<const Complex>(config.potential->values)
                       : std::span<const Complex>();
  const std::vector<Complex> exact =
      exact_evolve_u1(grid, psi0.values, config.epsilon, config.scheme, pot, oracle_modes,
                      config.hamiltonian.constant_shift());

  double acc = 0.0;
  for (int k = 0; k < grid.size(); ++k)
    acc += grid.weight(k) * std::norm(evolved.values[k] - exact[k]);
  return std::sqrt(acc) / config.epsilon;
}

}  // namespace ncgf
