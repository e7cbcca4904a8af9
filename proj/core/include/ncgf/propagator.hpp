#pragma once

#include "ncgf/hamiltonian.hpp"
#include "ncgf/oracle.hpp"

namespace ncgf {

/// Time-sliced propagator configuration.  The kinetic part of H_q must be
/// a |X|^2 + b (the supported Hamiltonian class), which makes the per-slice
/// dual integral a Gaussian/Fresnel with a closed form.
///
/// Real-time slices carry a Gaussian regulator of width sigma =
/// regulator_scale / epsilon: the plane-wave integral is distributional and
/// needs a window to be evaluated pointwise; scaling the width like 1/epsilon
/// keeps the induced bias at O(epsilon^2), below the slicing order.
struct PropagatorConfig {
  Chart chart;
  int n_per_dim = 64;
  double box_radius = 0.0;  // R^d grids only
  double epsilon = 0.01;
  int steps = 1;
  EvolutionScheme scheme = EvolutionScheme::ImaginaryTime;
  CorrectedHamiltonian hamiltonian;
  std::optional<GroupFunction> potential;  // sampled on the propagation grid
  double regulator_scale = 1.0 / 3.0;      // real time only; <= 0 disables

  // Compose against the interpolated sampled slice instead of the analytic
  // slice evaluator.
  bool sampled_composition = false;
};

/// Short-time or composed kernel K(g_k, g_{k+1}) = K(g_k^{-1} g_{k+1}),
/// stored as samples on the grid.  `kinetic_a`, `shift_b` describe the
/// analytic slice closed form; `variance` is the complex Gaussian variance
/// of the slice including any regulator.
struct Kernel {
  std::shared_ptr<const GroupGrid> grid;
  std::vector<Complex> values;
  EvolutionScheme scheme = EvolutionScheme::ImaginaryTime;
  double total_time = 0.0;
  double kinetic_a = 0.5;
  double shift_b = 0.0;
  Complex variance{0.0, 0.0};  // alpha in K ~ (4 pi alpha)^{-d/2} e^{-|Z|^2/(4 alpha)}
};

/// Closed-form value of the one-slice kernel at a group point.
Complex slice_kernel_value(const PropagatorConfig& config, const GroupElement& g);

/// K_eps sampled on the configured grid (analytic fast path).
Kernel short_time_kernel(const PropagatorConfig& config);

/// Literal dual-grid quadrature of the same slice integral; validation only.
Kernel short_time_kernel_quadrature(const PropagatorConfig& config, const DualGrid& dual,
                                    const DampingSpec& damping);

/// (a o b)(g, g'') = Int dh a(g, h) b(h, g'') by group convolution of the
/// sampled kernels (interpolated lookup of the second factor).
Kernel compose_kernels(const Kernel& a, const Kernel& b);

struct PropagateResult {
  Kernel kernel;
  std::vector<double> slice_mass;  // Int dg K after each composition
};

/// K_eps composed `steps` times.  The evolving kernel is convolved against
/// the analytically evaluated slice factor, so no interpolation error enters
/// through the narrow factor.
PropagateResult propagate(const PropagatorConfig& config);

/// (K psi)(g') = Int dg K(g^{-1} g') e^{-i eps V(g)} psi(g).
GroupFunction apply_kernel(const PropagatorConfig& config, const GroupFunction& psi);

/// || K_eps psi0 - exact_evolve(psi0, eps) || / eps on U(1) (L^2(dg) norm).
double schrodinger_residual(const PropagatorConfig& config, const GroupFunction& psi0,
                            int oracle_modes = 64);

}  // namespace ncgf
