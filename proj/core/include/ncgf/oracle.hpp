#pragma once

#include <span>
#include <vector>

#include "ncgf/grid.hpp"

// Representation-theoretic reference solutions used only for validation.
// This header must stay independent of the transform / Hamiltonian /
// propagator modules; it sees only groups, charts and grids.

namespace ncgf {

struct SpectralTruncation {
  double max_mode = 32.0;      // U(1): |n| <= max_mode; SU(2)/SO(3): j <= max_mode
  double tail_tol = 1e-8;      // bound on the dropped spectral weight
  double constant_shift = 0.0; // additive shift of every eigenvalue
};

/// Heat kernel of H = 1/2 Xhat^2 (+ shift) on U(1):
/// (1/2pi) sum_n e^{i n theta} e^{-t (n^2/2 + shift)}.  Haar mass 2 pi.
double u1_heat_kernel(double theta, double t, const SpectralTruncation& trunc);

/// The same kernel through Poisson summation (winding images); used as a
/// standing cross-check of the spectral form.
double u1_heat_kernel_images(double theta, double t, const SpectralTruncation& trunc);

/// Character of the spin-j representation at rotation angle theta.
double su2_character(double j, double theta);

/// Heat kernel on SU(2) (half-integer j) or SO(3) (integer j):
/// V^{-1} sum_j (2j+1) chi_j(theta) e^{-t (j(j+1)/2 + shift)}.
double su_heat_kernel(const GroupElement& g, double t, const SpectralTruncation& trunc);
double su_heat_kernel_angle(const LieGroupModel& model, double theta, double t,
                            const SpectralTruncation& trunc);

/// (2 pi t)^{-d/2} exp(-|x|^2 / 2t).
double rd_gaussian_kernel(std::span<const double> x, double t);

/// c_j = (1/V) Int dg K(g) chi_j(g) for a central kernel sampled on `grid`.
/// Throws when the samples are measurably non-central.
double character_coefficient(const GroupGrid& grid, std::span<const Complex> kernel, double j,
                             double centrality_tol = 1e-6);

enum class EvolutionScheme { RealTime, ImaginaryTime };

/// Exact evolution on U(1) by diagonalizing H = 1/2 n^2 + shift + V in the
/// Fourier-mode basis (dense Hermitian solve when a potential is present).
/// `potential` is sampled on the same grid; pass empty for the free particle.
std::vector<Complex> exact_evolve_u1(const GroupGrid& grid, std::span<const Complex> psi,
                                     double t, EvolutionScheme scheme,
                                     std::span<const Complex> potential, int n_max,
                                     double constant_shift = 0.0, double tail_tol = 1e-8);

}  // namespace ncgf
