#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ncgf/grid.hpp"

namespace ncgf {

struct GroupFunction {
  std::shared_ptr<const GroupGrid> grid;
  std::vector<Complex> values;
};

/// Image of a GroupFunction under the group Fourier transform, carried as the
/// coordinate-space density phi_hat(Z) on the same grid.  Evaluation at a
/// dual point X happens on demand (evaluate_dual); star-products act on the
/// group side as convolutions, which keeps them exact instead of turning into
/// ill-conditioned dual-side deconvolutions.
struct DualFunction {
  std::shared_ptr<const GroupGrid> grid;
  std::vector<Complex> z_density;
};

/// Non-commutative plane wave E_g(X) = exp(i Z(g) . X).
Complex plane_wave(const Chart& chart, const GroupElement& g, const AlgebraVector& x);

/// Representation change onto the dual side (definitional; samples carry over).
DualFunction fourier_transform(const GroupFunction& phi);

/// phi_tilde(X) = sum_k w_k exp(-i Z_k . X) phi_hat(Z_k).
Complex evaluate_dual(const DualFunction& phi, const AlgebraVector& x);

/// Exact inverse: the identity on the coordinate-space density.
GroupFunction inverse_transform_exact(const DualFunction& phi);

/// Literal inverse through a dual-space quadrature (exhibits the inversion
/// formula at the cost of the regularization error of `dual`).
GroupFunction inverse_transform(const DualFunction& phi, const DualGrid& dual);

/// Star-product.  Convention: transform(phi) * transform(psi) =
/// transform(psi conv phi) with (psi conv phi)(g) = Int dh psi(h) phi(h^{-1}g);
/// note the order swap relative to the convolution factors, forced by
/// E_{g^{-1}} * E_{h^{-1}} = E_{(hg)^{-1}}.
DualFunction star_product(const DualFunction& phi, const DualFunction& psi);

/// delta_star(X) = Int dg E_g(X); a regular function only on compact groups.
Complex star_delta(const Chart& chart, const GroupGrid& grid, const AlgebraVector& x);

/// <phi|psi> = Int dX/(2pi)^d conj(phi_tilde) * psi_tilde, computed exactly on
/// the group side.
Complex dual_inner_product(const DualFunction& phi, const DualFunction& psi);
Complex dual_inner_product_literal(const DualFunction& phi, const DualFunction& psi,
                                   const DualGrid& dual);

/// Int dX/(2pi)^d of a dual function: exact path (group-side preimage at the
/// identity) and literal dual-grid quadrature.
Complex integrate_dual_function_exact(const DualFunction& f);
Complex integrate_dual_function(const DualFunction& f, const DualGrid& dual);

/// Int dX/(2pi)^d phi * psi via the star-product machinery (convolution
/// evaluated at the identity).
Complex star_pairing(const DualFunction& phi, const DualFunction& psi);
Complex star_pairing_literal(const DualFunction& phi, const DualFunction& psi,
                             const DualGrid& dual);

/// Int dX/(2pi)^d phi . [omega^{-1}(-i d/dX) psi]: the inverse Haar-density
/// operator is diagonal in the Z-domain, so this reduces to an omega-weighted
/// pointwise pairing.  Must equal star_pairing.
Complex pairing_via_omega(const DualFunction& phi, const DualFunction& psi);
Complex pairing_via_omega_literal(const DualFunction& phi, const DualFunction& psi,
                                  const DualGrid& dual);

/// Pointwise dual pairing without the omega^{-1} insertion; differs from the
/// star pairing whenever omega is not identically 1.
Complex pointwise_pairing_no_omega(const DualFunction& phi, const DualFunction& psi);

/// |Int f1*...*fn - Int f2*...*fn*f1| (dX/(2pi)^d measure, exact path).
double cyclic_check(std::span<const DualFunction> fs);

/// Dual function of conj(phi(g)): density conj(phi_hat(-Z)).
DualFunction conjugate_dual(const DualFunction& phi);

/// Value of X_{i1} * ... * X_{in} at X, by nested central differences of the
/// plane wave along one-parameter subgroups.  Supports n <= 4.
Complex star_monomial(const Chart& chart, std::span<const int> indices, const AlgebraVector& x,
                      double step = 1e-3);

/// Richardson-extrapolated variant (steps h and h/2).
Complex star_monomial_richardson(const Chart& chart, std::span<const int> indices,
                                 const AlgebraVector& x, double step = 1e-3);

/// max over samples of |(X_i * X_j - X_j * X_i)(X) + i c_ij^k X_k|.
double star_commutator_defect(const Chart& chart, int i, int j,
                              std::span<const AlgebraVector> samples, double step = 1e-3);

}  // namespace ncgf
