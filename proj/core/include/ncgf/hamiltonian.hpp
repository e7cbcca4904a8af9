#pragma once

#include <optional>
#include <utility>

#include "ncgf/polynomial.hpp"
#include "ncgf/transform.hpp"

namespace ncgf {

/// Symbol of a Hamiltonian in the class H = 1/2 sum X^_i X^_i + V(g^):
/// kinetic polynomial in the dual coordinates plus an optional g-dependent
/// potential.
struct HamiltonianSymbol {
  Chart chart;
  DualPolynomial kinetic;
  std::optional<GroupFunction> potential;
  double fit_residual = 0.0;
};

/// Kinetic symbol after applying omega^{-1}(-i d/dX): the series terminates
/// on polynomials, so the correction is exact up to the Taylor coefficients
/// of omega^{-1}.
struct CorrectedHamiltonian {
  HamiltonianSymbol base;
  DualPolynomial corrected_kinetic;
  std::vector<std::pair<std::string, Complex>> correction_terms;

  double constant_shift() const {
    return corrected_kinetic.coefficient({0, 0, 0}).real() -
           base.kinetic.coefficient({0, 0, 0}).real();
  }
};

/// Symbol of 1/2 sum_i X^_i X^_i: evaluates the diagonal star-monomials by
/// finite differences and fits a degree-2 polynomial (plus constant) through
/// the samples.  Throws ChartAnomalyError when the fit residual exceeds tol.
HamiltonianSymbol free_particle_symbol(const Chart& chart, double fd_step = 1e-3,
                                       double fit_tol = 1e-5, std::uint64_t seed = 2024);

/// Taylor coefficients a_k of omega^{-1}(r) = sum_k a_k r^{2k}, extracted by
/// central differences of the closed-form radial profile at r = 0.
std::vector<double> omega_inverse_taylor(const Chart& chart, int max_order, double step = 5e-2);

/// H_q = omega^{-1}(-i d/dX) H_star; acts on the kinetic polynomial only
/// (the potential is X-independent).
CorrectedHamiltonian quantum_correct(const HamiltonianSymbol& h);

enum class CanonicalOperator { Zhat, Xhat };

/// Zhat(i): multiplication of the coordinate-space density by Z^i.
/// Xhat(i): right star-multiplication by X_i = -i L_i on the group-side
/// preimage (finite differences with grid interpolation).
DualFunction apply_canonical_operator(CanonicalOperator which, int i, const DualFunction& phi,
                                      double fd_step = 1e-3);

using PhaseSpaceFunction =
    std::function<double(const AlgebraVector& z, const AlgebraVector& x)>;

/// Canonical Poisson bracket of the cotangent bundle at a phase-space point,
/// all derivatives by central differences:
///   {F,G} = (dF/dX_i)(L_i G) - (dG/dX_i)(L_i F) + c_ij^k X_k (dF/dX_i)(dG/dX_j).
double poisson_bracket(const Chart& chart, const PhaseSpaceFunction& f,
                       const PhaseSpaceFunction& g, const AlgebraVector& z,
                       const AlgebraVector& x, double step = 1e-4);

/// max over samples of |i [X_i, X_j]_star - {X_i, X_j}_PB|.
double correspondence_check(const Chart& chart, int i, int j,
                            std::span<const AlgebraVector> samples, double step = 1e-3);

}  // namespace ncgf
