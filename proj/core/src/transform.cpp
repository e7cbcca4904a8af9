#include "ncgf/transform.hpp"

#include <cmath>

#include "ncgf/threading.hpp"

namespace ncgf {

namespace {

void check_same_grid(const DualFunction& a, const DualFunction& b) {
  if (a.grid != b.grid) throw GridMismatchError("dual functions on different grids");
}

const Complex kImag(0.0, 1.0);

}  // namespace

Complex plane_wave(const Chart& chart, const GroupElement& g, const AlgebraVector& x) {
  const AlgebraVector z = chart.coordinates(g);
  return std::exp(kImag * dot(z, x));
}

DualFunction fourier_transform(const GroupFunction& phi) {
  return DualFunction{phi.grid, phi.values};
}

Complex evaluate_dual(const DualFunction& phi, const AlgebraVector& x) {
  const GroupGrid& grid = *phi.grid;
  return parallel_sum(grid.size(), [&](std::int64_t k) {
    const int i = static_cast<int>(k);
    return grid.weight(i) * std::exp(-kImag * dot(grid.node(i), x)) * phi.z_density[i];
  });
}

GroupFunction inverse_transform_exact(const DualFunction& phi) {
  return GroupFunction{phi.grid, phi.z_density};
}

GroupFunction inverse_transform(const DualFunction& phi, const DualGrid& dual) {
  const GroupGrid& grid = *phi.grid;
  if (dual.dim() != grid.dim()) throw GridMismatchError("dual grid dimension mismatch");
  GroupFunction out{phi.grid, std::vector<Complex>(grid.size())};
  // phi(g) = Int dX/(2pi)^d E_g(X) * phi_tilde(X); the star against a plane
  // wave shifts the group argument, so the literal path reduces to pairing
  // the reconstruction kernel with translated densities.
  const int nd = dual.size();
  std::vector<Complex> recon(grid.size(), 0.0);
  // recon(Z_k) = Int dX e^{-i Z_k X} (damped) / (2pi)^d: reconstruction kernel
  parallel_for(grid.size(), [&](std::int64_t kk) {
    const int k = static_cast<int>(kk);
    const AlgebraVector zk = grid.node(k);
    Complex acc = 0.0;
    for (int j = 0; j < nd; ++j) {
      const auto xj = dual.node(j);
      const double zx = zk.c[0] * xj[0] + zk.c[1] * xj[1] + zk.c[2] * xj[2];
      acc += dual.damping(j) * std::exp(-kImag * zx);
    }
    recon[k] = acc * dual.cell_weight();
  });
  parallel_for(grid.size(), [&](std::int64_t jj) {
    const int j = static_cast<int>(jj);
    const GroupElement gj = grid.element(j);
    Complex acc = 0.0;
    for (int k = 0; k < grid.size(); ++k) {
      // density of phi translated by g_j at node k: phi_hat(Z(g_j g_k))
      const Complex v = grid.interpolate_at(phi.z_density, multiply(gj, grid.element(k)));
      acc += grid.weight(k) * recon[k] * v;
    }
    out.values[j] = acc;
  });
  return out;
}

DualFunction star_product(const DualFunction& phi, const DualFunction& psi) {
  check_same_grid(phi, psi);
  return DualFunction{phi.grid, group_convolve(*phi.grid, psi.z_density, phi.z_density)};
}

Complex star_delta(const Chart& chart, const GroupGrid& grid, const AlgebraVector& x) {
  if (!chart.group().compact())
    throw NotRegularError("delta_star is distributional on non-compact groups");
  Complex acc = 0.0;
  for (int k = 0; k < grid.size(); ++k)
    acc += grid.weight(k) * std::exp(kImag * dot(grid.node(k), x));
  return acc;
}

Complex dual_inner_product(const DualFunction& phi, const DualFunction& psi) {
  check_same_grid(phi, psi);
  const GroupGrid& grid = *phi.grid;
  Complex acc = 0.0;
  for (int k = 0; k < grid.size(); ++k)
    acc += grid.weight(k) * std::conj(phi.z_density[k]) * psi.z_density[k];
  return acc;
}

Complex dual_inner_product_literal(const DualFunction& phi, const DualFunction& psi,
                                   const DualGrid& dual) {
  return star_pairing_literal(conjugate_dual(phi), psi, dual);
}

Complex integrate_dual_function_exact(const DualFunction& f) {
  const GroupGrid& grid = *f.grid;
  return grid.interpolate_at(f.z_density, identity(grid.chart().group()));
}

Complex integrate_dual_function(const DualFunction& f, const DualGrid& dual) {
  return integrate_dual(dual, [&](const std::array<double, 3>& x) {
    return evaluate_dual(f, algebra_vector(f.grid->chart().group(), x));
  });
}

Complex star_pairing(const DualFunction& phi, const DualFunction& psi) {
  check_same_grid(phi, psi);
  const GroupGrid& grid = *phi.grid;
  return convolve_at(grid, psi.z_density, phi.z_density, identity(grid.chart().group()));
}

Complex star_pairing_literal(const DualFunction& phi, const DualFunction& psi,
                             const DualGrid& dual) {
  return integrate_dual_function(star_product(phi, psi), dual);
}

Complex pairing_via_omega(const DualFunction& phi, const DualFunction& psi) {
  check_same_grid(phi, psi);
  const GroupGrid& grid = *phi.grid;
  const Chart& chart = grid.chart();
  Complex acc = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    const AlgebraVector zk = grid.node(k);
    const int nk = grid.negated_index(k);
    // omega(Z) from the delta collapse times omega^{-1}(Z) acting on psi.
    acc += grid.weight(k) * phi.z_density[k] * chart.haar_density(zk) *
           chart.omega_inverse_radial(zk.norm()) * psi.z_density[nk];
  }
  return acc;
}

Complex pairing_via_omega_literal(const DualFunction& phi, const DualFunction& psi,
                                  const DualGrid& dual) {
  // psi with its density multiplied by omega^{-1}(Z), then the literal
  // pointwise dual-space integral of phi_tilde . chi_tilde.
  const GroupGrid& grid = *phi.grid;
  DualFunction chi{psi.grid, psi.z_density};
  for (int k = 0; k < grid.size(); ++k)
    chi.z_density[k] *= grid.chart().omega_inverse_radial(grid.node(k).norm());
  return integrate_dual(dual, [&](const std::array<double, 3>& x) {
    const AlgebraVector xv = algebra_vector(grid.chart().group(), x);
    return evaluate_dual(phi, xv) * evaluate_dual(chi, xv);
  });
}

Complex pointwise_pairing_no_omega(const DualFunction& phi, const DualFunction& psi) {
  check_same_grid(phi, psi);
  const GroupGrid& grid = *phi.grid;
  Complex acc = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    const AlgebraVector zk = grid.node(k);
    acc += grid.weight(k) * phi.z_density[k] * grid.chart().haar_density(zk) *
           psi.z_density[grid.negated_index(k)];
  }
  return acc;
}

double cyclic_check(std::span<const DualFunction> fs) {
  if (fs.size() < 2) return 0.0;
  auto chain = [&](std::size_t start) {
    DualFunction acc = fs[start];
    for (std::size_t m = 1; m < fs.size(); ++m)
      acc = star_product(acc, fs[(start + m) % fs.size()]);
    return integrate_dual_function_exact(acc);
  };
  return std::abs(chain(0) - chain(1));
}

DualFunction conjugate_dual(const DualFunction& phi) {
  const GroupGrid& grid = *phi.grid;
  DualFunction out{phi.grid, std::vector<Complex>(grid.size())};
  for (int k = 0; k < grid.size(); ++k)
    out.z_density[k] = std::conj(phi.z_density[grid.negated_index(k)]);
  return out;
}

namespace {

// E evaluated at exp(s_1 T_{i1}) ... exp(s_n T_{in}).
Complex nested_plane_wave(const Chart& chart, std::span<const int> indices,
                          std::span<const double> s, const AlgebraVector& x) {
  GroupElement g = identity(chart.group());
  for (std::size_t m = 0; m < indices.size(); ++m) {
    AlgebraVector dir = zero_vector(chart.group());
    dir.c[indices[m]] = s[m];
    g = multiply(g, exponential_map(dir));
  }
  return plane_wave(chart, g, x);
}

}  // namespace

Complex star_monomial(const Chart& chart, std::span<const int> indices, const AlgebraVector& x,
                      double step) {
  const std::size_t n = indices.size();
  if (n == 0) return 1.0;
  if (n > 4) throw std::invalid_argument("star_monomial: order > 4 unsupported");
  for (int i : indices)
    if (i < 0 || i >= chart.group().dim())
      throw std::invalid_argument("star_monomial: index out of range");

  // (-i)^n times the nested central difference over the 2^n sign patterns.
  Complex acc = 0.0;
  std::array<double, 4> s{};
  for (int mask = 0; mask < (1 << n); ++mask) {
    int parity = 0;
    for (std::size_t m = 0; m < n; ++m) {
      const bool minus = (mask >> m) & 1;
      parity ^= minus ? 1 : 0;
      s[m] = minus ? -step : step;
    }
    const Complex e = nested_plane_wave(chart, indices, std::span(s.data(), n), x);
    acc += (parity ? -1.0 : 1.0) * e;
  }
  acc /= std::pow(2.0 * step, static_cast<double>(n));
  return acc * std::pow(-kImag, static_cast<double>(n));
}

Complex star_monomial_richardson(const Chart& chart, std::span<const int> indices,
                                 const AlgebraVector& x, double step) {
  const Complex fh = star_monomial(chart, indices, x, step);
  const Complex fh2 = star_monomial(chart, indices, x, 0.5 * step);
  return (4.0 * fh2 - fh) / 3.0;
}

double star_commutator_defect(const Chart& chart, int i, int j,
                              std::span<const AlgebraVector> samples, double step) {
  double worst = 0.0;
  const std::array<int, 2> ij{i, j};
  const std::array<int, 2> ji{j, i};
  for (const AlgebraVector& x : samples) {
    const Complex comm = star_monomial_richardson(chart, ij, x, step) -
                         star_monomial_richardson(chart, ji, x, step);
    Complex expected = 0.0;
    for (int k = 0; k < chart.group().dim(); ++k)
      expected += -kImag * chart.group().structure_constant(i, j, k) * x.c[k];
    worst = std::max(worst, std::abs(comm - expected));
  }
  return worst;
}

}  // namespace ncgf
