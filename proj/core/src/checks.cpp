#include "ncgf/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ncgf/oracle.hpp"
#include "ncgf/propagator.hpp"

namespace ncgf::checks {

namespace {

const Complex kImag(0.0, 1.0);

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckResult below(std::string name, double measured, double tol, std::string note = "") {
  return CheckResult{std::move(name), measured, tol, measured <= tol, std::move(note)};
}

CheckResult above(std::string name, double measured, double tol, std::string note = "") {
  return CheckResult{std::move(name), measured, tol, measured > tol, std::move(note)};
}

// Band-limited complex function on U(1): coefficients c_n, |n| <= band.
struct BandLimited {
  int band = 0;
  std::vector<Complex> coeff;  // index n + band

  Complex operator()(double theta) const {
    Complex acc = 0.0;
    for (int n = -band; n <= band; ++n)
      acc += coeff[n + band] * std::exp(kImag * (static_cast<double>(n) * theta));
    return acc;
  }
};

BandLimited random_band_limited(int band, Rng& rng, bool real_valued) {
  BandLimited f;
  f.band = band;
  f.coeff.assign(2 * band + 1, 0.0);
  f.coeff[band] = Complex(rng.uniform(0.4, 1.0), real_valued ? 0.0 : rng.uniform(-0.5, 0.5));
  for (int n = 1; n <= band; ++n) {
    const double amp = rng.uniform(0.2, 0.9) / n;
    const double phase = rng.uniform(0.0, kTwoPi);
    f.coeff[band + n] = amp * std::exp(kImag * phase);
    f.coeff[band - n] = real_valued ? std::conj(f.coeff[band + n])
                                    : rng.uniform(0.2, 0.9) / n * std::exp(kImag * rng.uniform(0.0, kTwoPi));
  }
  return f;
}

GroupFunction sample_on_grid(std::shared_ptr<const GroupGrid> grid, const BandLimited& f) {
  GroupFunction out{grid, std::vector<Complex>(grid->size())};
  for (int k = 0; k < grid->size(); ++k) out.values[k] = f(grid->node(k).c[0]);
  return out;
}

// Gaussian bump in chart coordinates, normalized to unit L^2(dg) norm.
GroupFunction chart_bump(std::shared_ptr<const GroupGrid> grid, const AlgebraVector& center,
                         double width) {
  GroupFunction out{grid, std::vector<Complex>(grid->size())};
  for (int k = 0; k < grid->size(); ++k) {
    const AlgebraVector z = grid->node(k);
    double d2 = 0;
    for (int i = 0; i < grid->dim(); ++i) {
      const double d = z.c[i] - center.c[i];
      d2 += d * d;
    }
    out.values[k] = std::exp(-0.5 * d2 / (width * width));
  }
  double n2 = 0;
  for (int k = 0; k < grid->size(); ++k) n2 += grid->weight(k) * std::norm(out.values[k]);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& v : out.values) v *= inv;
  return out;
}

GroupFunction group_delta(std::shared_ptr<const GroupGrid> grid, int node) {
  GroupFunction out{grid, std::vector<Complex>(grid->size(), 0.0)};
  out.values[node] = 1.0 / grid->weight(node);
  return out;
}

CorrectedHamiltonian free_hamiltonian(const Chart& chart) {
  return quantum_correct(free_particle_symbol(chart));
}

std::vector<AlgebraVector> sample_ball(const LieGroupModel& model, double radius, int count,
                                       Rng& rng) {
  std::vector<AlgebraVector> xs;
  while (static_cast<int>(xs.size()) < count) {
    AlgebraVector x = zero_vector(model);
    for (int i = 0; i < model.dim(); ++i) x.c[i] = rng.uniform(-radius, radius);
    if (x.norm() <= radius) xs.push_back(x);
  }
  return xs;
}

}  // namespace

bool CriterionResult::gate_pass() const {
  for (std::size_t i = 0; i < checks.size(); ++i)
    if (!checks[i].pass && !(i < expected_fail.size() && expected_fail[i])) return false;
  return true;
}

// --------------------------------------------------------------------------
// 1. Chart conditions.
// --------------------------------------------------------------------------
CriterionResult chart_conditions(std::uint64_t seed) {
  const auto t0 = Clock::now();
  CriterionResult r{1, "chart conditions", {}, {}, 0.0};
  const double tol = 1e-6;
  const int samples = 220;

  struct Case {
    const char* name;
    Chart chart;
  };
  const std::vector<Case> cases = {
      {"chart_exp_u1", Chart(ChartKind::Exponential, LieGroupModel::u1())},
      {"chart_exp_su2", Chart(ChartKind::Exponential, LieGroupModel::su2())},
      {"chart_exp_so3", Chart(ChartKind::Exponential, LieGroupModel::so3())},
      {"chart_exp_r3", Chart(ChartKind::Exponential, LieGroupModel::rd(3))},
      {"chart_trace_su2", Chart(ChartKind::Trace, LieGroupModel::su2())},
      {"chart_trace_so3", Chart(ChartKind::Trace, LieGroupModel::so3())},
  };
  for (const auto& c : cases) {
    const ValidationReport rep = validate_chart(c.chart, samples, seed, 1e-3, tol);
    r.checks.push_back(below(c.name, rep.max_violation, tol));
    r.expected_fail.push_back(false);
  }
  r.seconds = seconds_since(t0);
  return r;
}

// --------------------------------------------------------------------------
// 2. Delta decomposition on U(1).
// --------------------------------------------------------------------------
namespace {

double delta_reconstruction_error(const GroupGrid& grid, const DualGrid& dual,
                                  std::span<const BandLimited> fs) {
  // K(theta_k) = Int dX/(2pi) E_theta(X) over the damped dual grid.
  std::vector<Complex> kernel(grid.size(), 0.0);
  for (int k = 0; k < grid.size(); ++k) {
    const double theta = grid.node(k).c[0];
    Complex acc = 0.0;
    for (int j = 0; j < dual.size(); ++j)
      acc += dual.damping(j) * std::exp(kImag * (theta * dual.node(j)[0]));
    kernel[k] = acc * dual.cell_weight();
  }
  double worst = 0.0;
  for (const auto& f : fs) {
    Complex acc = 0.0;
    for (int k = 0; k < grid.size(); ++k)
      acc += grid.weight(k) * kernel[k] * f(grid.node(k).c[0]);
    worst = std::max(worst, std::abs(acc - f(0.0)));
  }
  return worst;
}

}  // namespace

CriterionResult delta_decomposition(std::uint64_t seed) {
  const auto t0 = Clock::now();
  CriterionResult r{2, "delta decomposition (U(1), Lambda=40, 800 dual nodes)", {}, {}, 0.0};
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  auto grid = GroupGrid::build(chart, 801);
  Rng rng(seed + 2);
  std::vector<BandLimited> fs;
  std::vector<double> sup(10, 0.0);
  for (int i = 0; i < 10; ++i) {
    BandLimited f = random_band_limited(5, rng, true);
    // sup-normalize on the grid
    double m = 0;
    for (int k = 0; k < grid->size(); ++k) m = std::max(m, std::abs(f(grid->node(k).c[0])));
    for (auto& c : f.coeff) c /= m;
    fs.push_back(f);
  }

  const DualGrid fejer = DualGrid::build(1, 40.0, 800, DampingSpec{Damping::Fejer, 1.0, 0.5});
  const double err_fejer = delta_reconstruction_error(*grid, fejer, fs);
  // Triangular window bias is exactly sum_n |n| |f_n| / Lambda; with
  // unit-amplitude band-limited inputs that is O(10^-2), so the stated
  // tolerance cannot be met by any input with nontrivial mode content.
  r.checks.push_back(below("delta_fejer_literal", err_fejer, 1e-3,
                           "first-order window bias; expected failure, see README"));
  r.expected_fail.push_back(true);

  const DualGrid flat = DualGrid::build(1, 40.0, 800, DampingSpec{Damping::FlatTop, 1.0, 0.5});
  const double err_flat = delta_reconstruction_error(*grid, flat, fs);
  r.checks.push_back(below("delta_flattop", err_flat, 1e-3,
                           "smooth flat-top window over the same grid"));
  r.expected_fail.push_back(false);

  r.seconds = seconds_since(t0);
  return r;
}

// --------------------------------------------------------------------------
// 3. Unitarity / Plancherel.
// --------------------------------------------------------------------------
CriterionResult unitarity(std::uint64_t seed) {
  const auto t0 = Clock::now();
  CriterionResult r{3, "unitarity", {}, {}, 0.0};
  Rng rng(seed + 3);

  // Plane-wave premises: E_e = 1 and E_{g^{-1}} = conj(E_g).
  {
    double worst = 0.0;
    for (const auto* model : {&LieGroupModel::u1(), &LieGroupModel::su2(), &LieGroupModel::so3()}) {
      const Chart chart(ChartKind::Exponential, *model);
      for (int s = 0; s < 32; ++s) {
        GroupElement g = random_element(*model, rng);
        AlgebraVector x = zero_vector(*model);
        for (int i = 0; i < model->dim(); ++i) x.c[i] = rng.uniform(-3, 3);
        worst = std::max(worst, std::abs(plane_wave(chart, identity(*model), x) - 1.0));
        const auto zg = chart.try_coordinates(g);
        if (!zg) continue;
        worst = std::max(worst, std::abs(plane_wave(chart, inverse(g), x) -
                                         std::conj(plane_wave(chart, g, x))));
      }
    }
    r.checks.push_back(below("plane_wave_premises", worst, 1e-12));
    r.expected_fail.push_back(false);
  }

  // U(1): literal dual-grid Plancherel at 1e-3.
  {
    const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
    auto grid = GroupGrid::build(chart, 401);
    const DualGrid dual =
        DualGrid::build(1, 200.0, 4000, DampingSpec{Damping::Gaussian, 150.0, 0.5});
    double worst_lit = 0.0, worst_exact = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
      GroupFunction phi = sample_on_grid(grid, random_band_limited(5, rng, false));
      GroupFunction psi = sample_on_grid(grid, random_band_limited(5, rng, false));
      // normalize
      for (auto* f : {&phi, &psi}) {
        double nn = 0;
        for (int k = 0; k < grid->size(); ++k) nn += grid->weight(k) * std::norm(f->values[k]);
        for (auto& v : f->values) v /= std::sqrt(nn);
      }
      const DualFunction ft = fourier_transform(phi);
      const DualFunction gt = fourier_transform(psi);
      Complex group_side = 0.0;
      for (int k = 0; k < grid->size(); ++k)
        group_side += grid->weight(k) * std::conj(phi.values[k]) * psi.values[k];
      worst_lit = std::max(worst_lit,
                           std::abs(dual_inner_product_literal(ft, gt, dual) - group_side));
      worst_exact = std::max(worst_exact, std::abs(dual_inner_product(ft, gt) - group_side));
      worst_exact = std::max(
          worst_exact, std::abs(star_pairing(conjugate_dual(ft), gt) - group_side));
    }
    r.checks.push_back(below("unitarity_u1_literal", worst_lit, 1e-3));
    r.expected_fail.push_back(false);
    r.checks.push_back(below("unitarity_u1_exact", worst_exact, 1e-12));
    r.expected_fail.push_back(false);
  }

  // SU(2) at n = 16 per dim: literal path within 5e-2, exact to 1e-12.
  {
    const Chart chart(ChartKind::Trace, LieGroupModel::su2());
    auto grid = GroupGrid::build(chart, 16);
    const DualGrid dual = DualGrid::build(3, 8.0, 32, DampingSpec{Damping::None, 1.0, 0.5});
    double worst_lit = 0.0, worst_exact = 0.0;
    for (int rep = 0; rep < 2; ++rep) {
      AlgebraVector c1 = zero_vector(LieGroupModel::su2());
      AlgebraVector c2 = zero_vector(LieGroupModel::su2());
      for (int i = 0; i < 3; ++i) {
        c1.c[i] = rng.uniform(-0.3, 0.3);
        c2.c[i] = rng.uniform(-0.3, 0.3);
      }
      const GroupFunction phi = chart_bump(grid, c1, 0.55);
      const GroupFunction psi = chart_bump(grid, c2, 0.6);
      const DualFunction ft = fourier_transform(phi);
      const DualFunction gt = fourier_transform(psi);
      Complex group_side = 0.0;
      for (int k = 0; k < grid->size(); ++k)
        group_side += grid->weight(k) * std::conj(phi.values[k]) * psi.values[k];
      worst_lit = std::max(worst_lit,
                           std::abs(dual_inner_product_literal(ft, gt, dual) - group_side));
      worst_exact = std::max(worst_exact, std::abs(dual_inner_product(ft, gt) - group_side));
    }
    r.checks.push_back(below("unitarity_su2_literal", worst_lit, 5e-2, "n=16 per dim, trace chart"));
    r.expected_fail.push_back(false);
    r.checks.push_back(below("unitarity_su2_exact", worst_exact, 1e-12));
    r.expected_fail.push_back(false);
  }

  r.seconds = seconds_since(t0);
  return r;
}

// --------------------------------------------------------------------------
// 4. Star-commutators vs structure constants.
// --------------------------------------------------------------------------
CriterionResult star_commutators(std::uint64_t seed) {
  const auto t0 = Clock::now();
  CriterionResult r{4, "star-commutator vs structure constants", {}, {}, 0.0};
  Rng rng(seed + 4);

  struct Case {
    const char* name;
    Chart chart;
    double tol;
  };
  const std::vector<Case> cases = {
      {"star_comm_su2_exp", Chart(ChartKind::Exponential, LieGroupModel::su2()), 1e-4},
      {"star_comm_su2_trace", Chart(ChartKind::Trace, LieGroupModel::su2()), 1e-4},
      {"star_comm_so3_exp", Chart(ChartKind::Exponential, LieGroupModel::so3()), 1e-4},
      {"star_comm_so3_trace", Chart(ChartKind::Trace, LieGroupModel::so3()), 1e-4},
  };
  for (const auto& c : cases) {
    const auto xs = sample_ball(c.chart.group(), 3.0, 50, rng);
    double worst = 0.0;
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
      worst = std::max(worst, star_commutator_defect(c.chart, i, j, xs));
    r.checks.push_back(below(c.name, worst, c.tol));
    r.expected_fail.push_back(false);
  }

  // Abelian cases are exact to roundoff.
  {
    const Chart u1(ChartKind::Exponential, LieGroupModel::u1());
    const auto xs1 = sample_ball(LieGroupModel::u1(), 3.0, 50, rng);
    double worst = star_commutator_defect(u1, 0, 0, xs1);
    const Chart r3(ChartKind::Exponential, LieGroupModel::rd(3));
    const auto xs3 = sample_ball(LieGroupModel::rd(3), 3.0, 50, rng);
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
      worst = std::max(worst, star_commutator_defect(r3, i, j, xs3));
    r.checks.push_back(below("star_comm_abelian", worst, 1e-8));
    r.expected_fail.push_back(false);
  }

  r.seconds = seconds_since(t0);
  return r;
}

// --------------------------------------------------------------------------
// 5. Haar-density pairing identity.
// --------------------------------------------------------------------------
CriterionResult pairing_identity(std::uint64_t seed) {
  const auto t0 = Clock::now();
  CriterionResult r{5, "omega pairing identity", {}, {}, 0.0};
  Rng rng(seed + 5);

  // Exact two-path agreement on U(1) and SU(2).
  double worst_exact = 0.0;
  {
    const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
    auto grid = GroupGrid::build(chart, 401);
    const DualFunction ft = fourier_transform(sample_on_grid(grid, random_band_limited(5, rng, false)));
    const DualFunction gt = fourier_transform(sample_on_grid(grid, random_band_limited(5, rng, false)));
    worst_exact = std::max(worst_exact, std::abs(pairing_via_omega(ft, gt) - star_pairing(ft, gt)));
  }
  const Chart su2_chart(ChartKind::Trace, LieGroupModel::su2());
  auto su2_grid = GroupGrid::build(su2_chart, 12);
  AlgebraVector c1 = algebra_vector(LieGroupModel::su2(), {0.25, -0.1, 0.2});
  AlgebraVector c2 = algebra_vector(LieGroupModel::su2(), {-0.2, 0.15, 0.1});
  const DualFunction su2_f = fourier_transform(chart_bump(su2_grid, c1, 0.55));
  const DualFunction su2_g = fourier_transform(chart_bump(su2_grid, c2, 0.6));
  worst_exact =
      std::max(worst_exact, std::abs(pairing_via_omega(su2_f, su2_g) - star_pairing(su2_f, su2_g)));
  r.checks.push_back(below("pairing_omega_exact", worst_exact, 1e-8));
  r.expected_fail.push_back(false);

  // Literal dual-grid path on U(1).  Bump inputs: their transforms decay
  // superpolynomially, so the dual cutoff tail stays below the tolerance.
  {
    const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
    auto grid = GroupGrid::build(chart, 401);
    const DualGrid dual =
        DualGrid::build(1, 200.0, 4000, DampingSpec{Damping::Gaussian, 150.0, 0.5});
    const DualFunction ft =
        fourier_transform(chart_bump(grid, algebra_vector(LieGroupModel::u1(), {0.3, 0, 0}), 0.5));
    const DualFunction gt = fourier_transform(
        chart_bump(grid, algebra_vector(LieGroupModel::u1(), {-0.2, 0, 0}), 0.45));
    const double err = std::abs(pairing_via_omega_literal(ft, gt, dual) - star_pairing(ft, gt));
    r.checks.push_back(below("pairing_omega_literal_u1", err, 1e-3));
    r.expected_fail.push_back(false);
  }

  // Negative control: dropping omega^{-1} must change the answer on SU(2).
  {
    const double diff =
        std::abs(pointwise_pairing_no_omega(su2_f, su2_g) - star_pairing(su2_f, su2_g));
    r.checks.push_back(above("pairing_omega_correction_active", diff, 1e-3,
                             "fixed bump pair, trace chart n=12"));
    r.expected_fail.push_back(false);
  }

  r.seconds = seconds_since(t0);
  return r;
}

// --------------------------------------------------------------------------
// 6. Ad-covariance and cyclicity.
// --------------------------------------------------------------------------
CriterionResult ad_covariance_cyclicity(std::uint64_t seed) {
  const auto t0 = Clock::now();
  CriterionResult r{6, "Ad-covariance and cyclicity", {}, {}, 0.0};
  Rng rng(seed + 6);

  // Plane-wave homomorphism at spike level on a node-aligned U(1) grid.
  {
    const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
    auto grid = GroupGrid::build(chart, 257);
    double worst = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
      const int ai = rng.uniform_int(grid->size());
      const int bi = rng.uniform_int(grid->size());
      const DualFunction ea = fourier_transform(group_delta(grid, ai));
      const DualFunction eb = fourier_transform(group_delta(grid, bi));
      const DualFunction prod = star_product(ea, eb);
      // expected spike at element(b) * element(a)
      const GroupElement ba = multiply(grid->element(bi), grid->element(ai));
      const AlgebraVector zba = chart.coordinates(ba);
      double sup = 0.0;
      for (int k = 0; k < grid->size(); ++k) {
        Complex want = 0.0;
        const AlgebraVector zk = grid->node(k);
        if (std::abs(std::remainder(zk.c[0] - zba.c[0], kTwoPi)) < 0.5 * grid->cell_spacing())
          want = 1.0 / grid->weight(k);
        sup = std::max(sup, std::abs(prod.z_density[k] - want));
      }
      worst = std::max(worst, sup * grid->weight(0));  // relative to spike height
    }
    r.checks.push_back(below("plane_wave_homomorphism_u1", worst, 1e-10));
    r.expected_fail.push_back(false);
  }

  // U(1): conjugation is trivial; check the full sandwich pipeline exactly.
  {
    const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
    auto grid = GroupGrid::build(chart, 257);
    const GroupFunction phi = sample_on_grid(grid, random_band_limited(4, rng, false));
    const DualFunction ft = fourier_transform(phi);
    const int hi = rng.uniform_int(grid->size());
    const DualFunction eh = fourier_transform(group_delta(grid, grid->negated_index(hi)));
    const DualFunction ehinv = fourier_transform(group_delta(grid, hi));
    const DualFunction sandwich = star_product(star_product(eh, ft), ehinv);
    double worst = 0.0;
    for (int s = 0; s < 8; ++s) {
      AlgebraVector x = zero_vector(LieGroupModel::u1());
      x.c[0] = rng.uniform(-2, 2);
      worst = std::max(worst, std::abs(evaluate_dual(sandwich, x) - evaluate_dual(ft, x)));
    }
    r.checks.push_back(below("ad_covariance_u1", worst, 1e-6));
    r.expected_fail.push_back(false);

    const DualFunction gt = fourier_transform(sample_on_grid(grid, random_band_limited(4, rng, false)));
    const std::array<DualFunction, 2> two{ft, gt};
    r.checks.push_back(below("cyclicity_u1", cyclic_check(two), 1e-6));
    r.expected_fail.push_back(false);
  }

  // SU(2): interpolation-limited versions.
  {
    const Chart chart(ChartKind::Trace, LieGroupModel::su2());
    auto grid = GroupGrid::build(chart, 28);
    const GroupFunction phi =
        chart_bump(grid, algebra_vector(LieGroupModel::su2(), {0.1, -0.08, 0.05}), 0.9);
    const DualFunction ft = fourier_transform(phi);
    // h: a grid node away from the identity
    int hi = 0;
    double best = 1e9;
    for (int k = 0; k < grid->size(); ++k) {
      const double d = std::abs(grid->node(k).norm() - 0.4);
      if (d < best) {
        best = d;
        hi = k;
      }
    }
    const GroupElement h = grid->element(hi);
    const DualFunction eh = fourier_transform(group_delta(grid, grid->negated_index(hi)));
    const DualFunction ehinv = fourier_transform(group_delta(grid, hi));
    const DualFunction sandwich = star_product(star_product(eh, ft), ehinv);
    const Eigen::Matrix3d rot = h.so3_matrix();
    double worst = 0.0;
    for (int s = 0; s < 8; ++s) {
      AlgebraVector x = zero_vector(LieGroupModel::su2());
      for (int i = 0; i < 3; ++i) x.c[i] = rng.uniform(-1.5, 1.5);
      AlgebraVector adx = zero_vector(LieGroupModel::su2());
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) adx.c[i] += rot(j, i) * x.c[j];  // transpose action
      worst = std::max(worst, std::abs(evaluate_dual(sandwich, x) - evaluate_dual(ft, adx)));
    }
    r.checks.push_back(below("ad_covariance_su2", worst, 1e-2, "interpolation-limited"));
    r.expected_fail.push_back(false);
  }
  {
    const Chart chart(ChartKind::Trace, LieGroupModel::su2());
    auto grid = GroupGrid::build(chart, 12);
    const std::array<DualFunction, 3> three{
        fourier_transform(chart_bump(grid, algebra_vector(LieGroupModel::su2(), {0.2, 0.0, -0.1}), 0.6)),
        fourier_transform(chart_bump(grid, algebra_vector(LieGroupModel::su2(), {-0.15, 0.2, 0.0}), 0.55)),
        fourier_transform(chart_bump(grid, algebra_vector(LieGroupModel::su2(), {0.0, -0.2, 0.15}), 0.65)),
    };
    r.checks.push_back(below("cyclicity_su2", cyclic_check(three), 1e-2, "coarse grid"));
    r.expected_fail.push_back(false);
  }

  r.seconds = seconds_since(t0);
  return r;
}

// --------------------------------------------------------------------------
// 7. R^d reduction.
// --------------------------------------------------------------------------
CriterionResult rd_reduction() {
  const auto t0 = Clock::now();
  CriterionResult r{7, "R^d reduction", {}, {}, 0.0};
  const Chart chart(ChartKind::Exponential, LieGroupModel::rd(1));
  const CorrectedHamiltonian h = free_hamiltonian(chart);

  // Real-time one-step kernel vs the Fresnel closed form.
  {
    PropagatorConfig cfg{chart, 512, 6.0, 0.05, 1, EvolutionScheme::RealTime, h, std::nullopt,
                        -1.0, false};
    const Kernel k = short_time_kernel(cfg);
    double worst = 0.0;
    for (int j = 0; j < k.grid->size(); ++j) {
      const double x = k.grid->node(j).c[0];
      const Complex want =
          std::pow(kTwoPi * cfg.epsilon * kImag, -0.5) *
          std::exp(kImag * (x * x / (2.0 * cfg.epsilon)));
      worst = std::max(worst, std::abs(k.values[j] - want));
    }
    r.checks.push_back(below("rd_fresnel_analytic", worst, 1e-10));
    r.expected_fail.push_back(false);
  }

  // Literal dual-grid quadrature vs the analytic path (same damping).
  {
    PropagatorConfig imag_cfg{chart, 256, 6.0, 0.05, 1, EvolutionScheme::ImaginaryTime, h,
                              std::nullopt, -1.0, false};
    const Kernel analytic = short_time_kernel(imag_cfg);
    const DualGrid dual = DualGrid::build(1, 60.0, 4096, DampingSpec{Damping::None, 1.0, 0.5});
    const Kernel quad = short_time_kernel_quadrature(imag_cfg, dual, DampingSpec{Damping::None, 1.0, 0.5});
    double worst = 0.0;
    for (int j = 0; j < analytic.grid->size(); ++j)
      worst = std::max(worst, std::abs(analytic.values[j] - quad.values[j]));

    PropagatorConfig real_cfg{chart, 256, 6.0, 0.05, 1, EvolutionScheme::RealTime, h,
                              std::nullopt, 20.0 * 0.05, false};  // sigma = 20
    const Kernel analytic_r = short_time_kernel(real_cfg);
    const DualGrid dual_r = DualGrid::build(1, 100.0, 8192, DampingSpec{Damping::None, 1.0, 0.5});
    const Kernel quad_r = short_time_kernel_quadrature(real_cfg, dual_r,
                                                       DampingSpec{Damping::Gaussian, 20.0, 0.5});
    for (int j = 0; j < analytic_r.grid->size(); ++j)
      worst = std::max(worst, std::abs(analytic_r.values[j] - quad_r.values[j]));
    r.checks.push_back(below("rd_two_path", worst, 1e-6,
                             "imaginary undamped and real Gaussian-regulated, matched forms"));
    r.expected_fail.push_back(false);
  }

  // Imaginary-time 64-fold composition vs the Gaussian heat kernel.
  {
    PropagatorConfig cfg{chart, 1024, 6.0, 0.5 / 64.0, 64, EvolutionScheme::ImaginaryTime, h,
                        std::nullopt, -1.0, true};
    const PropagateResult res = propagate(cfg);
    double sup_err = 0.0, sup_val = 0.0;
    for (int j = 0; j < res.kernel.grid->size(); ++j) {
      const double x = res.kernel.grid->node(j).c[0];
      const double want = rd_gaussian_kernel(std::span<const double>(&x, 1), 0.5);
      sup_err = std::max(sup_err, std::abs(res.kernel.values[j].real() - want) +
                                      std::abs(res.kernel.values[j].imag()));
      sup_val = std::max(sup_val, want);
    }
    r.checks.push_back(below("rd_composition_64", sup_err / sup_val, 5e-3, "T=0.5, N=64"));
    r.expected_fail.push_back(false);
  }

  r.seconds = seconds_since(t0);
  return r;
}

// --------------------------------------------------------------------------
// 8. U(1) propagator vs spectral oracle.
// --------------------------------------------------------------------------
CriterionResult u1_propagator_ladder() {
  const auto t0 = Clock::now();
  CriterionResult r{8, "U(1) propagator ladder", {}, {}, 0.0};
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  const CorrectedHamiltonian h = free_hamiltonian(chart);
  const double total_time = 0.5;

  struct Rung {
    int steps;
    int nodes;
  };
  const std::vector<Rung> rungs = {{16, 128}, {32, 256}, {64, 512}};
  std::vector<double> errors;
  for (const Rung& rung : rungs) {
    PropagatorConfig cfg{chart,        rung.nodes, 0.0,  total_time / rung.steps, rung.steps,
                         EvolutionScheme::ImaginaryTime, h, std::nullopt, -1.0, true};
    const PropagateResult res = propagate(cfg);
    const SpectralTruncation trunc{64.0, 1e-10, h.constant_shift()};
    double sup_err = 0.0, sup_val = 0.0;
    for (int j = 0; j < res.kernel.grid->size(); ++j) {
      const double theta = res.kernel.grid->node(j).c[0];
      const double want = u1_heat_kernel(theta, total_time, trunc);
      sup_err = std::max(sup_err, std::abs(res.kernel.values[j].real() - want) +
                                      std::abs(res.kernel.values[j].imag()));
      sup_val = std::max(sup_val, std::abs(want));
    }
    errors.push_back(sup_err / sup_val);
  }

  r.checks.push_back(below("u1_prop_sup_error", errors.back(), 1e-2, "N=64, 512 nodes"));
  r.expected_fail.push_back(false);
  const bool monotone = errors[0] > errors[1] && errors[1] > errors[2];
  r.checks.push_back(CheckResult{"u1_prop_monotone", monotone ? 1.0 : 0.0, 1.0, monotone,
                                 "errors " + format_double(errors[0]) + " > " +
                                     format_double(errors[1]) + " > " + format_double(errors[2])});
  r.expected_fail.push_back(false);
  const double order =
      0.5 * (std::log2(errors[0] / errors[1]) + std::log2(errors[1] / errors[2]));
  r.checks.push_back(
      CheckResult{"u1_prop_order", order, 0.0, order >= 0.7 && order <= 1.3,
                  "empirical order in epsilon, want within [0.7, 1.3]"});
  r.expected_fail.push_back(false);

  r.seconds = seconds_since(t0);
  return r;
}

// --------------------------------------------------------------------------
// 9. SU(2) free particle spectral decay.
// --------------------------------------------------------------------------
CriterionResult su2_spectral() {
  const auto t0 = Clock::now();
  CriterionResult r{9, "SU(2) free-particle spectral decay", {}, {}, 0.0};
  const Chart chart(ChartKind::Trace, LieGroupModel::su2());
  const CorrectedHamiltonian h = free_hamiltonian(chart);
  const double shift = h.constant_shift();
  const double total_time = 0.3;
  const int steps = 48;

  PropagatorConfig cfg{chart,        24,   0.0,  total_time / steps, steps,
                       EvolutionScheme::ImaginaryTime, h, std::nullopt, -1.0, false};
  const PropagateResult res = propagate(cfg);
  const GroupGrid& grid = *res.kernel.grid;
  const double volume = LieGroupModel::su2().volume();

  double worst_rel = 0.0;
  std::string detail;
  for (double j = 0.0; j <= 3.0 + 1e-9; j += 0.5) {
    const double cj = character_coefficient(grid, res.kernel.values, j, 1e-2);
    const double rate = -std::log(cj * volume / (2 * j + 1)) / total_time;
    const double want = 0.5 * j * (j + 1) + shift;
    const double rel = std::abs(rate - want) / std::abs(want);
    worst_rel = std::max(worst_rel, rel);
    detail += "j=" + format_double(j) + ":" + format_double(rate) + "/" + format_double(want) + " ";
  }
  r.checks.push_back(below("su2_mode_decay", worst_rel, 5e-2, detail));
  r.expected_fail.push_back(false);

  // Negative control: dropping the quantum shift rescales the composed kernel
  // by exp(+T shift) (the shift enters each slice as a constant factor);
  // the j = 0 rate must then miss the oracle by more than the tolerance.
  {
    std::vector<Complex> noshift = res.kernel.values;
    const double factor = std::exp(total_time * shift);
    for (auto& v : noshift) v *= factor;
    const double c0 = character_coefficient(grid, noshift, 0.0, 1e-2);
    const double rate0 = -std::log(c0 * volume) / total_time;
    const double want0 = shift;
    const double deviation = std::abs(rate0 - want0) / std::abs(want0);
    r.checks.push_back(above("su2_shift_negative_control", deviation, 5e-2,
                             "same run with the constant shift dropped"));
    r.expected_fail.push_back(false);
  }

  r.seconds = seconds_since(t0);
  return r;
}

// --------------------------------------------------------------------------
// 10. Schroedinger consistency on U(1).
// --------------------------------------------------------------------------
CriterionResult schrodinger_consistency() {
  const auto t0 = Clock::now();
  CriterionResult r{10, "Schroedinger consistency (one-step residual)", {}, {}, 0.0};
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  const CorrectedHamiltonian h = free_hamiltonian(chart);
  auto grid = GroupGrid::build(chart, 513);

  BandLimited psi_modes;
  psi_modes.band = 3;
  psi_modes.coeff = {std::conj(Complex(0.3, -0.2)), std::conj(Complex(0.5, 0.1)),
                     std::conj(Complex(0.7, 0.0)), Complex(1.0, 0.0), Complex(0.7, 0.0),
                     Complex(0.5, 0.1), Complex(0.3, -0.2)};
  const GroupFunction psi0 = sample_on_grid(grid, psi_modes);

  const std::vector<double> eps = {0.02, 0.01, 0.005};
  auto residual_ratios = [&](const std::optional<GroupFunction>& pot) {
    std::vector<double> res;
    for (double e : eps) {
      PropagatorConfig cfg{chart, 513, 0.0, e, 1, EvolutionScheme::RealTime, h, pot, 1.0 / 3.0,
                           false};
      res.push_back(schrodinger_residual(cfg, psi0));
    }
    return std::array<double, 2>{res[0] / res[1], res[1] / res[2]};
  };

  const auto free_ratios = residual_ratios(std::nullopt);
  const bool free_ok = free_ratios[0] >= 1.7 && free_ratios[0] <= 2.3 && free_ratios[1] >= 1.7 &&
                       free_ratios[1] <= 2.3;
  r.checks.push_back(CheckResult{"schrodinger_free_ratios",
                                 std::max(free_ratios[0], free_ratios[1]), 2.3, free_ok,
                                 "ratios " + format_double(free_ratios[0]) + ", " +
                                     format_double(free_ratios[1]) + ", want within [1.7, 2.3]"});
  r.expected_fail.push_back(false);

  GroupFunction vcos{grid, std::vector<Complex>(grid->size())};
  for (int k = 0; k < grid->size(); ++k) vcos.values[k] = std::cos(grid->node(k).c[0]);
  const auto cos_ratios = residual_ratios(vcos);
  const bool cos_ok = cos_ratios[0] >= 1.7 && cos_ratios[0] <= 2.3 && cos_ratios[1] >= 1.7 &&
                      cos_ratios[1] <= 2.3;
  r.checks.push_back(CheckResult{"schrodinger_cos_ratios",
                                 std::max(cos_ratios[0], cos_ratios[1]), 2.3, cos_ok,
                                 "ratios " + format_double(cos_ratios[0]) + ", " +
                                     format_double(cos_ratios[1]) + ", want within [1.7, 2.3]"});
  r.expected_fail.push_back(false);

  // Stationary constant state.
  {
    GroupFunction flat{grid, std::vector<Complex>(grid->size(), 1.0)};
    double worst = 0.0;
    for (double e : eps) {
      PropagatorConfig cfg{chart, 513, 0.0, e, 1, EvolutionScheme::RealTime, h, std::nullopt,
                           1.0 / 3.0, false};
      worst = std::max(worst, schrodinger_residual(cfg, flat));
    }
    r.checks.push_back(below("schrodinger_stationary", worst, 1e-8));
    r.expected_fail.push_back(false);
  }

  r.seconds = seconds_since(t0);
  return r;
}

// --------------------------------------------------------------------------
// 11. Determinism.
// --------------------------------------------------------------------------
CriterionResult determinism(std::uint64_t seed) {
  const auto t0 = Clock::now();
  CriterionResult r{11, "determinism", {}, {}, 0.0};
  auto run_once = [&] {
    std::vector<CriterionResult> sub;
    sub.push_back(chart_conditions(seed));
    sub.push_back(star_commutators(seed));
    return make_validate_report(sub, seed, false).to_json();
  };
  const std::string a = run_once();
  const std::string b = run_once();
  const bool same = a == b;
  r.checks.push_back(
      CheckResult{"determinism_byte_identical", same ? 0.0 : 1.0, 0.0, same,
                  "two validate runs, identical config and seed, single-threaded"});
  r.expected_fail.push_back(false);
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CriterionResult> run_suite(std::uint64_t seed, bool full) {
  std::vector<CriterionResult> out;
  out.push_back(chart_conditions(seed));
  out.push_back(delta_decomposition(seed));
  out.push_back(unitarity(seed));
  out.push_back(star_commutators(seed));
  out.push_back(pairing_identity(seed));
  out.push_back(ad_covariance_cyclicity(seed));
  if (full) {
    out.push_back(rd_reduction());
    out.push_back(u1_propagator_ladder());
    out.push_back(su2_spectral());
    out.push_back(schrodinger_consistency());
  }
  out.push_back(determinism(seed));
  return out;
}

Report make_validate_report(const std::vector<CriterionResult>& results, std::uint64_t seed,
                            bool full) {
  Report rep;
  rep.command = "validate";
  rep.config_echo_json = std::string("{\"seed\": ") + std::to_string(seed) +
                         ", \"full\": " + (full ? "true" : "false") + "}";
  for (const auto& c : results)
    for (std::size_t i = 0; i < c.checks.size(); ++i) {
      CheckResult entry = c.checks[i];
      entry.name = "c" + std::to_string(c.id) + "." + entry.name;
      rep.checks.push_back(entry);
    }
  return rep;
}

}  // namespace ncgf::checks
