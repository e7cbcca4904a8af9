#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncgf/transform.hpp"

using namespace ncgf;

namespace {

const Complex kI(0.0, 1.0);

GroupFunction sample(std::shared_ptr<const GroupGrid> grid,
                     const std::function<Complex(const AlgebraVector&)>& f) {
  GroupFunction out{grid, std::vector<Complex>(grid->size())};
  for (int k = 0; k < grid->size(); ++k) out.values[k] = f(grid->node(k));
  return out;
}

GroupFunction delta_at(std::shared_ptr<const GroupGrid> grid, int node) {
  GroupFunction out{grid, std::vector<Complex>(grid->size(), 0.0)};
  out.values[node] = 1.0 / grid->weight(node);
  return out;
}

int identity_node(const GroupGrid& grid) {
  for (int k = 0; k < grid.size(); ++k)
    if (grid.node(k).norm() < 1e-12) return k;
  REQUIRE(false);
  return -1;
}

GroupFunction su2_bump(std::shared_ptr<const GroupGrid> grid, std::array<double, 3> c,
                       double width) {
  return sample(grid, [&](const AlgebraVector& z) {
    double d2 = 0;
    for (int i = 0; i < 3; ++i) d2 += (z.c[i] - c[i]) * (z.c[i] - c[i]);
    return Complex(std::exp(-0.5 * d2 / (width * width)));
  });
}

}  // namespace

TEST_CASE("plane wave basics") {
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  GroupElement g = identity(LieGroupModel::u1());
  g.a[0] = kPi / 2;
  AlgebraVector x = algebra_vector(LieGroupModel::u1(), {2, 0, 0});
  CHECK(std::abs(plane_wave(chart, g, x) - Complex(-1.0)) <= 1e-12);

  Rng rng(3);
  for (const auto* m : {&LieGroupModel::su2(), &LieGroupModel::so3()}) {
    const Chart c(ChartKind::Exponential, *m);
    for (int rep = 0; rep < 20; ++rep) {
      const GroupElement h = random_element(*m, rng);
      AlgebraVector xx = zero_vector(*m);
      for (int i = 0; i < 3; ++i) xx.c[i] = rng.uniform(-2, 2);
      CHECK(std::abs(plane_wave(c, identity(*m), xx) - Complex(1.0)) <= 1e-15);
      if (auto z = c.try_coordinates(h)) {
        CHECK(std::abs(plane_wave(c, h, xx)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(plane_wave(c, inverse(h), xx) - std::conj(plane_wave(c, h, xx))) <= 1e-12);
      }
    }
  }
}

TEST_CASE("transform of the constant function on U(1)") {
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  auto grid = GroupGrid::build(chart, 801);
  const DualFunction ft =
      fourier_transform(sample(grid, [](const AlgebraVector&) { return Complex(1.0); }));
  // At X = 0 the total Haar weight; away from zero the closed form 2 sin(pi X)/X.
  CHECK(std::abs(evaluate_dual(ft, algebra_vector(LieGroupModel::u1(), {0, 0, 0})) -
                 Complex(kTwoPi)) <= 1e-12);
  CHECK(std::abs(evaluate_dual(ft, algebra_vector(LieGroupModel::u1(), {1, 0, 0}))) <= 1e-3);
  const double x = 0.6180339887;
  CHECK(std::abs(evaluate_dual(ft, algebra_vector(LieGroupModel::u1(), {x, 0, 0})) -
                 Complex(2 * std::sin(kPi * x) / x)) <= 1e-3);
}

TEST_CASE("transform linearity and spike transform") {
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  auto grid = GroupGrid::build(chart, 257);
  const GroupFunction phi = sample(grid, [](const AlgebraVector& z) {
    return Complex(std::cos(z.c[0]), std::sin(3 * z.c[0]));
  });
  const GroupFunction psi = sample(grid, [](const AlgebraVector& z) {
    return Complex(std::sin(2 * z.c[0]), 0.3);
  });
  const Complex a(0.7, -0.2), b(1.3, 0.4);
  GroupFunction lin{grid, std::vector<Complex>(grid->size())};
  for (int k = 0; k < grid->size(); ++k)
    lin.values[k] = a * phi.values[k] + b * psi.values[k];
  const DualFunction ft = fourier_transform(lin);
  for (int k = 0; k < grid->size(); ++k)
    CHECK(std::abs(ft.z_density[k] - (a * fourier_transform(phi).z_density[k] +
                                      b * fourier_transform(psi).z_density[k])) == 0.0);

  // weight-normalized spike at the identity evaluates to 1 at every X
  const DualFunction spike = fourier_transform(delta_at(grid, identity_node(*grid)));
  for (double x : {-20.0, -3.2, 0.0, 1.1, 17.0})
    CHECK(std::abs(evaluate_dual(spike, algebra_vector(LieGroupModel::u1(), {x, 0, 0})) -
                   Complex(1.0)) <= 1e-12);
}

TEST_CASE("odd density evaluates to zero at X = 0") {
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  auto grid = GroupGrid::build(chart, 200);
  const DualFunction ft =
      fourier_transform(sample(grid, [](const AlgebraVector& z) { return Complex(z.c[0]); }));
  CHECK(std::abs(evaluate_dual(ft, zero_vector(LieGroupModel::u1()))) <= 1e-12);
}

TEST_CASE("inverse transform: exact path is the identity, literal path reconstructs") {
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  auto grid = GroupGrid::build(chart, 801);
  const GroupFunction phi = sample(grid, [](const AlgebraVector& z) {
    return Complex(1.0 + 0.5 * std::cos(z.c[0]) + 0.25 * std::sin(3 * z.c[0]),
                   0.3 * std::cos(2 * z.c[0]));
  });
  const DualFunction ft = fourier_transform(phi);

  const GroupFunction exact = inverse_transform_exact(ft);
  for (int k = 0; k < grid->size(); ++k) CHECK(exact.values[k] == phi.values[k]);

  // Literal dual-grid inversion with a flat-top window.
  const DualGrid dual = DualGrid::build(1, 40.0, 800, DampingSpec{Damping::FlatTop, 1.0, 0.5});
  const GroupFunction lit = inverse_transform(ft, dual);
  double sup = 0;
  for (int k = 0; k < grid->size(); ++k) sup = std::max(sup, std::abs(lit.values[k] - phi.values[k]));
  CHECK(sup <= 1e-3);

  // Fejer window: the error must equal the first-order triangular-window
  // bias sum_n (|n|/Lambda) c_n e^{in theta}, verified pointwise.
  const DualGrid fejer = DualGrid::build(1, 40.0, 800, DampingSpec{Damping::Fejer, 1.0, 0.5});
  const GroupFunction fj = inverse_transform(ft, fejer);
  const Complex c1(0.25, 0.0), c2(0.0, 0.15), c3(0.0, -0.125);
  double sup_dev = 0, sup_bias = 0;
  for (int k = 0; k < grid->size(); ++k) {
    const double t = grid->node(k).c[0];
    Complex bias = 0.0;
    bias += (1.0 / 40) * (c1 * std::exp(kI * t) + c1 * std::exp(-kI * t));
    bias += (2.0 / 40) * (c2 * std::exp(2.0 * kI * t) + c2 * std::exp(-2.0 * kI * t));
    bias += (3.0 / 40) * (c3 * std::exp(3.0 * kI * t) - c3 * std::exp(-3.0 * kI * t));
    sup_bias = std::max(sup_bias, std::abs(bias));
    sup_dev = std::max(sup_dev, std::abs((fj.values[k] - phi.values[k]) + bias));
  }
  // The remainder is the discrete-window transfer wiggle, well below the
  // first-order bias itself.
  CHECK(sup_dev <= 0.25 * sup_bias);
}

TEST_CASE("star product: unit, spike homomorphism, associativity") {
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  auto grid = GroupGrid::build(chart, 257);
  Rng rng(5);

  const DualFunction unit = fourier_transform(delta_at(grid, identity_node(*grid)));
  const DualFunction phi = fourier_transform(sample(grid, [](const AlgebraVector& z) {
    return Complex(std::cos(z.c[0]) + 0.2, std::sin(2 * z.c[0]));
  }));
  const DualFunction left = star_product(unit, phi);
  const DualFunction right = star_product(phi, unit);
  for (int k = 0; k < grid->size(); ++k) {
    CHECK(std::abs(left.z_density[k] - phi.z_density[k]) <= 1e-10);
    CHECK(std::abs(right.z_density[k] - phi.z_density[k]) <= 1e-10);
  }

  // spikes compose to the spike at the product point
  for (int rep = 0; rep < 5; ++rep) {
    const int ai = rng.uniform_int(grid->size());
    const int bi = rng.uniform_int(grid->size());
    const DualFunction ea = fourier_transform(delta_at(grid, ai));
    const DualFunction eb = fourier_transform(delta_at(grid, bi));
    const DualFunction prod = star_product(ea, eb);
    const GroupElement ba = multiply(grid->element(bi), grid->element(ai));
    int target = -1;
    for (int k = 0; k < grid->size(); ++k)
      if (approx_equal(grid->element(k), ba, 1e-9)) target = k;
    REQUIRE(target >= 0);
    for (int k = 0; k < grid->size(); ++k) {
      const Complex want = k == target ? Complex(1.0 / grid->weight(k)) : Complex(0.0);
      CHECK(std::abs(prod.z_density[k] - want) * grid->weight(k) <= 1e-10);
    }
  }

  // associativity on random band-limited functions
  auto randf = [&](int seed_shift) {
    Rng r2(100 + seed_shift);
    return fourier_transform(sample(grid, [&](const AlgebraVector& z) {
      Complex acc = 0;
      for (int n = 0; n <= 4; ++n)
        acc += Complex(r2.uniform(-1, 1), r2.uniform(-1, 1)) *
               std::exp(kI * (static_cast<double>(n) * z.c[0]));
      return acc;
    }));
  };
  const DualFunction f1 = randf(1), f2 = randf(2), f3 = randf(3);
  const DualFunction lhs = star_product(star_product(f1, f2), f3);
  const DualFunction rhs = star_product(f1, star_product(f2, f3));
  double sup = 0;
  for (int k = 0; k < grid->size(); ++k)
    sup = std::max(sup, std::abs(lhs.z_density[k] - rhs.z_density[k]));
  CHECK(sup <= 1e-8);
}

TEST_CASE("star product is noncommutative on SU(2)") {
  const Chart chart(ChartKind::Trace, LieGroupModel::su2());
  auto grid = GroupGrid::build(chart, 12);
  const DualFunction a = fourier_transform(su2_bump(grid, {0.4, 0.0, -0.2}, 0.5));
  const DualFunction b = fourier_transform(su2_bump(grid, {-0.1, 0.35, 0.2}, 0.45));
  const DualFunction ab = star_product(a, b);
  const DualFunction ba = star_product(b, a);
  double diff = 0;
  for (int k = 0; k < grid->size(); ++k)
    diff = std::max(diff, std::abs(ab.z_density[k] - ba.z_density[k]));
  CHECK(diff > 1e-3);
}

TEST_CASE("star delta") {
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  auto grid = GroupGrid::build(chart, 801);
  CHECK(std::abs(star_delta(chart, *grid, zero_vector(LieGroupModel::u1())) - Complex(kTwoPi)) <=
        1e-12);
  const double x = 1.7320508;
  CHECK(std::abs(star_delta(chart, *grid, algebra_vector(LieGroupModel::u1(), {x, 0, 0})) -
                 Complex(2 * std::sin(kPi * x) / x)) <= 1e-3);

  const Chart rchart(ChartKind::Exponential, LieGroupModel::rd(1));
  auto rgrid = GroupGrid::build(rchart, 32, 4.0);
  CHECK_THROWS_AS((void)star_delta(rchart, *rgrid, zero_vector(LieGroupModel::rd(1))),
                  NotRegularError);

  // reproducing property: Int dX/(2pi) delta_star * phi_tilde = phi_tilde(0)
  const GroupFunction phi = sample(grid, [](const AlgebraVector& z) {
    return Complex(1.0 + 0.4 * std::cos(z.c[0]) - 0.2 * std::sin(2 * z.c[0]));
  });
  const DualFunction ft = fourier_transform(phi);
  std::vector<Complex> delta_density(grid->size(), 1.0);  // coordinate density of delta_star
  const DualFunction ds{grid, delta_density};
  const DualGrid dual = DualGrid::build(1, 40.0, 800, DampingSpec{Damping::FlatTop, 1.0, 0.5});
  const Complex got = star_pairing_literal(ds, ft, dual);
  CHECK(std::abs(got - evaluate_dual(ft, zero_vector(LieGroupModel::u1()))) <= 1e-3);
}

TEST_CASE("inner products: positivity, unitarity, literal cross-check") {
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  auto grid = GroupGrid::build(chart, 401);
  const GroupFunction phi = sample(grid, [](const AlgebraVector& z) {
    return Complex(std::cos(z.c[0]), 0.5 * std::sin(2 * z.c[0]));
  });
  const GroupFunction psi = sample(grid, [](const AlgebraVector& z) {
    return Complex(0.3 + std::sin(z.c[0]), -0.2 * std::cos(3 * z.c[0]));
  });
  const DualFunction ft = fourier_transform(phi), gt = fourier_transform(psi);

  const Complex norm2 = dual_inner_product(ft, ft);
  CHECK(norm2.real() > 0);
  CHECK(std::abs(norm2.imag()) <= 1e-14);
  DualFunction zero{grid, std::vector<Complex>(grid->size(), 0.0)};
  CHECK(std::abs(dual_inner_product(zero, zero)) == 0.0);

  Complex group_side = 0;
  for (int k = 0; k < grid->size(); ++k)
    group_side += grid->weight(k) * std::conj(phi.values[k]) * psi.values[k];
  CHECK(std::abs(dual_inner_product(ft, gt) - group_side) <= 1e-12);

  const DualGrid dual = DualGrid::build(1, 200.0, 4000, DampingSpec{Damping::Gaussian, 150.0, 0.5});
  CHECK(std::abs(dual_inner_product_literal(ft, gt, dual) - group_side) <= 1e-3);

  CHECK_THROWS_AS((void)dual_inner_product(ft, DualFunction{GroupGrid::build(chart, 11),
                                                            std::vector<Complex>(11, 0.0)}),
                  GridMismatchError);
}

TEST_CASE("star monomials") {
  Rng rng(7);
  // first order: X_i within 1e-6 at the default step (truncation is
  // (step^2/6)|X_i|^3); larger arguments go through Richardson
  for (const auto* m : {&LieGroupModel::u1(), &LieGroupModel::su2()}) {
    const Chart chart(ChartKind::Exponential, *m);
    for (int rep = 0; rep < 10; ++rep) {
      AlgebraVector x = zero_vector(*m);
      for (int i = 0; i < m->dim(); ++i) x.c[i] = rng.uniform(-1.5, 1.5);
      for (int i = 0; i < m->dim(); ++i) {
        const std::array<int, 1> idx{i};
        CHECK(std::abs(star_monomial(chart, idx, x) - Complex(x.c[i])) <= 1e-6);
        x.c[i] *= 2.0;
        CHECK(std::abs(star_monomial_richardson(chart, idx, x) - Complex(x.c[i])) <= 1e-8);
        x.c[i] *= 0.5;
      }
    }
  }

  // U(1): X star X = X^2 (Richardson-extrapolated)
  const Chart u1(ChartKind::Exponential, LieGroupModel::u1());
  for (double xv : {0.5, 1.5, 2.5}) {
    const AlgebraVector x = algebra_vector(LieGroupModel::u1(), {xv, 0, 0});
    const std::array<int, 2> idx{0, 0};
    CHECK(std::abs(star_monomial_richardson(u1, idx, x) - Complex(xv * xv)) <= 1e-6);
  }

  // SU(2): [X_1, X_2]_star = -i X_3
  const Chart su2(ChartKind::Exponential, LieGroupModel::su2());
  const AlgebraVector x = algebra_vector(LieGroupModel::su2(), {0.8, -1.1, 1.9});
  const std::array<int, 2> i12{0, 1}, i21{1, 0};
  const Complex comm =
      star_monomial_richardson(su2, i12, x) - star_monomial_richardson(su2, i21, x);
  CHECK(std::abs(comm - (-kI * x.c[2])) <= 1e-4);

  // order 4 on U(1): X^4
  const std::array<int, 4> i4{0, 0, 0, 0};
  const AlgebraVector x2 = algebra_vector(LieGroupModel::u1(), {2.0, 0, 0});
  CHECK(std::abs(star_monomial_richardson(u1, i4, x2, 1e-2) - Complex(16.0)) <= 1e-2);

  const std::array<int, 5> i5{0, 0, 0, 0, 0};
  CHECK_THROWS_AS((void)star_monomial(u1, i5, x2), std::invalid_argument);
}

TEST_CASE("star commutator defect across charts") {
  Rng rng(11);
  const auto xs_su2 = [&] {
    std::vector<AlgebraVector> v;
    while (v.size() < 25) {
      AlgebraVector x = zero_vector(LieGroupModel::su2());
      for (int i = 0; i < 3; ++i) x.c[i] = rng.uniform(-3, 3);
      if (x.norm() <= 3) v.push_back(x);
    }
    return v;
  }();
  for (const ChartKind kind : {ChartKind::Exponential, ChartKind::Trace}) {
    const Chart chart(kind, LieGroupModel::su2());
    CHECK(star_commutator_defect(chart, 0, 1, xs_su2) <= 1e-4);
  }
  std::vector<AlgebraVector> xs_so3;
  for (const auto& x : xs_su2) xs_so3.push_back(algebra_vector(LieGroupModel::so3(), x.c));
  CHECK(star_commutator_defect(Chart(ChartKind::Trace, LieGroupModel::so3()), 1, 2, xs_so3) <=
        1e-4);

  std::vector<AlgebraVector> xs_u1;
  for (double v : {-2.0, 0.3, 1.7}) xs_u1.push_back(algebra_vector(LieGroupModel::u1(), {v, 0, 0}));
  CHECK(star_commutator_defect(Chart(ChartKind::Exponential, LieGroupModel::u1()), 0, 0, xs_u1) <=
        1e-8);
}

TEST_CASE("pairing via omega equals the star pairing; omega-less differs") {
  const Chart chart(ChartKind::Trace, LieGroupModel::su2());
  auto grid = GroupGrid::build(chart, 12);
  const DualFunction a = fourier_transform(su2_bump(grid, {0.25, -0.1, 0.2}, 0.55));
  const DualFunction b = fourier_transform(su2_bump(grid, {-0.2, 0.15, 0.1}, 0.6));
  CHECK(std::abs(pairing_via_omega(a, b) - star_pairing(a, b)) <= 1e-8);
  CHECK(std::abs(pointwise_pairing_no_omega(a, b) - star_pairing(a, b)) > 1e-3);

  // U(1): omega is 1, all three coincide.
  const Chart u1(ChartKind::Exponential, LieGroupModel::u1());
  auto ugrid = GroupGrid::build(u1, 201);
  const DualFunction f = fourier_transform(sample(ugrid, [](const AlgebraVector& z) {
    return Complex(std::cos(z.c[0]), std::sin(z.c[0]));
  }));
  const DualFunction g = fourier_transform(sample(ugrid, [](const AlgebraVector& z) {
    return Complex(0.4, std::cos(2 * z.c[0]));
  }));
  CHECK(std::abs(pairing_via_omega(f, g) - pointwise_pairing_no_omega(f, g)) <= 1e-12);
  CHECK(std::abs(pairing_via_omega(f, g) - star_pairing(f, g)) <= 1e-10);
}

TEST_CASE("cyclicity") {
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  auto grid = GroupGrid::build(chart, 201);
  const DualFunction f = fourier_transform(sample(grid, [](const AlgebraVector& z) {
    return Complex(std::cos(z.c[0]) + 0.3, 0.2 * std::sin(2 * z.c[0]));
  }));
  const DualFunction g = fourier_transform(sample(grid, [](const AlgebraVector& z) {
    return Complex(std::sin(z.c[0]), 0.7);
  }));
  const std::array<DualFunction, 2> two{f, g};
  CHECK(cyclic_check(two) <= 1e-8);
  const std::array<DualFunction, 1> one{f};
  CHECK(cyclic_check(one) == 0.0);

  const Chart su2(ChartKind::Trace, LieGroupModel::su2());
  auto sgrid = GroupGrid::build(su2, 10);
  const std::array<DualFunction, 3> three{
      fourier_transform(su2_bump(sgrid, {0.2, 0.0, -0.1}, 0.6)),
      fourier_transform(su2_bump(sgrid, {-0.15, 0.2, 0.0}, 0.55)),
      fourier_transform(su2_bump(sgrid, {0.0, -0.2, 0.15}, 0.65))};
  CHECK(cyclic_check(three) <= 1e-2);
}

TEST_CASE("Ad-covariance of the dual representation") {
  // U(1): conjugation is trivial.
  const Chart u1(ChartKind::Exponential, LieGroupModel::u1());
  auto ugrid = GroupGrid::build(u1, 257);
  const DualFunction f = fourier_transform(sample(ugrid, [](const AlgebraVector& z) {
    return Complex(std::cos(z.c[0]), 0.4 * std::sin(z.c[0]));
  }));
  const int hi = 31;
  const DualFunction eh = fourier_transform(delta_at(ugrid, ugrid->negated_index(hi)));
  const DualFunction ehinv = fourier_transform(delta_at(ugrid, hi));
  const DualFunction sandwich = star_product(star_product(eh, f), ehinv);
  for (double xv : {-1.5, 0.3, 2.0}) {
    const AlgebraVector x = algebra_vector(LieGroupModel::u1(), {xv, 0, 0});
    CHECK(std::abs(evaluate_dual(sandwich, x) - evaluate_dual(f, x)) <= 1e-6);
  }
}

TEST_CASE("conjugate dual matches the conjugated group function") {
  const Chart chart(ChartKind::Exponential, LieGroupModel::u1());
  auto grid = GroupGrid::build(chart, 101);
  const GroupFunction phi = sample(grid, [](const AlgebraVector& z) {
    return Complex(std::cos(z.c[0]), std::sin(2 * z.c[0]) + 0.1);
  });
  const DualFunction ct = conjugate_dual(fourier_transform(phi));
  // density of conj(phi) at Z is conj(phi_hat(-Z))
  for (int k = 0; k < grid->size(); ++k) {
    const int nk = grid->negated_index(k);
    CHECK(ct.z_density[k] == std::conj(phi.values[nk]));
  }
}
