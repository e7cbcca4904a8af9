#include "ncgf/grid.hpp"

#include <algorithm>
#include <cmath>

#include "ncgf/threading.hpp"

namespace ncgf {

namespace {

double smooth_step01(double u) {
  // C-infinity ramp from 0 at u<=0 to 1 at u>=1.
  auto phi = [](double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; };
  const double a = phi(u), b = phi(1.0 - u);
  return a / (a + b);
}

}  // namespace

std::shared_ptr<const GroupGrid> GroupGrid::build(const Chart& chart, int n_per_dim,
                                                  double box_radius) {
  if (n_per_dim < 2) throw std::invalid_argument("build_group_grid: n_per_dim must be >= 2");
  const LieGroupModel& model = chart.group();
  auto grid = std::shared_ptr<GroupGrid>(new GroupGrid(chart));
  grid->dim_ = model.dim();
  grid->n_ = n_per_dim;

  double radius = chart.range_radius();
  if (model.kind() == GroupKind::Rd) {
    if (box_radius <= 0)
      throw std::invalid_argument("build_group_grid: R^d requires a box radius");
    radius = box_radius;
  } else if (box_radius > 0 && box_radius < radius) {
    radius = box_radius;  // optional restriction to a sub-box
  }
  grid->box_radius_ = radius;
  grid->h_ = 2.0 * radius / n_per_dim;

  const int d = grid->dim_;
  const int ny = d >= 2 ? n_per_dim : 1;
  const int nz = d >= 3 ? n_per_dim : 1;
  grid->lattice_.assign(static_cast<std::size_t>(n_per_dim) * ny * nz, -1);

  const bool ball_mask = model.kind() == GroupKind::SU2 || model.kind() == GroupKind::SO3;
  const double chart_radius = chart.range_radius();
  const double cell = std::pow(grid->h_, d);

  for (int iz = 0; iz < nz; ++iz) {
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < n_per_dim; ++ix) {
        AlgebraVector z = zero_vector(model);
        z.c[0] = -radius + (ix + 0.5) * grid->h_;
        if (d >= 2) z.c[1] = -radius + (iy + 0.5) * grid->h_;
        if (d >= 3) z.c[2] = -radius + (iz + 0.5) * grid->h_;
        if (ball_mask && z.norm() >= chart_radius) continue;
        const int idx = static_cast<int>(grid->weights_.size());
        grid->lattice_[(static_cast<std::size_t>(iz) * ny + iy) * n_per_dim + ix] = idx;
        for (int c = 0; c < d; ++c) grid->coords_.push_back(z.c[c]);
        grid->weights_.push_back(chart.haar_density(z) * cell);
        grid->elements_.push_back(chart.point(z));
      }
    }
  }

  // Midpoint grids are symmetric: node (ix,..) negates to (n-1-ix,..).
  grid->neg_index_.resize(grid->weights_.size());
  for (int iz = 0; iz < nz; ++iz)
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < n_per_dim; ++ix) {
        const int k = grid->lattice_[(static_cast<std::size_t>(iz) * ny + iy) * n_per_dim + ix];
        if (k < 0) continue;
        const int mz = d >= 3 ? n_per_dim - 1 - iz : 0;
        const int my = d >= 2 ? n_per_dim - 1 - iy : 0;
        const int mirror =
            grid->lattice_[(static_cast<std::size_t>(mz) * ny + my) * n_per_dim +
                           (n_per_dim - 1 - ix)];
        grid->neg_index_[k] = mirror;
      }
  return grid;
}

double GroupGrid::cell_volume() const { return std::pow(h_, dim_); }

AlgebraVector GroupGrid::node(int k) const {
  AlgebraVector z = zero_vector(chart_.group());
  for (int c = 0; c < dim_; ++c) z.c[c] = coords_[static_cast<std::size_t>(k) * dim_ + c];
  return z;
}

double GroupGrid::total_weight() const {
  double s = 0;
  for (double w : weights_) s += w;
  return s;
}

int GroupGrid::lattice_node(int ix, int iy, int iz) const {
  const int ny = dim_ >= 2 ? n_ : 1;
  if (ix < 0 || ix >= n_ || iy < 0 || iy >= ny) return -1;
  if (dim_ >= 3 && (iz < 0 || iz >= n_)) return -1;
  return lattice_[(static_cast<std::size_t>(iz) * ny + iy) * n_ + ix];
}

bool GroupGrid::aligned() const {
  return chart_.group().kind() == GroupKind::U1 && (n_ % 2 == 1);
}

Complex GroupGrid::interpolate(std::span<const Complex> samples, const AlgebraVector& z) const {
  const bool periodic = chart_.group().kind() == GroupKind::U1;
  double u[3];
  int base[3] = {0, 0, 0};
  double frac[3] = {0, 0, 0};
  for (int c = 0; c < dim_; ++c) {
    double x = z.c[c];
    if (periodic) x = std::remainder(x, kTwoPi);
    u[c] = (x + box_radius_) / h_ - 0.5;  // node index coordinate
    double fl = std::floor(u[c]);
    base[c] = static_cast<int>(fl);
    frac[c] = u[c] - fl;
  }

  Complex acc = 0.0;
  for (int corner = 0; corner < (1 << dim_); ++corner) {
    double wgt = 1.0;
    int idx[3] = {0, 0, 0};
    for (int c = 0; c < dim_; ++c) {
      const int bit = (corner >> c) & 1;
      wgt *= bit ? frac[c] : 1.0 - frac[c];
      idx[c] = base[c] + bit;
      if (periodic) idx[c] = ((idx[c] % n_) + n_) % n_;
    }
    if (wgt == 0.0) continue;
    const int k = lattice_node(idx[0], dim_ >= 2 ? idx[1] : 0, dim_ >= 3 ? idx[2] : 0);
    if (k >= 0) acc += wgt * samples[k];
  }
  return acc;
}

Complex GroupGrid::interpolate_at(std::span<const Complex> samples, const GroupElement& g) const {
  const auto z = chart_.try_coordinates(g);
  if (!z) return 0.0;
  return interpolate(samples, *z);
}

Complex integrate_group(const GroupGrid& grid, std::span<const Complex> f) {
  if (static_cast<int>(f.size()) != grid.size())
    throw GridMismatchError("integrate_group: sample count != node count");
  Complex acc = 0.0;
  for (int k = 0; k < grid.size(); ++k) acc += grid.weight(k) * f[k];
  return acc;
}

Complex integrate_group(const GroupGrid& grid,
                        const std::function<Complex(const GroupElement&)>& f) {
  Complex acc = 0.0;
  for (int k = 0; k < grid.size(); ++k) acc += grid.weight(k) * f(grid.element(k));
  return acc;
}

namespace {

template <typename Lookup>
std::vector<Complex> convolve_impl(const GroupGrid& grid, std::span<const Complex> a,
                                   const Lookup& b_at) {
  if (static_cast<int>(a.size()) != grid.size())
    throw GridMismatchError("group_convolve: sample count != node count");
  const int n = grid.size();
  std::vector<GroupElement> inv_h(n);
  for (int k = 0; k < n; ++k) inv_h[k] = inverse(grid.element(k));
  std::vector<Complex> out(n);
  parallel_for(n, [&](std::int64_t j) {
    const GroupElement gj = grid.element(static_cast<int>(j));
    Complex acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const Complex ak = a[k];
      if (ak == 0.0) continue;
      acc += grid.weight(k) * ak * b_at(multiply(inv_h[k], gj));
    }
    out[j] = acc;
  });
  return out;
}

}  // namespace

std::vector<Complex> group_convolve(const GroupGrid& grid, std::span<const Complex> a,
                                    std::span<const Complex> b) {
  if (static_cast<int>(b.size()) != grid.size())
    throw GridMismatchError("group_convolve: sample count != node count");
  return convolve_impl(grid, a,
                       [&](const GroupElement& g) { return grid.interpolate_at(b, g); });
}

std::vector<Complex> group_convolve(const GroupGrid& grid, std::span<const Complex> a,
                                    const std::function<Complex(const GroupElement&)>& b) {
  return convolve_impl(grid, a, b);
}

Complex convolve_at(const GroupGrid& grid, std::span<const Complex> a, std::span<const Complex> b,
                    const GroupElement& g) {
  if (static_cast<int>(a.size()) != grid.size() || static_cast<int>(b.size()) != grid.size())
    throw GridMismatchError("convolve_at: sample count != node count");
  Complex acc = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    if (a[k] == 0.0) continue;
    acc += grid.weight(k) * a[k] * grid.interpolate_at(b, multiply(inverse(grid.element(k)), g));
  }
  return acc;
}

double damping_multiplier(const DampingSpec& spec, double lambda, double x_norm) {
  switch (spec.kind) {
    case Damping::None:
      return 1.0;
    case Damping::Gaussian:
      return std::exp(-0.5 * x_norm * x_norm / (spec.sigma * spec.sigma));
    case Damping::Fejer:
      return std::max(0.0, 1.0 - x_norm / lambda);
    case Damping::FlatTop: {
      const double a = spec.flat_fraction * lambda;
      if (x_norm <= a) return 1.0;
      if (x_norm >= lambda) return 0.0;
      return smooth_step01(1.0 - (x_norm - a) / (lambda - a));
    }
  }
  return 1.0;
}

DualGrid DualGrid::build(int dim, double lambda, int n_per_dim, DampingSpec damping) {
  if (lambda <= 0 || n_per_dim < 2) throw std::invalid_argument("build_dual_grid: bad parameters");
  DualGrid g;
  g.dim_ = dim;
  g.lambda_ = lambda;
  g.spec_ = damping;
  g.h_ = 2.0 * lambda / n_per_dim;
  g.cell_weight_ = std::pow(g.h_ / kTwoPi, dim);
  const int ny = dim >= 2 ? n_per_dim : 1;
  const int nz = dim >= 3 ? n_per_dim : 1;
  for (int iz = 0; iz < nz; ++iz)
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < n_per_dim; ++ix) {
        std::array<double, 3> x{-lambda + (ix + 0.5) * g.h_, 0, 0};
        if (dim >= 2) x[1] = -lambda + (iy + 0.5) * g.h_;
        if (dim >= 3) x[2] = -lambda + (iz + 0.5) * g.h_;
        for (int c = 0; c < dim; ++c) g.coords_.push_back(x[c]);
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        g.damping_.push_back(damping_multiplier(damping, lambda, r));
      }
  return g;
}

std::array<double, 3> DualGrid::node(int k) const {
  std::array<double, 3> x{0, 0, 0};
  for (int c = 0; c < dim_; ++c) x[c] = coords_[static_cast<std::size_t>(k) * dim_ + c];
  return x;
}

Complex integrate_dual(const DualGrid& grid, std::span<const Complex> f) {
  if (static_cast<int>(f.size()) != grid.size())
    throw GridMismatchError("integrate_dual: sample count != node count");
  Complex acc = 0.0;
  for (int k = 0; k < grid.size(); ++k) acc += grid.damping(k) * f[k];
  return grid.cell_weight() * acc;
}

Complex integrate_dual(const DualGrid& grid,
                       const std::function<Complex(const std::array<double, 3>&)>& f) {
  const Complex acc = parallel_sum(
      grid.size(), [&](std::int64_t k) { return grid.damping(static_cast<int>(k)) * f(grid.node(static_cast<int>(k))); });
  return grid.cell_weight() * acc;
}

}  // namespace ncgf
