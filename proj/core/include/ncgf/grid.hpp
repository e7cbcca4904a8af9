#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ncgf/chart.hpp"

namespace ncgf {

/// Midpoint tensor grid over a chart range with Haar weights
/// w_k = omega(Z_k) * cell volume.  Ball ranges (SU(2)/SO(3)) keep the tensor
/// nodes strictly inside the ball; U(1) uses the periodic interval; R^d needs
/// an explicit box radius.
class GroupGrid {
 public:
  static std::shared_ptr<const GroupGrid> build(const Chart& chart, int n_per_dim,
                                                double box_radius = 0.0);

  const Chart& chart() const { return chart_; }
  int dim() const { return dim_; }
  int size() const { return static_cast<int>(weights_.size()); }
  int n_per_dim() const { return n_; }
  double cell_spacing() const { return h_; }
  double cell_volume() const;
  double box_radius() const { return box_radius_; }

  AlgebraVector node(int k) const;
  GroupElement element(int k) const { return elements_[k]; }
  double weight(int k) const { return weights_[k]; }
  double total_weight() const;

  // Index of -Z_k (midpoint grids are symmetric about the origin).
  int negated_index(int k) const { return neg_index_[k]; }

  // Multilinear interpolation of samples at chart coordinates Z; periodic
  // wrap on U(1), zero outside the range/box otherwise.
  Complex interpolate(std::span<const Complex> samples, const AlgebraVector& z) const;

  // Interpolation at a group point; zero when g falls outside the chart
  // domain (cut locus, restricted patch).
  Complex interpolate_at(std::span<const Complex> samples, const GroupElement& g) const;

  // True when group products of nodes land exactly on nodes (U(1), odd n).
  bool aligned() const;

 private:
  explicit GroupGrid(const Chart& chart) : chart_(chart) {}

  int lattice_node(int ix, int iy, int iz) const;

  Chart chart_;
  int dim_ = 1;
  int n_ = 0;
  double h_ = 0;
  double box_radius_ = 0;       // half-width of the tensor box
  std::vector<double> coords_;  // flat, dim * size
  std::vector<double> weights_;
  std::vector<GroupElement> elements_;
  std::vector<int> lattice_;    // n^dim lattice -> node index or -1
  std::vector<int> neg_index_;
};

Complex integrate_group(const GroupGrid& grid, std::span<const Complex> f);
Complex integrate_group(const GroupGrid& grid,
                        const std::function<Complex(const GroupElement&)>& f);

/// c(g_j) = sum_k w_k a(h_k) b(h_k^{-1} g_j); the second factor is looked up
/// by chart-space multilinear interpolation (exact on node-aligned U(1)
/// grids) or evaluated directly when given as a callable.
std::vector<Complex> group_convolve(const GroupGrid& grid, std::span<const Complex> a,
                                    std::span<const Complex> b);
std::vector<Complex> group_convolve(const GroupGrid& grid, std::span<const Complex> a,
                                    const std::function<Complex(const GroupElement&)>& b);

/// Single-point evaluation of the convolution at an arbitrary group point.
Complex convolve_at(const GroupGrid& grid, std::span<const Complex> a,
                    std::span<const Complex> b, const GroupElement& g);

enum class Damping { None, Gaussian, Fejer, FlatTop };

struct DampingSpec {
  Damping kind = Damping::None;
  double sigma = 1.0;          // Gaussian width
  double flat_fraction = 0.5;  // FlatTop: window is 1 on |X| <= fraction * lambda
};

double damping_multiplier(const DampingSpec& spec, double lambda, double x_norm);

/// Uniform midpoint grid on [-lambda, lambda]^d with weights
/// cell / (2 pi)^d and an optional damping window.
class DualGrid {
 public:
  static DualGrid build(int dim, double lambda, int n_per_dim,
                        DampingSpec damping = DampingSpec{});

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(damping_.size()); }
  double lambda() const { return lambda_; }
  double spacing() const { return h_; }
  double cell_weight() const { return cell_weight_; }  // cell / (2 pi)^d
  const DampingSpec& damping_spec() const { return spec_; }

  std::array<double, 3> node(int k) const;
  double damping(int k) const { return damping_[k]; }

 private:
  int dim_ = 1;
  double lambda_ = 0, h_ = 0, cell_weight_ = 0;
  DampingSpec spec_;
  std::vector<double> coords_;
  std::vector<double> damping_;
};

Complex integrate_dual(const DualGrid& grid, std::span<const Complex> f);
Complex integrate_dual(const DualGrid& grid,
                       const std::function<Complex(const std::array<double, 3>&)>& f);

}  // namespace ncgf
