#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ncgf/groups.hpp"

namespace ncgf {

enum class ChartKind { Exponential, Trace };

/// Coordinates Z^i on the group minus its involutive locus, normalized so that
///   Z(e) = 0,  Z(g^{-1}) = -Z(g),  L_i Z^j(e) = delta_i^j,
///   Z(h g h^{-1}) = Ad_h Z(g),
/// together with the Haar density omega(Z) in the convention omega(0) = 1.
///
/// The Exponential chart inverts the exponential map on its principal domain.
/// The Trace chart (SU(2)/SO(3)/U(1)) rescales the fundamental-representation
/// trace coordinates so the derivative condition above holds; its range is the
/// open ball of radius 2.  On SU(2) the trace coordinates are two-to-one, so
/// the chart domain is restricted to the hemisphere with positive quaternion
/// scalar part (the SO(3) patch).
class Chart {
 public:
  Chart(ChartKind kind, const LieGroupModel& group);

  ChartKind kind() const { return kind_; }
  const LieGroupModel& group() const { return *group_; }

  AlgebraVector coordinates(const GroupElement& g) const;
  GroupElement point(const AlgebraVector& z) const;
  double haar_density(const AlgebraVector& z) const;

  // omega^{-1} as a function of |Z|; smooth, used for Taylor extraction.
  double omega_inverse_radial(double r) const;

  // Radius of the chart range (open ball / interval); +inf for R^d.
  double range_radius() const;
  bool in_range(const AlgebraVector& z) const;
  std::string range_description() const;

  // Non-throwing variant used by grid interpolation near the domain boundary.
  std::optional<AlgebraVector> try_coordinates(const GroupElement& g) const;

 private:
  ChartKind kind_;
  const LieGroupModel* group_;

  // Exception-free coordinate core shared by the throwing/optional variants.
  // 0 = ok, 1 = cut locus, 2 = out of the chart patch.
  int coordinates_nothrow(const GroupElement& g, AlgebraVector* out) const;
};

struct ValidationReport {
  int samples = 0;
  double max_antisymmetry = 0;    // Z(g^{-1}) + Z(g)
  double max_derivative = 0;      // L_i Z^j(e) - delta_i^j
  double max_ad_covariance = 0;   // Z(h g h^{-1}) - Ad_h Z(g)
  double max_violation = 0;
  bool pass = false;
};

namespace detail {
// Callback form of a chart, so validation can also exercise deliberately
// broken coordinate maps in tests and in the CLI fixture.
struct ChartCallbacks {
  const LieGroupModel* group = nullptr;
  std::function<AlgebraVector(const GroupElement&)> coordinates;
  std::function<GroupElement(Rng&)> sample_domain;
};
ValidationReport validate_chart_impl(const ChartCallbacks& cb, int samples, std::uint64_t seed,
                                     double fd_step, double tol);
}  // namespace detail

/// Checks the three chart conditions and the derivative normalization over
/// pseudo-random domain points; deterministic for a given seed.  Passes iff
/// the worst violation is <= tol.
ValidationReport validate_chart(const Chart& chart, int samples, std::uint64_t seed,
                                double fd_step = 1e-3, double tol = 1e-6);

}  // namespace ncgf
