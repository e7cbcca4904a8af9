#include "ncgf/chart.hpp"

#include <cmath>

namespace ncgf {

namespace {

// (sin(t/2)/(t/2))^2 with a stable series near zero.
double omega_exp_radial(double theta) {
  const double x = 0.5 * theta;
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    const double s = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    return s * s;
  }
  const double s = std::sin(x) / x;
  return s * s;
}

}  // namespace

Chart::Chart(ChartKind kind, const LieGroupModel& group) : kind_(kind), group_(&group) {
  if (kind == ChartKind::Trace && group.kind() == GroupKind::Rd)
    throw UnsupportedChartError("trace chart is not defined for R^d");
}

double Chart::range_radius() const {
  if (kind_ == ChartKind::Trace) return 2.0;
  switch (group_->kind()) {
    case GroupKind::U1: return kPi;
    case GroupKind::SU2: return kTwoPi;
    case GroupKind::SO3: return kPi;
    case GroupKind::Rd: return std::numeric_limits<double>::infinity();
  }
  return 0;
}

bool Chart::in_range(const AlgebraVector& z) const {
  if (z.model != group_) return false;
  return z.norm() < range_radius();
}

std::string Chart::range_description() const {
  if (group_->kind() == GroupKind::Rd) return "all of R^" + std::to_string(group_->dim());
  if (group_->dim() == 1) {
    return "open interval (-" + std::to_string(range_radius()) + ", " +
           std::to_string(range_radius()) + ")";
  }
  return "open ball of radius " + std::to_string(range_radius());
}

namespace {
constexpr int kCoordOk = 0;
constexpr int kCoordCutLocus = 1;
constexpr int kCoordOutOfDomain = 2;
}  // namespace

// Exception-free core; convolution inner loops go through this.
int Chart::coordinates_nothrow(const GroupElement& g, AlgebraVector* out) const {
  if (kind_ == ChartKind::Exponential) {
    switch (group_->kind()) {
      case GroupKind::U1:
        if (std::abs(g.a[0]) >= kPi) return kCoordCutLocus;
        *out = algebra_vector(*group_, {g.a[0], 0, 0});
        return kCoordOk;
      case GroupKind::Rd:
        *out = algebra_vector(*group_, {g.a[0], g.a[1], g.a[2]});
        return kCoordOk;
      case GroupKind::SU2:
      case GroupKind::SO3: {
        const double w = g.a[0];
        const double vn = std::sqrt(g.a[1] * g.a[1] + g.a[2] * g.a[2] + g.a[3] * g.a[3]);
        if (group_->kind() == GroupKind::SU2 && vn < 1e-12 && w < 0)
          return kCoordCutLocus;
        if (group_->kind() == GroupKind::SO3 && w < 1e-12) return kCoordCutLocus;
        const double theta = 2.0 * std::atan2(vn, w);
        const double s = vn < 1e-300 ? 0.0 : theta / vn;
        *out = algebra_vector(*group_, {s * g.a[1], s * g.a[2], s * g.a[3]});
        return kCoordOk;
      }
    }
    return kCoordOutOfDomain;
  }

  // Trace chart: Z = 2 * (vector part of the w>0 quaternion representative).
  switch (group_->kind()) {
    case GroupKind::U1:
      if (std::abs(g.a[0]) >= kPi) return kCoordCutLocus;
      *out = algebra_vector(*group_, {2.0 * std::sin(0.5 * g.a[0]), 0, 0});
      return kCoordOk;
    case GroupKind::SU2:
      if (g.a[0] <= 0.0) return kCoordOutOfDomain;
      *out = algebra_vector(*group_, {2 * g.a[1], 2 * g.a[2], 2 * g.a[3]});
      return kCoordOk;
    case GroupKind::SO3:
      if (g.a[0] < 1e-12) return kCoordCutLocus;
      *out = algebra_vector(*group_, {2 * g.a[1], 2 * g.a[2], 2 * g.a[3]});
      return kCoordOk;
    default:
      return kCoordOutOfDomain;
  }
}

AlgebraVector Chart::coordinates(const GroupElement& g) const {
  if (g.model != group_) throw GroupMismatchError("chart and element group differ");
  AlgebraVector z = zero_vector(*group_);
  switch (coordinates_nothrow(g, &z)) {
    case kCoordOk:
      return z;
    case kCoordCutLocus:
      throw CutLocusError(group_->name() + ": element at or beyond the principal domain");
    default:
      throw OutOfDomainError(group_->name() + ": element outside the chart patch");
  }
}

std::optional<AlgebraVector> Chart::try_coordinates(const GroupElement& g) const {
  AlgebraVector z = zero_vector(*group_);
  if (coordinates_nothrow(g, &z) == kCoordOk) return z;
  return std::nullopt;
}

GroupElement Chart::point(const AlgebraVector& z) const {
  if (z.model != group_) throw GroupMismatchError("chart and vector group differ");
  if (!in_range(z)) throw OutOfRangeError("Z outside the chart range " + range_description());
  if (kind_ == ChartKind::Exponential) return exponential_map(z);

  switch (group_->kind()) {
    case GroupKind::U1: {
      GroupElement g;
      g.model = group_;
      g.a[0] = 2.0 * std::asin(0.5 * z.c[0]);
      return g;
    }
    case GroupKind::SU2:
    case GroupKind::SO3: {
      // Quaternion (sqrt(1 - |Z|^2/4), Z/2); w > 0 inside the range.
      const double n2 = dot(z, z);
      GroupElement g;
      g.model = group_;
      g.a = {std::sqrt(1.0 - 0.25 * n2), 0.5 * z.c[0], 0.5 * z.c[1], 0.5 * z.c[2]};
      return g;
    }
    default:
      throw UnsupportedChartError("trace chart unsupported for this group");
  }
}

double Chart::haar_density(const AlgebraVector& z) const {
  if (!in_range(z)) throw OutOfRangeError("Z outside the chart range");
  const double r = z.norm();
  if (group_->kind() == GroupKind::Rd || group_->kind() == GroupKind::U1) {
    if (kind_ == ChartKind::Exponential) return 1.0;
    return 1.0 / std::sqrt(1.0 - 0.25 * r * r);
  }
  if (kind_ == ChartKind::Exponential) return omega_exp_radial(r);
  return 1.0 / std::sqrt(1.0 - 0.25 * r * r);
}

double Chart::omega_inverse_radial(double r) const {
  if (group_->kind() == GroupKind::Rd) return 1.0;
  if (kind_ == ChartKind::Exponential) {
    if (group_->kind() == GroupKind::U1) return 1.0;
    return 1.0 / omega_exp_radial(r);
  }
  if (group_->kind() == GroupKind::U1 || group_->kind() == GroupKind::SU2 ||
      group_->kind() == GroupKind::SO3) {
    return std::sqrt(1.0 - 0.25 * r * r);
  }
  return 1.0;
}

namespace detail {

ValidationReport validate_chart_impl(const ChartCallbacks& cb, int samples, std::uint64_t seed,
                                     double fd_step, double tol) {
  ValidationReport rep;
  rep.samples = samples;
  Rng rng(seed);
  const LieGroupModel& model = *cb.group;
  const int d = model.dim();

  // Condition 2 at the identity: L_i Z^j(e) = delta_i^j.
  const GroupElement e = identity(model);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Complex lz = left_derivative(
          [&](const GroupElement& g) { return Complex(cb.coordinates(g).c[j], 0.0); }, e, i,
          fd_step);
      const double want = i == j ? 1.0 : 0.0;
      rep.max_derivative = std::max(rep.max_derivative, std::abs(lz.real() - want));
      rep.max_derivative = std::max(rep.max_derivative, std::abs(lz.imag()));
    }
  }

  for (int s = 0; s < samples; ++s) {
    const GroupElement g = cb.sample_domain(rng);
    const GroupElement h = cb.sample_domain(rng);
    const AlgebraVector zg = cb.coordinates(g);

    // Condition 1: antisymmetry under inversion.
    const AlgebraVector zi = cb.coordinates(inverse(g));
    for (int i = 0; i < d; ++i)
      rep.max_antisymmetry = std::max(rep.max_antisymmetry, std::abs(zi.c[i] + zg.c[i]));

    // Condition 3: Ad-covariance (vector form).
    const GroupElement conj = multiply(multiply(h, g), inverse(h));
    const auto zc = [&]() -> std::optional<AlgebraVector> {
      try {
        return cb.coordinates(conj);
      } catch (const std::domain_error&) {
        return std::nullopt;  // conjugate landed outside a restricted patch
      }
    }();
    if (zc) {
      const AlgebraVector ad = adjoint_action(h, zg);
      for (int i = 0; i < d; ++i)
        rep.max_ad_covariance = std::max(rep.max_ad_covariance, std::abs(zc->c[i] - ad.c[i]));
    }
  }

  rep.max_violation =
      std::max({rep.max_antisymmetry, rep.max_derivative, rep.max_ad_covariance});
  rep.pass = rep.max_violation <= tol;
  return rep;
}

}  // namespace detail

ValidationReport validate_chart(const Chart& chart, int samples, std::uint64_t seed,
                                double fd_step, double tol) {
  detail::ChartCallbacks cb;
  cb.group = &chart.group();
  cb.coordinates = [&chart](const GroupElement& g) { return chart.coordinates(g); };
  const double radius = chart.group().kind() == GroupKind::Rd ? 3.0 : chart.range_radius();
  cb.sample_domain = [&chart, radius](Rng& rng) {
    // Uniform in the ball of 0.9 * radius, mapped through the chart inverse.
    const int d = chart.group().dim();
    for (;;) {
      AlgebraVector z = zero_vector(chart.group());
      for (int i = 0; i < d; ++i) z.c[i] = rng.uniform(-0.9 * radius, 0.9 * radius);
      if (z.norm() < 0.9 * radius) return chart.point(z);
    }
  };
  return detail::validate_chart_impl(cb, samples, seed, fd_step, tol);
}

}  // namespace ncgf
