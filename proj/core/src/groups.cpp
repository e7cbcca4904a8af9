#include "ncgf/groups.hpp"

namespace ncgf {

namespace {

double wrap_angle(double t) {
  // Principal angle in [-pi, pi]; the +pi representative is the involutive
  // element and is rejected by the chart, not here.
  double w = std::remainder(t, kTwoPi);
  if (w == -kPi) w = kPi;
  return w;
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  if ((i == 0 && j == 1 && k == 2) || (i == 1 && j == 2 && k == 0) || (i == 2 && j == 0 && k == 1))
    return 1;
  return -1;
}

struct Quat {
  double w, x, y, z;
};

Quat quat_of(const GroupElement& g) { return {g.a[0], g.a[1], g.a[2], g.a[3]}; }

Quat qmul(const Quat& p, const Quat& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

Quat qnormalize(const Quat& q) {
  const double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

GroupElement from_quat(const LieGroupModel& model, Quat q) {
  q = qnormalize(q);
  if (model.kind() == GroupKind::SO3) {
    // Double-cover representative with w >= 0.
    if (q.w < 0 || (q.w == 0 && (q.x < 0 || (q.x == 0 && (q.y < 0 || (q.y == 0 && q.z < 0)))))) {
      q = {-q.w, -q.x, -q.y, -q.z};
    }
  }
  GroupElement g;
  g.model = &model;
  g.a = {q.w, q.x, q.y, q.z};
  return g;
}

void check_same_model(const GroupElement& a, const GroupElement& b) {
  if (a.model != b.model) throw GroupMismatchError("group elements from different models");
}

}  // namespace

const LieGroupModel& LieGroupModel::u1() {
  static const LieGroupModel m(GroupKind::U1, 1);
  return m;
}
const LieGroupModel& LieGroupModel::su2() {
  static const LieGroupModel m(GroupKind::SU2, 3);
  return m;
}
const LieGroupModel& LieGroupModel::so3() {
  static const LieGroupModel m(GroupKind::SO3, 3);
  return m;
}
const LieGroupModel& LieGroupModel::rd(int d) {
  static const LieGroupModel m1(GroupKind::Rd, 1);
  static const LieGroupModel m2(GroupKind::Rd, 2);
  static const LieGroupModel m3(GroupKind::Rd, 3);
  switch (d) {
    case 1: return m1;
    case 2: return m2;
    case 3: return m3;
    default: throw std::invalid_argument("rd: dimension must be 1, 2 or 3");
  }
}

std::string LieGroupModel::name() const {
  switch (kind_) {
    case GroupKind::U1: return "u1";
    case GroupKind::SU2: return "su2";
    case GroupKind::SO3: return "so3";
    case GroupKind::Rd: return "r" + std::to_string(dim_);
  }
  return "?";
}

double LieGroupModel::structure_constant(int i, int j, int k) const {
  if (kind_ == GroupKind::SU2 || kind_ == GroupKind::SO3) return levi_civita(i, j, k);
  return 0.0;
}

AlgebraVector LieGroupModel::bracket(const AlgebraVector& z, const AlgebraVector& w) const {
  AlgebraVector out = zero_vector(*this);
  if (kind_ == GroupKind::SU2 || kind_ == GroupKind::SO3) {
    out.c[0] = z.c[1] * w.c[2] - z.c[2] * w.c[1];
    out.c[1] = z.c[2] * w.c[0] - z.c[0] * w.c[2];
    out.c[2] = z.c[0] * w.c[1] - z.c[1] * w.c[0];
  }
  return out;
}

Eigen::MatrixXcd LieGroupModel::basis_matrix(int i) const {
  const Complex I(0.0, 1.0);
  switch (kind_) {
    case GroupKind::U1: {
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = I;
      return m;
    }
    case GroupKind::SU2: {
      // T_i = -(i/2) sigma_i.
      Eigen::MatrixXcd m(2, 2);
      if (i == 0) m << 0, -0.5 * I, -0.5 * I, 0;
      if (i == 1) m << 0, -0.5, 0.5, 0;
      if (i == 2) m << -0.5 * I, 0, 0, 0.5 * I;
      return m;
    }
    case GroupKind::SO3: {
      // (T_i)_{jk} = -eps_{ijk}.
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) m(j, k) = -levi_civita(i, j, k);
      return m;
    }
    case GroupKind::Rd: {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, 1);
      m(i, 0) = 1.0;
      return m;
    }
  }
  throw std::logic_error("unreachable");
}

double LieGroupModel::volume() const {
  switch (kind_) {
    case GroupKind::U1: return kTwoPi;
    case GroupKind::SU2: return 16.0 * kPi * kPi;
    case GroupKind::SO3: return 8.0 * kPi * kPi;
    case GroupKind::Rd: throw std::domain_error("R^d has infinite Haar volume");
  }
  throw std::logic_error("unreachable");
}

AlgebraVector algebra_vector(const LieGroupModel& model, std::array<double, 3> c) {
  AlgebraVector v;
  v.model = &model;
  v.c = c;
  for (int i = model.dim(); i < 3; ++i) v.c[i] = 0.0;
  return v;
}

AlgebraVector zero_vector(const LieGroupModel& model) { return algebra_vector(model, {0, 0, 0}); }

double dot(const AlgebraVector& a, const AlgebraVector& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}

AlgebraVector add(const AlgebraVector& a, const AlgebraVector& b) {
  return algebra_vector(*a.model, {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]});
}

AlgebraVector scale(const AlgebraVector& a, double s) {
  return algebra_vector(*a.model, {s * a.c[0], s * a.c[1], s * a.c[2]});
}

GroupElement identity(const LieGroupModel& model) {
  GroupElement g;
  g.model = &model;
  if (model.kind() == GroupKind::SU2 || model.kind() == GroupKind::SO3) g.a = {1, 0, 0, 0};
  return g;
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  check_same_model(a, b);
  const LieGroupModel& m = *a.model;
  GroupElement g;
  g.model = &m;
  switch (m.kind()) {
    case GroupKind::U1:
      g.a[0] = wrap_angle(a.a[0] + b.a[0]);
      return g;
    case GroupKind::Rd:
      for (int i = 0; i < m.dim(); ++i) g.a[i] = a.a[i] + b.a[i];
      return g;
    case GroupKind::SU2:
    case GroupKind::SO3:
      return from_quat(m, qmul(quat_of(a), quat_of(b)));
  }
  throw std::logic_error("unreachable");
}

GroupElement inverse(const GroupElement& a) {
  const LieGroupModel& m = *a.model;
  GroupElement g;
  g.model = &m;
  switch (m.kind()) {
    case GroupKind::U1:
      g.a[0] = wrap_angle(-a.a[0]);
      return g;
    case GroupKind::Rd:
      for (int i = 0; i < m.dim(); ++i) g.a[i] = -a.a[i];
      return g;
    case GroupKind::SU2:
    case GroupKind::SO3:
      return from_quat(m, {a.a[0], -a.a[1], -a.a[2], -a.a[3]});
  }
  throw std::logic_error("unreachable");
}

bool approx_equal(const GroupElement& a, const GroupElement& b, double tol) {
  if (a.model != b.model) return false;
  switch (a.model->kind()) {
    case GroupKind::U1:
      return std::abs(std::remainder(a.a[0] - b.a[0], kTwoPi)) <= tol;
    case GroupKind::Rd: {
      double d = 0;
      for (int i = 0; i < a.model->dim(); ++i) d = std::max(d, std::abs(a.a[i] - b.a[i]));
      return d <= tol;
    }
    case GroupKind::SU2:
    case GroupKind::SO3: {
      double dp = 0, dm = 0;
      for (int i = 0; i < 4; ++i) {
        dp = std::max(dp, std::abs(a.a[i] - b.a[i]));
        dm = std::max(dm, std::abs(a.a[i] + b.a[i]));
      }
      // SO(3) canonicalization can flip the representative near w = 0.
      return a.model->kind() == GroupKind::SO3 ? std::min(dp, dm) <= tol : dp <= tol;
    }
  }
  return false;
}

GroupElement exponential_map(const AlgebraVector& z) {
  const LieGroupModel& m = *z.model;
  GroupElement g;
  g.model = &m;
  switch (m.kind()) {
    case GroupKind::U1:
      g.a[0] = wrap_angle(z.c[0]);
      return g;
    case GroupKind::Rd:
      for (int i = 0; i < m.dim(); ++i) g.a[i] = z.c[i];
      return g;
    case GroupKind::SU2:
    case GroupKind::SO3: {
      const double theta = z.norm();
      const double half = 0.5 * theta;
      // sin(half)/theta, stable near zero.
      const double s = theta < 1e-8 ? 0.5 * (1.0 - half * half / 6.0) : std::sin(half) / theta;
      return from_quat(m, {std::cos(half), s * z.c[0], s * z.c[1], s * z.c[2]});
    }
  }
  throw std::logic_error("unreachable");
}

AlgebraVector logarithm_map(const GroupElement& g) {
  const LieGroupModel& m = *g.model;
  switch (m.kind()) {
    case GroupKind::U1: {
      if (std::abs(g.a[0]) >= kPi)
        throw CutLocusError("u1: angle pi is the involutive element");
      return algebra_vector(m, {g.a[0], 0, 0});
    }
    case GroupKind::Rd:
      return algebra_vector(m, {g.a[0], g.a[1], g.a[2]});
    case GroupKind::SU2:
    case GroupKind::SO3: {
      const double w = g.a[0];
      const double vn = std::sqrt(g.a[1] * g.a[1] + g.a[2] * g.a[2] + g.a[3] * g.a[3]);
      if (m.kind() == GroupKind::SU2 && vn < 1e-12 && w < 0)
        throw CutLocusError("su2: -e has no principal logarithm");
      if (m.kind() == GroupKind::SO3 && w < 1e-12)
        throw CutLocusError("so3: angle-pi rotations are involutive");
      const double theta = 2.0 * std::atan2(vn, w);
      if (vn < 1e-300) return zero_vector(m);
      const double s = theta / vn;
      return algebra_vector(m, {s * g.a[1], s * g.a[2], s * g.a[3]});
    }
  }
  throw std::logic_error("unreachable");
}

AlgebraVector adjoint_action(const GroupElement& h, const AlgebraVector& z) {
  const LieGroupModel& m = *h.model;
  if (m.abelian()) return z;
  // Rotate by the quaternion: v' = v + 2w (q x v) + 2 q x (q x v).
  const double qx = h.a[1], qy = h.a[2], qz = h.a[3], w = h.a[0];
  const double vx = z.c[0], vy = z.c[1], vz = z.c[2];
  const double cx = qy * vz - qz * vy, cy = qz * vx - qx * vz, cz = qx * vy - qy * vx;
  const double dx = qy * cz - qz * cy, dy = qz * cx - qx * cz, dz = qx * cy - qy * cx;
  return algebra_vector(m, {vx + 2 * (w * cx + dx), vy + 2 * (w * cy + dy), vz + 2 * (w * cz + dz)});
}

AlgebraVector lie_bracket(const AlgebraVector& z, const AlgebraVector& w) {
  if (z.model != w.model) throw GroupMismatchError("bracket of vectors from different algebras");
  return z.model->bracket(z, w);
}

Complex left_derivative(const std::function<Complex(const GroupElement&)>& f,
                        const GroupElement& g, int i, double step) {
  AlgebraVector dir = zero_vector(*g.model);
  dir.c[i] = step;
  const GroupElement gp = multiply(g, exponential_map(dir));
  dir.c[i] = -step;
  const GroupElement gm = multiply(g, exponential_map(dir));
  return (f(gp) - f(gm)) / (2.0 * step);
}

GroupElement random_element(const LieGroupModel& model, Rng& rng) {
  GroupElement g;
  g.model = &model;
  switch (model.kind()) {
    case GroupKind::U1:
      g.a[0] = rng.uniform(-kPi, kPi);
      return g;
    case GroupKind::Rd:
      for (int i = 0; i < model.dim(); ++i) g.a[i] = rng.normal();
      return g;
    case GroupKind::SU2:
    case GroupKind::SO3:
      return from_quat(model, {rng.normal(), rng.normal(), rng.normal(), rng.normal()});
  }
  throw std::logic_error("unreachable");
}

Eigen::Matrix2cd GroupElement::su2_matrix() const {
  const Complex I(0.0, 1.0);
  const double w = a[0], x = a[1], y = a[2], z = a[3];
  Eigen::Matrix2cd m;
  // w Id - i (x sigma1 + y sigma2 + z sigma3)
  m(0, 0) = w - I * z;
  m(0, 1) = -I * x - y;
  m(1, 0) = -I * x + y;
  m(1, 1) = w + I * z;
  return m;
}

Eigen::Matrix3d GroupElement::so3_matrix() const {
  const double w = a[0], x = a[1], y = a[2], z = a[3];
  Eigen::Matrix3d r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

Eigen::MatrixXcd GroupElement::matrix() const {
  switch (model->kind()) {
    case GroupKind::U1: {
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = std::exp(Complex(0.0, a[0]));
      return m;
    }
    case GroupKind::SU2:
      return su2_matrix();
    case GroupKind::SO3:
      return so3_matrix().cast<Complex>();
    case GroupKind::Rd: {
      Eigen::MatrixXcd m(model->dim(), 1);
      for (int i = 0; i < model->dim(); ++i) m(i, 0) = a[i];
      return m;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace ncgf
