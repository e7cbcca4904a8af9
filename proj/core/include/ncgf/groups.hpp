#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "ncgf/common.hpp"
#include "ncgf/rng.hpp"

namespace ncgf {

enum class GroupKind { Rd, U1, SU2, SO3 };

class LieGroupModel;
struct GroupElement;
struct AlgebraVector;

/// Concrete group descriptor: dimension, algebra basis, structure constants.
///
/// The basis is normalized so that [T_i, T_j] = c_ij^k T_k with c_ij^k equal
/// to the Levi-Civita symbol for SU(2)/SO(3) and zero for the abelian groups,
/// and so that the basis is orthonormal in the invariant inner product.  All
/// chart and spectral conventions downstream are relative to this scale.
class LieGroupModel {
 public:
  static const LieGroupModel& u1();
  static const LieGroupModel& su2();
  static const LieGroupModel& so3();
  static const LieGroupModel& rd(int d);  // d in {1, 2, 3}

  GroupKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool compact() const { return kind_ != GroupKind::Rd; }
  bool abelian() const { return kind_ == GroupKind::Rd || kind_ == GroupKind::U1; }
  std::string name() const;

  double structure_constant(int i, int j, int k) const;
  AlgebraVector bracket(const AlgebraVector& z, const AlgebraVector& w) const;

  // Basis matrix T_i in the defining representation (u(1) as 1x1, su(2) as
  // 2x2 complex, so(3) as 3x3 real-as-complex; R^d returns the coordinate
  // vector as a d x 1 column).
  Eigen::MatrixXcd basis_matrix(int i) const;

  // Haar volume in the convention omega(0) = 1 (2*pi, 16*pi^2, 8*pi^2).
  // Throws for R^d.
  double volume() const;

 private:
  LieGroupModel(GroupKind kind, int dim) : kind_(kind), dim_(dim) {}
  GroupKind kind_;
  int dim_;
};

/// Group element.  Compact payload per group: U(1) stores the angle in
/// (-pi, pi], R^d the translation vector, SU(2)/SO(3) a unit quaternion
/// (w, x, y, z); SO(3) quaternions are canonicalized to w >= 0.
struct GroupElement {
  const LieGroupModel* model = nullptr;
  std::array<double, 4> a{};

  Eigen::Matrix2cd su2_matrix() const;   // SU(2) only
  Eigen::Matrix3d so3_matrix() const;    // SU(2)/SO(3): adjoint rotation
  Eigen::MatrixXcd matrix() const;       // defining representation, any group
};

/// Lie algebra / dual vector: components in the basis T_i.  Also used for
/// X in g* through the invariant pairing.
struct AlgebraVector {
  const LieGroupModel* model = nullptr;
  std::array<double, 3> c{};

  double norm() const { return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]); }
};

AlgebraVector algebra_vector(const LieGroupModel& model, std::array<double, 3> c);
AlgebraVector zero_vector(const LieGroupModel& model);
double dot(const AlgebraVector& a, const AlgebraVector& b);
AlgebraVector add(const AlgebraVector& a, const AlgebraVector& b);
AlgebraVector scale(const AlgebraVector& a, double s);

GroupElement identity(const LieGroupModel& model);
GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
bool approx_equal(const GroupElement& a, const GroupElement& b, double tol = 1e-12);

/// exp(Z^i T_i) by closed form (scalar for U(1)/R^d, half-angle quaternion for
/// SU(2), Rodrigues via the quaternion double cover for SO(3)).
GroupElement exponential_map(const AlgebraVector& z);

/// Principal-branch inverse of exponential_map.  Throws CutLocusError at or
/// beyond the principal domain (g = -e for SU(2), angle-pi rotations for
/// SO(3), angle pi for U(1)).
AlgebraVector logarithm_map(const GroupElement& g);

/// Components of h (Z^i T_i) h^{-1} in the basis.
AlgebraVector adjoint_action(const GroupElement& h, const AlgebraVector& z);

AlgebraVector lie_bracket(const AlgebraVector& z, const AlgebraVector& w);

/// Central-difference estimate of the left-invariant derivative
/// L_i f(g) = d/ds f(g exp(s T_i)) at s = 0.  Error O(step^2).
Complex left_derivative(const std::function<Complex(const GroupElement&)>& f,
                        const GroupElement& g, int i, double step = 1e-3);

/// Haar-uniform sample (compact groups); R^d draws from a standard normal.
GroupElement random_element(const LieGroupModel& model, Rng& rng);

}  // namespace ncgf
