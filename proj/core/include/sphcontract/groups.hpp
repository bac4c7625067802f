#pragma once

#include <Eigen/Dense>
#include <random>

namespace sphc {

/// Element of SO(n), n in {2,3,4}.  Validated on construction:
/// ||m^T m - I|| <= 1e-10 and det = +1.
class Rotation {
public:
  Rotation(Eigen::MatrixXd m);
  static Rotation identity(int n);
  /// Plane rotation of SO(2) by theta (counter-clockwise).
  static Rotation from_angle(double theta);
  /// SO(3) from zyz Euler angles, R = Rz(alpha) Ry(beta) Rz(gamma).
  static Rotation from_euler(double alpha, double beta, double gamma);

  int n() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  Rotation inverse() const { return Rotation(m_.transpose()); }
  Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_); }
  Eigen::VectorXd operator*(const Eigen::VectorXd& v) const { return m_ * v; }

  /// Rotation angle of SO(2) in (-pi, pi].
  double angle() const;

private:
  Eigen::MatrixXd m_;
};

/// Geodesic angle between two rotations of the same size.
double geodesic_angle(const Rotation& a, const Rotation& b);

/// zyz Euler angles of an SO(3) element, beta in [0, pi].
struct EulerZYZ {
  double alpha, beta, gamma;
};
EulerZYZ euler_zyz(const Eigen::Matrix3d& r);
EulerZYZ euler_zyz(const Rotation& r);

/// The fixed frame change taking the distinguished first axis to the
/// Euler z-axis: e1 -> e3, e2 -> e1, e3 -> e2.  Models built on zyz Wigner
/// matrices use euler_zyz(adapter * k * adapter^T) so that the stabilizer
/// of e1 acts diagonally.
const Eigen::Matrix3d& axis_adapter();
EulerZYZ euler_zyz_adapted(const Rotation& r);

/// (k, x) in M(n) = SO(n) x R^n with product
/// (k1,x1)(k2,x2) = (k1 k2, x1 + k1 x2).
struct MotionElement {
  Rotation k;
  Eigen::VectorXd x;

  MotionElement(Rotation k_, Eigen::VectorXd x_);
  static MotionElement identity(int n);
  int n() const { return k.n(); }
  MotionElement operator*(const MotionElement& o) const;
  MotionElement inverse() const;
};

/// Distance rotation-angle + Euclidean used by the contraction defect.
double motion_distance(const MotionElement& a, const MotionElement& b);

/// Element of SO(n+1), n in {2,3}; orthogonal with det +1 within 1e-10.
class CompactElement {
public:
  CompactElement(Eigen::MatrixXd m);
  static CompactElement identity(int n);
  /// K = SO(n) embedded as the stabilizer of e1.
  static CompactElement embed(const Rotation& k);

  int n() const { return static_cast<int>(m_.rows()) - 1; }
  const Eigen::MatrixXd& matrix() const { return m_; }
  CompactElement inverse() const { return CompactElement(m_.transpose()); }
  CompactElement operator*(const CompactElement& o) const {
    return CompactElement(m_ * o.m_);
  }

private:
  Eigen::MatrixXd m_;
};

/// Element of SO0(2,1) preserving eta = diag(1,1,-1), identity component
/// (m(2,2) >= 1).
class LorentzElement {
public:
  LorentzElement(Eigen::Matrix3d m);
  static LorentzElement identity();
  /// K = SO(2) embedded as the upper-left block.
  static LorentzElement embed(const Rotation& k);
  /// a(t) = exp(t H0), H0 the boost mixing coordinates 1 and 3.
  static LorentzElement boost(double t);
  /// n(u) = exp(u E), E the fixed nilpotent generator.
  static LorentzElement nilpotent(double u);

  const Eigen::Matrix3d& matrix() const { return m_; }
  LorentzElement inverse() const;
  LorentzElement operator*(const LorentzElement& o) const {
    return LorentzElement(m_ * o.m_);
  }

private:
  Eigen::Matrix3d m_;
};

/// Unit quaternion pair (u, v) acting on R^4 = H by q -> u q conj(v).
struct QuaternionPair {
  Eigen::Vector4d u, v;
};

/// Factors of g = k a(t) n(u) in SO0(2,1).
struct IwasawaFactors {
  Rotation k;
  double t, u;
  LorentzElement recompose() const;
};

/// exp of the Cartan complement element attached to x in R^n: the
/// antisymmetric (n+1)x(n+1) matrix with first row (0, -x^T) and first
/// column (0, x), via the Rodrigues closed form.
CompactElement exp_cartan(const Eigen::VectorXd& x);

/// D_alpha(k, x) = exp_cartan(x/alpha) embed(k), mapping M(n) -> SO(n+1).
CompactElement contract_compact(double alpha, const MotionElement& h);

/// D_beta(k, x) = exp(Y(x/beta)) embed(k), mapping M(2) -> SO0(2,1),
/// with Y(x) the symmetric boost generator pair.
LorentzElement contract_lorentz(double beta, const MotionElement& h);

/// Inverse of contract_* at parameter 1: the unique (k, p) with
/// g = exp(p-part) k.  Compact case requires |p| < pi (injectivity);
/// the Lorentz decomposition is global.
MotionElement cartan_log(const CompactElement& g);
MotionElement cartan_log(const LorentzElement& g);

/// Distance between D_alpha^{-1}(D_alpha(h1) D_alpha(h2)^{-1}) and
/// h1 h2^{-1} in M(n).
double contraction_defect(double alpha, const MotionElement& h1,
                          const MotionElement& h2);

/// Unit quaternion pair with g q = u q conj(v); sign fixed by u0 >= 0
/// (first nonzero component of u positive when u0 = 0).
QuaternionPair lift_so4(const CompactElement& g);

/// Global Iwasawa factors of g in SO0(2,1).
IwasawaFactors iwasawa_so21(const LorentzElement& g);

// Quaternion helpers (components ordered w, x, y, z).
Eigen::Vector4d quat_mul(const Eigen::Vector4d& a, const Eigen::Vector4d& b);
Eigen::Vector4d quat_conj(const Eigen::Vector4d& q);
Eigen::Matrix3d quat_to_rotation(const Eigen::Vector4d& q);
Eigen::Vector4d quat_from_rotation(const Eigen::Matrix3d& r);

/// Haar-uniform rotation from the given engine (n in {2,3}).
Rotation random_rotation(int n, std::mt19937_64& rng);

}  // namespace sphc
