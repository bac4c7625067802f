#include "sphcontract/groups.hpp"

#include <cmath>
#include <stdexcept>

namespace sphc {

namespace {

constexpr double kOrthTol = 1e-10;

void check_special_orthogonal(const Eigen::MatrixXd& m, const char* what) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw std::invalid_argument(std::string(what) + ": not square");
  const double defect =
      (m.transpose() * m - Eigen::MatrixXd::Identity(n, n)).norm();
  if (defect > kOrthTol)
    throw std::invalid_argument(std::string(what) + ": not orthogonal within 1e-10");
  if (std::abs(m.determinant() - 1.0) > kOrthTol)
    throw std::invalid_argument(std::string(what) + ": determinant is not +1");
}

Eigen::Matrix3d lorentz_eta() {
  Eigen::Matrix3d eta = Eigen::Matrix3d::Identity();
  eta(2, 2) = -1.0;
  return eta;
}

// Fixed nilpotent generator of the Iwasawa N: E = J + B2 with J the
// rotation generator of the (1,2)-plane and B2 the boost along x2.  Then
// [H0, E] = -E and the e^{+nu t} normalization of the induced picture is
// the unitary one.
Eigen::Matrix3d nilpotent_generator() {
  Eigen::Matrix3d e = Eigen::Matrix3d::Zero();
  e(0, 1) = -1.0;
  e(1, 0) = 1.0;
  e(1, 2) = 1.0;
  e(2, 1) = 1.0;
  return e;
}

}  // namespace

Rotation::Rotation(Eigen::MatrixXd m) : m_(std::move(m)) {
  const int n = static_cast<int>(m_.rows());
  if (n < 2 || n > 4) throw std::invalid_argument("Rotation: n must be 2, 3 or 4");
  check_special_orthogonal(m_, "Rotation");
}

Rotation Rotation::identity(int n) {
  return Rotation(Eigen::MatrixXd::Identity(n, n));
}

Rotation Rotation::from_angle(double theta) {
  Eigen::Matrix2d m;
  m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return Rotation(m);
}

Rotation Rotation::from_euler(double alpha, double beta, double gamma) {
  auto rz = [](double t) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    m(0, 0) = std::cos(t);
    m(0, 1) = -std::sin(t);
    m(1, 0) = std::sin(t);
    m(1, 1) = std::cos(t);
    return m;
  };
  Eigen::Matrix3d ry = Eigen::Matrix3d::Identity();
  ry(0, 0) = std::cos(beta);
  ry(0, 2) = std::sin(beta);
  ry(2, 0) = -std::sin(beta);
  ry(2, 2) = std::cos(beta);
  return Rotation(rz(alpha) * ry * rz(gamma));
}

double Rotation::angle() const {
  if (n() != 2) throw std::invalid_argument("Rotation::angle: only for SO(2)");
  return std::atan2(m_(1, 0), m_(0, 0));
}

double geodesic_angle(const Rotation& a, const Rotation& b) {
  if (a.n() != b.n()) throw std::invalid_argument("geodesic_angle: size mismatch");
  const Eigen::MatrixXd r = a.matrix() * b.matrix().transpose();
  if (a.n() == 2) return std::abs(std::atan2(r(1, 0), r(0, 0)));
  if (a.n() == 3) {
    // atan2 of (sin, cos) stays accurate near the identity where acos of
    // the trace loses half the digits.
    const double c = 0.5 * (r.trace() - 1.0);
    const double s =
        0.5 * std::sqrt(std::pow(r(2, 1) - r(1, 2), 2) +
                        std::pow(r(0, 2) - r(2, 0), 2) +
                        std::pow(r(1, 0) - r(0, 1), 2));
    return std::atan2(s, c);
  }
  throw std::invalid_argument("geodesic_angle: unsupported size");
}

EulerZYZ euler_zyz(const Eigen::Matrix3d& r) {
  const double sb = std::hypot(r(0, 2), r(1, 2));
  const double cb = std::clamp(r(2, 2), -1.0, 1.0);
  const double beta = std::atan2(sb, cb);
  if (sb > 1e-12)
    return {std::atan2(r(1, 2), r(0, 2)), beta,
            std::atan2(r(2, 1), -r(2, 0))};
  if (cb > 0.0)  // R = Rz(alpha + gamma)
    return {std::atan2(r(1, 0), r(0, 0)), 0.0, 0.0};
  // beta = pi: R = Rz(alpha) Ry(pi) Rz(gamma), alpha - gamma determined
  return {std::atan2(-r(1, 0), -r(0, 0)), M_PI, 0.0};
}

EulerZYZ euler_zyz(const Rotation& r) {
  if (r.n() != 3) throw std::invalid_argument("euler_zyz: only for SO(3)");
  return euler_zyz(Eigen::Matrix3d(r.matrix()));
}

const Eigen::Matrix3d& axis_adapter() {
  static const Eigen::Matrix3d c = [] {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(2, 0) = 1.0;  // e1 -> e3
    m(0, 1) = 1.0;  // e2 -> e1
    m(1, 2) = 1.0;  // e3 -> e2
    return m;
  }();
  return c;
}

EulerZYZ euler_zyz_adapted(const Rotation& r) {
  if (r.n() != 3) throw std::invalid_argument("euler_zyz_adapted: only for SO(3)");
  const Eigen::Matrix3d& c = axis_adapter();
  return euler_zyz(Eigen::Matrix3d(c * r.matrix() * c.transpose()));
}

MotionElement::MotionElement(Rotation k_, Eigen::VectorXd x_)
    : k(std::move(k_)), x(std::move(x_)) {
  if (k.n() != x.size())
    throw std::invalid_argument("MotionElement: rotation/translation size mismatch");
}

MotionElement MotionElement::identity(int n) {
  return MotionElement(Rotation::identity(n), Eigen::VectorXd::Zero(n));
}

MotionElement MotionElement::operator*(const MotionElement& o) const {
  return MotionElement(k * o.k, x + k.matrix() * o.x);
}

MotionElement MotionElement::inverse() const {
  Rotation ki = k.inverse();
  return MotionElement(ki, -(ki.matrix() * x));
}

double motion_distance(const MotionElement& a, const MotionElement& b) {
  return geodesic_angle(a.k, b.k) + (a.x - b.x).norm();
}

CompactElement::CompactElement(Eigen::MatrixXd m) : m_(std::move(m)) {
  const int sz = static_cast<int>(m_.rows());
  if (sz < 3 || sz > 4)
    throw std::invalid_argument("CompactElement: expected SO(3) or SO(4)");
  check_special_orthogonal(m_, "CompactElement");
}

CompactElement CompactElement::identity(int n) {
  return CompactElement(Eigen::MatrixXd::Identity(n + 1, n + 1));
}

CompactElement CompactElement::embed(const Rotation& k) {
  const int n = k.n();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n + 1, n + 1);
  m.block(1, 1, n, n) = k.matrix();
  return CompactElement(m);
}

LorentzElement::LorentzElement(Eigen::Matrix3d m) : m_(std::move(m)) {
  const Eigen::Matrix3d eta = lorentz_eta();
  // Scale-aware: entries grow like cosh of the boost, and the eta defect
  // of an exact element rounds at ||m||^2 * eps.
  const double tol = kOrthTol * std::max(1.0, m_.squaredNorm());
  if ((m_.transpose() * eta * m_ - eta).norm() > tol)
    throw std::invalid_argument("LorentzElement: does not preserve eta within 1e-10");
  if (m_(2, 2) < 1.0 - kOrthTol)
    throw std::invalid_argument("LorentzElement: not in the identity component");
}

LorentzElement LorentzElement::identity() {
  return LorentzElement(Eigen::Matrix3d::Identity());
}

LorentzElement LorentzElement::embed(const Rotation& k) {
  if (k.n() != 2) throw std::invalid_argument("LorentzElement::embed: need SO(2)");
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m.block(0, 0, 2, 2) = k.matrix();
  return LorentzElement(m);
}

LorentzElement LorentzElement::boost(double t) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 0) = std::cosh(t);
  m(0, 2) = std::sinh(t);
  m(2, 0) = std::sinh(t);
  m(2, 2) = std::cosh(t);
  return LorentzElement(m);
}

LorentzElement LorentzElement::nilpotent(double u) {
  const Eigen::Matrix3d e = nilpotent_generator();
  return LorentzElement(Eigen::Matrix3d::Identity() + u * e +
                        0.5 * u * u * e * e);
}

LorentzElement LorentzElement::inverse() const {
  const Eigen::Matrix3d eta = lorentz_eta();
  return LorentzElement(eta * m_.transpose() * eta);
}

LorentzElement IwasawaFactors::recompose() const {
  return LorentzElement::embed(k) * LorentzElement::boost(t) *
         LorentzElement::nilpotent(u);
}

CompactElement exp_cartan(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  if (n != 2 && n != 3) throw std::invalid_argument("exp_cartan: n must be 2 or 3");
  Eigen::MatrixXd xmat = Eigen::MatrixXd::Zero(n + 1, n + 1);
  xmat.block(0, 1, 1, n) = -x.transpose();
  xmat.block(1, 0, n, 1) = x;
  const double r = x.norm();
  // Rodrigues: exp(X) = I + sin(r)/r X + (1-cos r)/r^2 X^2
  double s, c;
  if (r < 1e-8) {
    s = 1.0 - r * r / 6.0;
    c = 0.5 - r * r / 24.0;
  } else {
    s = std::sin(r) / r;
    c = (1.0 - std::cos(r)) / (r * r);
  }
  return CompactElement(Eigen::MatrixXd::Identity(n + 1, n + 1) + s * xmat +
                        c * xmat * xmat);
}

CompactElement contract_compact(double alpha, const MotionElement& h) {
  if (!(alpha > 0.0)) throw std::invalid_argument("contract_compact: alpha must be > 0");
  return exp_cartan(h.x / alpha) * CompactElement::embed(h.k);
}

LorentzElement contract_lorentz(double beta, const MotionElement& h) {
  if (!(beta > 0.0)) throw std::invalid_argument("contract_lorentz: beta must be > 0");
  if (h.n() != 2) throw std::invalid_argument("contract_lorentz: n must be 2");
  const Eigen::Vector2d x = h.x / beta;
  Eigen::Matrix3d y = Eigen::Matrix3d::Zero();
  y(0, 2) = x(0);
  y(2, 0) = x(0);
  y(1, 2) = x(1);
  y(2, 1) = x(1);
  const double r = x.norm();
  double s, c;
  if (r < 1e-8) {
    s = 1.0 + r * r / 6.0;
    c = 0.5 + r * r / 24.0;
  } else {
    s = std::sinh(r) / r;
    c = (std::cosh(r) - 1.0) / (r * r);
  }
  const Eigen::Matrix3d b =
      Eigen::Matrix3d::Identity() + s * y + c * y * y;
  return LorentzElement(b) * LorentzElement::embed(h.k);
}

MotionElement cartan_log(const CompactElement& g) {
  const int n = g.n();
  const Eigen::VectorXd w = g.matrix().col(0);  // = exp_cartan(p) e1
  const double c = w(0);
  const Eigen::VectorXd v = w.tail(n);
  const double sn = v.norm();
  Eigen::VectorXd p(n);
  if (sn < 1e-12) {
    if (c < 0.0)
      throw std::domain_error(
          "cartan_log: element outside the injectivity neighborhood (|p| = pi)");
    p.setZero();
  } else {
    const double r = std::atan2(sn, c);
    if (r > M_PI - 1e-9)
      throw std::domain_error(
          "cartan_log: element outside the injectivity neighborhood (|p| >= pi)");
    p = (r / sn) * v;
  }
  const Eigen::MatrixXd kfull =
      (exp_cartan(-p) * g).matrix();
  if (std::abs(kfull(0, 0) - 1.0) > 1e-8)
    throw std::domain_error("cartan_log: residual does not stabilize e1");
  return MotionElement(Rotation(kfull.block(1, 1, n, n)), p);
}

MotionElement cartan_log(const LorentzElement& g) {
  const Eigen::Vector3d w = g.matrix().col(2);  // = exp(Y(p)) e3
  const Eigen::Vector2d v = w.head(2);
  const double sn = v.norm();
  Eigen::Vector2d p = Eigen::Vector2d::Zero();
  if (sn > 0.0) p = (std::asinh(sn) / sn) * v;
  Eigen::Matrix3d y = Eigen::Matrix3d::Zero();
  y(0, 2) = -p(0);
  y(2, 0) = -p(0);
  y(1, 2) = -p(1);
  y(2, 1) = -p(1);
  const double r = p.norm();
  double s, c;
  if (r < 1e-8) {
    s = 1.0 + r * r / 6.0;
    c = 0.5 + r * r / 24.0;
  } else {
    s = std::sinh(r) / r;
    c = (std::cosh(r) - 1.0) / (r * r);
  }
  const Eigen::Matrix3d binv = Eigen::Matrix3d::Identity() + s * y + c * y * y;
  const Eigen::Matrix3d kfull = binv * g.matrix();
  return MotionElement(Rotation(Eigen::MatrixXd(kfull.block(0, 0, 2, 2))),
                       Eigen::VectorXd(p));
}

double contraction_defect(double alpha, const MotionElement& h1,
                          const MotionElement& h2) {
  const CompactElement g =
      contract_compact(alpha, h1) * contract_compact(alpha, h2).inverse();
  const MotionElement pulled = cartan_log(g);
  const MotionElement back(pulled.k, alpha * pulled.x);  // D_alpha^{-1}
  return motion_distance(back, h1 * h2.inverse());
}

Eigen::Vector4d quat_mul(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  const Eigen::Vector3d av = a.tail<3>(), bv = b.tail<3>();
  const double w = a(0) * b(0) - av.dot(bv);
  const Eigen::Vector3d v = a(0) * bv + b(0) * av + av.cross(bv);
  Eigen::Vector4d out;
  out << w, v;
  return out;
}

Eigen::Vector4d quat_conj(const Eigen::Vector4d& q) {
  Eigen::Vector4d out;
  out << q(0), -q(1), -q(2), -q(3);
  return out;
}

Eigen::Matrix3d quat_to_rotation(const Eigen::Vector4d& q) {
  const double w = q(0), x = q(1), y = q(2), z = q(3);
  Eigen::Matrix3d r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

Eigen::Vector4d quat_from_rotation(const Eigen::Matrix3d& r) {
  // Shepperd's method: branch on the largest of trace and diagonal entries.
  Eigen::Vector4d q;
  const double tr = r.trace();
  if (tr >= r(0, 0) && tr >= r(1, 1) && tr >= r(2, 2)) {
    const double s = std::sqrt(1.0 + tr) * 2.0;
    q << 0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s,
        (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
    const double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
    q << (r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s,
        (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) >= r(2, 2)) {
    const double s = std::sqrt(1.0 - r(0, 0) + r(1, 1) - r(2, 2)) * 2.0;
    q << (r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s,
        (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = std::sqrt(1.0 - r(0, 0) - r(1, 1) + r(2, 2)) * 2.0;
    q << (r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s,
        (r(1, 2) + r(2, 1)) / s, 0.25 * s;
  }
  q.normalize();
  return q;
}

namespace {

// Left/right multiplication matrices on (1, i, j, k) coordinates.
Eigen::Matrix4d left_mul(const Eigen::Vector4d& q) {
  Eigen::Matrix4d m;
  m << q(0), -q(1), -q(2), -q(3),
       q(1),  q(0), -q(3),  q(2),
       q(2),  q(3),  q(0), -q(1),
       q(3), -q(2),  q(1),  q(0);
  return m;
}

Eigen::Matrix4d right_mul(const Eigen::Vector4d& q) {
  Eigen::Matrix4d m;
  m << q(0), -q(1), -q(2), -q(3),
       q(1),  q(0),  q(3), -q(2),
       q(2), -q(3),  q(0),  q(1),
       q(3),  q(2), -q(1),  q(0);
  return m;
}

}  // namespace

QuaternionPair lift_so4(const CompactElement& g) {
  if (g.n() != 3) throw std::invalid_argument("lift_so4: expected SO(4)");
  // g = L(u) R(conj(v)) and {L(e_a) R(conj(e_b))} is Frobenius-orthogonal
  // with norm^2 = 4, so M_ab := tr((L_a Rc_b)^T g)/4 equals u_a v_b.
  Eigen::Matrix4d m;
  for (int a = 0; a < 4; ++a) {
    Eigen::Vector4d ea = Eigen::Vector4d::Zero();
    ea(a) = 1.0;
    const Eigen::Matrix4d la = left_mul(ea);
    for (int b = 0; b < 4; ++b) {
      Eigen::Vector4d eb = Eigen::Vector4d::Zero();
      eb(b) = 1.0;
      const Eigen::Matrix4d rb = right_mul(quat_conj(eb));
      m(a, b) = 0.25 * (la * rb).cwiseProduct(g.matrix()).sum();
    }
  }
  int best = 0;
  for (int b = 1; b < 4; ++b)
    if (m.col(b).norm() > m.col(best).norm()) best = b;
  Eigen::Vector4d u = m.col(best).normalized();
  Eigen::Vector4d v = m.transpose() * u;
  const double vn = v.norm();
  if (vn < 0.9)
    throw std::invalid_argument("lift_so4: input is not a rotation of R^4");
  v /= vn;
  // Sign convention: u0 >= 0, ties broken by the first nonzero component.
  for (int i = 0; i < 4; ++i) {
    if (std::abs(u(i)) > 1e-12) {
      if (u(i) < 0.0) {
        u = -u;
        v = -v;
      }
      break;
    }
  }
  const Eigen::Matrix4d rec = left_mul(u) * right_mul(quat_conj(v));
  if ((rec - g.matrix()).norm() > 1e-9)
    throw std::invalid_argument("lift_so4: reconstruction failed (non-orthogonal input?)");
  return {u, v};
}

IwasawaFactors iwasawa_so21(const LorentzElement& g) {
  const Eigen::Matrix3d& m = g.matrix();
  // Row 3 of k a(t) n(u) is independent of k:
  //   e^{-t} = g33 - g31,  u = g32 e^{t}.
  const double emt = m(2, 2) - m(2, 0);
  const double t = -std::log(emt);
  const double u = m(2, 1) / emt;
  const Eigen::Matrix3d kfull =
      (g * LorentzElement::nilpotent(-u) * LorentzElement::boost(-t)).matrix();
  Rotation k(Eigen::MatrixXd(kfull.block(0, 0, 2, 2)));
  return {k, t, u};
}

Rotation random_rotation(int n, std::mt19937_64& rng) {
  if (n == 2) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    return Rotation::from_angle(angle(rng));
  }
  if (n == 3) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector4d q;
    for (int i = 0; i < 4; ++i) q(i) = gauss(rng);
    q.normalize();
    return Rotation(Eigen::MatrixXd(quat_to_rotation(q)));
  }
  throw std::invalid_argument("random_rotation: n must be 2 or 3");
}

}  // namespace sphc
