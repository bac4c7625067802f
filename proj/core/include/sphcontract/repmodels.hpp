#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "sphcontract/groups.hpp"
#include "sphcontract/partitions.hpp"

namespace sphc {

using Cplx = std::complex<double>;
using KFunction = std::function<Cplx(const Rotation&)>;

/// Concrete unitary model of tau in the dual of K = SO(n), n in {2,3}:
/// an exponential character for n = 2, a Wigner D-matrix for n = 3.
struct TauModel {
  int n;
  Partition label;
  int dim;

  static TauModel make(int n, Partition label);
};

/// tau(k) as a dim x dim unitary matrix.
Eigen::MatrixXcd tau_matrix(const TauModel& tau, const Rotation& k);

/// Character chi_tau(k) = tr tau(k).
Cplx tau_character(const TauModel& tau, const Rotation& k);

/// Parameters of the induced representation of M(n) attached to the
/// sphere of radius R and sigma in the dual of SO(n-1).
struct MotionRepParams {
  int n;
  Partition sigma;
  double R;

  MotionRepParams(int n_, Partition sigma_, double R_);
};

/// Label (ell, sigma_1, ...) of a representation of SO(n+1).
struct CompactRepLabel {
  Partition partition;
  int n() const { return partition.group_size() - 1; }
  int ell() const { return partition.first(); }
};

/// Spherical principal series parameters for SO0(2,1); M is trivial so
/// sigma carries no data.  phi is the value of the 0th parameter on the
/// fixed boost generator H0; nu = 1/2 is the half-sum shift making the
/// induced picture unitary on L^2(K).
struct PrincipalSeriesParams {
  double phi;
  double nu = 0.5;
};

/// One copy of tau inside the induced motion representation: d_tau
/// functions on K together with their Gram matrix.
struct IsotypicBasis {
  TauModel tau;
  Partition sigma;
  std::vector<KFunction> functions;
  Eigen::MatrixXcd gram;
  // For n = 3 the functions are Wigner coefficients D^{tau_1}_{q s} with
  // the right index locked to s = sigma_1; rows[q] records the left index.
  std::vector<int> rows;
};

/// Throws when m(sigma, tau) = 0 ("tau not contained in omega_{sigma,R}").
IsotypicBasis motion_isotypic_basis(const TauModel& tau, const Partition& sigma);

/// (omega_{sigma,R}(k,x) f)(h) = e^{i R <h^{-1} x, e1>} f(k^{-1} h).
Cplx motion_action(const MotionRepParams& params, const MotionElement& g,
                   const KFunction& f, const Rotation& h);

/// Matrix of the representation labelled by (ell, sigma_1) at g.
/// n = 2: D^ell at the adapted Euler angles of g (dimension 2 ell + 1).
/// n = 3: D^{j1}(u) (x) D^{j2}(v) with (u,v) = lift_so4(g),
///        j1 = (ell+sigma_1)/2, j2 = (ell-sigma_1)/2; requires
///        ell + sigma_1 even (tensor model parity restriction).
Eigen::MatrixXcd compact_rep_matrix(const CompactRepLabel& label,
                                    const CompactElement& g);

/// Dimension of the tensor model without materializing it.
int compact_rep_dim(const CompactRepLabel& label);

/// (rho(g) f)(k) = e^{-i gamma(t')} f(k') where g^{-1} k = k' a(t') n(u')
/// and gamma = phi + i nu; the real part contributes e^{nu t'}.
Cplx principal_action(const PrincipalSeriesParams& params,
                      const LorentzElement& g, const KFunction& f,
                      const Rotation& k);

/// Character (k, x) -> e^{i <lambda, x>} of M(n); these representations
/// have zero Plancherel measure.
Cplx scalar_character_rep(const Eigen::VectorXd& lambda,
                          const MotionElement& g);

/// Cayley-Klein parameters of the SU(2) element of a unit quaternion:
/// U = q0 I - i (q1 sx + q2 sy + q3 sz), so a = q0 - i q3, b = -q2 - i q1.
std::pair<Cplx, Cplx> su2_params(const Eigen::Vector4d& q);

}  // namespace sphc
