#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "sphcontract/groups.hpp"
#include "sphcontract/partitions.hpp"
#include "sphcontract/repmodels.hpp"

namespace sphc {

/// Quadrature rule on K = SO(n), n in {2,3}.  Weights sum to 1 and the
/// rule integrates matrix coefficients of degree <= declared degree
/// exactly (for n = 2 the trapezoid rule is exact up to trig degree
/// 2*degree).
struct QuadratureRule {
  int n;
  int degree;
  std::vector<std::pair<Rotation, double>> nodes;
};

QuadratureRule quadrature(int n, int degree);

/// K-action on a finite working basis, as a dense unitary matrix.
using KActionFn = std::function<Eigen::MatrixXcd(const Rotation&)>;

/// Orthogonal projection onto the tau-isotypic component of the working
/// basis; idempotent and Hermitian within 1e-10.
struct ProjectionMatrix {
  Eigen::MatrixXcd mat;
  double idempotency_residual = 0.0;  // ||P^2 - P||
};

/// d_tau * sum_w w conj(chi_tau(k)) pi(k) over the rule nodes.  Throws
/// when ||P^2 - P|| > 1e-8 (insufficient rule degree) or when the rank
/// disagrees with d_tau * expected_multiplicity.
ProjectionMatrix projection_matrix(const KActionFn& k_action,
                                   const TauModel& tau,
                                   const QuadratureRule& rule,
                                   int expected_multiplicity);

/// K-equivariant identification T (d_tau x basis-dim) with
/// T pi(k) T^+ = tau(k) and T T^+ = I, built by Schur averaging of
/// deterministic matrix-unit seeds.
Eigen::MatrixXcd schur_identify(const ProjectionMatrix& proj,
                                const KActionFn& k_action,
                                const TauModel& tau,
                                const QuadratureRule& rule);

/// d_tau x d_tau value of a spherical function in the fixed V_tau basis.
struct SphericalValue {
  Eigen::MatrixXcd mat;
};

/// Closed-form oracle for the n = 2 motion pair: the projection integral
/// reduces by Jacobi-Anger to (1/2pi) int e^{iRr cos(phi-theta)} dtheta,
/// i.e. the i^{p-q} J_{p-q} phases cancel on the diagonal and
/// Phi(k, x) = e^{i m theta_k} J_0(R |x|).
Cplx motion_oracle_n2(int m, double R, const Eigen::Vector2d& x,
                      const Rotation& k);

/// Evaluator for the compact pair (SO(n+1), SO(n)).
class CompactSpherical {
public:
  CompactSpherical(CompactRepLabel label, TauModel tau);
  SphericalValue value(const CompactElement& g) const;

  const TauModel& tau() const { return tau_; }
  const CompactRepLabel& label() const { return label_; }
  /// ||P^2 - P|| on the working (or weight-window) basis.
  double projection_residual() const { return proj_residual_; }

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  CompactRepLabel label_;
  TauModel tau_;
  double proj_residual_;
};

/// Evaluator for the motion pair (M(n), SO(n)).
class MotionSpherical {
public:
  MotionSpherical(MotionRepParams params, TauModel tau);
  SphericalValue value(const MotionElement& g) const;

  const TauModel& tau() const { return tau_; }
  const MotionRepParams& params() const { return params_; }
  double projection_residual() const { return proj_residual_; }

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  MotionRepParams params_;
  TauModel tau_;
  double proj_residual_;
};

/// Evaluator for the Lorentz pair (SO0(2,1), SO(2)).
class LorentzSpherical {
public:
  LorentzSpherical(PrincipalSeriesParams params, TauModel tau);
  SphericalValue value(const LorentzElement& g) const;

  const TauModel& tau() const { return tau_; }
  const PrincipalSeriesParams& params() const { return params_; }
  double projection_residual() const { return proj_residual_; }

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  PrincipalSeriesParams params_;
  TauModel tau_;
  double proj_residual_;
};

/// One-shot evaluations (construct the evaluator, compute, discard).
SphericalValue spherical_value(const CompactRepLabel& rep, const TauModel& tau,
                               const CompactElement& g);
SphericalValue spherical_value(const MotionRepParams& rep, const TauModel& tau,
                               const MotionElement& g);
SphericalValue spherical_value(const PrincipalSeriesParams& rep,
                               const TauModel& tau, const LorentzElement& g);

}  // namespace sphc
