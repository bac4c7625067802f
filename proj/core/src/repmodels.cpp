#include "sphcontract/repmodels.hpp"

#include <cmath>
#include <stdexcept>

#include "quad_nodes.hpp"
#include "sphcontract/specfun.hpp"

namespace sphc {

TauModel TauModel::make(int n, Partition label) {
  if (n != 2 && n != 3) throw std::invalid_argument("TauModel: n must be 2 or 3");
  if (label.group_size() != n)
    throw std::invalid_argument("TauModel: label must be an SO(n) partition");
  const int dim = (n == 2) ? 1 : 2 * label.first() + 1;
  return TauModel{n, std::move(label), dim};
}

Eigen::MatrixXcd tau_matrix(const TauModel& tau, const Rotation& k) {
  if (k.n() != tau.n) throw std::invalid_argument("tau_matrix: group size mismatch");
  if (tau.n == 2) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = std::polar(1.0, tau.label.first() * k.angle());
    return m;
  }
  const EulerZYZ e = euler_zyz_adapted(k);
  return wigner_matrix(tau.label.first(), e.alpha, e.beta, e.gamma);
}

Cplx tau_character(const TauModel& tau, const Rotation& k) {
  return tau_matrix(tau, k).trace();
}

MotionRepParams::MotionRepParams(int n_, Partition sigma_, double R_)
    : n(n_), sigma(std::move(sigma_)), R(R_) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("MotionRepParams: n must be 2 or 3");
  if (sigma.group_size() != n - 1)
    throw std::invalid_argument("MotionRepParams: sigma must label SO(n-1)");
  if (!(R > 0.0)) throw std::invalid_argument("MotionRepParams: R must be > 0");
}

IsotypicBasis motion_isotypic_basis(const TauModel& tau, const Partition& sigma) {
  if (sigma.group_size() != tau.n - 1)
    throw std::invalid_argument("motion_isotypic_basis: sigma must label SO(n-1)");
  if (multiplicity(sigma, tau.label) != 1)
    throw std::invalid_argument(
        "motion_isotypic_basis: tau not contained in omega_{sigma,R} "
        "(m(sigma,tau) = 0)");

  IsotypicBasis basis{tau, sigma, {}, {}, {}};
  if (tau.n == 2) {
    const int m = tau.label.first();
    basis.functions.push_back([m](const Rotation& k) {
      return std::polar(1.0, -m * k.angle());
    });
    basis.rows.push_back(m);
    basis.gram = Eigen::MatrixXcd(1, 1);
    // Exact circle quadrature of |f|^2.
    const int nodes = 2 * std::abs(m) + 8;
    Cplx acc = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const Rotation k = Rotation::from_angle(2.0 * M_PI * i / nodes);
      const Cplx v = basis.functions[0](k);
      acc += v * std::conj(v) / double(nodes);
    }
    basis.gram(0, 0) = acc;
    return basis;
  }

  // n = 3: the 2 tau_1 + 1 Wigner coefficients D^{tau_1}_{q s}.
  const int j = tau.label.first();
  const int s = sigma.first();
  for (int q = -j; q <= j; ++q) {
    basis.functions.push_back([j, q, s](const Rotation& k) {
      const EulerZYZ e = euler_zyz_adapted(k);
      return wigner_d(j, q, s, e.alpha, e.beta, e.gamma);
    });
    basis.rows.push_back(q);
  }
  // Gram by the exact SO(3) product rule for coefficients of degree 2j.
  const int deg = 2 * j;
  const int nab = deg + 1;
  const auto [gx, gw] = detail::gauss_legendre(deg / 2 + 1);
  const int d = 2 * j + 1;
  basis.gram = Eigen::MatrixXcd::Zero(d, d);
  for (int ia = 0; ia < nab; ++ia)
    for (size_t ib = 0; ib < gx.size(); ++ib)
      for (int ic = 0; ic < nab; ++ic) {
        const double alpha = 2.0 * M_PI * ia / nab;
        const double beta = std::acos(gx[ib]);
        const double gamma = 2.0 * M_PI * ic / nab;
        const double w = gw[ib] / (2.0 * nab * nab);
        Eigen::VectorXcd vals(d);
        for (int q = -j; q <= j; ++q)
          vals(q + j) = wigner_d(j, q, s, alpha, beta, gamma);
        basis.gram += w * vals * vals.adjoint();
      }
  return basis;
}

Cplx motion_action(const MotionRepParams& params, const MotionElement& g,
                   const KFunction& f, const Rotation& h) {
  if (g.n() != params.n || h.n() != params.n)
    throw std::invalid_argument("motion_action: group size mismatch");
  const Eigen::VectorXd hx = h.matrix().transpose() * g.x;
  const Cplx phase = std::polar(1.0, params.R * hx(0));
  return phase * f(g.k.inverse() * h);
}

int compact_rep_dim(const CompactRepLabel& label) {
  if (label.n() == 2) return 2 * label.ell() + 1;
  const int ell = label.ell();
  const int s1 = label.partition.entry(1);
  return (ell + s1 + 1) * (ell - s1 + 1);
}

std::pair<Cplx, Cplx> su2_params(const Eigen::Vector4d& q) {
  return {Cplx(q(0), -q(3)), Cplx(-q(2), -q(1))};
}

Eigen::MatrixXcd compact_rep_matrix(const CompactRepLabel& label,
                                    const CompactElement& g) {
  const int n = label.n();
  if (n != 2 && n != 3)
    throw std::invalid_argument("compact_rep_matrix: label must be SO(3) or SO(4)");
  if (g.n() != n) throw std::invalid_argument("compact_rep_matrix: size mismatch");

  if (n == 2) {
    const Eigen::Matrix3d& c = axis_adapter();
    const EulerZYZ e =
        euler_zyz(Eigen::Matrix3d(c * g.matrix() * c.transpose()));
    return wigner_matrix(label.ell(), e.alpha, e.beta, e.gamma);
  }

  const int ell = label.ell();
  const int s1 = label.partition.entry(1);
  if ((ell + s1) % 2 != 0)
    throw std::domain_error(
        "compact_rep_matrix: ell + sigma_1 is odd; the SU(2)xSU(2) tensor "
        "basis carries no linear SO(4) model here -- use even-parity labels");
  const int twoj1 = ell + s1, twoj2 = ell - s1;
  const QuaternionPair uv = lift_so4(g);
  const auto [au, bu] = su2_params(uv.u);
  const auto [av, bv] = su2_params(uv.v);
  const Eigen::MatrixXcd d1 = wigner_matrix_su2(twoj1 / 2, au, bu);
  const Eigen::MatrixXcd d2 = wigner_matrix_su2(twoj2 / 2, av, bv);
  // Tensor index (p1, p2) -> (p1 + j1) (2 j2 + 1) + (p2 + j2).
  Eigen::MatrixXcd out(d1.rows() * d2.rows(), d1.cols() * d2.cols());
  for (int r1 = 0; r1 < d1.rows(); ++r1)
    for (int c1 = 0; c1 < d1.cols(); ++c1)
      out.block(r1 * d2.rows(), c1 * d2.cols(), d2.rows(), d2.cols()) =
          d1(r1, c1) * d2;
  return out;
}

Cplx principal_action(const PrincipalSeriesParams& params,
                      const LorentzElement& g, const KFunction& f,
                      const Rotation& k) {
  if (k.n() != 2)
    throw std::invalid_argument("principal_action: k must be SO(2)");
  const IwasawaFactors fac = iwasawa_so21(g.inverse() * LorentzElement::embed(k));
  // e^{-i gamma(t')} with gamma = phi + i nu.
  const Cplx factor =
      std::exp(Cplx(params.nu * fac.t, -params.phi * fac.t));
  return factor * f(fac.k);
}

Cplx scalar_character_rep(const Eigen::VectorXd& lambda,
                          const MotionElement& g) {
  if (lambda.size() != g.n())
    throw std::invalid_argument("scalar_character_rep: size mismatch");
  return std::polar(1.0, lambda.dot(g.x));
}

}  // namespace sphc
