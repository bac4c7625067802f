#include "sphcontract/spherical.hpp"

#include <cmath>
#include <stdexcept>

#include "quad_nodes.hpp"
#include "sphcontract/specfun.hpp"

namespace sphc {

namespace {

constexpr double kProjTol = 1e-8;

Eigen::VectorXcd apply_phases(const Eigen::VectorXd& dcol, int j, double alpha,
                              double qphase) {
  Eigen::VectorXcd out(dcol.size());
  for (int p = -j; p <= j; ++p)
    out(p + j) = std::polar(dcol(p + j), -p * alpha + qphase);
  return out;
}

/// Orthonormal basis of the rank-dimensional range of a Hermitian
/// idempotent.  Near-diagonal projections yield exact coordinate vectors
/// (deterministic and sparse); otherwise the eigenvectors of the top
/// eigenvalues are used with a fixed phase convention.
Eigen::MatrixXcd orthonormal_range(const Eigen::MatrixXcd& p, int rank) {
  const int n = static_cast<int>(p.rows());
  double offmax = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) offmax = std::max(offmax, std::abs(p(i, j)));
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n, rank);
  if (offmax < 1e-12) {
    int c = 0;
    for (int i = 0; i < n && c < rank; ++i)
      if (std::abs(p(i, i) - 1.0) < 0.5) v(i, c++) = 1.0;
    if (c == rank) return v;
    v.setZero();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (p + p.adjoint()));
  for (int c = 0; c < rank; ++c) {
    const int src = n - rank + c;
    if (std::abs(es.eigenvalues()(src) - 1.0) > 0.1)
      throw std::runtime_error(
          "orthonormal_range: projection eigenvalue far from 1");
    Eigen::VectorXcd col = es.eigenvectors().col(src);
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(col(i)) > std::abs(col(imax))) imax = i;
    col *= std::polar(1.0, -std::arg(col(imax)));
    v.col(c) = col;
  }
  return v;
}

/// Schur averaging in the reduced d x d picture: returns T with
/// T A(k) T^+ = tau(k) and T T^+ = I.
Eigen::MatrixXcd schur_reduced(
    const std::function<Eigen::MatrixXcd(const Rotation&)>& a_fn,
    const TauModel& tau, const QuadratureRule& rule) {
  const int d = tau.dim;
  std::vector<Eigen::MatrixXcd> a_cache, t_cache;
  a_cache.reserve(rule.nodes.size());
  t_cache.reserve(rule.nodes.size());
  for (const auto& [k, w] : rule.nodes) {
    a_cache.push_back(a_fn(k));
    t_cache.push_back(tau_matrix(tau, k));
  }
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      // S = sum_w w A(k) E_ab tau(k)^+ = sum_w w A(k) e_a (tau(k) e_b)^+
      Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d, d);
      for (size_t i = 0; i < a_cache.size(); ++i)
        s += rule.nodes[i].second * a_cache[i].col(a) *
             t_cache[i].col(b).adjoint();
      if (s.norm() < 1e-12) continue;  // seed annihilated, try the next
      const double lam =
          std::real((s.adjoint() * s).trace()) / static_cast<double>(d);
      if (lam < 1e-24) continue;
      const Eigen::MatrixXcd t = s.adjoint() / std::sqrt(lam);
      double resid =
          (t * t.adjoint() - Eigen::MatrixXcd::Identity(d, d)).norm();
      const size_t step = std::max<size_t>(1, a_cache.size() / 20);
      for (size_t i = 0; i < a_cache.size(); i += step)
        resid = std::max(
            resid, (t * a_cache[i] * t.adjoint() - t_cache[i]).norm());
      if (resid <= 1e-8) return t;
    }
  }
  throw std::runtime_error(
      "schur_identify: all deterministic seeds exhausted without an "
      "equivariant identification");
}

}  // namespace

QuadratureRule quadrature(int n, int degree) {
  if (degree < 0) throw std::invalid_argument("quadrature: degree must be >= 0");
  QuadratureRule rule{n, degree, {}};
  if (n == 2) {
    const int m = 2 * degree + 1;
    rule.nodes.reserve(m);
    for (int i = 0; i < m; ++i)
      rule.nodes.emplace_back(Rotation::from_angle(2.0 * M_PI * i / m),
                              1.0 / m);
    return rule;
  }
  if (n == 3) {
    const int nab = degree + 1;
    const auto [gx, gw] = detail::gauss_legendre(degree / 2 + 1);
    rule.nodes.reserve(nab * nab * gx.size());
    for (int ia = 0; ia < nab; ++ia)
      for (size_t ib = 0; ib < gx.size(); ++ib)
        for (int ic = 0; ic < nab; ++ic)
          rule.nodes.emplace_back(
              Rotation::from_euler(2.0 * M_PI * ia / nab, std::acos(gx[ib]),
                                   2.0 * M_PI * ic / nab),
              gw[ib] / (2.0 * nab * nab));
    return rule;
  }
  throw std::invalid_argument("quadrature: n must be 2 or 3");
}

ProjectionMatrix projection_matrix(const KActionFn& k_action,
                                   const TauModel& tau,
                                   const QuadratureRule& rule,
                                   int expected_multiplicity) {
  if (rule.nodes.empty()) throw std::invalid_argument("projection_matrix: empty rule");
  Eigen::MatrixXcd p;
  bool first = true;
  for (const auto& [k, w] : rule.nodes) {
    const Cplx chi = std::conj(tau_character(tau, k));
    const Eigen::MatrixXcd a = k_action(k);
    if (first) {
      p = Eigen::MatrixXcd::Zero(a.rows(), a.cols());
      first = false;
    }
    p += (double(tau.dim) * w * chi) * a;
  }
  ProjectionMatrix proj;
  proj.mat = p;
  proj.idempotency_residual = (p * p - p).norm();
  if (proj.idempotency_residual > kProjTol)
    throw std::runtime_error(
        "projection_matrix: ||P^2 - P|| > 1e-8; the quadrature degree is "
        "below the band-limit of the K-action -- use a higher degree");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (p + p.adjoint()));
  int rank = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > 0.1 && lam < 0.9)
      throw std::runtime_error(
          "projection_matrix: ambiguous projection spectrum -- use a higher "
          "quadrature degree");
    if (lam > 0.5) ++rank;
  }
  if (rank != tau.dim * expected_multiplicity)
    throw std::runtime_error(
        "projection_matrix: multiplicity mismatch (rank " +
        std::to_string(rank) + " vs d_tau * m = " +
        std::to_string(tau.dim * expected_multiplicity) + ")");
  return proj;
}

Eigen::MatrixXcd schur_identify(const ProjectionMatrix& proj,
                                const KActionFn& k_action,
                                const TauModel& tau,
                                const QuadratureRule& rule) {
  const Eigen::MatrixXcd v = orthonormal_range(proj.mat, tau.dim);
  auto a_fn = [&](const Rotation& k) -> Eigen::MatrixXcd {
    return v.adjoint() * k_action(k) * v;
  };
  return schur_reduced(a_fn, tau, rule) * v.adjoint();
}

Cplx motion_oracle_n2(int m, double R, const Eigen::Vector2d& x,
                      const Rotation& k) {
  if (!(R > 0.0)) throw std::invalid_argument("motion_oracle_n2: R must be > 0");
  return std::polar(1.0, m * k.angle()) * bessel_j(0, R * x.norm());
}

// ---------------------------------------------------------------------------
// Compact pair evaluator
// ---------------------------------------------------------------------------

struct CompactSpherical::Impl {
  int n = 2;
  int ell = 0, s1 = 0, t = 0;
  int j1 = 0, j2 = 0;  // n = 3 tensor factors
  Eigen::MatrixXcd v;     // working-dim x d
  Eigen::MatrixXcd tred;  // d x d
  Eigen::MatrixXcd proj;
  std::vector<std::pair<int, int>> window;  // n = 3 weight window (p1, p2)

  // (D1 (x) D2) applied to the columns of v (scatter / gemm / gather).
  Eigen::MatrixXcd apply_tensor(const Eigen::MatrixXcd& d1,
                                const Eigen::MatrixXcd& d2) const {
    const int rows1 = 2 * j1 + 1, rows2 = 2 * j2 + 1;
    const int d = static_cast<int>(v.cols());
    Eigen::MatrixXcd out(static_cast<int>(window.size()), d);
    for (int c = 0; c < d; ++c) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows1, rows2);
      for (size_t i = 0; i < window.size(); ++i)
        m(window[i].first + j1, window[i].second + j2) = v(i, c);
      const Eigen::MatrixXcd mo = d1 * m * d2.transpose();
      for (size_t i = 0; i < window.size(); ++i)
        out(i, c) = mo(window[i].first + j1, window[i].second + j2);
    }
    return out;
  }
};

CompactSpherical::CompactSpherical(CompactRepLabel label, TauModel tau)
    : label_(label), tau_(std::move(tau)), proj_residual_(0.0) {
  const int n = label.n();
  if (n != tau_.n)
    throw std::invalid_argument("CompactSpherical: tau and label group mismatch");
  if (multiplicity(tau_.label, label.partition) != 1)
    throw std::invalid_argument(
        "CompactSpherical: multiplicity of tau in the representation is 0");
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->ell = label.ell();
  impl->t = tau_.label.first();

  if (n == 2) {
    const int ell = impl->ell;
    const int m = impl->t;  // signed SO(2) label
    // K acts diagonally in the Wigner basis of the adapted frame.
    auto k_action = [ell](const Rotation& k) -> Eigen::MatrixXcd {
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2 * ell + 1, 2 * ell + 1);
      const double th = k.angle();
      for (int q = -ell; q <= ell; ++q)
        a(q + ell, q + ell) = std::polar(1.0, -q * th);
      return a;
    };
    const QuadratureRule rule_p = quadrature(2, (ell + std::abs(m)) / 2 + 1);
    const ProjectionMatrix proj = projection_matrix(k_action, tau_, rule_p, 1);
    proj_residual_ = proj.idempotency_residual;
    impl->proj = proj.mat;
    impl->v = orthonormal_range(proj.mat, tau_.dim);
    const QuadratureRule rule_s = quadrature(2, std::abs(m) + 1);
    auto a_fn = [&](const Rotation& k) -> Eigen::MatrixXcd {
      return impl->v.adjoint() * k_action(k) * impl->v;
    };
    impl->tred = schur_reduced(a_fn, tau_, rule_s);
    impl_ = impl;
    return;
  }

  // n = 3: tensor model on the weight window |p1 + p2| <= tau_1.
  impl->s1 = label.partition.entry(1);
  if ((impl->ell + impl->s1) % 2 != 0)
    throw std::domain_error(
        "CompactSpherical: ell + sigma_1 is odd; the tensor basis carries no "
        "linear SO(4) model here -- use even-parity labels");
  impl->j1 = (impl->ell + impl->s1) / 2;
  impl->j2 = (impl->ell - impl->s1) / 2;
  const int j1 = impl->j1, j2 = impl->j2, t = impl->t;
  for (int p1 = -j1; p1 <= j1; ++p1)
    for (int p2 = -j2; p2 <= j2; ++p2)
      if (std::abs(p1 + p2) <= t) impl->window.emplace_back(p1, p2);
  const int wdim = static_cast<int>(impl->window.size());

  // P on the window by the exact alpha/gamma average (weight matching)
  // and Gauss-Legendre in cos(beta):
  //   P[(p1,p2),(q1,q2)] = d_tau sum_GL (w/2) d^t_{mm} d^{j1}_{p1q1} d^{j2}_{p2q2}
  // with m = p1+p2 = q1+q2.
  const auto [gx, gw] = detail::gauss_legendre((t + j1 + j2) / 2 + 2);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(wdim, wdim);
  for (size_t ib = 0; ib < gx.size(); ++ib) {
    const double beta = std::acos(gx[ib]);
    const Eigen::MatrixXd d1 = wigner_d_matrix(j1, beta);
    const Eigen::MatrixXd d2 = wigner_d_matrix(j2, beta);
    Eigen::VectorXd dt(2 * t + 1);
    for (int m = -t; m <= t; ++m) dt(m + t) = wigner_d_small(t, m, m, beta);
    const double w = 0.5 * gw[ib] * (2 * t + 1);
    for (int i = 0; i < wdim; ++i) {
      const auto [p1, p2] = impl->window[i];
      const int m = p1 + p2;
      for (int k = 0; k < wdim; ++k) {
        const auto [q1, q2] = impl->window[k];
        if (q1 + q2 != m) continue;
        p(i, k) += w * dt(m + t) * d1(p1 + j1, q1 + j1) * d2(p2 + j2, q2 + j2);
      }
    }
  }
  impl->proj = p;
  proj_residual_ = (p * p - p).norm();
  if (proj_residual_ > kProjTol)
    throw std::runtime_error(
        "CompactSpherical: window projection is not idempotent");
  impl->v = orthonormal_range(p, tau_.dim);

  const QuadratureRule rule_s = quadrature(3, 2 * t + 2);
  auto a_fn = [&](const Rotation& k) -> Eigen::MatrixXcd {
    const Eigen::Vector4d q = quat_from_rotation(Eigen::Matrix3d(k.matrix()));
    const auto [a, b] = su2_params(q);
    const Eigen::MatrixXcd d1 = wigner_matrix_su2(j1, a, b);
    const Eigen::MatrixXcd d2 = wigner_matrix_su2(j2, a, b);
    return impl->v.adjoint() * impl->apply_tensor(d1, d2);
  };
  impl->tred = schur_reduced(a_fn, tau_, rule_s);
  impl_ = impl;
}

SphericalValue CompactSpherical::value(const CompactElement& g) const {
  const Impl& im = *impl_;
  if (g.n() != im.n)
    throw std::invalid_argument("CompactSpherical::value: group size mismatch");
  Eigen::MatrixXcd b;
  if (im.n == 2) {
    const Eigen::Matrix3d& c = axis_adapter();
    const EulerZYZ e =
        euler_zyz(Eigen::Matrix3d(c * g.matrix() * c.transpose()));
    const int ell = im.ell;
    const int dim = 2 * ell + 1;
    const int d = static_cast<int>(im.v.cols());
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(dim, d);
    for (int col = 0; col < d; ++col) {
      int nnz = 0;
      for (int q = 0; q < dim; ++q)
        if (std::abs(im.v(q, col)) > 1e-12) ++nnz;
      if (nnz <= 8) {
        for (int q = 0; q < dim; ++q) {
          if (std::abs(im.v(q, col)) <= 1e-12) continue;
          const Eigen::VectorXd dcol = wigner_d_column(ell, q - ell, e.beta);
          w.col(col) += im.v(q, col) *
                        apply_phases(dcol, ell, e.alpha, -(q - ell) * e.gamma);
        }
      } else {
        w.col(col) = wigner_matrix(ell, e.alpha, e.beta, e.gamma) * im.v.col(col);
      }
    }
    b = im.v.adjoint() * w;
  } else {
    const QuaternionPair uv = lift_so4(g);
    const auto [au, bu] = su2_params(uv.u);
    const auto [av, bv] = su2_params(uv.v);
    const Eigen::MatrixXcd d1 = wigner_matrix_su2(im.j1, au, bu);
    const Eigen::MatrixXcd d2 = wigner_matrix_su2(im.j2, av, bv);
    b = im.v.adjoint() * im.apply_tensor(d1, d2);
  }
  return {im.tred * b * im.tred.adjoint()};
}

// ---------------------------------------------------------------------------
// Motion pair evaluator
// ---------------------------------------------------------------------------

struct MotionSpherical::Impl {
  int n = 2;
  int t = 0;  // tau_1 (signed for n = 2)
  int s = 0;  // sigma_1
  double R = 1.0;
  double max_radius = 2.0;
  std::vector<std::pair<int, int>> basis;  // n=2: (0,q); n=3: (j,q)
  Eigen::MatrixXcd v, tred, proj;

  // Fixed plane-wave rule with cached working-basis values at its nodes.
  std::vector<Rotation> bnodes;
  std::vector<double> bweights;
  Eigen::MatrixXcd bv;  // workdim x nodes: w_a(h) at the cached nodes
  Eigen::MatrixXcd f0;  // d x nodes: f_{v_i}(h) at the cached nodes

  Eigen::VectorXcd basis_values(const Rotation& h) const {
    Eigen::VectorXcd out(basis.size());
    if (n == 2) {
      const double th = h.angle();
      for (size_t i = 0; i < basis.size(); ++i)
        out(i) = std::polar(1.0, -basis[i].second * th);
      return out;
    }
    const EulerZYZ e = euler_zyz_adapted(h);
    for (size_t i = 0; i < basis.size(); ++i) {
      const auto [j, q] = basis[i];
      out(i) = std::sqrt(2.0 * j + 1.0) *
               wigner_d(j, q, s, e.alpha, e.beta, e.gamma);
    }
    return out;
  }

  Eigen::MatrixXcd k_action(const Rotation& k) const {
    const int dim = static_cast<int>(basis.size());
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    if (n == 2) {
      const double th = k.angle();
      for (int i = 0; i < dim; ++i)
        a(i, i) = std::polar(1.0, basis[i].second * th);
      return a;
    }
    // Left translation acts per j-block as conj(D^j(k)).
    const EulerZYZ e = euler_zyz_adapted(k);
    int off = 0;
    while (off < dim) {
      const int j = basis[off].first;
      a.block(off, off, 2 * j + 1, 2 * j + 1) =
          wigner_matrix(j, e.alpha, e.beta, e.gamma).conjugate();
      off += 2 * j + 1;
    }
    return a;
  }

  int plane_wave_count(double rnorm) const {
    return 2 * (std::abs(t) + static_cast<int>(std::ceil(R * rnorm)) + 32);
  }

  std::pair<std::vector<Rotation>, std::vector<double>> plane_wave_rule(
      double rnorm) const {
    std::vector<Rotation> nodes;
    std::vector<double> weights;
    if (n == 2) {
      const int m = plane_wave_count(rnorm);
      for (int i = 0; i < m; ++i) {
        nodes.push_back(Rotation::from_angle(2.0 * M_PI * i / m));
        weights.push_back(1.0 / m);
      }
    } else {
      const QuadratureRule r = quadrature(
          3, 2 * std::abs(t) + static_cast<int>(std::ceil(R * rnorm)) + 32);
      for (const auto& [k, w] : r.nodes) {
        nodes.push_back(k);
        weights.push_back(w);
      }
    }
    return {nodes, weights};
  }
};

MotionSpherical::MotionSpherical(MotionRepParams params, TauModel tau)
    : params_(params), tau_(std::move(tau)), proj_residual_(0.0) {
  if (params_.n != tau_.n)
    throw std::invalid_argument("MotionSpherical: tau and params group mismatch");
  // Throws "tau not contained" when m(sigma, tau) = 0.
  const IsotypicBasis iso = motion_isotypic_basis(tau_, params_.sigma);
  (void)iso;

  auto impl = std::make_shared<Impl>();
  impl->n = params_.n;
  impl->t = tau_.label.first();
  impl->s = params_.sigma.first();
  impl->R = params_.R;

  if (impl->n == 2) {
    const int qmax = std::abs(impl->t) + 2;
    for (int q = -qmax; q <= qmax; ++q) impl->basis.emplace_back(0, q);
  } else {
    for (int j = std::abs(impl->s); j <= impl->t + 2; ++j)
      for (int q = -j; q <= j; ++q) impl->basis.emplace_back(j, q);
  }

  auto k_action = [&impl](const Rotation& k) { return impl->k_action(k); };
  const QuadratureRule rule_p =
      impl->n == 2 ? quadrature(2, std::abs(impl->t) + 3)
                   : quadrature(3, 2 * std::abs(impl->t) + 5);
  const int mult = multiplicity(params_.sigma, tau_.label);
  const ProjectionMatrix proj = projection_matrix(k_action, tau_, rule_p, mult);
  proj_residual_ = proj.idempotency_residual;
  impl->proj = proj.mat;
  impl->v = orthonormal_range(proj.mat, tau_.dim);
  auto a_fn = [&](const Rotation& k) -> Eigen::MatrixXcd {
    return impl->v.adjoint() * impl->k_action(k) * impl->v;
  };
  impl->tred = schur_reduced(a_fn, tau_, rule_p);

  // Fixed plane-wave rule sized for the expected grid hull; values of the
  // working basis at its nodes are cached once.
  auto [nodes, weights] = impl->plane_wave_rule(impl->max_radius);
  impl->bnodes = std::move(nodes);
  impl->bweights = std::move(weights);
  impl->bv = Eigen::MatrixXcd(static_cast<int>(impl->basis.size()),
                              static_cast<int>(impl->bnodes.size()));
  for (size_t i = 0; i < impl->bnodes.size(); ++i)
    impl->bv.col(i) = impl->basis_values(impl->bnodes[i]);
  impl->f0 = impl->v.transpose() * impl->bv;
  impl_ = impl;
}

SphericalValue MotionSpherical::value(const MotionElement& g) const {
  const Impl& im = *impl_;
  if (g.n() != im.n)
    throw std::invalid_argument("MotionSpherical::value: group size mismatch");
  const double rnorm = g.x.norm();

  // B(i,j) = sum_h w e^{iR<h^{-1}x,e1>} f_{v_j}(k^{-1}h) conj(f_{v_i}(h))
  // with the shift pulled through the K-action:
  // f_{v_j}(k^{-1} h) = ((kappa(k) v)^T b(h)).
  const Eigen::MatrixXcd vk = im.k_action(g.k) * im.v;

  auto assemble = [&](const std::vector<Rotation>& nodes,
                      const std::vector<double>& weights,
                      const Eigen::MatrixXcd& bvmat,
                      const Eigen::MatrixXcd& f0) -> Eigen::MatrixXcd {
    const int count = static_cast<int>(nodes.size());
    Eigen::VectorXcd wphase(count);
    for (int i = 0; i < count; ++i) {
      const Eigen::VectorXd hx = nodes[i].matrix().transpose() * g.x;
      wphase(i) = std::polar(weights[i], im.R * hx(0));
    }
    const Eigen::MatrixXcd fk = vk.transpose() * bvmat;  // d x nodes
    return f0.conjugate() * wphase.asDiagonal() * fk.transpose();
  };

  Eigen::MatrixXcd b;
  if (rnorm <= im.max_radius + 1e-12) {
    b = assemble(im.bnodes, im.bweights, im.bv, im.f0);
  } else {
    auto [nodes, weights] = im.plane_wave_rule(rnorm);
    Eigen::MatrixXcd bvmat(static_cast<int>(im.basis.size()),
                           static_cast<int>(nodes.size()));
    for (size_t i = 0; i < nodes.size(); ++i)
      bvmat.col(i) = im.basis_values(nodes[i]);
    b = assemble(nodes, weights, bvmat, im.v.transpose() * bvmat);
  }
  return {im.tred * b * im.tred.adjoint()};
}

// ---------------------------------------------------------------------------
// Lorentz pair evaluator
// ---------------------------------------------------------------------------

struct LorentzSpherical::Impl {
  int m = 0;  // tau label
  double phi = 1.0, nu = 0.5;
  std::vector<int> qs;
  Eigen::MatrixXcd v, tred, proj;

  Eigen::VectorXcd basis_values(const Rotation& h) const {
    const double th = h.angle();
    Eigen::VectorXcd out(qs.size());
    for (size_t i = 0; i < qs.size(); ++i)
      out(i) = std::polar(1.0, -qs[i] * th);
    return out;
  }

  Eigen::MatrixXcd k_action(const Rotation& k) const {
    const double th = k.angle();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(qs.size(), qs.size());
    for (size_t i = 0; i < qs.size(); ++i)
      a(i, i) = std::polar(1.0, qs[i] * th);
    return a;
  }
};

LorentzSpherical::LorentzSpherical(PrincipalSeriesParams params, TauModel tau)
    : params_(params), tau_(std::move(tau)), proj_residual_(0.0) {
  if (tau_.n != 2)
    throw std::invalid_argument("LorentzSpherical: tau must label SO(2)");
  auto impl = std::make_shared<Impl>();
  impl->m = tau_.label.first();
  impl->phi = params_.phi;
  impl->nu = params_.nu;
  for (int q = -(std::abs(impl->m) + 2); q <= std::abs(impl->m) + 2; ++q)
    impl->qs.push_back(q);

  auto k_action = [&impl](const Rotation& k) { return impl->k_action(k); };
  const QuadratureRule rule_p = quadrature(2, std::abs(impl->m) + 3);
  // sigma is the trivial label of the trivial M ~ SO(1): m(sigma, tau) = 1.
  const int mult = multiplicity(Partition({}, 1), tau_.label);
  const ProjectionMatrix proj = projection_matrix(k_action, tau_, rule_p, mult);
  proj_residual_ = proj.idempotency_residual;
  impl->proj = proj.mat;
  impl->v = orthonormal_range(proj.mat, tau_.dim);
  auto a_fn = [&](const Rotation& k) -> Eigen::MatrixXcd {
    return impl->v.adjoint() * impl->k_action(k) * impl->v;
  };
  impl->tred = schur_reduced(a_fn, tau_, rule_p);
  impl_ = impl;
}

SphericalValue LorentzSpherical::value(const LorentzElement& g) const {
  const Impl& im = *impl_;
  const int d = tau_.dim;
  // Oscillation rate of e^{-i phi t'(theta)} grows with the boost part.
  const double boost = cartan_log(g).x.norm();
  const int count =
      2 * (std::abs(im.m) +
           static_cast<int>(std::ceil(std::abs(im.phi) * std::sinh(boost) *
                                      std::cosh(boost))) +
           32);
  const LorentzElement ginv = g.inverse();
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < count; ++i) {
    const Rotation k = Rotation::from_angle(2.0 * M_PI * i / count);
    const IwasawaFactors fac = iwasawa_so21(ginv * LorentzElement::embed(k));
    const Cplx factor = std::exp(Cplx(im.nu * fac.t, -im.phi * fac.t)) / double(count);
    const Eigen::VectorXcd f0 = im.v.transpose() * im.basis_values(k);
    const Eigen::VectorXcd fshift = im.v.transpose() * im.basis_values(fac.k);
    b += factor * f0.conjugate() * fshift.transpose();
  }
  return {im.tred * b * im.tred.adjoint()};
}

SphericalValue spherical_value(const CompactRepLabel& rep, const TauModel& tau,
                               const CompactElement& g) {
  return CompactSpherical(rep, tau).value(g);
}

SphericalValue spherical_value(const MotionRepParams& rep, const TauModel& tau,
                               const MotionElement& g) {
  return MotionSpherical(rep, tau).value(g);
}

SphericalValue spherical_value(const PrincipalSeriesParams& rep,
                               const TauModel& tau, const LorentzElement& g) {
  return LorentzSpherical(rep, tau).value(g);
}

}  // namespace sphc
