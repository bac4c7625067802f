#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace sphc {

/// Truncation control for series evaluations.
struct EvalConfig {
  double series_tol = 1e-16;  // absolute tail tolerance
  int max_terms = 400;
};

/// Jacobi polynomial P_N^{(alpha,beta)}(x) by the three-term recurrence.
/// Requires N >= 0, alpha > -1, beta > -1, x in [-1,1].
double jacobi_p(int degree, double alpha, double beta, double x);

/// Bessel function of the first kind J_nu(z) by the ascending series.
/// Accurate to ~1e-10 absolute for z <= 20 (the alternating series loses
/// roughly e^z * eps in absolute terms; no asymptotic branch is provided).
/// Requires nu >= 0, z >= 0; throws on non-convergence within max_terms.
double bessel_j(double order, double z, const EvalConfig& cfg = {});

/// J_nu(z) / (z/2)^nu, evaluated by its own series; finite at z = 0 where
/// it equals 1/Gamma(nu+1).
double bessel_j_normalized(double order, double z, const EvalConfig& cfg = {});

/// Wigner small-d matrix element d^j_{pq}(beta).  Dispatches between the
/// factorial sum (small j) and the three-term recurrence in j (large j);
/// see wigner_d_sum for the reference formula.
double wigner_d_small(int j, int p, int q, double beta);

/// Reference factorial-sum evaluation of d^j_{pq}(beta).  Exact formula,
/// but forward-unstable for large j (the alternating terms grow like 2^j);
/// kept as an independent cross-check for moderate j.
double wigner_d_sum(int j, int p, int q, double beta);

/// Full Wigner D-matrix element in the zyz convention,
///   D^j_{pq}(alpha,beta,gamma) = e^{-i p alpha} d^j_{pq}(beta) e^{-i q gamma}.
std::complex<double> wigner_d(int j, int p, int q, double alpha, double beta,
                              double gamma);

/// Column q of the small-d matrix: (d^j_{pq}(beta))_{p=-j..j}.
Eigen::VectorXd wigner_d_column(int j, int q, double beta);

/// Dense small-d matrix d^j(beta), indexed (p+j, q+j).
Eigen::MatrixXd wigner_d_matrix(int j, double beta);

/// Dense D^j(alpha,beta,gamma), indexed (p+j, q+j).
Eigen::MatrixXcd wigner_matrix(int j, double alpha, double beta, double gamma);

/// D^j evaluated on SU(2) through the Cayley-Klein parameters (a, b) of
/// U = [[a, b], [-conj(b), conj(a)]].  Only integer j is supported; the
/// result is then independent of the quaternion sign.
Eigen::MatrixXcd wigner_matrix_su2(int j, std::complex<double> a,
                                   std::complex<double> b);

/// max over z_grid of |P_N^{(alpha,beta)}(cos(z/N)) / N^alpha
///                    - J_alpha(z) / (z/2)^alpha|.
/// Requires N >= 1 and z_grid nonempty with entries in (0, 10].
double mehler_heine_error(int degree, double alpha, double beta,
                          const std::vector<double>& z_grid);

}  // namespace sphc
