#include "sphcontract/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphc {

namespace {

constexpr int kFactorialSumMaxJ = 20;  // factorial sum loses ~2^j * eps
constexpr int kLogFactorialSize = 8192;

// Fixed log-factorial table, built once and read-only afterwards so that
// concurrent evaluation never observes a growing container.
double log_factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogFactorialSize);
    t[0] = 0.0;
    for (int i = 1; i < kLogFactorialSize; ++i)
      t[i] = t[i - 1] + std::log(double(i));
    return t;
  }();
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  if (n >= kLogFactorialSize)
    throw std::invalid_argument("log_factorial: argument beyond table size");
  return table[n];
}

void check_wigner_indices(int j, int p, int q) {
  if (j < 0) throw std::invalid_argument("wigner_d: j must be >= 0");
  if (std::abs(p) > j || std::abs(q) > j)
    throw std::invalid_argument("wigner_d: |p|,|q| must be <= j");
}

// Seed d^{j0}_{pq} at j0 = max(|p|,|q|), closed forms:
//   d^j_{p, j} = sqrt(C(2j, j-p)) c^{j+p} s^{j-p}
//   d^j_{p,-j} = (-1)^{j+p} sqrt(C(2j, j-p)) s^{j+p} c^{j-p}
//   d^j_{ j,q} = (-1)^{j-q} d^j_{q, j}
//   d^j_{-j,q} = d^j_{-q, j}
double wigner_seed(int p, int q, double c, double s) {
  const int j0 = std::max(std::abs(p), std::abs(q));
  if (j0 == 0) return 1.0;
  auto row_top = [&](int pp) {  // d^{j0}_{pp, j0}
    const double logc =
        0.5 * (log_factorial(2 * j0) - log_factorial(j0 - pp) -
               log_factorial(j0 + pp));
    return std::exp(logc) * std::pow(c, j0 + pp) * std::pow(s, j0 - pp);
  };
  if (q == j0) return row_top(p);
  if (q == -j0) return ((j0 + p) % 2 ? -1.0 : 1.0) *
                       std::exp(0.5 * (log_factorial(2 * j0) -
                                       log_factorial(j0 - p) -
                                       log_factorial(j0 + p))) *
                       std::pow(s, j0 + p) * std::pow(c, j0 - p);
  if (p == j0) return ((j0 - q) % 2 ? -1.0 : 1.0) * row_top(q);
  // p == -j0
  return row_top(-q);
}

// Three-term recurrence in j at fixed (p,q):
//   x d^j = A_j d^{j-1} + B_j d^j + C_j d^{j+1},
//   A_j = sqrt((j^2-p^2)(j^2-q^2)) / (j(2j+1)),
//   B_j = p q / (j(j+1)),
//   C_j = sqrt(((j+1)^2-p^2)((j+1)^2-q^2)) / ((j+1)(2j+1)).
// Self-starting at j0 = max(|p|,|q|) because A_{j0} vanishes.
double wigner_recurrence(int j, int p, int q, double beta) {
  const int j0 = std::max(std::abs(p), std::abs(q));
  const double x = std::cos(beta);
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  double dm = 0.0;                     // d^{jj-1}
  double d0 = wigner_seed(p, q, c, s); // d^{jj}
  for (int jj = j0; jj < j; ++jj) {
    const double denom = double(jj + 1) * (2 * jj + 1);
    const double A =
        jj > 0 ? std::sqrt(double(jj * jj - p * p) * (jj * jj - q * q)) /
                     (double(jj) * (2 * jj + 1))
               : 0.0;
    const double B = jj > 0 ? double(p) * q / (double(jj) * (jj + 1)) : 0.0;
    const double C =
        std::sqrt(double((jj + 1) * (jj + 1) - p * p) *
                  double((jj + 1) * (jj + 1) - q * q)) /
        denom;
    const double dp = ((x - B) * d0 - A * dm) / C;
    dm = d0;
    d0 = dp;
  }
  return d0;
}

}  // namespace

double jacobi_p(int degree, double alpha, double beta, double x) {
  if (degree < 0) throw std::invalid_argument("jacobi_p: degree must be >= 0");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw std::invalid_argument("jacobi_p: alpha, beta must be > -1");
  if (!(x >= -1.0 && x <= 1.0))
    throw std::invalid_argument("jacobi_p: x must lie in [-1,1]");

  if (degree == 0) return 1.0;
  const double ab = alpha + beta;
  double pm = 1.0;
  double p0 = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
  for (int k = 1; k < degree; ++k) {
    // 2(k+1)(k+ab+1)(2k+ab) P_{k+1} =
    //   (2k+ab+1)[(2k+ab)(2k+ab+2) x + alpha^2 - beta^2] P_k
    //   - 2(k+alpha)(k+beta)(2k+ab+2) P_{k-1}
    const double a2k = 2.0 * k + ab;
    const double c0 = 2.0 * (k + 1.0) * (k + ab + 1.0) * a2k;
    const double c1 = (a2k + 1.0) * (alpha * alpha - beta * beta);
    const double c2 = (a2k + 1.0) * a2k * (a2k + 2.0);
    const double c3 = 2.0 * (k + alpha) * (k + beta) * (a2k + 2.0);
    const double p1 = ((c2 * x + c1) * p0 - c3 * pm) / c0;
    pm = p0;
    p0 = p1;
  }
  return p0;
}

double bessel_j_normalized(double order, double z, const EvalConfig& cfg) {
  if (!(order >= 0.0)) throw std::invalid_argument("bessel_j: order must be >= 0");
  if (!(z >= 0.0)) throw std::invalid_argument("bessel_j: z must be >= 0");
  if (!(cfg.series_tol > 0.0) || cfg.max_terms < 50)
    throw std::invalid_argument("bessel_j: invalid EvalConfig");

  // J_nu(z)/(z/2)^nu = sum_k (-1)^k (z^2/4)^k / (k! Gamma(nu+k+1))
  const double w = 0.25 * z * z;
  double term = 1.0 / std::tgamma(order + 1.0);
  double sum = term;
  for (int k = 1; k <= cfg.max_terms; ++k) {
    term *= -w / (k * (order + k));
    sum += term;
    if (std::abs(term) < cfg.series_tol) return sum;
  }
  throw std::domain_error("bessel_j: series did not converge within max_terms");
}

double bessel_j(double order, double z, const EvalConfig& cfg) {
  const double norm = bessel_j_normalized(order, z, cfg);
  if (order == 0.0) return norm;
  return std::pow(0.5 * z, order) * norm;
}

double wigner_d_sum(int j, int p, int q, double beta) {
  check_wigner_indices(j, p, q);
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  const double logn = 0.5 * (log_factorial(j + p) + log_factorial(j - p) +
                             log_factorial(j + q) + log_factorial(j - q));
  const int kmin = std::max(0, q - p);
  const int kmax = std::min(j + q, j - p);
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    // d^j_{pq} = N sum_k (-1)^{p-q+k} c^{2j+q-p-2k} s^{p-q+2k} /
    //            [(j+q-k)! k! (p-q+k)! (j-p-k)!]
    const double logden = log_factorial(j + q - k) + log_factorial(k) +
                          log_factorial(p - q + k) + log_factorial(j - p - k);
    const double mag = std::exp(logn - logden) *
                       std::pow(c, 2 * j + q - p - 2 * k) *
                       std::pow(s, p - q + 2 * k);
    sum += ((p - q + k) % 2 ? -mag : mag);
  }
  return sum;
}

double wigner_d_small(int j, int p, int q, double beta) {
  check_wigner_indices(j, p, q);
  if (j <= kFactorialSumMaxJ) return wigner_d_sum(j, p, q, beta);
  return wigner_recurrence(j, p, q, beta);
}

std::complex<double> wigner_d(int j, int p, int q, double alpha, double beta,
                              double gamma) {
  const double d = wigner_d_small(j, p, q, beta);
  return std::polar(d, -(p * alpha + q * gamma));
}

Eigen::VectorXd wigner_d_column(int j, int q, double beta) {
  check_wigner_indices(j, q, q);
  Eigen::VectorXd col(2 * j + 1);
  for (int p = -j; p <= j; ++p) col[p + j] = wigner_d_small(j, p, q, beta);
  return col;
}

Eigen::MatrixXd wigner_d_matrix(int j, double beta) {
  Eigen::MatrixXd d(2 * j + 1, 2 * j + 1);
  for (int q = -j; q <= j; ++q) {
    // d_{pq} = (-1)^{p-q} d_{qp}; fill the lower wedge and reflect.
    for (int p = q; p <= j; ++p) {
      const double v = wigner_d_small(j, p, q, beta);
      d(p + j, q + j) = v;
      d(q + j, p + j) = ((p - q) % 2 ? -v : v);
    }
  }
  return d;
}

Eigen::MatrixXcd wigner_matrix(int j, double alpha, double beta, double gamma) {
  const Eigen::MatrixXd d = wigner_d_matrix(j, beta);
  Eigen::MatrixXcd D(2 * j + 1, 2 * j + 1);
  for (int p = -j; p <= j; ++p)
    for (int q = -j; q <= j; ++q)
      D(p + j, q + j) = std::polar(d(p + j, q + j), -(p * alpha + q * gamma));
  return D;
}

Eigen::MatrixXcd wigner_matrix_su2(int j, std::complex<double> a,
                                   std::complex<double> b) {
  // U = Uz(xi) Uy(beta) Uz(zeta) with
  //   a = cos(beta/2) e^{-i(xi+zeta)/2},  b = -sin(beta/2) e^{-i(xi-zeta)/2}.
  // For integer j the phases are well defined from the principal args.
  const double beta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  const double s = std::abs(a) > 0 ? -2.0 * std::arg(a) : 0.0;  // xi + zeta
  const double d = std::abs(b) > 0 ? -2.0 * std::arg(-b) : 0.0; // xi - zeta
  const Eigen::MatrixXd dm = wigner_d_matrix(j, beta);
  Eigen::MatrixXcd D(2 * j + 1, 2 * j + 1);
  for (int p = -j; p <= j; ++p)
    for (int q = -j; q <= j; ++q)
      D(p + j, q + j) =
          std::polar(dm(p + j, q + j), -0.5 * ((p + q) * s + (p - q) * d));
  return D;
}

double mehler_heine_error(int degree, double alpha, double beta,
                          const std::vector<double>& z_grid) {
  if (degree < 1)
    throw std::invalid_argument("mehler_heine_error: degree must be >= 1");
  if (z_grid.empty())
    throw std::invalid_argument("mehler_heine_error: empty grid");
  double worst = 0.0;
  const double scale = std::pow(double(degree), -alpha);
  for (double z : z_grid) {
    if (!(z > 0.0 && z <= 10.0))
      throw std::invalid_argument("mehler_heine_error: z must lie in (0,10]");
    const double lhs = jacobi_p(degree, alpha, beta, std::cos(z / degree)) * scale;
    const double rhs = bessel_j_normalized(alpha, z);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace sphc
