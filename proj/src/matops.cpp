// SPDX-License-Identifier: Apache-2.0
#include "phasekit/matops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phasekit/error.hpp"

namespace phasekit {

RankTolerance::RankTolerance(double floor, std::optional<double> relative)
    : absolute_floor(floor), relative_factor(relative) {
  if (!(floor > 0.0) || (relative && !(*relative > 0.0))) {
    throw Error(ErrorKind::DomainError, "rank tolerances must be strictly positive");
  }
}

double RankTolerance::threshold(std::size_t rows, std::size_t cols, double sigma_max) const {
  const double rel = relative_factor.value_or(
      static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon());
  return std::max(absolute_floor, rel * sigma_max);
}

CMat dagger(const CMat& m) { return m.adjoint(); }

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVec vec(const CMat& x) {
  CVec v(x.size());
  for (Eigen::Index b = 0; b < x.cols(); ++b) {
    for (Eigen::Index a = 0; a < x.rows(); ++a) v(b * x.rows() + a) = x(a, b);
  }
  return v;
}

CMat unvec(const CVec& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch, "unvec: length does not match rows*cols");
  }
  CMat x(rows, cols);
  for (Eigen::Index b = 0; b < cols; ++b) {
    for (Eigen::Index a = 0; a < rows; ++a) x(a, b) = v(b * rows + a);
  }
  return x;
}

cplx hs_inner(const CMat& x, const CMat& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "hs_inner: shapes differ");
  }
  return (x.adjoint() * y).trace();
}

double hs_norm(const CMat& x) { return x.norm(); }

double hermiticity_defect(const CMat& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_unitary(const CMat& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const CMat g = u.adjoint() * u - CMat::Identity(u.rows(), u.cols());
  return g.size() == 0 || g.cwiseAbs().maxCoeff() < tol;
}

HermEig herm_eig(const CMat& h, double hermitian_tol) {
  if (h.rows() != h.cols()) throw Error(ErrorKind::NotHermitian, "herm_eig: matrix is not square");
  if (!(hermiticity_defect(h) < hermitian_tol)) {
    throw Error(ErrorKind::NotHermitian, "herm_eig: |h - h^*| exceeds tolerance");
  }
  const CMat sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "herm_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVec singular_values(const CMat& m) {
  if (m.size() == 0) return RVec();
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues();
}

namespace {

template <typename Mat>
std::size_t rank_of(const Mat& m, const RankTolerance& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  const double cut = tol.threshold(m.rows(), m.cols(), s.size() ? s(0) : 0.0);
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cut) ++r;
  }
  return r;
}

}  // namespace

std::size_t numerical_rank(const CMat& m, const RankTolerance& tol) { return rank_of(m, tol); }
std::size_t numerical_rank(const RMat& m, const RankTolerance& tol) { return rank_of(m, tol); }

RVec HermitianBasis::coords(const CMat& x, std::size_t first) const {
  RVec c(static_cast<Eigen::Index>(elements.size() - first));
  for (std::size_t k = first; k < elements.size(); ++k) {
    c(static_cast<Eigen::Index>(k - first)) = hs_inner(elements[k], x).real();
  }
  return c;
}

CMat HermitianBasis::combine(const RVec& c, std::size_t first) const {
  CMat x = CMat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    x += c(k) * elements[first + static_cast<std::size_t>(k)];
  }
  return x;
}

HermitianBasis gell_mann_basis(std::size_t d) {
  if (d < 1) throw Error(ErrorKind::DomainError, "gell_mann_basis: d must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const cplx i(0.0, 1.0);

  HermitianBasis basis;
  basis.dim = d;
  basis.elements.reserve(d * d);
  basis.elements.push_back(CMat::Identity(n, n) / std::sqrt(static_cast<double>(d)));

  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      CMat e = CMat::Zero(n, n);
      e(a, b) = inv_sqrt2;
      e(b, a) = inv_sqrt2;
      basis.elements.push_back(std::move(e));
    }
  }
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      CMat e = CMat::Zero(n, n);
      e(a, b) = -i * inv_sqrt2;
      e(b, a) = i * inv_sqrt2;
      basis.elements.push_back(std::move(e));
    }
  }
  for (Eigen::Index k = 1; k < n; ++k) {
    CMat e = CMat::Zero(n, n);
    const double scale = std::sqrt(1.0 / static_cast<double>(k * (k + 1)));
    for (Eigen::Index j = 0; j < k; ++j) e(j, j) = scale;
    e(k, k) = -static_cast<double>(k) * scale;
    basis.elements.push_back(std::move(e));
  }
  return basis;
}

CMat random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMat g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

CMat random_unitary(std::size_t d, std::mt19937_64& rng) {
  const CMat g = random_gaussian(d, d, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

CMat random_density(std::size_t d, std::mt19937_64& rng) {
  const CMat g = random_gaussian(d, d, rng);
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

CVec random_unit_vector(std::size_t d, std::mt19937_64& rng) {
  CVec v = random_gaussian(d, 1, rng).col(0);
  return v / v.norm();
}

}  // namespace phasekit
