// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra used throughout the library. Matrices are
// plain Eigen dynamic matrices; this header adds the handful of conventions
// the channel code depends on (column-stacking vec, Kronecker ordering,
// numerical rank cutoff, generalized Gell-Mann basis).
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace phasekit {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Cutoff for "numerically zero" singular values:
//   sigma > max(absolute_floor, relative_factor * sigma_max).
// When relative_factor is unset it defaults to max(rows, cols) * eps.
struct RankTolerance {
  double absolute_floor = 1e-10;
  std::optional<double> relative_factor;

  RankTolerance() = default;
  explicit RankTolerance(double floor, std::optional<double> relative = std::nullopt);

  double threshold(std::size_t rows, std::size_t cols, double sigma_max) const;
};

CMat dagger(const CMat& m);
CMat kron(const CMat& a, const CMat& b);

// Column stacking: entry (a, b) lands at index b * rows + a.
CVec vec(const CMat& x);
CMat unvec(const CVec& v, Eigen::Index rows, Eigen::Index cols);

// Hilbert-Schmidt inner product <x, y> = Tr(x^* y).
cplx hs_inner(const CMat& x, const CMat& y);
double hs_norm(const CMat& x);

// Largest absolute entry of m - m^*.
double hermiticity_defect(const CMat& m);
bool is_unitary(const CMat& u, double tol = 1e-8);

struct HermEig {
  RVec values;   // ascending
  CMat vectors;  // columns are eigenvectors
};

// Throws NotHermitian when the largest entry of h - h^* reaches hermitian_tol.
// The input is symmetrized before factorization.
HermEig herm_eig(const CMat& h, double hermitian_tol = 1e-8);

RVec singular_values(const CMat& m);
std::size_t numerical_rank(const CMat& m, const RankTolerance& tol = {});
std::size_t numerical_rank(const RMat& m, const RankTolerance& tol = {});

struct HermitianBasis {
  std::size_t dim = 0;
  // dim^2 orthonormal Hermitian elements; element 0 is I/sqrt(dim).
  std::vector<CMat> elements;

  // Real coordinates <E_k, x> for k = first..dim^2-1.
  RVec coords(const CMat& x, std::size_t first = 0) const;
  // sum_k c_k E_{first + k}
  CMat combine(const RVec& c, std::size_t first = 0) const;
};

// Generalized Gell-Mann basis: I/sqrt(d), then symmetric pairs
// (E_ab + E_ba)/sqrt2 for a<b, then antisymmetric pairs (-iE_ab + iE_ba)/sqrt2
// for a<b, then the d-1 diagonal traceless elements.
HermitianBasis gell_mann_basis(std::size_t d);

// Haar-random unitary via QR of a complex Ginibre matrix.
CMat random_unitary(std::size_t d, std::mt19937_64& rng);
CMat random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
// Random density matrix G G^* / Tr(G G^*) with square Ginibre G.
CMat random_density(std::size_t d, std::mt19937_64& rng);
CVec random_unit_vector(std::size_t d, std::mt19937_64& rng);

}  // namespace phasekit
