// SPDX-License-Identifier: Apache-2.0
//
// Kraus families and the maps they generate. A KrausFamily is any ordered
// list of equally shaped operators H -> K; trace preservation is a property
// that is reported, not enforced, since interferometric port maps are CP but
// not TP.
#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "json.hpp"

#include "phasekit/matops.hpp"

namespace phasekit {

class KrausFamily {
 public:
  // ops must be nonempty, equally shaped and finite.
  explicit KrausFamily(std::vector<CMat> ops);

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  std::size_t size() const { return ops_.size(); }
  const std::vector<CMat>& ops() const { return ops_; }
  const CMat& operator[](std::size_t i) const { return ops_[i]; }

  // Frobenius norm of sum A_i^* A_i - I.
  double trace_defect() const;
  bool is_trace_preserving(double tol = 1e-8) const { return trace_defect() < tol; }

 private:
  std::size_t in_dim_;
  std::size_t out_dim_;
  std::vector<CMat> ops_;
};

class DensityMatrix {
 public:
  // Validates Hermiticity, eigenvalues >= -1e-10 and unit trace (1e-10).
  explicit DensityMatrix(CMat mat);
  static DensityMatrix from_pure(const CVec& x);

  std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
  const CMat& mat() const { return mat_; }

 private:
  CMat mat_;
};

class PureState {
 public:
  // Rejects vectors whose norm differs from 1 by 1e-12 or more.
  explicit PureState(CVec vec);
  static PureState normalized(const CVec& v);

  std::size_t dim() const { return static_cast<std::size_t>(vec_.size()); }
  const CVec& vec() const { return vec_; }
  CMat projector() const { return vec_ * vec_.adjoint(); }

 private:
  CVec vec_;
};

// rho -> sum A_i rho A_i^*
CMat apply(const KrausFamily& phi, const CMat& rho);
// x -> sum A_i^* x A_i
CMat adjoint_apply(const KrausFamily& phi, const CMat& x);
// sum A_i^* A_i
CMat frame_operator(const KrausFamily& fam);
double parseval_defect(const KrausFamily& fam);
bool is_parseval(const KrausFamily& fam, double tol = 1e-8);

// A'_i = sum_j u_ij A_j. If u is larger than the family, the family is padded
// with zero operators first.
KrausFamily mix_kraus(const KrausFamily& fam, const CMat& u);

// (n*m) x d matrix whose i-th n x d row block is A_i, i.e. row index i*n + k
// (environment-major). V^* V equals the frame operator.
CMat stinespring(const KrausFamily& fam);

// Canonical complementary family R_a = sum_i |i><a| A_i, a = 0..n-1. Each
// R_a is m x d with row i equal to row a of A_i.
KrausFamily complementary(const KrausFamily& fam);

// Appends zero operators until the family has m elements.
KrausFamily pad(const KrausFamily& fam, std::size_t m);

// Haar-like random TP channel: orthonormalize the columns of an (n*m) x d
// complex Gaussian matrix and slice it into m blocks. Requires n*m >= d.
KrausFamily random_channel(std::size_t d, std::size_t n, std::size_t m, std::mt19937_64& rng);
// Random (generally non-TP) CP map with Gaussian Kraus operators.
KrausFamily random_cp_map(std::size_t d, std::size_t n, std::size_t m, std::mt19937_64& rng);

// {"in_dim": d, "out_dim": n, "ops": [ [[ [re,im], ... ], ...], ... ]}
nlohmann::json to_json(const KrausFamily& fam);
KrausFamily kraus_from_json(const nlohmann::json& j);

}  // namespace phasekit
