// SPDX-License-Identifier: Apache-2.0
//
// Two-arm interferometric coupling of Kraus families. Port-0 of a balanced
// interferometer with arms A, B and phase theta has physical Kraus operators
// (A_i + e^{i theta} B_i) / 2. The coupling depends on the chosen Kraus
// realizations: mixing the operators of one arm changes the port map even
// though the arm channel is unchanged.
#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "phasekit/channels.hpp"

namespace phasekit {

// Pads both families with zero operators to a common length. Throws
// DimensionMismatch when the operator shapes differ.
std::pair<KrausFamily, KrausFamily> align_arms(const KrausFamily& a, const KrausFamily& b);

struct CouplingSpec {
  std::vector<cplx> coefficients;
};

// {A_i + c_i B_i}, no normalization. Coefficient count must equal the padded
// family length.
KrausFamily couple(const KrausFamily& a, const KrausFamily& b, const CouplingSpec& spec);

class PortMap {
 public:
  PortMap(const KrausFamily& a, const KrausFamily& b, double theta);

  const KrausFamily& arm_a() const { return arm_a_; }
  const KrausFamily& arm_b() const { return arm_b_; }
  double theta() const { return theta_; }
  // Physical Kraus operators (A_i + e^{i theta} B_i) / 2.
  const KrausFamily& family() const { return family_; }
  // T = sum A_i^* B_i
  const CMat& t_cross() const { return t_cross_; }
  // Unnormalized port operators M_i = A_i + e^{i theta} B_i.
  std::vector<CMat> unnormalized_ops() const;
  // sum M_i^* M_i, computed directly from the port operators.
  CMat port_frame_operator() const;

  CMat apply(const CMat& rho) const { return phasekit::apply(family_, rho); }

 private:
  PortMap(std::pair<KrausFamily, KrausFamily> arms, double theta);

  KrausFamily arm_a_;
  KrausFamily arm_b_;
  double theta_;
  KrausFamily family_;
  CMat t_cross_;
};

PortMap port_map(const KrausFamily& a, const KrausFamily& b, double theta);

CMat cross_operator(const KrausFamily& a, const KrausFamily& b);

// 2I + e^{i theta} T + e^{-i theta} T^*. Both arms must be Parseval.
CMat e_theta(const KrausFamily& a, const KrausFamily& b, double theta);

struct FrameCheck {
  bool frame_ok = false;
  double lambda_min = 0.0;     // smallest eigenvalue of E_theta
  double spectral_gap = 0.0;   // min_k |sigma_k(T) + e^{-i theta}|
  bool spectral_ok = false;    // spectral_gap > tolerance
};

FrameCheck frame_check(const KrausFamily& a, const KrausFamily& b, double theta, const RankTolerance& tol = {});
bool is_frame(const KrausFamily& a, const KrausFamily& b, double theta, const RankTolerance& tol = {});

// Phases in [0, 2pi) at which E_theta is singular: theta = arg(-conj(lambda))
// for every eigenvalue lambda of T with ||lambda| - 1| < unimodular_tol.
std::vector<double> degenerate_thetas(const KrausFamily& a, const KrausFamily& b, double unimodular_tol = 1e-8);

struct PortAdjointParts {
  CMat total;      // Psi_theta^*(X)
  CMat arm_a;      // Phi_A^*(X)
  CMat arm_b;      // Phi_B^*(X)
  CMat cross_ab;   // sum A_i^* X B_i
  CMat cross_ba;   // sum B_i^* X A_i
};

PortAdjointParts port_adjoint_decomposition(const KrausFamily& a, const KrausFamily& b, double theta, const CMat& x);

// sum M^T (x) M^* = aa + bb + e^{-i theta} ab + e^{i theta} ba
struct PortRankExpansion {
  CMat aa;  // sum A^T (x) A^*
  CMat bb;  // sum B^T (x) B^*
  CMat ab;  // sum A^T (x) B^*
  CMat ba;  // sum B^T (x) A^*
  double theta = 0.0;

  CMat combined() const;
};

PortRankExpansion port_rank_expansion(const KrausFamily& a, const KrausFamily& b, double theta);
// sum M_i^T (x) M_i^* built directly from the port operators.
CMat port_rank_matrix(const KrausFamily& a, const KrausFamily& b, double theta);
std::size_t port_system_dim(const KrausFamily& a, const KrausFamily& b, double theta, const RankTolerance& tol = {});

// {sqrt(p) A_i} followed by {sqrt(1-p) B_i}.
KrausFamily classical_mix(const KrausFamily& a, const KrausFamily& b, double p);

// dim(S_A + S_B) = rank [K_A | K_B] with K_X = sum X^T (x) X^*.
std::size_t arm_sum_system_dim(const KrausFamily& a, const KrausFamily& b, const RankTolerance& tol = {});

struct Visibility {
  double v = 0.0;
  double alpha = 0.0;
  // Port-0 detection probability (1 + v cos(theta - alpha)) / 2.
  double p0(double theta) const;
};

// v e^{i alpha} = Tr(rho U_A^* U_B)
Visibility visibility(const DensityMatrix& rho, const CMat& u_a, const CMat& u_b);

}  // namespace phasekit
