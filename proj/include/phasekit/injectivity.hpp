// SPDX-License-Identifier: Apache-2.0
//
// Quantitative injectivity of CP maps on the traceless Hermitian sector.
//
// For a map Phi: B(C^d) -> B(C^n) the transfer matrix T has entries
// <G_mu, Phi(F_i)> where {F_i} is an orthonormal basis of the traceless
// Hermitians on C^d and {G_mu} one of all Hermitians on C^n. Then
//
//   I(Phi)      = sigma_min(T)                  (CP injectivity)
//   I_av(Phi)   = ||T||_F / sqrt(d^2 - 1)       (average injectivity)
//   ||Phi||_0→2 = sigma_max(T)
//
// and I(Phi) > 0 iff Phi is injective on density matrices. For qubits this
// is also equivalent to injectivity on pure states; for d >= 3 pure-state
// injectivity is probed numerically by pure_collision_search.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "phasekit/channels.hpp"

namespace phasekit {

struct TransferMatrix {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  RMat mat;  // (n^2) x (d^2 - 1)
  HermitianBasis basis_in;
  HermitianBasis basis_out;
};

// Gell-Mann bases on both sides. Requires in_dim >= 2.
TransferMatrix transfer_matrix(const KrausFamily& fam);
// Caller-supplied orthonormal bases; element 0 of basis_in is skipped and the
// rest must span the traceless sector.
TransferMatrix transfer_matrix(const KrausFamily& fam, const HermitianBasis& basis_in, const HermitianBasis& basis_out);

double cp_injectivity(const KrausFamily& fam);
double avg_injectivity(const KrausFamily& fam);
double op_norm_0to2(const KrausFamily& fam);

// Orthonormal traceless Hermitian basis of ker(Phi) restricted to H_0.
std::vector<CMat> kernel_h0(const KrausFamily& fam, const RankTolerance& tol = {});

struct InjectivityReport {
  double i_min = 0.0;
  double i_avg = 0.0;
  double op_norm = 0.0;
  std::size_t kernel_dim = 0;
  // Unit-norm traceless Hermitian minimizing the gain.
  std::optional<CMat> witness;
};

InjectivityReport injectivity_report(const KrausFamily& fam, const RankTolerance& tol = {});
// Indices straight from a real transfer matrix (columns = input coordinates).
InjectivityReport report_from_transfer(const RMat& t, const std::vector<CMat>& input_basis, const RankTolerance& tol = {});

nlohmann::json to_json(const InjectivityReport& r);

struct CollisionSearchOptions {
  int restarts = 32;
  std::uint64_t seed = 0;
  int max_iterations = 500;
  // Pairs with ||rho_x - rho_y||_2 below this are excluded.
  double min_separation = 0.1;
};

struct PureCollision {
  double min_value = 0.0;  // ||Phi(rho_x - rho_y)||^2 / ||rho_x - rho_y||^2
  PureState x;
  PureState y;
};

struct StateCollision {
  double min_value = 0.0;
  DensityMatrix rho_x;
  DensityMatrix rho_y;
};

// Projected gradient descent with backtracking over pairs of unit vectors,
// restarts evaluated concurrently. Deterministic for a fixed seed and
// restart count.
PureCollision pure_collision_search(const KrausFamily& fam, int restarts, std::uint64_t seed);
PureCollision pure_collision_search(const KrausFamily& fam, const CollisionSearchOptions& opts);
// Single-threaded reference; returns bit-identical results.
PureCollision pure_collision_search_serial(const KrausFamily& fam, const CollisionSearchOptions& opts);

// Same search over pairs of mixed states rho = G G^* with ||G||_F = 1.
StateCollision state_collision_search(const KrausFamily& fam, const CollisionSearchOptions& opts);

enum class PureInjectivity { Injective, NotPureInjective, Undecided };
std::string_view to_string(PureInjectivity p);

// Qubits: decided by I(Phi). d >= 3: Injective when I(Phi) > tol,
// NotPureInjective when the collision search reaches below collision_tol,
// Undecided otherwise.
PureInjectivity pure_injectivity_conclusion(const KrausFamily& fam, const CollisionSearchOptions& opts = {},
                                            double collision_tol = 1e-6);

// Measurement map X -> (Tr(X F_j))_j on the traceless sector. Effects must be
// PSD and sum to the identity (1e-8).
InjectivityReport povm_injectivity(const std::vector<CMat>& effects, const RankTolerance& tol = {});

}  // namespace phasekit
