// SPDX-License-Identifier: Apache-2.0
//
// Necessary conditions for phase retrievability. Every test here can only
// rule phase retrievability out; a negative result is reported as
// Inconclusive.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "phasekit/channels.hpp"

namespace phasekit {

enum class VerdictStatus { NotPhaseRetrievable, Inconclusive };
enum class ObstructionReason { RankObstruction, EBObstruction, TwirlObstruction, PortFrameSingular, None };

std::string_view to_string(VerdictStatus s);
std::string_view to_string(ObstructionReason r);

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  ObstructionReason reason = ObstructionReason::None;
  std::size_t dim_S = 0;
  std::size_t bound_N = 0;
  std::string evidence;
  std::vector<std::string> warnings;

  bool not_phase_retrievable() const { return status == VerdictStatus::NotPhaseRetrievable; }
};

nlohmann::json to_json(const Verdict& v);

// Multiplicities m_a and irrep dimensions n_a with sum m_a n_a = total_dim.
class RepDecomposition {
 public:
  RepDecomposition(std::vector<std::size_t> multiplicities, std::vector<std::size_t> irrep_dims);

  const std::vector<std::size_t>& multiplicities() const { return multiplicities_; }
  const std::vector<std::size_t>& irrep_dims() const { return irrep_dims_; }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t commutant_dim() const;  // sum m_a^2

 private:
  std::vector<std::size_t> multiplicities_;
  std::vector<std::size_t> irrep_dims_;
  std::size_t total_dim_ = 0;
};

// Lower bound N(d) for pure-state informational completeness. With
// D = 2d - 2 and alpha the popcount of d - 1 the bound is 2D - 2alpha,
// raised to 2D - 2alpha + 2 (d odd, alpha = 3 mod 4) or 2D - 2alpha + 1
// (d odd, alpha = 2 mod 4). A PSIC family needs more than N(d) elements.
std::size_t hmw_bound(std::size_t d);

// rank(sum A_i^T (x) A_i^*), the dimension of Range(Phi^*).
std::size_t complementary_system_dim(const KrausFamily& fam, const RankTolerance& tol = {});
// Same quantity from the complementary family: Gram rank of vec(R_b^* R_a).
std::size_t system_dim_via_gram(const KrausFamily& fam, const RankTolerance& tol = {});

Verdict rank_obstruction(const KrausFamily& fam, const RankTolerance& tol = {});

struct EbResult {
  Verdict verdict;
  // Both {|u_i><u_i|} and {|v_i><v_i|} linearly independent, in which case
  // dim S equals the number of rank-one terms.
  bool rank_equality_condition = false;
};

// Requires every Kraus operator to have numerical rank one. The family
// length is used as an upper bound for the entanglement-breaking rank.
EbResult eb_obstruction(const KrausFamily& fam, const RankTolerance& tol = {});

// Largest deviation of a product of two listed unitaries from the nearest
// listed element, up to a global phase.
double group_closure_defect(const std::vector<CMat>& unitaries);

// Kraus operators {U_g / sqrt|G|}.
KrausFamily twirl_channel(const std::vector<CMat>& unitaries);

struct TwirlDimCheck {
  std::size_t dim_S = 0;
  std::size_t expected = 0;      // sum m_a^2
  bool matches = false;
  double self_adjoint_defect = 0.0;
  bool closed = true;            // group closure up to phase within 1e-6
};

TwirlDimCheck twirl_dim_check(const std::vector<CMat>& unitaries, const RepDecomposition& decomp,
                              const RankTolerance& tol = {}, std::uint64_t seed = 7);

Verdict twirl_obstruction(const std::vector<CMat>& unitaries, const RepDecomposition& decomp);

}  // namespace phasekit
