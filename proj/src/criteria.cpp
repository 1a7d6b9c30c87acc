// SPDX-License-Identifier: Apache-2.0
#include "phasekit/criteria.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "phasekit/error.hpp"

namespace phasekit {

std::string_view to_string(VerdictStatus s) {
  return s == VerdictStatus::NotPhaseRetrievable ? "NotPhaseRetrievable" : "Inconclusive";
}

std::string_view to_string(ObstructionReason r) {
  switch (r) {
    case ObstructionReason::RankObstruction: return "RankObstruction";
    case ObstructionReason::EBObstruction: return "EBObstruction";
    case ObstructionReason::TwirlObstruction: return "TwirlObstruction";
    case ObstructionReason::PortFrameSingular: return "PortFrameSingular";
    case ObstructionReason::None: return "None";
  }
  return "None";
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j = {{"status", to_string(v.status)},
                      {"reason", to_string(v.reason)},
                      {"dim_S", v.dim_S},
                      {"bound_N", v.bound_N},
                      {"evidence", v.evidence}};
  if (!v.warnings.empty()) j["warnings"] = v.warnings;
  return j;
}

RepDecomposition::RepDecomposition(std::vector<std::size_t> multiplicities, std::vector<std::size_t> irrep_dims)
    : multiplicities_(std::move(multiplicities)), irrep_dims_(std::move(irrep_dims)) {
  if (multiplicities_.empty() || multiplicities_.size() != irrep_dims_.size()) {
    throw Error(ErrorKind::InvalidInput, "decomposition needs matching, nonempty multiplicity and dimension lists");
  }
  for (std::size_t k = 0; k < multiplicities_.size(); ++k) {
    if (multiplicities_[k] == 0 || irrep_dims_[k] == 0) {
      throw Error(ErrorKind::InvalidInput, "multiplicities and irrep dimensions must be positive");
    }
    total_dim_ += multiplicities_[k] * irrep_dims_[k];
  }
}

std::size_t RepDecomposition::commutant_dim() const {
  std::size_t s = 0;
  for (auto m : multiplicities_) s += m * m;
  return s;
}

std::size_t hmw_bound(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::DomainError, "N(d) is defined for d >= 2");
  const auto alpha = static_cast<std::size_t>(std::popcount(d - 1));
  const std::size_t D = 2 * d - 2;
  std::size_t bound = 2 * D - 2 * alpha;
  if (d % 2 == 1 && alpha % 4 == 3) bound = std::max(bound, 2 * D - 2 * alpha + 2);
  if (d % 2 == 1 && alpha % 4 == 2) bound = std::max(bound, 2 * D - 2 * alpha + 1);
  return bound;
}

std::size_t complementary_system_dim(const KrausFamily& fam, const RankTolerance& tol) {
  const auto d = static_cast<Eigen::Index>(fam.in_dim());
  const auto n = static_cast<Eigen::Index>(fam.out_dim());
  CMat k = CMat::Zero(d * d, n * n);
  for (const auto& a : fam.ops()) k += kron(a.transpose(), a.adjoint());
  return numerical_rank(k, tol);
}

std::size_t system_dim_via_gram(const KrausFamily& fam, const RankTolerance& tol) {
  const std::size_t n = fam.out_dim();
  if (n * n > 4096) throw Error(ErrorKind::ScaleLimit, "Gram oracle limited to out_dim^2 <= 4096");
  const KrausFamily comp = complementary(fam);
  const auto d = static_cast<Eigen::Index>(fam.in_dim());
  CMat stacked(d * d, static_cast<Eigen::Index>(n * n));
  Eigen::Index col = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) stacked.col(col++) = vec(comp[b].adjoint() * comp[a]);
  }
  const CMat gram = stacked.adjoint() * stacked;
  return numerical_rank(gram, tol);
}

Verdict rank_obstruction(const KrausFamily& fam, const RankTolerance& tol) {
  Verdict v;
  v.bound_N = hmw_bound(fam.in_dim());
  v.dim_S = complementary_system_dim(fam, tol);
  if (!fam.is_trace_preserving()) {
    v.warnings.push_back("NotTracePreserving: family is CP but not trace-preserving; criterion applied to the CP map");
  }

  std::size_t rank_sq = 0;
  std::ostringstream ranks;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const std::size_t r = numerical_rank(fam[i], tol);
    rank_sq += r * r;
    ranks << (i ? "," : "") << r;
  }

  std::ostringstream ev;
  ev << "kraus ranks [" << ranks.str() << "], sum r^2 = " << rank_sq << ", dim S = " << v.dim_S
     << ", N(d) = " << v.bound_N;
  if (rank_sq <= v.bound_N) {
    v.status = VerdictStatus::NotPhaseRetrievable;
    v.reason = ObstructionReason::RankObstruction;
    ev << "; sum of squared Kraus ranks <= N(d)";
  } else if (v.dim_S <= v.bound_N) {
    v.status = VerdictStatus::NotPhaseRetrievable;
    v.reason = ObstructionReason::RankObstruction;
    ev << "; complementary operator system dimension <= N(d)";
  } else {
    ev << "; no rank obstruction";
  }
  v.evidence = ev.str();
  return v;
}

namespace {

std::size_t gram_rank_of_projectors(const std::vector<CVec>& vs, const RankTolerance& tol) {
  const auto d = vs.front().size();
  CMat stacked(d * d, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) {
    stacked.col(static_cast<Eigen::Index>(k)) = vec(vs[k] * vs[k].adjoint());
  }
  return numerical_rank(stacked, tol);
}

}  // namespace

EbResult eb_obstruction(const KrausFamily& fam, const RankTolerance& tol) {
  std::vector<CVec> us;
  std::vector<CVec> vs;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (numerical_rank(fam[i], tol) != 1) {
      throw Error(ErrorKind::NotRankOne, "Kraus operator " + std::to_string(i) + " is not rank one");
    }
    Eigen::JacobiSVD<CMat> svd(fam[i], Eigen::ComputeThinU | Eigen::ComputeThinV);
    us.push_back(svd.matrixU().col(0));
    vs.push_back(svd.matrixV().col(0));
  }

  EbResult out;
  Verdict& v = out.verdict;
  v.bound_N = hmw_bound(fam.in_dim());
  v.dim_S = complementary_system_dim(fam, tol);
  const std::size_t ebr_bound = fam.size();
  out.rank_equality_condition =
      gram_rank_of_projectors(us, tol) == us.size() && gram_rank_of_projectors(vs, tol) == vs.size();

  std::ostringstream ev;
  ev << "ebr upper bound used: " << ebr_bound << " rank-one terms, N(d) = " << v.bound_N << ", dim S = " << v.dim_S
     << ", rank equality condition " << (out.rank_equality_condition ? "holds" : "not established");
  if (ebr_bound <= v.bound_N) {
    v.status = VerdictStatus::NotPhaseRetrievable;
    v.reason = ObstructionReason::EBObstruction;
  }
  v.evidence = ev.str();
  return out;
}

double group_closure_defect(const std::vector<CMat>& unitaries) {
  double worst = 0.0;
  for (const auto& g : unitaries) {
    for (const auto& h : unitaries) {
      const CMat gh = g * h;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& k : unitaries) {
        // Optimal phase aligning k to gh.
        const cplx overlap = (k.adjoint() * gh).trace();
        const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
        best = std::min(best, (gh - phase * k).cwiseAbs().maxCoeff());
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

KrausFamily twirl_channel(const std::vector<CMat>& unitaries) {
  if (unitaries.empty()) throw Error(ErrorKind::InvalidInput, "twirl needs at least one unitary");
  const auto d = unitaries.front().rows();
  std::vector<CMat> ops;
  ops.reserve(unitaries.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(unitaries.size()));
  for (const auto& u : unitaries) {
    if (u.rows() != d || u.cols() != d) throw Error(ErrorKind::DimensionMismatch, "twirl unitaries must share a size");
    if (!is_unitary(u, 1e-8)) throw Error(ErrorKind::NotUnitary, "twirl element is not unitary");
    ops.push_back(scale * u);
  }
  return KrausFamily(std::move(ops));
}

TwirlDimCheck twirl_dim_check(const std::vector<CMat>& unitaries, const RepDecomposition& decomp,
                              const RankTolerance& tol, std::uint64_t seed) {
  const KrausFamily twirl = twirl_channel(unitaries);
  if (decomp.total_dim() != twirl.in_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "decomposition total dimension differs from representation dimension");
  }
  TwirlDimCheck out;
  out.closed = group_closure_defect(unitaries) < 1e-6;
  out.dim_S = complementary_system_dim(twirl, tol);
  out.expected = decomp.commutant_dim();
  out.matches = out.dim_S == out.expected;

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 8; ++trial) {
    const CMat x = random_gaussian(twirl.in_dim(), twirl.in_dim(), rng);
    const CMat y = random_gaussian(twirl.in_dim(), twirl.in_dim(), rng);
    const double gap = std::abs(hs_inner(x, apply(twirl, y)) - hs_inner(apply(twirl, x), y));
    out.self_adjoint_defect = std::max(out.self_adjoint_defect, gap);
  }
  return out;
}

Verdict twirl_obstruction(const std::vector<CMat>& unitaries, const RepDecomposition& decomp) {
  const TwirlDimCheck check = twirl_dim_check(unitaries, decomp);
  Verdict v;
  v.bound_N = hmw_bound(decomp.total_dim());
  v.dim_S = check.dim_S;
  if (!check.closed) v.warnings.push_back("unitaries are not closed under products; treated as a unitary mixture");
  if (!check.matches) {
    v.warnings.push_back("computed dim S " + std::to_string(check.dim_S) + " differs from sum m^2 = " +
                         std::to_string(check.expected) + "; check the supplied decomposition");
  }
  std::ostringstream ev;
  ev << "sum m^2 = " << check.expected << ", dim S = " << check.dim_S << ", N(d) = " << v.bound_N;
  if (check.expected <= v.bound_N) {
    v.status = VerdictStatus::NotPhaseRetrievable;
    v.reason = ObstructionReason::TwirlObstruction;
  }
  v.evidence = ev.str();
  return v;
}

}  // namespace phasekit
