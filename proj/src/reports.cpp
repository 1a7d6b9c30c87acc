// SPDX-License-Identifier: Apache-2.0
#include "phasekit/reports.hpp"

#include <cmath>

#include "phasekit/error.hpp"
#include "phasekit/interferometer.hpp"

namespace phasekit {

namespace {

nlohmann::json complex_list(const CVec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({v(k).real(), v(k).imag()});
  return out;
}

nlohmann::json real_list(const RVec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

}  // namespace

nlohmann::json channel_report(const KrausFamily& fam, const CollisionSearchOptions& search) {
  nlohmann::json j;
  j["in_dim"] = fam.in_dim();
  j["out_dim"] = fam.out_dim();
  j["kraus_count"] = fam.size();
  j["trace_defect"] = fam.trace_defect();
  j["parseval_defect"] = parseval_defect(fam);
  j["trace_preserving"] = fam.is_trace_preserving();
  if (fam.in_dim() < 2) {
    j["note"] = "in_dim < 2: phase retrievability is trivial";
    return j;
  }
  const Verdict v = rank_obstruction(fam);
  j["dim_S"] = v.dim_S;
  j["bound_N"] = v.bound_N;
  j["verdict"] = to_json(v);
  const InjectivityReport inj = injectivity_report(fam);
  j["i_min"] = inj.i_min;
  j["i_avg"] = inj.i_avg;
  j["op_norm"] = inj.op_norm;
  j["kernel_dim"] = inj.kernel_dim;
  const PureInjectivity pure = pure_injectivity_conclusion(fam, search);
  j["pure_injectivity"] = to_string(pure);
  if (fam.in_dim() == 2) j["qubit_pure_injective"] = pure == PureInjectivity::Injective;
  return j;
}

Verdict port_verdict(const KrausFamily& a, const KrausFamily& b, double theta) {
  const PortMap port(a, b, theta);
  const double lambda_min = herm_eig(port.port_frame_operator()).values(0);
  Verdict v = rank_obstruction(port.family());
  v.warnings.clear();
  if (!(lambda_min > RankTolerance{}.absolute_floor) && port.family().in_dim() >= 2) {
    v.status = VerdictStatus::NotPhaseRetrievable;
    v.reason = ObstructionReason::PortFrameSingular;
    v.evidence = "E_theta is singular (lambda_min = " + std::to_string(lambda_min) +
                 "); port operators are not an operator-valued frame. " + v.evidence;
  }
  return v;
}

nlohmann::json couple_report(const KrausFamily& a, const KrausFamily& b, double theta) {
  const PortMap port(a, b, theta);
  nlohmann::json j;
  j["theta"] = theta;
  const bool parseval = is_parseval(port.arm_a()) && is_parseval(port.arm_b());
  j["arms_parseval"] = parseval;

  Eigen::ComplexEigenSolver<CMat> t_solver(port.t_cross(), false);
  j["t_eigenvalues"] = complex_list(t_solver.eigenvalues());

  const CMat e = parseval ? e_theta(port.arm_a(), port.arm_b(), theta) : port.port_frame_operator();
  const HermEig spec = herm_eig(e);
  j["e_theta_spectrum"] = real_list(spec.values);
  j["frame_ok"] = spec.values(0) > RankTolerance{}.absolute_floor;
  if (parseval) {
    j["degenerate_thetas"] = degenerate_thetas(port.arm_a(), port.arm_b());
  } else {
    j["degenerate_thetas"] = nullptr;
  }

  const InjectivityReport inj = injectivity_report(port.family());
  j["port"] = {{"dim_S", port_system_dim(a, b, theta)},
               {"i_min", inj.i_min},
               {"i_avg", inj.i_avg},
               {"kernel_dim", inj.kernel_dim},
               {"verdict", to_json(port_verdict(a, b, theta))}};

  const KrausFamily mix = classical_mix(a, b, 0.5);
  j["classical_mix"] = {{"p", 0.5},
                        {"dim_S", complementary_system_dim(mix)},
                        {"i_min", cp_injectivity(mix)},
                        {"arm_sum_dim_S", arm_sum_system_dim(a, b)}};
  return j;
}

nlohmann::json certify(const KrausFamily& fam, const CertifyOptions& opts) {
  if (fam.in_dim() < 2) throw Error(ErrorKind::DomainError, "certify needs in_dim >= 2");
  nlohmann::json checks = nlohmann::json::array();
  std::vector<Verdict> verdicts;

  verdicts.push_back(rank_obstruction(fam));
  checks.push_back({{"criterion", "rank"}, {"verdict", to_json(verdicts.back())}});

  bool all_rank_one = true;
  for (const auto& op : fam.ops()) all_rank_one = all_rank_one && numerical_rank(op) == 1;
  if (all_rank_one) {
    const EbResult eb = eb_obstruction(fam);
    verdicts.push_back(eb.verdict);
    checks.push_back({{"criterion", "entanglement_breaking"},
                      {"verdict", to_json(eb.verdict)},
                      {"rank_equality_condition", eb.rank_equality_condition}});
  }

  if (opts.twirl) {
    std::vector<CMat> unitaries;
    const double scale = std::sqrt(static_cast<double>(fam.size()));
    for (const auto& op : fam.ops()) unitaries.push_back(scale * op);
    const TwirlDimCheck dim = twirl_dim_check(unitaries, *opts.twirl);
    verdicts.push_back(twirl_obstruction(unitaries, *opts.twirl));
    checks.push_back({{"criterion", "twirl"},
                      {"verdict", to_json(verdicts.back())},
                      {"dim_S", dim.dim_S},
                      {"sum_m_squared", dim.expected},
                      {"matches", dim.matches},
                      {"self_adjoint_defect", dim.self_adjoint_defect},
                      {"group_closed", dim.closed}});
  }

  const PureInjectivity pure = pure_injectivity_conclusion(fam, opts.search);
  const InjectivityReport inj = injectivity_report(fam);

  Verdict overall;
  overall.bound_N = hmw_bound(fam.in_dim());
  overall.dim_S = verdicts.front().dim_S;
  overall.evidence = "no obstruction applies";
  for (const auto& v : verdicts) {
    if (v.not_phase_retrievable()) {
      overall.status = v.status;
      overall.reason = v.reason;
      overall.evidence = v.evidence;
      break;
    }
  }
  return {{"checks", checks},
          {"verdict", to_json(overall)},
          {"i_min", inj.i_min},
          {"kernel_dim", inj.kernel_dim},
          {"pure_injectivity", to_string(pure)}};
}

}  // namespace phasekit
