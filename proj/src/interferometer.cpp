// SPDX-License-Identifier: Apache-2.0
#include "phasekit/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phasekit/error.hpp"

namespace phasekit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kParsevalTol = 1e-8;

cplx phase(double theta) { return std::polar(1.0, theta); }

void require_parseval(const KrausFamily& a, const KrausFamily& b) {
  if (!is_parseval(a, kParsevalTol) || !is_parseval(b, kParsevalTol)) {
    throw Error(ErrorKind::NotParseval, "frame criterion requires both arms to be Parseval");
  }
}

double wrap_2pi(double t) {
  double w = std::fmod(t, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

CMat kron_sum(const KrausFamily& x, const KrausFamily& y) {
  const auto d = static_cast<Eigen::Index>(x.in_dim());
  const auto n = static_cast<Eigen::Index>(x.out_dim());
  CMat k = CMat::Zero(d * d, n * n);
  for (std::size_t i = 0; i < x.size(); ++i) k += kron(x[i].transpose(), y[i].adjoint());
  return k;
}

}  // namespace

std::pair<KrausFamily, KrausFamily> align_arms(const KrausFamily& a, const KrausFamily& b) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "interferometer arms must act between the same spaces");
  }
  const std::size_t m = std::max(a.size(), b.size());
  return {pad(a, m), pad(b, m)};
}

KrausFamily couple(const KrausFamily& a, const KrausFamily& b, const CouplingSpec& spec) {
  auto [pa, pb] = align_arms(a, b);
  if (spec.coefficients.size() != pa.size()) {
    throw Error(ErrorKind::DimensionMismatch, "coupling coefficient count must equal the padded family length");
  }
  std::vector<CMat> ops;
  ops.reserve(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) ops.push_back(pa[i] + spec.coefficients[i] * pb[i]);
  return KrausFamily(std::move(ops));
}

namespace {

KrausFamily physical_port_ops(const KrausFamily& a, const KrausFamily& b, double theta) {
  const cplx e = phase(theta);
  std::vector<CMat> ops;
  ops.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) ops.push_back(0.5 * (a[i] + e * b[i]));
  return KrausFamily(std::move(ops));
}

}  // namespace

PortMap::PortMap(const KrausFamily& a, const KrausFamily& b, double theta) : PortMap(align_arms(a, b), theta) {}

PortMap::PortMap(std::pair<KrausFamily, KrausFamily> arms, double theta)
    : arm_a_(std::move(arms.first)),
      arm_b_(std::move(arms.second)),
      theta_(theta),
      family_(physical_port_ops(arm_a_, arm_b_, theta)),
      t_cross_(cross_operator(arm_a_, arm_b_)) {}

std::vector<CMat> PortMap::unnormalized_ops() const {
  std::vector<CMat> out;
  out.reserve(family_.size());
  for (const auto& op : family_.ops()) out.push_back(2.0 * op);
  return out;
}

CMat PortMap::port_frame_operator() const {
  const auto d = static_cast<Eigen::Index>(family_.in_dim());
  const cplx e = phase(theta_);
  CMat s = CMat::Zero(d, d);
  for (std::size_t i = 0; i < arm_a_.size(); ++i) {
    const CMat m = arm_a_[i] + e * arm_b_[i];
    s.noalias() += m.adjoint() * m;
  }
  return s;
}

PortMap port_map(const KrausFamily& a, const KrausFamily& b, double theta) { return PortMap(a, b, theta); }

CMat cross_operator(const KrausFamily& a, const KrausFamily& b) {
  auto [pa, pb] = align_arms(a, b);
  const auto d = static_cast<Eigen::Index>(pa.in_dim());
  CMat t = CMat::Zero(d, d);
  for (std::size_t i = 0; i < pa.size(); ++i) t.noalias() += pa[i].adjoint() * pb[i];
  return t;
}

CMat e_theta(const KrausFamily& a, const KrausFamily& b, double theta) {
  require_parseval(a, b);
  const CMat t = cross_operator(a, b);
  const cplx e = phase(theta);
  return 2.0 * CMat::Identity(t.rows(), t.cols()) + e * t + std::conj(e) * t.adjoint();
}

FrameCheck frame_check(const KrausFamily& a, const KrausFamily& b, double theta, const RankTolerance& tol) {
  const CMat e = e_theta(a, b, theta);
  FrameCheck out;
  out.lambda_min = herm_eig(e).values(0);
  out.frame_ok = out.lambda_min > tol.absolute_floor;

  Eigen::ComplexEigenSolver<CMat> solver(cross_operator(a, b), false);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "eigensolver failed on T");
  const cplx target = std::conj(phase(theta));
  out.spectral_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    out.spectral_gap = std::min(out.spectral_gap, std::abs(solver.eigenvalues()(k) + target));
  }
  out.spectral_ok = out.spectral_gap > tol.absolute_floor;
  return out;
}

bool is_frame(const KrausFamily& a, const KrausFamily& b, double theta, const RankTolerance& tol) {
  return frame_check(a, b, theta, tol).frame_ok;
}

std::vector<double> degenerate_thetas(const KrausFamily& a, const KrausFamily& b, double unimodular_tol) {
  require_parseval(a, b);
  Eigen::ComplexEigenSolver<CMat> solver(cross_operator(a, b), false);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "eigensolver failed on T");

  std::vector<double> thetas;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const cplx lambda = solver.eigenvalues()(k);
    if (std::abs(std::abs(lambda) - 1.0) < unimodular_tol) thetas.push_back(wrap_2pi(std::arg(-std::conj(lambda))));
  }
  std::sort(thetas.begin(), thetas.end());
  std::vector<double> unique;
  for (double t : thetas) {
    if (unique.empty() || t - unique.back() > 1e-9) unique.push_back(t);
  }
  // 0 and 2pi - eps name the same phase.
  if (unique.size() > 1 && kTwoPi - unique.back() + unique.front() <= 1e-9) unique.pop_back();
  return unique;
}

PortAdjointParts port_adjoint_decomposition(const KrausFamily& a, const KrausFamily& b, double theta, const CMat& x) {
  auto [pa, pb] = align_arms(a, b);
  PortAdjointParts parts;
  parts.arm_a = adjoint_apply(pa, x);
  parts.arm_b = adjoint_apply(pb, x);
  const auto d = static_cast<Eigen::Index>(pa.in_dim());
  parts.cross_ab = CMat::Zero(d, d);
  parts.cross_ba = CMat::Zero(d, d);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    parts.cross_ab.noalias() += pa[i].adjoint() * x * pb[i];
    parts.cross_ba.noalias() += pb[i].adjoint() * x * pa[i];
  }
  const cplx e = phase(theta);
  parts.total = 0.25 * (parts.arm_a + parts.arm_b + e * parts.cross_ab + std::conj(e) * parts.cross_ba);
  return parts;
}

CMat PortRankExpansion::combined() const {
  const cplx e = phase(theta);
  return aa + bb + std::conj(e) * ab + e * ba;
}

PortRankExpansion port_rank_expansion(const KrausFamily& a, const KrausFamily& b, double theta) {
  auto [pa, pb] = align_arms(a, b);
  return {kron_sum(pa, pa), kron_sum(pb, pb), kron_sum(pa, pb), kron_sum(pb, pa), theta};
}

CMat port_rank_matrix(const KrausFamily& a, const KrausFamily& b, double theta) {
  auto [pa, pb] = align_arms(a, b);
  const cplx e = phase(theta);
  const auto d = static_cast<Eigen::Index>(pa.in_dim());
  const auto n = static_cast<Eigen::Index>(pa.out_dim());
  CMat k = CMat::Zero(d * d, n * n);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const CMat m = pa[i] + e * pb[i];
    k += kron(m.transpose(), m.adjoint());
  }
  return k;
}

std::size_t port_system_dim(const KrausFamily& a, const KrausFamily& b, double theta, const RankTolerance& tol) {
  return numerical_rank(port_rank_matrix(a, b, theta), tol);
}

KrausFamily classical_mix(const KrausFamily& a, const KrausFamily& b, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::DomainError, "mixing weight must lie in [0, 1]");
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "mixed families must act between the same spaces");
  }
  std::vector<CMat> ops;
  ops.reserve(a.size() + b.size());
  for (const auto& op : a.ops()) ops.push_back(std::sqrt(p) * op);
  for (const auto& op : b.ops()) ops.push_back(std::sqrt(1.0 - p) * op);
  return KrausFamily(std::move(ops));
}

std::size_t arm_sum_system_dim(const KrausFamily& a, const KrausFamily& b, const RankTolerance& tol) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "arms must act between the same spaces");
  }
  const CMat ka = kron_sum(a, a);
  const CMat kb = kron_sum(b, b);
  CMat both(ka.rows(), ka.cols() + kb.cols());
  both << ka, kb;
  return numerical_rank(both, tol);
}

double Visibility::p0(double theta) const { return 0.5 * (1.0 + v * std::cos(theta - alpha)); }

Visibility visibility(const DensityMatrix& rho, const CMat& u_a, const CMat& u_b) {
  const auto d = static_cast<Eigen::Index>(rho.dim());
  if (u_a.rows() != d || u_a.cols() != d || u_b.rows() != d || u_b.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "arm unitaries must match the state dimension");
  }
  if (!is_unitary(u_a) || !is_unitary(u_b)) throw Error(ErrorKind::NotUnitary, "arm operator is not unitary");
  const cplx z = (rho.mat() * u_a.adjoint() * u_b).trace();
  Visibility out;
  out.v = std::min(1.0, std::abs(z));
  out.alpha = out.v > 1e-15 ? std::arg(z) : 0.0;
  return out;
}

}  // namespace phasekit
