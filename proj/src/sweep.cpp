// SPDX-License-Identifier: Apache-2.0
#include "phasekit/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include <omp.h>

#include "phasekit/error.hpp"
#include "phasekit/injectivity.hpp"
#include "phasekit/interferometer.hpp"

namespace phasekit {

void SweepGrid::validate() const {
  if (theta_steps < 2 || param_steps < 2) throw Error(ErrorKind::InvalidInput, "grid steps must be >= 2");
  if (!(theta_min < theta_max) || !(param_min < param_max)) {
    throw Error(ErrorKind::InvalidInput, "grid ranges need min < max");
  }
  if (param_name.empty()) throw Error(ErrorKind::InvalidInput, "sweep needs a parameter name");
  if (theta_steps > kMaxSweepPoints / param_steps) {
    throw Error(ErrorKind::GridTooLarge, "grid exceeds " + std::to_string(kMaxSweepPoints) + " points");
  }
}

std::vector<double> SweepGrid::thetas() const {
  std::vector<double> t(theta_steps);
  const double h = (theta_max - theta_min) / static_cast<double>(theta_steps);
  for (std::size_t k = 0; k < theta_steps; ++k) t[k] = theta_min + h * static_cast<double>(k);
  return t;
}

std::vector<double> SweepGrid::params() const {
  std::vector<double> p(param_steps);
  const double h = (param_max - param_min) / static_cast<double>(param_steps - 1);
  for (std::size_t k = 0; k < param_steps; ++k) p[k] = param_min + h * static_cast<double>(k);
  p.back() = param_max;
  return p;
}

SweepRow evaluate_port(const KrausFamily& a, const KrausFamily& b, double theta, double param) {
  const PortMap port(a, b, theta);
  const InjectivityReport rep = injectivity_report(port.family());
  SweepRow row;
  row.theta = theta;
  row.param = param;
  row.i_min = rep.i_min;
  row.i_avg = rep.i_avg;
  row.lambda_min_E = herm_eig(port.port_frame_operator()).values(0);
  row.dim_S = port_system_dim(a, b, theta);
  row.frame_ok = row.lambda_min_E > kFrameTolerance;
  return row;
}

namespace {

struct ArmSet {
  std::vector<KrausFamily> a;
  std::vector<KrausFamily> b;
};

// One pair of arm families per parameter value.
ArmSet build_arms(const ChannelSpecifier& arm_a, const ChannelSpecifier& arm_b, const SweepGrid& grid) {
  grid.validate();
  const bool a_free = arm_a.exposes(grid.param_name);
  const bool b_free = arm_b.exposes(grid.param_name);
  if (a_free == b_free) {
    throw Error(ErrorKind::InvalidInput, "exactly one arm must expose parameter '" + grid.param_name + "'");
  }
  ArmSet arms;
  for (double p : grid.params()) {
    arms.a.push_back(resolve(a_free ? arm_a.with_param(grid.param_name, p) : arm_a));
    arms.b.push_back(resolve(b_free ? arm_b.with_param(grid.param_name, p) : arm_b));
  }
  return arms;
}

}  // namespace

std::vector<SweepRow> sweep(const ChannelSpecifier& arm_a, const ChannelSpecifier& arm_b, const SweepGrid& grid) {
  const ArmSet arms = build_arms(arm_a, arm_b, grid);
  const auto thetas = grid.thetas();
  const auto params = grid.params();
  const auto nt = static_cast<long>(thetas.size());
  const auto total = static_cast<long>(params.size()) * nt;
  std::vector<SweepRow> rows(static_cast<std::size_t>(total));
  // Rows land at fixed indices, so output order is independent of scheduling.
#pragma omp parallel for schedule(dynamic, 16)
  for (long idx = 0; idx < total; ++idx) {
    const auto pi = static_cast<std::size_t>(idx / nt);
    const auto ti = static_cast<std::size_t>(idx % nt);
    rows[static_cast<std::size_t>(idx)] = evaluate_port(arms.a[pi], arms.b[pi], thetas[ti], params[pi]);
  }
  return rows;
}

std::vector<SweepRow> sweep_serial(const ChannelSpecifier& arm_a, const ChannelSpecifier& arm_b, const SweepGrid& grid) {
  const ArmSet arms = build_arms(arm_a, arm_b, grid);
  const auto thetas = grid.thetas();
  const auto params = grid.params();
  std::vector<SweepRow> rows;
  rows.reserve(thetas.size() * params.size());
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    for (double t : thetas) rows.push_back(evaluate_port(arms.a[pi], arms.b[pi], t, params[pi]));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "theta,param,i_min,i_avg,lambda_min_E,dim_S,frame_ok\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%zu,%s\n", r.theta, r.param, r.i_min, r.i_avg,
                  r.lambda_min_E, r.dim_S, r.frame_ok ? "true" : "false");
    out << buf;
  }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  write_sweep_csv(out, rows);
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path + "'");
}

void parse_param_axis(const std::string& text, SweepGrid& grid) {
  const auto eq = text.find('=');
  const auto c1 = text.find(':', eq == std::string::npos ? 0 : eq);
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos || eq == 0) {
    throw Error(ErrorKind::InvalidInput, "--param expects <name>=<min>:<max>:<steps>, got '" + text + "'");
  }
  try {
    std::size_t used = 0;
    const std::string smin = text.substr(eq + 1, c1 - eq - 1);
    const std::string smax = text.substr(c1 + 1, c2 - c1 - 1);
    const std::string ssteps = text.substr(c2 + 1);
    grid.param_min = std::stod(smin, &used);
    if (used != smin.size()) throw std::invalid_argument(smin);
    grid.param_max = std::stod(smax, &used);
    if (used != smax.size()) throw std::invalid_argument(smax);
    const long steps = std::stol(ssteps, &used);
    if (used != ssteps.size() || steps < 0) throw std::invalid_argument(ssteps);
    grid.param_steps = static_cast<std::size_t>(steps);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidInput, "--param expects <name>=<min>:<max>:<steps>, got '" + text + "'");
  }
  grid.param_name = text.substr(0, eq);
}

}  // namespace phasekit
