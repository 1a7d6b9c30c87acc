// SPDX-License-Identifier: Apache-2.0
//
// (theta, parameter) grid sweeps over interferometric port maps. The OpenMP
// kernel and the serial reference produce identical rows in the same
// param-major, theta-minor order.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "phasekit/zoo.hpp"

namespace phasekit {

struct SweepGrid {
  double theta_min = 0.0;
  double theta_max = 6.283185307179586;
  std::size_t theta_steps = 64;
  std::string param_name;
  double param_min = 0.0;
  double param_max = 1.0;
  std::size_t param_steps = 64;

  void validate() const;
  // Half-open [theta_min, theta_max): no duplicate column under periodicity.
  std::vector<double> thetas() const;
  // Closed [param_min, param_max].
  std::vector<double> params() const;
};

struct SweepRow {
  double theta = 0.0;
  double param = 0.0;
  double i_min = 0.0;
  double i_avg = 0.0;
  double lambda_min_E = 0.0;
  std::size_t dim_S = 0;
  bool frame_ok = false;
};

inline constexpr std::size_t kMaxSweepPoints = 1000000;
inline constexpr double kFrameTolerance = 1e-10;

SweepRow evaluate_port(const KrausFamily& a, const KrausFamily& b, double theta, double param);

// Exactly one arm must expose grid.param_name.
std::vector<SweepRow> sweep(const ChannelSpecifier& arm_a, const ChannelSpecifier& arm_b, const SweepGrid& grid);
std::vector<SweepRow> sweep_serial(const ChannelSpecifier& arm_a, const ChannelSpecifier& arm_b, const SweepGrid& grid);

// Header theta,param,i_min,i_avg,lambda_min_E,dim_S,frame_ok
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

// Parses "<name>=<min>:<max>:<steps>" into the parameter fields of grid.
void parse_param_axis(const std::string& text, SweepGrid& grid);

}  // namespace phasekit
