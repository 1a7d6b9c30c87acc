// SPDX-License-Identifier: Apache-2.0
//
// Built-in channels and the textual channel specifier used by the CLI:
//
//   builtin:name                 builtin:name(key=value, ...)
//   builtin:name(value)          single positional value for the primary parameter
//   builtin:unitary(Z)           named gate (I, X, Y, Z, H, S, T)
//   file:path/to/channel.json
#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phasekit/channels.hpp"

namespace phasekit {

struct ParamInfo {
  std::string name;
  double default_value;
  double min;
  double max;
  // Range swept when the parameter is chosen as a free sweep axis.
  double sweep_min;
  double sweep_max;
  bool integer = false;
};

struct ZooEntry {
  std::string name;
  std::string description;
  std::vector<ParamInfo> params;  // first entry is the primary parameter
};

const std::vector<ZooEntry>& zoo_entries();
const ZooEntry& zoo_entry(const std::string& name);

struct BuiltinSpec {
  std::string name;
  std::map<std::string, double> params;
  std::optional<std::string> gate;  // unitary only
};

struct FileSpec {
  std::string path;
};

struct ChannelSpecifier {
  std::variant<BuiltinSpec, FileSpec> source;

  bool is_builtin() const { return std::holds_alternative<BuiltinSpec>(source); }
  // True when the builtin declares a parameter with this name.
  bool exposes(const std::string& param) const;
  ChannelSpecifier with_param(const std::string& param, double value) const;
  std::string to_string() const;
};

ChannelSpecifier parse_channel_spec(const std::string& text);

// Throws UnknownChannel or ParamOutOfRange.
KrausFamily zoo(const std::string& name, const std::map<std::string, double>& params = {},
                const std::optional<std::string>& gate = std::nullopt);

KrausFamily resolve(const ChannelSpecifier& spec);

// Reads a channel JSON file; parse errors report line and column.
KrausFamily load_channel_file(const std::string& path);

// Single-qubit gate by label.
CMat named_gate(const std::string& label);

}  // namespace phasekit
