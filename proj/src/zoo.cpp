// SPDX-License-Identifier: Apache-2.0
#include "phasekit/zoo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "phasekit/error.hpp"

namespace phasekit {

namespace {

constexpr double kPi = std::numbers::pi;

CMat ket_bra(const CVec& u, const CVec& v) { return u * v.adjoint(); }

CVec basis_vec(Eigen::Index d, Eigen::Index k) {
  CVec v = CVec::Zero(d);
  v(k) = 1.0;
  return v;
}

CVec trine_vec(int k) {
  const cplx omega = std::polar(1.0, 2.0 * kPi / 3.0);
  CVec v(2);
  v << 1.0, std::pow(omega, k);
  return v / std::sqrt(2.0);
}

CMat ry(double alpha) {
  CMat r(2, 2);
  r << std::cos(alpha / 2), -std::sin(alpha / 2), std::sin(alpha / 2), std::cos(alpha / 2);
  return r;
}

KrausFamily trine_family(double alpha) {
  std::vector<CMat> ops;
  const CMat r = ry(alpha);
  for (int k = 0; k < 3; ++k) {
    const CVec v = r * trine_vec(k);
    ops.push_back(std::sqrt(2.0 / 3.0) * ket_bra(v, v));
  }
  return KrausFamily(std::move(ops));
}

}  // namespace

const std::vector<ZooEntry>& zoo_entries() {
  static const std::vector<ZooEntry> entries = {
      {"identity", "identity channel on C^d", {{"d", 2, 1, 16, 2, 4, true}}},
      {"amplitude_damping", "qubit amplitude damping A0=|0><0|+sqrt(1-g)|1><1|, A1=sqrt(g)|0><1|",
       {{"gamma", 0.5, 0.0, 1.0, 0.0, 1.0}}},
      {"z_dephasing", "complete Z-dephasing {|0><0|, |1><1|}", {}},
      {"rotated_dephasing", "complete dephasing in the basis R_y(alpha){|0>,|1>}",
       {{"alpha", 0.0, -1e6, 1e6, 0.0, 2.0 * kPi}}},
      {"reset", "reset to |0><0| with {|0><0|, |0><1|}", {}},
      {"trine", "trine family sqrt(2/3)|v_k><v_k|, v_k=(|0>+w^k|1>)/sqrt2", {}},
      {"rotated_trine", "trine family rotated by R_y(alpha)", {{"alpha", 0.0, -1e6, 1e6, 0.0, 2.0 * kPi}}},
      {"depolarizing", "qubit depolarizing rho -> (1-p) rho + p I/2", {{"p", 0.5, 0.0, 1.0, 0.0, 1.0}}},
      {"unitary", "single-qubit unitary: gate label or U3(theta, phi, lambda)",
       {{"theta", 0.0, -1e6, 1e6, 0.0, 2.0 * kPi},
        {"phi", 0.0, -1e6, 1e6, 0.0, 2.0 * kPi},
        {"lambda", 0.0, -1e6, 1e6, 0.0, 2.0 * kPi}}},
  };
  return entries;
}

const ZooEntry& zoo_entry(const std::string& name) {
  for (const auto& e : zoo_entries()) {
    if (e.name == name) return e;
  }
  throw Error(ErrorKind::UnknownChannel, "no builtin channel named '" + name + "'");
}

CMat named_gate(const std::string& label) {
  const cplx i(0.0, 1.0);
  CMat g(2, 2);
  if (label == "I") {
    g << 1, 0, 0, 1;
  } else if (label == "X") {
    g << 0, 1, 1, 0;
  } else if (label == "Y") {
    g << 0, -i, i, 0;
  } else if (label == "Z") {
    g << 1, 0, 0, -1;
  } else if (label == "H") {
    g << 1, 1, 1, -1;
    g /= std::sqrt(2.0);
  } else if (label == "S") {
    g << 1, 0, 0, i;
  } else if (label == "T") {
    g << 1, 0, 0, std::polar(1.0, kPi / 4);
  } else {
    throw Error(ErrorKind::ParamOutOfRange, "unknown gate label '" + label + "'");
  }
  return g;
}

KrausFamily zoo(const std::string& name, const std::map<std::string, double>& params,
                const std::optional<std::string>& gate) {
  const ZooEntry& entry = zoo_entry(name);
  std::map<std::string, double> values;
  for (const auto& p : entry.params) values[p.name] = p.default_value;
  for (const auto& [key, value] : params) {
    const auto it = std::find_if(entry.params.begin(), entry.params.end(), [&](const ParamInfo& p) { return p.name == key; });
    if (it == entry.params.end()) {
      throw Error(ErrorKind::ParamOutOfRange, name + " has no parameter '" + key + "'");
    }
    if (!std::isfinite(value) || value < it->min || value > it->max) {
      std::ostringstream msg;
      msg << name << ": " << key << "=" << value << " outside [" << it->min << ", " << it->max << "]";
      throw Error(ErrorKind::ParamOutOfRange, msg.str());
    }
    if (it->integer && value != std::floor(value)) {
      throw Error(ErrorKind::ParamOutOfRange, name + ": " + key + " must be an integer");
    }
    values[key] = value;
  }
  if (gate && name != "unitary") throw Error(ErrorKind::ParamOutOfRange, name + " does not take a gate label");

  const CVec e0 = basis_vec(2, 0);
  const CVec e1 = basis_vec(2, 1);
  if (name == "identity") {
    const auto d = static_cast<Eigen::Index>(values["d"]);
    return KrausFamily({CMat::Identity(d, d)});
  }
  if (name == "amplitude_damping") {
    const double g = values["gamma"];
    return KrausFamily({ket_bra(e0, e0) + std::sqrt(1.0 - g) * ket_bra(e1, e1), std::sqrt(g) * ket_bra(e0, e1)});
  }
  if (name == "z_dephasing") return KrausFamily({ket_bra(e0, e0), ket_bra(e1, e1)});
  if (name == "rotated_dephasing") {
    const CMat r = ry(values["alpha"]);
    const CVec b0 = r.col(0);
    const CVec b1 = r.col(1);
    return KrausFamily({ket_bra(b0, b0), ket_bra(b1, b1)});
  }
  if (name == "reset") return KrausFamily({ket_bra(e0, e0), ket_bra(e0, e1)});
  if (name == "trine") return trine_family(0.0);
  if (name == "rotated_trine") return trine_family(values["alpha"]);
  if (name == "depolarizing") {
    const double p = values["p"];
    return KrausFamily({std::sqrt(1.0 - 0.75 * p) * named_gate("I"), std::sqrt(p / 4) * named_gate("X"),
                        std::sqrt(p / 4) * named_gate("Y"), std::sqrt(p / 4) * named_gate("Z")});
  }
  if (name == "unitary") {
    if (gate) {
      if (params.count("theta") || params.count("phi") || params.count("lambda")) {
        throw Error(ErrorKind::ParamOutOfRange, "unitary takes either a gate label or U3 angles");
      }
      return KrausFamily({named_gate(*gate)});
    }
    const double t = values["theta"], p = values["phi"], l = values["lambda"];
    CMat u(2, 2);
    u << std::cos(t / 2), -std::polar(1.0, l) * std::sin(t / 2), std::polar(1.0, p) * std::sin(t / 2),
        std::polar(1.0, p + l) * std::cos(t / 2);
    return KrausFamily({u});
  }
  throw Error(ErrorKind::UnknownChannel, name);
}

KrausFamily load_channel_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open channel file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::InvalidInput,
                path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON parse error: " + e.what());
  }
  try {
    return kraus_from_json(j);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorKind::InvalidInput, context + ": '" + text + "' is not a number");
  }
  return v;
}

}  // namespace

ChannelSpecifier parse_channel_spec(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.rfind("file:", 0) == 0) {
    const std::string path = text.substr(5);
    if (path.empty()) throw Error(ErrorKind::InvalidInput, "file: specifier needs a path");
    return {FileSpec{path}};
  }
  if (text.rfind("builtin:", 0) != 0) {
    throw Error(ErrorKind::InvalidInput, "channel spec must start with 'builtin:' or 'file:' (got '" + text + "')");
  }
  std::string body = text.substr(8);
  BuiltinSpec spec;
  const auto open = body.find('(');
  if (open == std::string::npos) {
    spec.name = trim(body);
  } else {
    if (body.back() != ')') throw Error(ErrorKind::InvalidInput, "unbalanced parentheses in '" + text + "'");
    spec.name = trim(body.substr(0, open));
    const std::string args = body.substr(open + 1, body.size() - open - 2);
    const ZooEntry& entry = zoo_entry(spec.name);
    std::stringstream ss(args);
    std::string item;
    bool positional_used = false;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        if (positional_used) throw Error(ErrorKind::InvalidInput, "only one positional argument allowed in '" + text + "'");
        positional_used = true;
        if (spec.name == "unitary" && std::isalpha(static_cast<unsigned char>(item[0]))) {
          spec.gate = item;
          continue;
        }
        if (entry.params.empty()) throw Error(ErrorKind::InvalidInput, spec.name + " takes no parameters");
        spec.params[entry.params.front().name] = parse_number(item, spec.name);
      } else {
        const std::string key = trim(item.substr(0, eq));
        spec.params[key] = parse_number(trim(item.substr(eq + 1)), spec.name + "." + key);
      }
    }
  }
  zoo_entry(spec.name);
  return {spec};
}

bool ChannelSpecifier::exposes(const std::string& param) const {
  const auto* b = std::get_if<BuiltinSpec>(&source);
  if (!b) return false;
  const auto& ps = zoo_entry(b->name).params;
  return std::any_of(ps.begin(), ps.end(), [&](const ParamInfo& p) { return p.name == param; });
}

ChannelSpecifier ChannelSpecifier::with_param(const std::string& param, double value) const {
  ChannelSpecifier out = *this;
  std::get<BuiltinSpec>(out.source).params[param] = value;
  return out;
}

std::string ChannelSpecifier::to_string() const {
  if (const auto* f = std::get_if<FileSpec>(&source)) return "file:" + f->path;
  const auto& b = std::get<BuiltinSpec>(source);
  std::ostringstream out;
  out << "builtin:" << b.name;
  if (b.gate || !b.params.empty()) {
    out << "(";
    bool first = true;
    if (b.gate) {
      out << *b.gate;
      first = false;
    }
    for (const auto& [k, v] : b.params) {
      out << (first ? "" : ",") << k << "=" << v;
      first = false;
    }
    out << ")";
  }
  return out.str();
}

KrausFamily resolve(const ChannelSpecifier& spec) {
  if (const auto* f = std::get_if<FileSpec>(&spec.source)) return load_channel_file(f->path);
  const auto& b = std::get<BuiltinSpec>(spec.source);
  return zoo(b.name, b.params, b.gate);
}

}  // namespace phasekit
