// SPDX-License-Identifier: Apache-2.0
//
// phasekit: phase-retrievability reports, interferometric coupling analysis
// and (theta, parameter) sweeps for Kraus channels.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"
#include "phasekit/error.hpp"
#include "phasekit/reports.hpp"
#include "phasekit/sweep.hpp"
#include "phasekit/zoo.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

void print(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  using namespace phasekit;

  CLI::App app{"Phase retrievability of quantum channels and interferometric port maps"};
  app.require_subcommand(1);

  std::string spec_a, spec_b;
  int restarts = 32;
  std::uint64_t seed = 0;

  auto* report_cmd = app.add_subcommand("report", "Obstructions and injectivity indices of one channel");
  report_cmd->add_option("spec", spec_a, "builtin:name(k=v,...) or file:path.json")->required();
  report_cmd->add_option("--restarts", restarts, "Collision search restarts (d >= 3)")->check(CLI::PositiveNumber);
  report_cmd->add_option("--seed", seed, "Collision search seed");

  double theta = 0.0;
  auto* couple_cmd = app.add_subcommand("couple", "Analyze the interferometric port map of two arms");
  couple_cmd->add_option("specA", spec_a)->required();
  couple_cmd->add_option("specB", spec_b)->required();
  couple_cmd->add_option("--theta", theta, "Interferometer phase in radians")->required();

  SweepGrid grid;
  std::string param_axis, out_path;
  bool serial = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid sweep of port-map indices over (theta, parameter)");
  sweep_cmd->add_option("specA", spec_a)->required();
  sweep_cmd->add_option("specB", spec_b)->required();
  sweep_cmd->add_option("--param", param_axis, "<name>=<min>:<max>:<steps>")->required();
  sweep_cmd->add_option("--theta-steps", grid.theta_steps, "Number of theta columns over [theta-min, theta-max)");
  sweep_cmd->add_option("--theta-min", grid.theta_min);
  sweep_cmd->add_option("--theta-max", grid.theta_max);
  sweep_cmd->add_option("--out", out_path, "Output CSV path")->required();
  sweep_cmd->add_flag("--serial", serial, "Use the single-threaded reference kernel");

  std::size_t dim = 2, out_dim = 2, kraus = 2;
  auto* random_cmd = app.add_subcommand("random", "Write a random channel as JSON");
  random_cmd->add_option("--dim", dim)->required()->check(CLI::PositiveNumber);
  random_cmd->add_option("--out-dim", out_dim)->required()->check(CLI::PositiveNumber);
  random_cmd->add_option("--kraus", kraus)->required()->check(CLI::PositiveNumber);
  random_cmd->add_option("--seed", seed)->required();
  random_cmd->add_option("--out", out_path)->required();

  std::vector<std::size_t> twirl_mult, twirl_dims;
  auto* certify_cmd = app.add_subcommand("certify", "Run every applicable phase-retrievability obstruction");
  certify_cmd->add_option("spec", spec_a)->required();
  certify_cmd->add_option("--twirl-multiplicities", twirl_mult, "Irrep multiplicities m_a")->delimiter(',');
  certify_cmd->add_option("--twirl-irrep-dims", twirl_dims, "Irrep dimensions n_a")->delimiter(',');
  certify_cmd->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
  certify_cmd->add_option("--seed", seed);

  auto* zoo_cmd = app.add_subcommand("zoo", "List builtin channels and their parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    CollisionSearchOptions search;
    search.restarts = restarts;
    search.seed = seed;

    if (*report_cmd) {
      print(channel_report(resolve(parse_channel_spec(spec_a)), search));
    } else if (*couple_cmd) {
      print(couple_report(resolve(parse_channel_spec(spec_a)), resolve(parse_channel_spec(spec_b)), theta));
    } else if (*sweep_cmd) {
      parse_param_axis(param_axis, grid);
      const auto a = parse_channel_spec(spec_a);
      const auto b = parse_channel_spec(spec_b);
      const auto rows = serial ? sweep_serial(a, b, grid) : sweep(a, b, grid);
      write_sweep_csv(out_path, rows);
      std::cerr << "wrote " << rows.size() << " rows to " << out_path << "\n";
    } else if (*random_cmd) {
      std::mt19937_64 rng(seed);
      const KrausFamily fam = random_channel(dim, out_dim, kraus, rng);
      std::ofstream out(out_path);
      if (!out) throw Error(ErrorKind::IoError, "cannot write '" + out_path + "'");
      out << to_json(fam).dump(2) << "\n";
    } else if (*certify_cmd) {
      CertifyOptions opts;
      opts.search = search;
      if (!twirl_mult.empty() || !twirl_dims.empty()) opts.twirl = RepDecomposition(twirl_mult, twirl_dims);
      print(certify(resolve(parse_channel_spec(spec_a)), opts));
    } else if (*zoo_cmd) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& e : zoo_entries()) {
        nlohmann::json params = nlohmann::json::array();
        for (const auto& p : e.params) {
          params.push_back({{"name", p.name}, {"default", p.default_value}, {"min", p.min}, {"max", p.max}});
        }
        list.push_back({{"name", e.name}, {"description", e.description}, {"params", params}});
      }
      print(list);
    }
  } catch (const Error& e) {
    std::cerr << "phasekit: " << e.what() << "\n";
    return e.kind() == ErrorKind::NumericalFailure ? kExitNumerical : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "phasekit: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
