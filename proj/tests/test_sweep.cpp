// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "phasekit/criteria.hpp"
#include "phasekit/error.hpp"
#include "phasekit/injectivity.hpp"
#include "phasekit/interferometer.hpp"
#include "phasekit/reports.hpp"
#include "phasekit/sweep.hpp"
#include "phasekit/zoo.hpp"
#include "test_util.hpp"

using namespace phasekit;
using namespace phasekit::testing;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected phasekit::Error");
  return ErrorKind::InvalidInput;
}

void check_same_action(const KrausFamily& a, const KrausFamily& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 5; ++k) {
    const CMat rho = random_density(a.in_dim(), rng);
    CHECK(max_abs_diff(phasekit::apply(a, rho), phasekit::apply(b, rho)) < 1e-12);
  }
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("phasekit_test_" + name)).string();
}

}  // namespace

TEST_CASE("zoo examples") {
  check_same_action(zoo("amplitude_damping", {{"gamma", 0.0}}), identity_family(2), 1);
  check_same_action(zoo("amplitude_damping", {{"gamma", 1.0}}), reset_family(), 2);
  check_same_action(zoo("rotated_dephasing", {{"alpha", 0.0}}), z_dephasing_family(), 3);
  check_same_action(zoo("trine"), trine_family(), 4);
  check_same_action(zoo("rotated_trine", {{"alpha", 0.0}}), trine_family(), 5);
  check_same_action(zoo("identity", {{"d", 3}}), identity_family(3), 6);
  check_same_action(zoo("unitary", {}, "Z"), KrausFamily({pauli('Z')}), 7);
  check_same_action(zoo("depolarizing", {{"p", 1.0}}), twirl_channel({pauli('I'), pauli('X'), pauli('Y'), pauli('Z')}), 8);

  CHECK(kind_of([] { zoo("nope"); }) == ErrorKind::UnknownChannel);
  CHECK(kind_of([] { zoo("amplitude_damping", {{"gamma", 1.5}}); }) == ErrorKind::ParamOutOfRange);
  CHECK(kind_of([] { zoo("amplitude_damping", {{"p", 0.1}}); }) == ErrorKind::ParamOutOfRange);
  CHECK(kind_of([] { zoo("identity", {{"d", 2.5}}); }) == ErrorKind::ParamOutOfRange);
  CHECK(kind_of([] { zoo("unitary", {}, "Q"); }) == ErrorKind::ParamOutOfRange);
}

TEST_CASE("rotated dephasing basis") {
  const double a = 0.8;
  const KrausFamily f = zoo("rotated_dephasing", {{"alpha", a}});
  CMat b0(2, 1);
  b0 << std::cos(a / 2), std::sin(a / 2);
  CHECK(max_abs_diff(f[0], outer(b0, b0)) < 1e-15);
}

TEST_CASE("property: every builtin is trace preserving over its sweep range") {
  for (const auto& e : zoo_entries()) {
    if (e.params.empty()) {
      CHECK(zoo(e.name).trace_defect() < 1e-10);
      continue;
    }
    for (const auto& p : e.params) {
      for (int k = 0; k < 100; ++k) {
        double v = p.sweep_min + (p.sweep_max - p.sweep_min) * k / 99.0;
        if (p.integer) v = std::round(v);
        INFO(e.name << " " << p.name << "=" << v);
        CHECK(zoo(e.name, {{p.name, v}}).trace_defect() < 1e-10);
      }
    }
  }
  for (const char* g : {"I", "X", "Y", "Z", "H", "S", "T"}) CHECK(is_unitary(named_gate(g)));
}

TEST_CASE("parse_channel_spec") {
  const ChannelSpecifier ad = parse_channel_spec("builtin:amplitude_damping(gamma=0.25)");
  REQUIRE(ad.is_builtin());
  CHECK(std::get<BuiltinSpec>(ad.source).params.at("gamma") == 0.25);
  CHECK(ad.exposes("gamma"));
  CHECK_FALSE(ad.exposes("alpha"));
  const ChannelSpecifier pos = parse_channel_spec("builtin:rotated_dephasing(0.5)");
  CHECK(std::get<BuiltinSpec>(pos.source).params.at("alpha") == 0.5);
  const ChannelSpecifier gate = parse_channel_spec("builtin:unitary(Z)");
  CHECK(std::get<BuiltinSpec>(gate.source).gate == "Z");
  const ChannelSpecifier bare = parse_channel_spec("builtin:reset");
  CHECK(bare.to_string() == "builtin:reset");
  const ChannelSpecifier file = parse_channel_spec("file:foo.json");
  CHECK_FALSE(file.is_builtin());
  CHECK(std::get<FileSpec>(file.source).path == "foo.json");

  const ChannelSpecifier moved = ad.with_param("gamma", 0.75);
  CHECK(std::get<BuiltinSpec>(moved.source).params.at("gamma") == 0.75);
  check_same_action(resolve(parse_channel_spec(ad.to_string())), resolve(ad), 9);

  CHECK(kind_of([] { parse_channel_spec("amplitude_damping"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_channel_spec("builtin:amplitude_damping(gamma=)"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_channel_spec("builtin:amplitude_damping(gamma=0.1"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_channel_spec("builtin:"); }) == ErrorKind::UnknownChannel);
  CHECK(kind_of([] { resolve(parse_channel_spec("builtin:bogus")); }) == ErrorKind::UnknownChannel);
}

TEST_CASE("channel files") {
  std::mt19937_64 rng(10);
  const KrausFamily f = random_channel(2, 2, 3, rng);
  const std::string path = temp_path("chan.json");
  {
    std::ofstream out(path);
    out << to_json(f).dump(2);
  }
  const KrausFamily g = resolve(parse_channel_spec("file:" + path));
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(max_abs_diff(f[i], g[i]) == 0.0);

  const std::string bad = temp_path("bad.json");
  {
    std::ofstream out(bad);
    out << "{\n  \"in_dim\": 2,\n  \"ops\": [ oops ]\n}\n";
  }
  try {
    load_channel_file(bad);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(kind_of([] { load_channel_file("/nonexistent/phasekit.json"); }) == ErrorKind::IoError);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}

TEST_CASE("SweepGrid validation and axes") {
  SweepGrid g;
  g.param_name = "gamma";
  g.param_steps = 5;
  g.theta_steps = 4;
  CHECK_NOTHROW(g.validate());
  const auto t = g.thetas();
  REQUIRE(t.size() == 4);
  CHECK(t[0] == 0.0);
  CHECK(t[1] == doctest::Approx(M_PI / 2));
  CHECK(t[3] < 2 * M_PI - 1e-3);
  const auto p = g.params();
  REQUIRE(p.size() == 5);
  CHECK(p.front() == 0.0);
  CHECK(p.back() == 1.0);

  SweepGrid bad = g;
  bad.theta_steps = 1;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidInput);
  bad = g;
  bad.param_min = 2.0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidInput);
  bad = g;
  bad.theta_steps = 2000;
  bad.param_steps = 1000;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::GridTooLarge);

  SweepGrid parsed;
  parse_param_axis("alpha=0:3.5:8", parsed);
  CHECK(parsed.param_name == "alpha");
  CHECK(parsed.param_max == 3.5);
  CHECK(parsed.param_steps == 8);
  CHECK(kind_of([&] { parse_param_axis("alpha=0:1", parsed); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([&] { parse_param_axis("alpha=0:x:4", parsed); }) == ErrorKind::InvalidInput);
}

TEST_CASE("identity arms interfere destructively only at pi") {
  const KrausFamily id = identity_family(2);
  for (int k = 0; k < 16; ++k) {
    const double theta = 2.0 * M_PI * k / 16.0;
    const SweepRow r = evaluate_port(id, id, theta, 0.0);
    if (k == 8) {
      CHECK(r.i_min < 1e-15);
      CHECK_FALSE(r.frame_ok);
    } else {
      CHECK(r.i_min > 0.0);
      CHECK(r.i_min == doctest::Approx(std::cos(theta / 2) * std::cos(theta / 2)));
      CHECK(r.frame_ok);
    }
  }
}

TEST_CASE("sweep rows") {
  SweepGrid g;
  g.theta_steps = 16;
  parse_param_axis("gamma=0:1:9", g);
  const auto a = parse_channel_spec("builtin:amplitude_damping");
  const auto b = parse_channel_spec("builtin:z_dephasing");
  const auto rows = sweep(a, b, g);
  REQUIRE(rows.size() == 16 * 9);
  CHECK(rows[0].param == 0.0);
  CHECK(rows[1].param == 0.0);
  CHECK(rows[1].theta > rows[0].theta);
  CHECK(rows[16].param == doctest::Approx(0.125));
  bool some_singular = false, some_positive = false;
  for (const auto& r : rows) {
    CHECK(r.i_min <= r.i_avg + 1e-12);
    CHECK(r.frame_ok == (r.lambda_min_E > kFrameTolerance));
    if (!r.frame_ok) CHECK(r.i_min < 1e-6);
    some_singular |= !r.frame_ok;
    some_positive |= r.i_min > 0.01;
  }
  CHECK(some_singular);
  CHECK(some_positive);

  const auto serial = sweep_serial(a, b, g);
  REQUIRE(serial.size() == rows.size());
  std::ostringstream s1, s2;
  write_sweep_csv(s1, rows);
  write_sweep_csv(s2, serial);
  CHECK(s1.str() == s2.str());
  std::ostringstream s3;
  write_sweep_csv(s3, sweep(a, b, g));
  CHECK(s1.str() == s3.str());
  CHECK(s1.str().rfind("theta,param,i_min,i_avg,lambda_min_E,dim_S,frame_ok\n", 0) == 0);
}

TEST_CASE("sweep argument errors") {
  SweepGrid g;
  g.theta_steps = 4;
  parse_param_axis("gamma=0:1:3", g);
  const auto ad = parse_channel_spec("builtin:amplitude_damping");
  CHECK(kind_of([&] { sweep(ad, ad, g); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([&] { sweep(parse_channel_spec("builtin:reset"), parse_channel_spec("builtin:z_dephasing"), g); }) ==
        ErrorKind::InvalidInput);
  g.theta_steps = 2000;
  g.param_steps = 1000;
  CHECK(kind_of([&] { sweep(ad, parse_channel_spec("builtin:reset"), g); }) == ErrorKind::GridTooLarge);
  CHECK(kind_of([] { write_sweep_csv("/nonexistent/dir/out.csv", {}); }) == ErrorKind::IoError);
}

TEST_CASE("channel_report examples") {
  const auto deph = channel_report(zoo("z_dephasing"));
  CHECK(deph["verdict"]["status"] == "NotPhaseRetrievable");
  CHECK(deph["i_min"].get<double>() < 1e-14);
  CHECK(deph["dim_S"] == 2);
  CHECK(deph["bound_N"] == 2);

  const auto id = channel_report(zoo("identity", {{"d", 2}}));
  CHECK(id["verdict"]["status"] == "Inconclusive");
  CHECK(id["i_min"].get<double>() == doctest::Approx(1.0));
  CHECK(id["dim_S"] == 4);

  const auto ad = channel_report(zoo("amplitude_damping", {{"gamma", 0.5}}));
  CHECK(ad["i_min"].get<double>() > 0.0);
  CHECK(ad["qubit_pure_injective"] == true);
  CHECK(ad["pure_injectivity"] == "Injective");
}

TEST_CASE("reports on builtins stay fast") {
  for (const auto& e : zoo_entries()) {
    const auto start = std::chrono::steady_clock::now();
    channel_report(zoo(e.name));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    INFO(e.name);
    CHECK(secs < 1.0);
  }
}

TEST_CASE("couple_report examples") {
  const KrausFamily id = zoo("identity");
  const KrausFamily z = zoo("unitary", {}, "Z");
  const auto r0 = couple_report(id, z, 0.0);
  CHECK(r0["frame_ok"] == false);
  REQUIRE(r0["degenerate_thetas"].size() == 2);
  CHECK(r0["degenerate_thetas"][0].get<double>() == doctest::Approx(0.0));
  CHECK(r0["degenerate_thetas"][1].get<double>() == doctest::Approx(M_PI));
  CHECK(r0["port"]["i_min"].get<double>() < 1e-14);
  CHECK(r0["port"]["verdict"]["reason"] == "PortFrameSingular");
  CHECK(couple_report(id, z, M_PI / 2)["frame_ok"] == true);

  const KrausFamily reset = zoo("reset");
  const KrausFamily rd = zoo("rotated_dephasing", {{"alpha", M_PI / 4}});
  const auto rr = couple_report(reset, rd, M_PI / 2);
  CHECK(rr["port"]["i_min"].get<double>() > 1e-3);
  CHECK(rr["classical_mix"]["i_min"].get<double>() < 1e-8);
  for (int k = 1; k <= 9; ++k) CHECK(cp_injectivity(classical_mix(reset, rd, 0.1 * k)) < 1e-8);
}

TEST_CASE("port_verdict") {
  const KrausFamily id = zoo("identity");
  const KrausFamily z = zoo("unitary", {}, "Z");
  CHECK(port_verdict(id, z, 0.0).reason == ObstructionReason::PortFrameSingular);
  CHECK(port_verdict(id, z, 0.0).not_phase_retrievable());
  CHECK(port_verdict(id, z, M_PI / 2).status == VerdictStatus::Inconclusive);
}

TEST_CASE("certify") {
  const auto deph = certify(zoo("z_dephasing"));
  CHECK(deph["verdict"]["status"] == "NotPhaseRetrievable");
  bool saw_eb = false;
  for (const auto& c : deph["checks"]) saw_eb |= c["criterion"] == "entanglement_breaking";
  CHECK(saw_eb);

  CertifyOptions opts;
  opts.twirl = RepDecomposition({1}, {2});
  const auto dep = certify(zoo("depolarizing", {{"p", 1.0}}), opts);
  CHECK(dep["verdict"]["status"] == "NotPhaseRetrievable");
  bool matched = false;
  for (const auto& c : dep["checks"]) {
    if (c["criterion"] == "twirl") matched = c["matches"] == true && c["dim_S"] == 1;
  }
  CHECK(matched);

  const auto id = certify(zoo("identity"));
  CHECK(id["verdict"]["status"] == "Inconclusive");
}
