// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "phasekit/channels.hpp"
#include "phasekit/criteria.hpp"
#include "phasekit/error.hpp"
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

}  // namespace

TEST_CASE("KrausFamily validates shapes") {
  CHECK(kind_of([] { KrausFamily({}); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { KrausFamily({CMat::Identity(2, 2), CMat::Identity(3, 3)}); }) == ErrorKind::DimensionMismatch);
  CMat bad = CMat::Identity(2, 2);
  bad(0, 0) = cplx(NAN, 0);
  CHECK(kind_of([&] { KrausFamily({bad}); }) == ErrorKind::InvalidInput);

  const KrausFamily f({CMat::Zero(3, 2)});
  CHECK(f.in_dim() == 2);
  CHECK(f.out_dim() == 3);
  CHECK_FALSE(f.is_trace_preserving());
  CHECK(z_dephasing_family().is_trace_preserving());
}

TEST_CASE("apply examples") {
  std::mt19937_64 rng(1);
  const CMat rho = random_density(2, rng);
  CHECK(max_abs_diff(phasekit::apply(identity_family(2), rho), rho) < 1e-15);
  CHECK(max_abs_diff(phasekit::apply(z_dephasing_family(), plus_state()), 0.5 * CMat::Identity(2, 2)) < 1e-15);
  for (int k = 0; k < 5; ++k) CHECK(max_abs_diff(phasekit::apply(reset_family(), random_density(2, rng)), proj0()) < 1e-12);
  CHECK(kind_of([&] { phasekit::apply(identity_family(2), CMat::Identity(3, 3)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("property: apply preserves Hermiticity and, for TP families, trace") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + trial % 4, n = 1 + (trial / 4) % 4, m = 1 + (trial / 16) % 4;
    if (n * m < d) continue;
    const KrausFamily fam = random_channel(d, n, m, rng);
    CHECK(fam.is_trace_preserving(1e-10));
    const CMat g = random_gaussian(d, d, rng);
    const CMat h = g + g.adjoint();
    const CMat out = phasekit::apply(fam, h);
    CHECK(hermiticity_defect(out) < 1e-10);
    CHECK(std::abs(out.trace() - h.trace()) < 1e-10);
  }
}

TEST_CASE("adjoint_apply examples and adjointness") {
  std::mt19937_64 rng(3);
  const KrausFamily fam = random_channel(3, 2, 3, rng);
  CHECK(max_abs_diff(adjoint_apply(fam, CMat::Identity(2, 2)), CMat::Identity(3, 3)) < 1e-10);
  const CMat y = random_gaussian(2, 2, rng);
  CHECK(max_abs_diff(adjoint_apply(identity_family(2), y), y) == 0.0);
  CHECK(kind_of([&] { adjoint_apply(fam, CMat::Identity(3, 3)); }) == ErrorKind::DimensionMismatch);

  for (int trial = 0; trial < 30; ++trial) {
    const KrausFamily f = random_cp_map(1 + trial % 4, 1 + trial % 3, 1 + trial % 2, rng);
    const CMat x = random_gaussian(f.in_dim(), f.in_dim(), rng);
    const CMat yy = random_gaussian(f.out_dim(), f.out_dim(), rng);
    CHECK(std::abs(hs_inner(phasekit::apply(f, x), yy) - hs_inner(x, adjoint_apply(f, yy))) < 1e-10);
  }
}

TEST_CASE("frame_operator examples") {
  std::mt19937_64 rng(4);
  CHECK(max_abs_diff(frame_operator(random_channel(3, 3, 2, rng)), CMat::Identity(3, 3)) < 1e-10);
  CHECK(max_abs_diff(frame_operator(trine_family()), CMat::Identity(2, 2)) < 1e-12);
  CHECK(is_parseval(trine_family()));
  const KrausFamily two({2.0 * proj0()});
  CHECK(max_abs_diff(frame_operator(two), 4.0 * proj0()) == 0.0);
  CHECK_FALSE(is_parseval(two));
}

TEST_CASE("mix_kraus examples") {
  std::mt19937_64 rng(5);
  const KrausFamily deph = z_dephasing_family();
  const KrausFamily same = mix_kraus(deph, CMat::Identity(2, 2));
  for (std::size_t i = 0; i < 2; ++i) CHECK(max_abs_diff(same[i], deph[i]) == 0.0);

  const CMat u = random_unitary(2, rng);
  const KrausFamily mixed = mix_kraus(deph, u);
  CHECK(max_abs_diff(mixed[0], deph[0]) > 1e-3);
  for (int k = 0; k < 20; ++k) {
    const CMat rho = random_density(2, rng);
    CHECK(max_abs_diff(phasekit::apply(mixed, rho), phasekit::apply(deph, rho)) < 1e-10);
  }

  CMat swap = CMat::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  const KrausFamily swapped = mix_kraus(deph, swap);
  CHECK(max_abs_diff(swapped[0], deph[1]) == 0.0);
  CHECK(max_abs_diff(swapped[1], deph[0]) == 0.0);

  CHECK(kind_of([&] { mix_kraus(deph, 2.0 * CMat::Identity(2, 2)); }) == ErrorKind::NotUnitary);
  CHECK(kind_of([&] { mix_kraus(deph, CMat::Identity(1, 1)); }) == ErrorKind::DimensionMismatch);
  // A larger unitary pads with zeros first.
  const KrausFamily grown = mix_kraus(deph, random_unitary(4, rng));
  CHECK(grown.size() == 4);
  const CMat rho = random_density(2, rng);
  CHECK(max_abs_diff(phasekit::apply(grown, rho), phasekit::apply(deph, rho)) < 1e-10);
}

TEST_CASE("stinespring examples") {
  std::mt19937_64 rng(6);
  CHECK(max_abs_diff(stinespring(identity_family(2)), CMat::Identity(2, 2)) == 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + trial % 4, n = 1 + trial % 3, m = 2 + trial % 3;
    if (n * m < d) continue;
    const KrausFamily fam = random_channel(d, n, m, rng);
    const CMat v = stinespring(fam);
    CHECK(max_abs_diff(v.adjoint() * v, CMat::Identity(d, d)) < 1e-10);
    const CMat rho = random_density(d, rng);
    const CMat reduced = trace_env(v * rho * v.adjoint(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    CHECK(max_abs_diff(reduced, phasekit::apply(fam, rho)) < 1e-10);
  }
  const KrausFamily cp({2.0 * proj0()});
  CHECK(max_abs_diff(stinespring(cp).adjoint() * stinespring(cp), frame_operator(cp)) == 0.0);
}

TEST_CASE("complementary of the identity family is the trace") {
  std::mt19937_64 rng(7);
  const KrausFamily comp = complementary(identity_family(3));
  CHECK(comp.size() == 3);
  CHECK(comp.in_dim() == 3);
  CHECK(comp.out_dim() == 1);
  for (Eigen::Index a = 0; a < 3; ++a) {
    CMat row = CMat::Zero(1, 3);
    row(0, a) = 1.0;
    CHECK(max_abs_diff(comp[static_cast<std::size_t>(a)], row) == 0.0);
  }
  const CMat rho = random_density(3, rng);
  CHECK(std::abs(phasekit::apply(comp, rho)(0, 0) - rho.trace()) < 1e-12);
}

TEST_CASE("complementary of Z-dephasing keeps only populations") {
  std::mt19937_64 rng(8);
  const KrausFamily deph = z_dephasing_family();
  for (int k = 0; k < 5; ++k) {
    const CMat rho = random_density(2, rng);
    const CMat out = phasekit::apply(complementary(deph), rho);
    CMat expected = CMat::Zero(2, 2);
    expected(0, 0) = rho(0, 0);
    expected(1, 1) = rho(1, 1);
    CHECK(max_abs_diff(out, expected) < 1e-12);
    CHECK(max_abs_diff(out, complementary_formula(deph, rho)) < 1e-12);
  }
}

TEST_CASE("property: complementary action matches the trace formula; double complement restores the channel") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + trial % 4, n = 1 + (trial / 4) % 4, m = 1 + (trial / 16) % 4;
    if (n * m < d) continue;
    const KrausFamily fam = random_channel(d, n, m, rng);
    const KrausFamily comp = complementary(fam);
    const KrausFamily back = complementary(comp);
    for (int k = 0; k < 3; ++k) {
      const CMat rho = random_density(d, rng);
      CHECK(max_abs_diff(phasekit::apply(comp, rho), complementary_formula(fam, rho)) < 1e-12);
      CHECK(max_abs_diff(phasekit::apply(back, rho), phasekit::apply(fam, rho)) < 1e-10);
    }
  }
}

TEST_CASE("pad") {
  std::mt19937_64 rng(10);
  const KrausFamily deph = z_dephasing_family();
  const KrausFamily same = pad(deph, 2);
  CHECK(same.size() == 2);
  const KrausFamily grown = pad(identity_family(2), 2);
  CHECK(grown.size() == 2);
  CHECK(grown[1].norm() == 0.0);
  const CMat rho = random_density(2, rng);
  CHECK(max_abs_diff(phasekit::apply(grown, rho), rho) < 1e-15);
  CHECK(complementary_system_dim(pad(deph, 5)) == complementary_system_dim(deph));
  CHECK(kind_of([&] { pad(deph, 1); }) == ErrorKind::DomainError);
}

TEST_CASE("DensityMatrix and PureState validation") {
  CHECK_NOTHROW(DensityMatrix(proj0()));
  CHECK(kind_of([] { DensityMatrix(2.0 * proj0()); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { DensityMatrix(pauli('X')); }) == ErrorKind::DomainError);
  CMat notpsd = CMat::Zero(2, 2);
  notpsd(0, 0) = 1.5;
  notpsd(1, 1) = -0.5;
  CHECK(kind_of([&] { DensityMatrix{notpsd}; }) == ErrorKind::DomainError);
  CHECK(kind_of([] { DensityMatrix(proj0() + outer(ket({1, 0}), ket({0, 1}))); }) == ErrorKind::NotHermitian);

  CVec v(2);
  v << 1.0, 1.0;
  CHECK(kind_of([&] { PureState{v}; }) == ErrorKind::DomainError);
  const PureState p = PureState::normalized(v);
  CHECK(max_abs_diff(p.projector(), plus_state()) < 1e-15);
}

TEST_CASE("random_channel needs n*m >= d") {
  std::mt19937_64 rng(11);
  CHECK(kind_of([&] { random_channel(4, 1, 2, rng); }) == ErrorKind::DomainError);
  const KrausFamily f = random_channel(2, 3, 2, rng);
  CHECK(f.size() == 2);
  CHECK(f.out_dim() == 3);
  CHECK(f.trace_defect() < 1e-12);
}

TEST_CASE("channel JSON round trip and malformed input") {
  std::mt19937_64 rng(12);
  const KrausFamily f = random_channel(2, 3, 2, rng);
  const KrausFamily g = kraus_from_json(to_json(f));
  REQUIRE(g.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(max_abs_diff(f[i], g[i]) == 0.0);

  const auto j = to_json(identity_family(2));
  CHECK(j["in_dim"] == 2);
  CHECK(j["ops"][0][0][0][0] == 1.0);
  CHECK(j["ops"][0][0][0][1] == 0.0);

  CHECK(kind_of([] { kraus_from_json(nlohmann::json::parse(R"({"in_dim":2})")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] {
          kraus_from_json(nlohmann::json::parse(R"({"in_dim":2,"out_dim":1,"ops":[[[[1,0]]]]})"));
        }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] {
          kraus_from_json(nlohmann::json::parse(R"({"in_dim":1,"out_dim":1,"ops":[[[1]]]})"));
        }) == ErrorKind::InvalidInput);
  CHECK_NOTHROW(kraus_from_json(nlohmann::json::parse(R"({"in_dim":1,"out_dim":1,"ops":[[[[0.5,0.5]]]]})")));
}
