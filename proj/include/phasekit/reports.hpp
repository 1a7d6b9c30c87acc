// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "json.hpp"
#include "phasekit/criteria.hpp"
#include "phasekit/injectivity.hpp"

namespace phasekit {

// trace/Parseval defects, dim S, N(d), rank-obstruction verdict, injectivity
// indices and the pure-state injectivity conclusion.
nlohmann::json channel_report(const KrausFamily& fam, const CollisionSearchOptions& search = {});

// Cross operator spectrum, degenerate phases, E_theta spectrum, port indices
// and a comparison against the classical mixture at p = 1/2.
nlohmann::json couple_report(const KrausFamily& a, const KrausFamily& b, double theta);

// Port-map verdict: PortFrameSingular when E_theta is singular, otherwise the
// rank obstruction applied to the port family.
Verdict port_verdict(const KrausFamily& a, const KrausFamily& b, double theta);

struct CertifyOptions {
  // When set, treat the Kraus operators (rescaled by sqrt(m)) as a unitary
  // representation with this decomposition and run the twirling criterion.
  std::optional<RepDecomposition> twirl;
  CollisionSearchOptions search;
};

// Runs every applicable obstruction and consolidates them.
nlohmann::json certify(const KrausFamily& fam, const CertifyOptions& opts = {});

}  // namespace phasekit
