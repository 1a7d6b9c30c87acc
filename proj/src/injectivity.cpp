// SPDX-License-Identifier: Apache-2.0
#include "phasekit/injectivity.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <omp.h>

#include "phasekit/error.hpp"

namespace phasekit {

namespace {

void require_qubit_or_larger(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::DomainError, "injectivity indices need in_dim >= 2");
}

}  // namespace

TransferMatrix transfer_matrix(const KrausFamily& fam, const HermitianBasis& basis_in, const HermitianBasis& basis_out) {
  require_qubit_or_larger(fam.in_dim());
  if (basis_in.dim != fam.in_dim() || basis_out.dim != fam.out_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "transfer matrix bases do not match the family");
  }
  const std::size_t cols = basis_in.elements.size() - 1;
  const std::size_t rows = basis_out.elements.size();
  TransferMatrix t{fam.in_dim(), fam.out_dim(), RMat(rows, cols), basis_in, basis_out};
  for (std::size_t i = 0; i < cols; ++i) {
    const CMat out = apply(fam, basis_in.elements[i + 1]);
    const double scale = std::max(1.0, out.norm());
    for (std::size_t mu = 0; mu < rows; ++mu) {
      const cplx entry = hs_inner(basis_out.elements[mu], out);
      if (std::abs(entry.imag()) > 1e-10 * scale) {
        throw Error(ErrorKind::NumericalFailure, "transfer matrix entry is not real; map does not preserve Hermiticity");
      }
      t.mat(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(i)) = entry.real();
    }
  }
  return t;
}

TransferMatrix transfer_matrix(const KrausFamily& fam) {
  require_qubit_or_larger(fam.in_dim());
  return transfer_matrix(fam, gell_mann_basis(fam.in_dim()), gell_mann_basis(fam.out_dim()));
}

InjectivityReport report_from_transfer(const RMat& t, const std::vector<CMat>& input_basis, const RankTolerance& tol) {
  const auto cols = t.cols();
  Eigen::JacobiSVD<RMat> svd(t, Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  // With fewer rows than columns the trailing singular values are zero.
  RVec sigma = RVec::Zero(cols);
  sigma.head(s.size()) = s;

  InjectivityReport r;
  r.i_min = sigma(cols - 1);
  r.op_norm = smax;
  r.i_avg = t.norm() / std::sqrt(static_cast<double>(cols));
  const double cut = tol.threshold(static_cast<std::size_t>(t.rows()), static_cast<std::size_t>(cols), smax);
  for (Eigen::Index k = 0; k < cols; ++k) {
    if (!(sigma(k) > cut)) ++r.kernel_dim;
  }
  const RVec coords = svd.matrixV().col(cols - 1);
  CMat w = CMat::Zero(input_basis.front().rows(), input_basis.front().cols());
  for (Eigen::Index k = 0; k < cols; ++k) w += coords(k) * input_basis[static_cast<std::size_t>(k)];
  r.witness = w;
  return r;
}

namespace {

std::vector<CMat> traceless_part(const HermitianBasis& b) { return {b.elements.begin() + 1, b.elements.end()}; }

}  // namespace

InjectivityReport injectivity_report(const KrausFamily& fam, const RankTolerance& tol) {
  const TransferMatrix t = transfer_matrix(fam);
  return report_from_transfer(t.mat, traceless_part(t.basis_in), tol);
}

double cp_injectivity(const KrausFamily& fam) {
  const TransferMatrix t = transfer_matrix(fam);
  if (t.mat.rows() < t.mat.cols()) return 0.0;
  Eigen::JacobiSVD<RMat> svd(t.mat);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double avg_injectivity(const KrausFamily& fam) {
  const TransferMatrix t = transfer_matrix(fam);
  return t.mat.norm() / std::sqrt(static_cast<double>(t.mat.cols()));
}

double op_norm_0to2(const KrausFamily& fam) {
  const TransferMatrix t = transfer_matrix(fam);
  Eigen::JacobiSVD<RMat> svd(t.mat);
  return svd.singularValues()(0);
}

std::vector<CMat> kernel_h0(const KrausFamily& fam, const RankTolerance& tol) {
  const TransferMatrix t = transfer_matrix(fam);
  const auto cols = t.mat.cols();
  Eigen::JacobiSVD<RMat> svd(t.mat, Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  const double cut = tol.threshold(static_cast<std::size_t>(t.mat.rows()), static_cast<std::size_t>(cols),
                                   s.size() ? s(0) : 0.0);
  std::vector<CMat> kernel;
  for (Eigen::Index k = 0; k < cols; ++k) {
    const double sk = k < s.size() ? s(k) : 0.0;
    if (!(sk > cut)) kernel.push_back(t.basis_in.combine(svd.matrixV().col(k), 1));
  }
  return kernel;
}

nlohmann::json to_json(const InjectivityReport& r) {
  nlohmann::json j = {{"i_min", r.i_min}, {"i_avg", r.i_avg}, {"op_norm", r.op_norm}, {"kernel_dim", r.kernel_dim}};
  if (r.witness) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < r.witness->rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index k = 0; k < r.witness->cols(); ++k) {
        row.push_back({(*r.witness)(i, k).real(), (*r.witness)(i, k).imag()});
      }
      rows.push_back(std::move(row));
    }
    j["witness"] = std::move(rows);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Collision search
// ---------------------------------------------------------------------------

namespace {

// rho = G G^* for a unit-Frobenius-norm factor G (d x k). k = 1 gives pure
// states.
struct Factor {
  CMat g;
  CMat rho() const { return g * g.adjoint(); }
};

struct Objective {
  const KrausFamily& fam;

  // value = ||Phi(D)||^2 / ||D||^2; grad = HS gradient of value w.r.t. D.
  double value(const CMat& d_mat, CMat* grad) const {
    const CMat phi_d = apply(fam, d_mat);
    const double num = phi_d.squaredNorm();
    const double den = d_mat.squaredNorm();
    if (grad) *grad = (adjoint_apply(fam, phi_d) * den - num * d_mat) * (2.0 / (den * den));
    return num / den;
  }
};

CMat tangent_gradient(const CMat& w, const Factor& f) {
  const cplx s = (f.g.adjoint() * w * f.g).trace();
  return w * f.g - s.real() * f.g;
}

Factor random_factor(std::size_t d, std::size_t k, std::mt19937_64& rng) {
  CMat g = random_gaussian(d, k, rng);
  return {g / g.norm()};
}

struct RestartResult {
  double value = std::numeric_limits<double>::infinity();
  CMat gx;
  CMat gy;
};

RestartResult run_restart(const KrausFamily& fam, std::size_t rank, const CollisionSearchOptions& opts,
                          std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                    static_cast<std::uint32_t>(restart), static_cast<std::uint32_t>(restart >> 32)};
  std::mt19937_64 rng(seq);
  const Objective obj{fam};
  const double sep2 = opts.min_separation * opts.min_separation;

  Factor x = random_factor(fam.in_dim(), rank, rng);
  Factor y = random_factor(fam.in_dim(), rank, rng);
  for (int tries = 0; (x.rho() - y.rho()).squaredNorm() < sep2 && tries < 100; ++tries) {
    y = random_factor(fam.in_dim(), rank, rng);
  }

  CMat w;
  double f = obj.value(x.rho() - y.rho(), &w);
  double step = 1.0;
  for (int it = 0; it < opts.max_iterations && f > 1e-20; ++it) {
    const CMat gx = tangent_gradient(w, x);
    const CMat gy = -tangent_gradient(w, y);
    const double gnorm2 = gx.squaredNorm() + gy.squaredNorm();
    if (gnorm2 < 1e-30) break;

    bool accepted = false;
    step = std::min(step * 2.0, 1e3);
    while (step > 1e-14) {
      Factor xn{x.g - step * gx};
      Factor yn{y.g - step * gy};
      xn.g /= xn.g.norm();
      yn.g /= yn.g.norm();
      const CMat dn = xn.rho() - yn.rho();
      if (dn.squaredNorm() >= sep2) {
        CMat wn;
        const double fn = obj.value(dn, &wn);
        if (fn <= f - 1e-4 * step * gnorm2) {
          x = std::move(xn);
          y = std::move(yn);
          f = fn;
          w = std::move(wn);
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return {f, x.g, y.g};
}

RestartResult best_of(const std::vector<RestartResult>& results) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].value < results[best].value) best = r;
  }
  return results[best];
}

std::vector<RestartResult> run_all(const KrausFamily& fam, std::size_t rank, const CollisionSearchOptions& opts,
                                   bool parallel) {
  if (opts.restarts < 1) throw Error(ErrorKind::DomainError, "collision search needs at least one restart");
  if (fam.in_dim() < 2) throw Error(ErrorKind::DomainError, "collision search needs in_dim >= 2");
  std::vector<RestartResult> results(static_cast<std::size_t>(opts.restarts));
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < opts.restarts; ++r) {
      results[static_cast<std::size_t>(r)] = run_restart(fam, rank, opts, static_cast<std::uint64_t>(r));
    }
  } else {
    for (int r = 0; r < opts.restarts; ++r) {
      results[static_cast<std::size_t>(r)] = run_restart(fam, rank, opts, static_cast<std::uint64_t>(r));
    }
  }
  return results;
}

PureCollision to_pure(const RestartResult& best) {
  return {best.value, PureState::normalized(best.gx.col(0)), PureState::normalized(best.gy.col(0))};
}

DensityMatrix to_density(const CMat& g) {
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

}  // namespace

PureCollision pure_collision_search(const KrausFamily& fam, const CollisionSearchOptions& opts) {
  return to_pure(best_of(run_all(fam, 1, opts, true)));
}

PureCollision pure_collision_search(const KrausFamily& fam, int restarts, std::uint64_t seed) {
  CollisionSearchOptions opts;
  opts.restarts = restarts;
  opts.seed = seed;
  return pure_collision_search(fam, opts);
}

PureCollision pure_collision_search_serial(const KrausFamily& fam, const CollisionSearchOptions& opts) {
  return to_pure(best_of(run_all(fam, 1, opts, false)));
}

StateCollision state_collision_search(const KrausFamily& fam, const CollisionSearchOptions& opts) {
  const RestartResult best = best_of(run_all(fam, fam.in_dim(), opts, true));
  return {best.value, to_density(best.gx), to_density(best.gy)};
}

std::string_view to_string(PureInjectivity p) {
  switch (p) {
    case PureInjectivity::Injective: return "Injective";
    case PureInjectivity::NotPureInjective: return "NotPureInjective";
    case PureInjectivity::Undecided: return "Undecided";
  }
  return "Undecided";
}

PureInjectivity pure_injectivity_conclusion(const KrausFamily& fam, const CollisionSearchOptions& opts,
                                            double collision_tol) {
  const InjectivityReport r = injectivity_report(fam);
  if (r.kernel_dim == 0) return PureInjectivity::Injective;
  if (fam.in_dim() == 2) return PureInjectivity::NotPureInjective;
  const PureCollision c = pure_collision_search(fam, opts);
  return c.min_value < collision_tol ? PureInjectivity::NotPureInjective : PureInjectivity::Undecided;
}

InjectivityReport povm_injectivity(const std::vector<CMat>& effects, const RankTolerance& tol) {
  if (effects.empty()) throw Error(ErrorKind::NotPOVM, "POVM needs at least one effect");
  const auto d = effects.front().rows();
  require_qubit_or_larger(static_cast<std::size_t>(d));
  CMat sum = CMat::Zero(d, d);
  for (const auto& f : effects) {
    if (f.rows() != d || f.cols() != d) throw Error(ErrorKind::NotPOVM, "effects must share one square shape");
    if (!(hermiticity_defect(f) < 1e-8)) throw Error(ErrorKind::NotPOVM, "effect is not Hermitian");
    if (herm_eig(f).values(0) < -1e-8) throw Error(ErrorKind::NotPOVM, "effect is not positive semidefinite");
    sum += f;
  }
  if ((sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff() >= 1e-8) {
    throw Error(ErrorKind::NotPOVM, "effects do not sum to the identity");
  }
  const HermitianBasis basis = gell_mann_basis(static_cast<std::size_t>(d));
  const std::vector<CMat> traceless = traceless_part(basis);
  RMat t(static_cast<Eigen::Index>(effects.size()), static_cast<Eigen::Index>(traceless.size()));
  for (std::size_t j = 0; j < effects.size(); ++j) {
    for (std::size_t i = 0; i < traceless.size(); ++i) {
      t(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = hs_inner(effects[j], traceless[i]).real();
    }
  }
  return report_from_transfer(t, traceless, tol);
}

}  // namespace phasekit
