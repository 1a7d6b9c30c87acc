// SPDX-License-Identifier: Apache-2.0
#include "phasekit/channels.hpp"

#include <cmath>
#include <string>


#include "phasekit/error.hpp"

namespace phasekit {

KrausFamily::KrausFamily(std::vector<CMat> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw Error(ErrorKind::InvalidInput, "Kraus family must be nonempty");
  const auto rows = ops_.front().rows();
  const auto cols = ops_.front().cols();
  if (rows < 1 || cols < 1) throw Error(ErrorKind::InvalidInput, "Kraus operators must be nonempty");
  for (const auto& a : ops_) {
    if (a.rows() != rows || a.cols() != cols) {
      throw Error(ErrorKind::DimensionMismatch, "Kraus operators must share one shape");
    }
    if (!a.allFinite()) throw Error(ErrorKind::InvalidInput, "Kraus operator has non-finite entries");
  }
  in_dim_ = static_cast<std::size_t>(cols);
  out_dim_ = static_cast<std::size_t>(rows);
}

double KrausFamily::trace_defect() const {
  const auto d = static_cast<Eigen::Index>(in_dim_);
  return (frame_operator(*this) - CMat::Identity(d, d)).norm();
}

DensityMatrix::DensityMatrix(CMat mat) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch, "density matrix must be square");
  }
  if (!(hermiticity_defect(mat_) < 1e-10)) throw Error(ErrorKind::NotHermitian, "density matrix");
  if (std::abs(mat_.trace() - cplx(1.0)) >= 1e-10) {
    throw Error(ErrorKind::DomainError, "density matrix must have unit trace");
  }
  if (herm_eig(mat_).values(0) < -1e-10) {
    throw Error(ErrorKind::DomainError, "density matrix must be positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_pure(const CVec& x) {
  CMat p = x * x.adjoint();
  p /= p.trace().real();
  return DensityMatrix(0.5 * (p + p.adjoint()));
}

PureState::PureState(CVec vec) : vec_(std::move(vec)) {
  if (vec_.size() < 1 || std::abs(vec_.norm() - 1.0) >= 1e-12) {
    throw Error(ErrorKind::DomainError, "pure state vector must have unit norm");
  }
}

PureState PureState::normalized(const CVec& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw Error(ErrorKind::DomainError, "cannot normalize the zero vector");
  return PureState(v / n);
}

namespace {

void require_square_input(const KrausFamily& phi, const CMat& x, std::size_t dim, const char* what) {
  if (static_cast<std::size_t>(x.rows()) != dim || static_cast<std::size_t>(x.cols()) != dim) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": expected " + std::to_string(dim) + "x" + std::to_string(dim) +
                    " operand for family " + std::to_string(phi.out_dim()) + "x" +
                    std::to_string(phi.in_dim()));
  }
}

}  // namespace

CMat apply(const KrausFamily& phi, const CMat& rho) {
  require_square_input(phi, rho, phi.in_dim(), "apply");
  CMat out = CMat::Zero(static_cast<Eigen::Index>(phi.out_dim()), static_cast<Eigen::Index>(phi.out_dim()));
  for (const auto& a : phi.ops()) out.noalias() += a * rho * a.adjoint();
  return out;
}

CMat adjoint_apply(const KrausFamily& phi, const CMat& x) {
  require_square_input(phi, x, phi.out_dim(), "adjoint_apply");
  CMat out = CMat::Zero(static_cast<Eigen::Index>(phi.in_dim()), static_cast<Eigen::Index>(phi.in_dim()));
  for (const auto& a : phi.ops()) out.noalias() += a.adjoint() * x * a;
  return out;
}

CMat frame_operator(const KrausFamily& fam) {
  const auto d = static_cast<Eigen::Index>(fam.in_dim());
  CMat s = CMat::Zero(d, d);
  for (const auto& a : fam.ops()) s.noalias() += a.adjoint() * a;
  return s;
}

double parseval_defect(const KrausFamily& fam) {
  const auto d = static_cast<Eigen::Index>(fam.in_dim());
  return (frame_operator(fam) - CMat::Identity(d, d)).cwiseAbs().maxCoeff();
}

bool is_parseval(const KrausFamily& fam, double tol) { return parseval_defect(fam) < tol; }

KrausFamily mix_kraus(const KrausFamily& fam, const CMat& u) {
  if (u.rows() != u.cols()) throw Error(ErrorKind::NotUnitary, "mixing matrix must be square");
  if (!is_unitary(u)) throw Error(ErrorKind::NotUnitary, "mixing matrix is not unitary");
  const auto m = static_cast<std::size_t>(u.rows());
  if (m < fam.size()) {
    throw Error(ErrorKind::DimensionMismatch, "mixing matrix is smaller than the Kraus family");
  }
  const KrausFamily padded = pad(fam, m);
  std::vector<CMat> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    CMat acc = CMat::Zero(padded[0].rows(), padded[0].cols());
    for (std::size_t j = 0; j < m; ++j) {
      acc += u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * padded[j];
    }
    out.push_back(std::move(acc));
  }
  return KrausFamily(std::move(out));
}

CMat stinespring(const KrausFamily& fam) {
  const auto n = static_cast<Eigen::Index>(fam.out_dim());
  const auto d = static_cast<Eigen::Index>(fam.in_dim());
  CMat v(n * static_cast<Eigen::Index>(fam.size()), d);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    v.block(static_cast<Eigen::Index>(i) * n, 0, n, d) = fam[i];
  }
  return v;
}

KrausFamily complementary(const KrausFamily& fam) {
  const auto m = static_cast<Eigen::Index>(fam.size());
  const auto d = static_cast<Eigen::Index>(fam.in_dim());
  std::vector<CMat> r;
  r.reserve(fam.out_dim());
  for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(fam.out_dim()); ++a) {
    CMat ra(m, d);
    for (Eigen::Index i = 0; i < m; ++i) ra.row(i) = fam[static_cast<std::size_t>(i)].row(a);
    r.push_back(std::move(ra));
  }
  return KrausFamily(std::move(r));
}

KrausFamily pad(const KrausFamily& fam, std::size_t m) {
  if (m < fam.size()) throw Error(ErrorKind::DomainError, "pad: target length below current length");
  std::vector<CMat> ops = fam.ops();
  ops.resize(m, CMat::Zero(fam[0].rows(), fam[0].cols()));
  return KrausFamily(std::move(ops));
}

KrausFamily random_channel(std::size_t d, std::size_t n, std::size_t m, std::mt19937_64& rng) {
  if (d < 1 || n < 1 || m < 1) throw Error(ErrorKind::DomainError, "random_channel: dimensions must be positive");
  if (n * m < d) throw Error(ErrorKind::DomainError, "random_channel: need out_dim * kraus >= in_dim");
  const CMat g = random_gaussian(n * m, d, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  const CMat q = qr.householderQ() * CMat::Identity(g.rows(), g.cols());
  std::vector<CMat> ops;
  ops.reserve(m);
  const auto nn = static_cast<Eigen::Index>(n);
  for (std::size_t i = 0; i < m; ++i) ops.push_back(q.block(static_cast<Eigen::Index>(i) * nn, 0, nn, g.cols()));
  return KrausFamily(std::move(ops));
}

KrausFamily random_cp_map(std::size_t d, std::size_t n, std::size_t m, std::mt19937_64& rng) {
  std::vector<CMat> ops;
  ops.reserve(m);
  for (std::size_t i = 0; i < m; ++i) ops.push_back(random_gaussian(n, d, rng) / std::sqrt(2.0 * static_cast<double>(d * m)));
  return KrausFamily(std::move(ops));
}

nlohmann::json to_json(const KrausFamily& fam) {
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& a : fam.ops()) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back({a(i, j).real(), a(i, j).imag()});
      rows.push_back(std::move(row));
    }
    ops.push_back(std::move(rows));
  }
  return {{"in_dim", fam.in_dim()}, {"out_dim", fam.out_dim()}, {"ops", std::move(ops)}};
}

KrausFamily kraus_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("in_dim") || !j.contains("out_dim") || !j.contains("ops")) {
    throw Error(ErrorKind::InvalidInput, "channel JSON needs in_dim, out_dim and ops");
  }
  const auto& jd = j.at("in_dim");
  const auto& jn = j.at("out_dim");
  if (!jd.is_number_unsigned() || !jn.is_number_unsigned() || jd.get<std::size_t>() < 1 ||
      jn.get<std::size_t>() < 1) {
    throw Error(ErrorKind::InvalidInput, "in_dim and out_dim must be positive integers");
  }
  const auto d = jd.get<std::size_t>();
  const auto n = jn.get<std::size_t>();
  const auto& jops = j.at("ops");
  if (!jops.is_array() || jops.empty()) throw Error(ErrorKind::InvalidInput, "ops must be a nonempty array");

  std::vector<CMat> ops;
  for (std::size_t k = 0; k < jops.size(); ++k) {
    const auto& jm = jops[k];
    const std::string where = "ops[" + std::to_string(k) + "]";
    if (!jm.is_array() || jm.size() != n) {
      throw Error(ErrorKind::InvalidInput, where + ": expected " + std::to_string(n) + " rows");
    }
    CMat a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < n; ++r) {
      const auto& jr = jm[r];
      if (!jr.is_array() || jr.size() != d) {
        throw Error(ErrorKind::InvalidInput,
                    where + "[" + std::to_string(r) + "]: expected " + std::to_string(d) + " entries");
      }
      for (std::size_t c = 0; c < d; ++c) {
        const auto& je = jr[c];
        if (!je.is_array() || je.size() != 2 || !je[0].is_number() || !je[1].is_number()) {
          throw Error(ErrorKind::InvalidInput, where + "[" + std::to_string(r) + "][" + std::to_string(c) +
                                                   "]: entries must be [re, im] pairs");
        }
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cplx(je[0].get<double>(), je[1].get<double>());
      }
    }
    ops.push_back(std::move(a));
  }
  return KrausFamily(std::move(ops));
}

}  // namespace phasekit
