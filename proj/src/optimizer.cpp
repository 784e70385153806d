// Copyright 2026 The pseudoprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pseudoprob/optimizer.hpp"

#include <cmath>
#include <array>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include <Eigen/SVD>

namespace pseudoprob {

namespace {

using Frame = Eigen::Matrix<double, 3, Eigen::Dynamic>;
using Params = Eigen::VectorXd;

constexpr double kImproveTol = 1e-15;
constexpr int kPolishIterations = 200;

/// Maximizes f by coordinate compass search over the step schedule.
double compass_search(const std::function<double(const Params&)>& f,
                      Params& x, const GeometrySearchConfig& config) {
  double best = f(x);
  for (double step : config.steps) {
    for (int it = 0; it < config.max_iterations; ++it) {
      bool improved = false;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        for (double dir : {1.0, -1.0}) {
          Params y = x;
          y[i] += dir * step;
          const double v = f(y);
          if (v > best + kImproveTol) {
            x = y;
            best = v;
            improved = true;
            break;
          }
        }
      }
      if (!improved) break;
    }
  }
  return best;
}

Params random_angles(Eigen::Index n, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  Params x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = angle(rng);
  return x;
}

Matrix3 oriented(const Matrix3& r, bool reflect) {
  if (!reflect) return r;
  Matrix3 out = r;
  out.col(2) = -out.col(2);
  return out;
}

/// Orthonormal factor W Z^T of M = W S Z^T.
Frame polar(const Frame& m) {
  const Eigen::MatrixXd dense = m;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

double frame_value(const Matrix3& t, const Frame& u, const Frame& v) {
  return (u.transpose() * t * v).trace();
}

struct FramePair {
  Frame u;
  Frame v;
  double value;
};

/// Alternating exact minimization of tr(U^T T V) over each side.
FramePair polish_frames(const Matrix3& t, Frame u, Frame v) {
  double value = frame_value(t, u, v);
  for (int it = 0; it < kPolishIterations; ++it) {
    u = -polar(t * v);
    v = -polar(t.transpose() * u);
    const double next = frame_value(t, u, v);
    const bool done = std::abs(next - value) < kImproveTol;
    value = next;
    if (done) break;
  }
  return {u, v, value};
}

Vector3 spherical(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

struct ChshVectors {
  Vector3 a1, a2, b1, b2;
  double value(const Matrix3& t) const {
    return a1.dot(t * (b1 + b2)) + a2.dot(t * (b1 - b2));
  }
};

void normalize_into(Vector3& target, const Vector3& v) {
  const double n = v.norm();
  if (n > 1e-14) target = v / n;
}

/// See-saw ascent on the CHSH value.
ChshVectors polish_chsh(const Matrix3& t, ChshVectors c) {
  if (c.value(t) < 0) {
    c.a1 = -c.a1;
    c.a2 = -c.a2;
  }
  double value = c.value(t);
  for (int it = 0; it < kPolishIterations; ++it) {
    normalize_into(c.a1, t * (c.b1 + c.b2));
    normalize_into(c.a2, t * (c.b1 - c.b2));
    normalize_into(c.b1, t.transpose() * (c.a1 + c.a2));
    normalize_into(c.b2, t.transpose() * (c.a1 - c.a2));
    const double next = c.value(t);
    const bool done = std::abs(next - value) < kImproveTol;
    value = next;
    if (done) break;
  }
  return c;
}

GeometryResult optimize_frames(WitnessKind kind, const DensityMatrix& rho,
                               const GeometrySearchConfig& config) {
  const int k = witness_rank(kind);
  const Matrix3 t = pauli_form(rho).T;
  const Frame canonical = Matrix3::Identity().leftCols(k);

  FramePair best{canonical, canonical, 0.0};
  int best_restart = -1;
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng = make_rng(config.seed, static_cast<std::uint64_t>(r));
    const bool reflect_first = (r & 1) != 0;
    const bool reflect_second = (r & 2) != 0;
    auto frames = [&](const Params& x) {
      const Frame u =
          oriented(euler_rotation(x[0], x[1], x[2]), reflect_first) * canonical;
      const Frame v =
          oriented(euler_rotation(x[3], x[4], x[5]), reflect_second) *
          canonical;
      return std::pair{u, v};
    };
    Params x = random_angles(6, rng);
    compass_search(
        [&](const Params& p) {
          const auto [u, v] = frames(p);
          return -frame_value(t, u, v);
        },
        x, config);
    const auto [u, v] = frames(x);
    const FramePair polished = polish_frames(t, u, v);
    if (best_restart < 0 || polished.value < best.value - kImproveTol) {
      best = polished;
      best_restart = r;
    }
  }
  WitnessSpec spec = witness_from_directions(kind, best.u, best.v);
  const double value = evaluate(spec, rho).value;
  return {std::move(spec), value, best_restart};
}

GeometryResult optimize_chsh_qubits(const DensityMatrix& rho,
                                    const GeometrySearchConfig& config) {
  const Matrix3 t = pauli_form(rho).T;
  ChshVectors best{};
  double best_score = -1.0;
  int best_restart = -1;
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng = make_rng(config.seed, static_cast<std::uint64_t>(r));
    auto vectors = [](const Params& x) {
      return ChshVectors{spherical(x[0], x[1]), spherical(x[2], x[3]),
                         spherical(x[4], x[5]), spherical(x[6], x[7])};
    };
    Params x = random_angles(8, rng);
    compass_search(
        [&](const Params& p) { return std::abs(vectors(p).value(t)); }, x,
        config);
    const ChshVectors polished = polish_chsh(t, vectors(x));
    const double score = std::abs(polished.value(t));
    if (score > best_score + kImproveTol) {
      best = polished;
      best_score = score;
      best_restart = r;
    }
  }
  WitnessSpec spec = make_witness(
      WitnessKind::W0,
      chsh_from_bloch(BlochVector::normalized(best.a1),
                      BlochVector::normalized(best.a2),
                      BlochVector::normalized(best.b1),
                      BlochVector::normalized(best.b2)));
  const double value = evaluate(spec, rho).value;
  return {std::move(spec), value, best_restart};
}

/// sign(X) with zero eigenvalues sent to +1.
ComplexMatrix matrix_sign(const ComplexMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (x + x.adjoint()));
  Eigen::VectorXd s = eig.eigenvalues();
  for (Eigen::Index i = 0; i < s.size(); ++i) s[i] = s[i] < 0 ? -1.0 : 1.0;
  const ComplexMatrix& v = eig.eigenvectors();
  ComplexMatrix out = v * s.cast<Complex>().asDiagonal() * v.adjoint();
  return 0.5 * (out + out.adjoint());
}

/// X(i,j) = sum_kl rho(i dB + k, j dB + l) B(l,k), so Tr(rho A(x)B) = Tr(X A).
ComplexMatrix contract_second(const ComplexMatrix& rho, const ComplexMatrix& b,
                              int da, int db) {
  ComplexMatrix x = ComplexMatrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l)
          x(i, j) += rho(i * db + k, j * db + l) * b(l, k);
  return x;
}

ComplexMatrix contract_first(const ComplexMatrix& rho, const ComplexMatrix& a,
                             int da, int db) {
  ComplexMatrix y = ComplexMatrix::Zero(db, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l)
          y(k, l) += rho(i * db + k, j * db + l) * a(j, i);
  return y;
}

GeometryResult optimize_chsh_general(const DensityMatrix& rho,
                                     const GeometrySearchConfig& config) {
  const int da = rho.dims()[0];
  const int db = rho.dims()[1];
  const ComplexMatrix& m = rho.matrix();
  auto chsh_value = [&](const ComplexMatrix& a1, const ComplexMatrix& a2,
                        const ComplexMatrix& b1, const ComplexMatrix& b2) {
    return (contract_second(m, b1 + b2, da, db) * a1 +
            contract_second(m, b1 - b2, da, db) * a2)
        .trace()
        .real();
  };
  std::array<ComplexMatrix, 4> best;
  double best_score = -1.0;
  int best_restart = -1;
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng = make_rng(config.seed, static_cast<std::uint64_t>(r));
    std::uniform_int_distribution<int> rank(1, db - 1);
    ComplexMatrix b1 = random_dichotomic(db, rank(rng), rng()).matrix();
    ComplexMatrix b2 = random_dichotomic(db, rank(rng), rng()).matrix();
    ComplexMatrix a1;
    ComplexMatrix a2;
    double value = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < config.max_iterations; ++it) {
      a1 = matrix_sign(contract_second(m, b1 + b2, da, db));
      a2 = matrix_sign(contract_second(m, b1 - b2, da, db));
      b1 = matrix_sign(contract_first(m, a1 + a2, da, db));
      b2 = matrix_sign(contract_first(m, a1 - a2, da, db));
      const double next = chsh_value(a1, a2, b1, b2);
      const bool done = std::abs(next - value) < kImproveTol;
      value = next;
      if (done) break;
    }
    if (std::abs(value) > best_score + kImproveTol) {
      best = {a1, a2, b1, b2};
      best_score = std::abs(value);
      best_restart = r;
    }
  }
  WitnessSpec spec = make_witness(
      WitnessKind::W0,
      ChshObservables{DichotomicObservable(best[0], "A1"),
                      DichotomicObservable(best[1], "A2"),
                      DichotomicObservable(best[2], "B1"),
                      DichotomicObservable(best[3], "B2")});
  const double value = evaluate(spec, rho).value;
  return {std::move(spec), value, best_restart};
}

}  // namespace

void GeometrySearchConfig::validate() const {
  if (restarts < 1) {
    throw Error(ErrorCode::BadConfig, "restarts must be >= 1");
  }
  if (max_iterations < 1) {
    throw Error(ErrorCode::BadConfig, "max_iterations must be >= 1");
  }
  if (steps.empty()) throw Error(ErrorCode::BadConfig, "empty step schedule");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0) || (i > 0 && !(steps[i] < steps[i - 1]))) {
      throw Error(ErrorCode::BadConfig,
                  "steps must be positive and strictly decreasing");
    }
  }
}

Matrix3 euler_rotation(double a, double b, double c) {
  return (Eigen::AngleAxisd(a, Vector3::UnitZ()) *
          Eigen::AngleAxisd(b, Vector3::UnitY()) *
          Eigen::AngleAxisd(c, Vector3::UnitZ()))
      .toRotationMatrix();
}

double violation_score(WitnessKind kind, double value) {
  return kind == WitnessKind::W0 ? std::abs(value) : -value;
}

GeometryResult optimize_geometry(WitnessKind kind, const DensityMatrix& rho,
                                 const GeometrySearchConfig& config) {
  config.validate();
  if (kind == WitnessKind::W0) {
    if (rho.dims().size() != 2 || rho.dims()[0] < 2 || rho.dims()[1] < 2) {
      throw Error(ErrorCode::UnsupportedShape,
                  "W0 needs a bipartite state with local dims >= 2");
    }
    return rho.is_two_qubit() ? optimize_chsh_qubits(rho, config)
                              : optimize_chsh_general(rho, config);
  }
  if (!rho.is_two_qubit()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(to_string(kind)) + " is defined for two qubits");
  }
  return optimize_frames(kind, rho, config);
}

double brute_force_geometry(WitnessKind kind, const DensityMatrix& rho,
                            double resolution_deg, double max_evaluations) {
  if (!(resolution_deg >= 1.0)) {
    throw Error(ErrorCode::ResolutionTooFine,
                "resolution must be at least 1 degree");
  }
  if (!rho.is_two_qubit()) {
    throw Error(ErrorCode::UnsupportedShape,
                "brute force scans qubit geometries only");
  }
  const double h = resolution_deg * M_PI / 180.0;
  const auto n_full = static_cast<long>(std::floor(360.0 / resolution_deg + 1e-9));
  const auto n_half =
      static_cast<long>(std::floor(180.0 / resolution_deg + 1e-9)) + 1;
  const Matrix3 t = pauli_form(rho).T;

  const double rotations = double(n_full) * double(n_half) * double(n_full);
  double projected = 0.0;
  switch (witness_rank(kind)) {
    case 0: projected = std::pow(double(n_full) * double(n_half), 2); break;
    case 2: projected = rotations; break;
    case 3: projected = 2.0 * rotations; break;
  }
  if (projected > max_evaluations) {
    throw Error(ErrorCode::ResolutionTooFine,
                "grid needs " + std::to_string(projected) +
                    " evaluations, budget " + std::to_string(max_evaluations));
  }

  if (kind == WitnessKind::W0) {
    std::vector<Vector3> tb;
    tb.reserve(static_cast<std::size_t>(n_full * n_half));
    for (long j = 0; j < n_half; ++j)
      for (long i = 0; i < n_full; ++i)
        tb.push_back(t * spherical(double(j) * h, double(i) * h));
    double best = 0.0;
    for (const Vector3& x : tb)
      for (const Vector3& y : tb)
        best = std::max(best, (x + y).norm() + (x - y).norm());
    return best;
  }

  const bool triplet = witness_rank(kind) == 3;
  double best = std::numeric_limits<double>::infinity();
  for (long i = 0; i < n_full; ++i) {
    for (long j = 0; j < n_half; ++j) {
      for (long l = 0; l < n_full; ++l) {
        const Matrix3 r =
            euler_rotation(double(i) * h, double(j) * h, double(l) * h);
        if (triplet) {
          // value = tr(T O) with O = V U^T over O(3)
          const double proper = (t * r).trace();
          const double improper = (t * oriented(r, true)).trace();
          best = std::min({best, proper, improper});
        } else {
          const Eigen::Matrix<double, 3, 2> m = t * r.leftCols<2>();
          const Eigen::Matrix2d g = m.transpose() * m;
          const double det = std::max(0.0, g.determinant());
          best = std::min(best,
                          -std::sqrt(std::max(0.0, g.trace() + 2.0 * std::sqrt(det))));
        }
      }
    }
  }
  return best;
}

}  // namespace pseudoprob
