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

#include "pseudoprob/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace pseudoprob {

namespace {

constexpr double kNonclassicalTol = 1e-12;

[[noreturn]] void parse_error(const std::string& why) {
  throw Error(ErrorCode::Parse, why);
}

Json vector_to_json(const Vector3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Vector3 vector_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) parse_error("expected a 3-vector");
  Vector3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) {
      parse_error("non-numeric vector entry");
    }
    v[i] = j[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

Matrix3 matrix3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) parse_error("expected a 3x3 matrix");
  Matrix3 m;
  for (int r = 0; r < 3; ++r) {
    m.row(r) = vector_from_json(j[static_cast<std::size_t>(r)]).transpose();
  }
  return m;
}

Json frames_to_json(const std::vector<ObservableFrame>& frames) {
  Json out = Json::array();
  for (const ObservableFrame& f : frames) {
    Json dirs = Json::array();
    for (const BlochVector& d : f.directions()) dirs.push_back(vector_to_json(d.vector()));
    out.push_back(std::move(dirs));
  }
  return out;
}

std::vector<ObservableFrame> frames_from_json(const Json& j) {
  if (!j.is_array()) parse_error("expected a list of frames");
  std::vector<ObservableFrame> out;
  for (const Json& f : j) {
    if (!f.is_array()) parse_error("expected a list of directions");
    std::vector<BlochVector> dirs;
    for (const Json& d : f) dirs.push_back(BlochVector::make(vector_from_json(d)));
    out.push_back(make_frame(dirs));
  }
  return out;
}

Json observable_to_json(const DichotomicObservable& o) {
  Json j = Json::object();
  j["label"] = o.label();
  if (o.direction()) {
    j["direction"] = vector_to_json(o.direction()->vector());
  } else {
    j["matrix"] = matrix_to_json(o.matrix());
  }
  return j;
}

DichotomicObservable observable_from_json(const Json& j,
                                          const std::string& label) {
  if (j.is_array()) {
    return pauli_observable(BlochVector::make(vector_from_json(j)), label);
  }
  if (j.is_object() && j.contains("direction")) {
    return pauli_observable(BlochVector::make(vector_from_json(j["direction"])),
                            label);
  }
  if (j.is_object() && j.contains("matrix")) {
    return DichotomicObservable(matrix_from_json(j["matrix"]), label);
  }
  parse_error("observable '" + label + "' needs a direction or a matrix");
}

}  // namespace

std::string_view tool_version() { return PSEUDOPROB_VERSION; }

std::string format_float(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
  }
  return out;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_error("expected a list of [re, im]");
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(j.size()))));
  if (static_cast<std::size_t>(n * n) != j.size()) {
    parse_error("matrix entry count " + std::to_string(j.size()) +
                " is not a square");
  }
  ComplexMatrix m(n, n);
  for (Eigen::Index k = 0; k < n * n; ++k) {
    const Json& e = j[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number()) {
      parse_error("matrix entries must be [re, im] pairs");
    }
    m(k / n, k % n) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

DensityMatrix state_from_json(const Json& j) {
  if (!j.is_object()) parse_error("state must be a JSON object");
  if (j.contains("pauli")) {
    const Json& p = j["pauli"];
    TwoQubitPauliForm form;
    if (p.contains("P")) form.P = vector_from_json(p["P"]);
    if (p.contains("Q")) form.Q = vector_from_json(p["Q"]);
    if (p.contains("T")) form.T = matrix3_from_json(p["T"]);
    return DensityMatrix::two_qubit(form.reconstruct());
  }
  if (j.contains("matrix")) {
    const ComplexMatrix m = matrix_from_json(j["matrix"]);
    std::vector<int> dims;
    if (j.contains("dims")) {
      if (!j["dims"].is_array()) parse_error("dims must be a list");
      for (const Json& d : j["dims"]) {
        if (!d.is_number_integer()) parse_error("dims must be integers");
        dims.push_back(d.get<int>());
      }
    } else if (m.rows() == 4) {
      dims = {2, 2};
    } else {
      dims = {static_cast<int>(m.rows())};
    }
    return DensityMatrix::make(m, dims);
  }
  if (j.contains("family")) {
    if (j["family"] != "werner_local") {
      parse_error("unknown state family " + j["family"].dump());
    }
    const double alpha = j.value("alpha", 0.0);
    const double beta = j.value("beta", 0.0);
    return werner_local(alpha, beta);
  }
  parse_error("state needs one of 'pauli', 'matrix' or 'family'");
}

DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open state file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error("state file '" + path + "': " + e.what());
  }
  return state_from_json(j);
}

Json geometry_to_json(const WitnessGeometry& geometry) {
  if (const auto* obs = std::get_if<ChshObservables>(&geometry)) {
    Json j = Json::object();
    j["type"] = "chsh";
    j["a1"] = observable_to_json(obs->a1);
    j["a2"] = observable_to_json(obs->a2);
    j["b1"] = observable_to_json(obs->b1);
    j["b2"] = observable_to_json(obs->b2);
    return j;
  }
  const auto& g = std::get<FrameGeometry>(geometry);
  Json j = Json::object();
  j["type"] = "frames";
  j["first"] = frames_to_json(g.first);
  j["second"] = frames_to_json(g.second);
  return j;
}

WitnessGeometry geometry_from_json(const Json& j) {
  if (!j.is_object()) parse_error("geometry must be a JSON object");
  if (j.contains("a1")) {
    for (const char* key : {"a2", "b1", "b2"}) {
      if (!j.contains(key)) parse_error(std::string("geometry lacks ") + key);
    }
    return ChshObservables{observable_from_json(j["a1"], "A1"),
                           observable_from_json(j["a2"], "A2"),
                           observable_from_json(j["b1"], "B1"),
                           observable_from_json(j["b2"], "B2")};
  }
  if (j.contains("first") && j.contains("second")) {
    return FrameGeometry{frames_from_json(j["first"]),
                         frames_from_json(j["second"])};
  }
  parse_error("geometry needs a1..b2 or first/second frames");
}

Json report_to_json(const WitnessReport& report) {
  Json j = Json::object();
  j["kind"] = std::string(to_string(report.kind));
  j["value"] = report.value;
  j["bound"] = report.bound;
  j["detected"] = report.detected;
  j["geometry"] = geometry_to_json(report.geometry);
  j["scheme_sum"] = report.scheme_sum ? Json(*report.scheme_sum) : Json();
  return j;
}

Json scheme_to_json(const Scheme& scheme, const ComplexMatrix* rho) {
  Json j = Json::object();
  Json observables = Json::array();
  for (std::size_t s = 0; s < scheme.subsystems().size(); ++s) {
    for (const auto& o : scheme.subsystems()[s].observables) {
      Json entry = observable_to_json(o);
      entry["subsystem"] = s;
      observables.push_back(std::move(entry));
    }
  }
  j["observables"] = std::move(observables);

  std::vector<double> probs;
  if (rho != nullptr) probs = scheme.pseudo_probabilities(*rho);
  Json entries = Json::array();
  for (std::size_t i = 0; i < scheme.entries().size(); ++i) {
    const PseudoProjection& e = scheme.entries()[i];
    Json entry = Json::object();
    entry["outcomes"] = scheme.key(e.outcome);
    entry["operator"] = matrix_to_json(e.op);
    entry["min_eigenvalue"] = min_eigenvalue(e);
    if (rho != nullptr) {
      entry["pseudo_probability"] = probs[i];
      entry["nonclassical"] =
          probs[i] < -kNonclassicalTol || probs[i] > 1.0 + kNonclassicalTol;
    }
    entries.push_back(std::move(entry));
  }
  j["entries"] = std::move(entries);

  const double identity_residual =
      max_abs(scheme.sum() - ComplexMatrix::Identity(scheme.dim(), scheme.dim()));
  j["identity_residual"] = identity_residual;
  j["sums_to_identity"] = identity_residual < 1e-10;

  Json marginals = Json::array();
  double worst = 0.0;
  for (const std::string& label : scheme.labels()) {
    const Scheme summed = marginalize(scheme, label);
    std::vector<Subsystem> reduced = summed.subsystems();
    const Scheme direct = build_scheme(std::move(reduced));
    double residual = 0.0;
    for (std::size_t i = 0; i < direct.entries().size(); ++i) {
      residual = std::max(residual, max_abs(summed.entries()[i].op -
                                            direct.entries()[i].op));
    }
    worst = std::max(worst, residual);
    marginals.push_back(Json::object({{"label", label}, {"residual", residual}}));
  }
  j["marginal_residuals"] = std::move(marginals);
  j["marginals_consistent"] = worst < 1e-12;
  if (rho != nullptr) {
    double total = 0.0;
    for (double p : probs) total += p;
    j["pseudo_probability_sum"] = total;
  }
  return j;
}

void write_slice_csv(std::ostream& out,
                     const std::vector<RegionClassification>& scan) {
  out << "t1,t2,t3,physical,W1,W2,W3,W4\n";
  for (const RegionClassification& c : scan) {
    out << format_float(c.point.t1) << ',' << format_float(c.point.t2) << ','
        << format_float(c.point.t3) << ',' << (c.physical ? 1 : 0);
    for (WitnessKind kind : kRegionWitnesses) out << ',' << (c.detects(kind) ? 1 : 0);
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<WernerSweepRow>& rows) {
  out << "alpha,beta,physical,ppt";
  for (WitnessKind kind : kAllWitnesses) {
    out << ',' << to_string(kind) << "_value," << to_string(kind) << "_detected";
  }
  out << '\n';
  for (const WernerSweepRow& r : rows) {
    out << format_float(r.alpha) << ',' << format_float(r.beta) << ','
        << (r.physical ? 1 : 0) << ',' << (r.ppt_entangled ? 1 : 0);
    for (std::size_t i = 0; i < kAllWitnesses.size(); ++i) {
      out << ',' << format_float(r.values[i]) << ',' << (r.detected[i] ? 1 : 0);
    }
    out << '\n';
  }
}

Json manifest_to_json(const RunManifest& manifest) {
  Json j = Json::object();
  j["command"] = manifest.command;
  j["parameters"] = manifest.parameters;
  j["seed"] = manifest.seed;
  j["version"] = std::string(tool_version());
  j["outputs"] = manifest.outputs;
  return j;
}

std::string write_manifest(const RunManifest& manifest) {
  if (manifest.outputs.empty()) {
    throw Error(ErrorCode::Parse, "manifest without outputs");
  }
  const std::string path = manifest.outputs.front() + ".manifest.json";
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Parse, "cannot write '" + path + "'");
  out << manifest_to_json(manifest).dump(2) << '\n';
  return path;
}

}  // namespace pseudoprob
