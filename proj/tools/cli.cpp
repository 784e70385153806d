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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pseudoprob/io.hpp"
#include "pseudoprob/optimizer.hpp"
#include "pseudoprob/regions.hpp"
#include "pseudoprob/witnesses.hpp"

namespace pseudoprob::cli {

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Unphysical:
    case ErrorCode::NotHermitian:
      return kUnphysical;
    case ErrorCode::BadGeometry:
    case ErrorCode::BadFrames:
    case ErrorCode::NotOrthonormal:
    case ErrorCode::TooManyObservables:
    case ErrorCode::UnsupportedShape:
    case ErrorCode::SubsystemMismatch:
      return kGeometry;
    default:
      return kUsage;
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Parse, "cannot write '" + path + "'");
  return out;
}

Vector3 parse_triple(const std::string& text) {
  std::stringstream in(text);
  std::string part;
  std::vector<double> values;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad number '" + part + "' in '" + text + "'");
    }
  }
  if (values.size() != 3) {
    throw Error(ErrorCode::Parse, "expected x,y,z but got '" + text + "'");
  }
  return {values[0], values[1], values[2]};
}

/// "A1=1,0,0 A2=0,0,1" -> qubit subsystem with sigma.v observables.
Subsystem parse_subsystem(const std::string& text) {
  std::stringstream in(text);
  std::string token;
  Subsystem sub{2, {}};
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::Parse, "expected label=x,y,z but got '" + token + "'");
    }
    sub.observables.push_back(pauli_observable(
        BlochVector::normalized(parse_triple(token.substr(eq + 1))),
        token.substr(0, eq)));
  }
  if (sub.observables.empty()) {
    throw Error(ErrorCode::Parse, "empty subsystem specification");
  }
  return sub;
}

struct WitnessArgs {
  std::string family;
  double alpha = 0.0;
  double beta = 0.0;
  std::string state;
  std::string kind;
  std::string geometry;
  bool optimize = false;
  std::uint64_t seed = 0;
  int restarts = 16;
  std::string out;
};

int cmd_witness(const WitnessArgs& a, std::ostream& out) {
  const WitnessKind kind = parse_witness_kind(a.kind);
  if (a.family.empty() == a.state.empty()) {
    throw Error(ErrorCode::Parse, "give exactly one of --family or --state");
  }
  if (!a.family.empty() && a.family != "werner_local") {
    throw Error(ErrorCode::Parse, "unknown family '" + a.family + "'");
  }
  if (a.optimize && !a.geometry.empty()) {
    throw Error(ErrorCode::Parse, "--optimize and --geometry are exclusive");
  }
  const DensityMatrix rho =
      a.state.empty() ? werner_local(a.alpha, a.beta) : load_state(a.state);

  WitnessSpec spec = canonical_witness(kind);
  if (a.optimize) {
    GeometrySearchConfig config;
    config.seed = a.seed;
    config.restarts = a.restarts;
    spec = optimize_geometry(kind, rho, config).spec;
  } else if (!a.geometry.empty()) {
    std::ifstream in(a.geometry);
    if (!in) throw Error(ErrorCode::Parse, "cannot open '" + a.geometry + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Parse, a.geometry + ": " + e.what());
    }
    spec = make_witness(kind, geometry_from_json(j));
  }
  const Json report = report_to_json(evaluate(spec, rho));

  if (a.out.empty()) {
    out << report.dump(2) << '\n';
    return kOk;
  }
  open_output(a.out) << report.dump(2) << '\n';
  RunManifest m{"witness", Json::object(), a.seed, {a.out}};
  m.parameters["kind"] = a.kind;
  m.parameters["optimize"] = a.optimize;
  if (!a.family.empty()) {
    m.parameters["family"] = a.family;
    m.parameters["alpha"] = a.alpha;
    m.parameters["beta"] = a.beta;
  } else {
    m.parameters["state"] = a.state;
  }
  if (!a.geometry.empty()) m.parameters["geometry"] = a.geometry;
  if (a.optimize) m.parameters["restarts"] = a.restarts;
  write_manifest(m);
  return kOk;
}

struct SchemeArgs {
  std::vector<std::string> subsystems;
  std::string state;
  std::vector<std::string> bloch;
  std::string out;
};

int cmd_scheme(const SchemeArgs& a, std::ostream& out) {
  std::vector<Subsystem> subs;
  for (const auto& s : a.subsystems) subs.push_back(parse_subsystem(s));
  if (!a.state.empty() && !a.bloch.empty()) {
    throw Error(ErrorCode::Parse, "--state and --bloch are exclusive");
  }
  const Scheme scheme = build_scheme(subs);

  std::optional<ComplexMatrix> rho;
  if (!a.state.empty()) {
    const DensityMatrix state = load_state(a.state);
    if (state.dim() != scheme.dim()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "state dimension does not match the observables");
    }
    rho = state.matrix();
  } else if (!a.bloch.empty()) {
    if (a.bloch.size() != subs.size()) {
      throw Error(ErrorCode::Parse, "give one --bloch per subsystem");
    }
    ComplexMatrix product = ComplexMatrix::Identity(1, 1);
    for (const auto& b : a.bloch) {
      const Vector3 r = parse_triple(b);
      ComplexMatrix local = 0.5 * (pauli(0) + r.x() * pauli(1) +
                                   r.y() * pauli(2) + r.z() * pauli(3));
      product = kron(product, local);
    }
    std::vector<int> dims(subs.size(), 2);
    rho = DensityMatrix::make(product, dims).matrix();
  }
  const Json dump = scheme_to_json(scheme, rho ? &*rho : nullptr);
  if (a.out.empty()) {
    out << dump.dump(2) << '\n';
    return kOk;
  }
  open_output(a.out) << dump.dump(2) << '\n';
  RunManifest m{"scheme", Json::object(), 0, {a.out}};
  m.parameters["subsystems"] = a.subsystems;
  if (!a.state.empty()) m.parameters["state"] = a.state;
  if (!a.bloch.empty()) m.parameters["bloch"] = a.bloch;
  write_manifest(m);
  return kOk;
}

struct RegionArgs {
  double t3 = 0.0;
  double step = 0.01;
  std::string out;
};

int cmd_region_scan(const RegionArgs& a, std::ostream& out) {
  if (!(a.step >= 1e-3 && a.step <= 0.5)) {
    throw Error(ErrorCode::BadConfig, "--step must lie in [1e-3, 0.5]");
  }
  const auto scan = slice_scan(a.t3, a.step);
  const SliceSummary s = summarize(scan);
  Json summary = Json::object({{"only_W2", s.only_w2},
                               {"only_W3", s.only_w3},
                               {"both", s.both},
                               {"none", s.none},
                               {"unphysical", s.unphysical}});
  if (a.out.empty()) {
    write_slice_csv(out, scan);
    return kOk;
  }
  std::ofstream file = open_output(a.out);
  write_slice_csv(file, scan);
  RunManifest m{"region-scan", Json::object(), 0, {a.out}};
  m.parameters["t3"] = a.t3;
  m.parameters["step"] = a.step;
  write_manifest(m);
  out << summary.dump(2) << '\n';
  return kOk;
}

struct SweepArgs {
  double beta = 0.0;
  double alpha_min = -1.0;
  double alpha_max = 0.0;
  double step = 0.01;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_werner_sweep(const SweepArgs& a, std::ostream& out) {
  GeometrySearchConfig config;
  config.seed = a.seed;
  const auto rows =
      werner_sweep(a.beta, a.alpha_min, a.alpha_max, a.step, config);
  if (a.out.empty()) {
    write_sweep_csv(out, rows);
    return kOk;
  }
  std::ofstream file = open_output(a.out);
  write_sweep_csv(file, rows);
  RunManifest m{"werner-sweep", Json::object(), a.seed, {a.out}};
  m.parameters["beta"] = a.beta;
  m.parameters["alpha_min"] = a.alpha_min;
  m.parameters["alpha_max"] = a.alpha_max;
  m.parameters["step"] = a.step;
  write_manifest(m);

  Json boundaries = Json::object();
  for (WitnessKind kind : kAllWitnesses) {
    const auto b = sweep_boundary(rows, kind);
    boundaries[std::string(to_string(kind))] = b ? Json(*b) : Json();
  }
  const auto ppt = sweep_ppt_boundary(rows);
  boundaries["PPT"] = ppt ? Json(*ppt) : Json();
  out << boundaries.dump(2) << '\n';
  return kOk;
}

struct IdentityArgs {
  std::uint64_t seed = 0;
  int trials = 50;
  double perturb = 0.0;
};

int cmd_check_identities(const IdentityArgs& a, std::ostream& out) {
  if (a.trials < 1) throw Error(ErrorCode::BadConfig, "--trials must be >= 1");
  constexpr double kLimit = 1e-10;
  double overall = 0.0;
  for (IdentityRoute route : kAllRoutes) {
    Rng rng = make_rng(a.seed, static_cast<std::uint64_t>(route));
    AffineCoefficients c = identity_coefficients(route);
    c.a += a.perturb;
    double worst = 0.0;
    for (int t = 0; t < a.trials; ++t) {
      const WitnessSpec spec = random_witness(route_kind(route), rng);
      worst = std::max(worst, identity_residual(route, spec, c, &rng));
    }
    overall = std::max(overall, worst);
    out << to_string(route) << " max_residual=" << format_float(worst) << ' '
        << (worst <= kLimit ? "ok" : "FAIL") << '\n';
  }
  out << "max_residual=" << format_float(overall) << '\n';
  return overall <= kLimit ? kOk : kCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Pseudo-probability entanglement witnesses", "pseudoprob"};
  app.require_subcommand(1);

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "Evaluate a witness on a state");
  witness->add_option("--family", wa.family, "State family (werner_local)");
  witness->add_option("--alpha", wa.alpha, "Family parameter alpha");
  witness->add_option("--beta", wa.beta, "Family parameter beta");
  witness->add_option("--state", wa.state, "State JSON file");
  witness->add_option("--kind", wa.kind, "W0..W4")->required();
  witness->add_option("--geometry", wa.geometry, "Geometry JSON file");
  witness->add_flag("--optimize", wa.optimize, "Optimize the geometry");
  witness->add_option("--seed", wa.seed, "Optimizer seed");
  witness->add_option("--restarts", wa.restarts, "Optimizer restarts");
  witness->add_option("--out", wa.out, "Report JSON path");

  SchemeArgs sa;
  auto* scheme = app.add_subcommand("scheme", "Dump a pseudo-projection scheme");
  scheme->add_option("--subsystem", sa.subsystems,
                     "Qubit observables, e.g. \"A1=1,0,0 A2=0,0,1\"")
      ->required();
  scheme->add_option("--state", sa.state, "State JSON file");
  scheme->add_option("--bloch", sa.bloch, "Bloch vector x,y,z per subsystem");
  scheme->add_option("--out", sa.out, "Dump JSON path");

  RegionArgs ra;
  auto* region = app.add_subcommand("region-scan", "Classify a t3 slice");
  region->add_option("--t3", ra.t3, "Fixed t3")->required();
  region->add_option("--step", ra.step, "Grid step in [1e-3, 0.5]");
  region->add_option("--out", ra.out, "CSV path");

  SweepArgs wsa;
  auto* sweep = app.add_subcommand("werner-sweep", "Sweep werner_local in alpha");
  sweep->add_option("--beta", wsa.beta, "Local term beta");
  sweep->add_option("--alpha-min", wsa.alpha_min, "First alpha");
  sweep->add_option("--alpha-max", wsa.alpha_max, "Last alpha");
  sweep->add_option("--step", wsa.step, "Alpha step");
  sweep->add_option("--seed", wsa.seed, "Optimizer seed");
  sweep->add_option("--out", wsa.out, "CSV path");

  IdentityArgs ia;
  auto* ident = app.add_subcommand("check-identities",
                                   "Check the operator identities");
  ident->add_option("--seed", ia.seed, "Geometry seed");
  ident->add_option("--trials", ia.trials, "Geometries per identity");
  ident->add_option("--perturb", ia.perturb, "Offset added to coefficient a");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*witness) return cmd_witness(wa, out);
    if (*scheme) return cmd_scheme(sa, out);
    if (*region) return cmd_region_scan(ra, out);
    if (*sweep) return cmd_werner_sweep(wsa, out);
    if (*ident) return cmd_check_identities(ia, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace pseudoprob::cli
