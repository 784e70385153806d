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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pseudoprob/pseudoprojection.hpp"
#include "pseudoprob/regions.hpp"
#include "pseudoprob/states.hpp"
#include "pseudoprob/witnesses.hpp"

namespace pseudoprob {

using Json = nlohmann::ordered_json;

/// Tool version written into manifests.
std::string_view tool_version();

/// 12 significant digits; "nan" for NaN.
std::string format_float(double value);

/// Complex matrix as a row-major list of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
/// Inverse of matrix_to_json for a square matrix (Parse on bad shape).
ComplexMatrix matrix_from_json(const Json& j);

/// State file: {"pauli": {"P": [..], "Q": [..], "T": [[..],[..],[..]]}},
/// {"matrix": [[re, im], ...], "dims": [dA, dB]} or
/// {"family": "werner_local", "alpha": a, "beta": b}. Parse on malformed
/// input, Unphysical or NotHermitian on invalid states.
DensityMatrix state_from_json(const Json& j);
DensityMatrix load_state(const std::string& path);

Json geometry_to_json(const WitnessGeometry& geometry);
/// Accepts the geometry_to_json layout for Bloch observables and frames.
WitnessGeometry geometry_from_json(const Json& j);

/// {kind, value, bound, detected, geometry, scheme_sum}.
Json report_to_json(const WitnessReport& report);

/// Observables, entries with operators (and pseudo probabilities when rho
/// is given), sum-to-identity residual and per-observable marginal
/// residuals against directly built schemes.
Json scheme_to_json(const Scheme& scheme, const ComplexMatrix* rho = nullptr);

/// Header t1,t2,t3,physical,W1,W2,W3,W4.
void write_slice_csv(std::ostream& out,
                     const std::vector<RegionClassification>& scan);

/// Header alpha,beta,physical,ppt,W0_value,W0_detected,...,W4_detected.
void write_sweep_csv(std::ostream& out, const std::vector<WernerSweepRow>& rows);

struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
};

Json manifest_to_json(const RunManifest& manifest);
/// Writes `<output>.manifest.json` for the first output file and returns its
/// path.
std::string write_manifest(const RunManifest& manifest);

}  // namespace pseudoprob
