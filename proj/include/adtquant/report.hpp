/* Copyright 2026 The adtquant Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>

#include "adtquant/analysis.hpp"
#include "adtquant/export.hpp"
#include "adtquant/pac.hpp"
#include "json.hpp"

// Wire and text renderings shared by the CLI and the HTTP service, so both
// surfaces produce the same payload for the same request.

namespace adtquant {

using Json = nlohmann::json;

struct AnalysisRequest {
  Domain domain = Domain::prob;
  bool pac = false;
  DeltaRule delta_rule = DeltaRule::independent;
  /// Treat leaves without eps/delta as exact (0, 0)-PAC values.
  bool exact_leaves = false;
};

std::string_view to_string(DeltaRule rule);
/// "independent" or "union".
std::optional<DeltaRule> parse_delta_rule(std::string_view name);

Json to_json(const Diagnostic& d);
Json to_json(const Diagnostics& ds);
Json to_json(const PacValue& v);
Json to_json(const ExportArtifact& artifact);

/// Runs the requested analysis. Throws AdtError exactly like analyze / analyze_pac.
Json analysis_payload(const AdtGraph& graph, const AnalysisRequest& request);

/// Indented per-vertex listing starting at the goal, e.g.
/// `ID 10 p: 0.456463 ε: 0.130461 δ: 0.226219`.
std::string analysis_listing(const AdtGraph& graph, const AnalysisRequest& request);

/// Compact rendering used in listings: up to 7 significant digits.
std::string short_real(double value);

}  // namespace adtquant
