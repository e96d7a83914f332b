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

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "adtquant/graph.hpp"

namespace adtquant {

enum class ExportTarget { prism_smg, uppaal_xml };

std::string_view to_string(ExportTarget target);
/// Accepts "prism-smg"/"prism" and "uppaal-xml"/"uppaal".
std::optional<ExportTarget> parse_export_target(std::string_view name);

struct ExportArtifact {
  /// prism-smg: model.prism, props.props. uppaal-xml: model.xml, queries.q.
  std::map<std::string, std::string> files;
  /// Warnings and notes from feedback(); errors are thrown instead.
  Diagnostics diagnostics;
};

/// PRISM-games stochastic game. Throws AdtError on feedback errors or
/// basic events without a probability.
ExportArtifact export_prism(const AdtGraph& graph);

/// UPPAAL stochastic timed automata. The query horizon defaults to the sum of
/// the success delays. Throws AdtError on missing probability or delay annotations.
ExportArtifact export_uppaal(const AdtGraph& graph, std::optional<double> horizon = std::nullopt);

ExportArtifact export_model(const AdtGraph& graph, ExportTarget target,
                            std::optional<double> horizon = std::nullopt);

/// Checks one emitted model file (model.prism or model.xml) against the subset
/// grammar the exporter produces. Returns the problems found; empty means accepted.
Diagnostics validate_emitted(std::string_view content, ExportTarget kind);

/// validate_emitted on the model file plus the query file and its references into the model.
Diagnostics validate_emitted(const ExportArtifact& artifact, ExportTarget kind);

}  // namespace adtquant
