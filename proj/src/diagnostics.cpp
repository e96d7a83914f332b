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

#include "adtquant/diagnostics.hpp"

#include <algorithm>

namespace adtquant {

const std::vector<std::string_view>& diagnostic_catalogue() {
  using namespace codes;
  static const std::vector<std::string_view> all = {
      kId,           kUnknownVertex,    kNoGoal,         kGoalNotSink,   kBasicEventInput,
      kArity,        kCycle,            kDuplicateEdge,  kTriggerEdge,   kResetEdge,
      kAnnotation,   kAnalysisShape,    kTriggerShared,  kMissingAnnotation,
      kXmlMultiRoot, kXmlUnsupported,   kXmlDropped,     kPrismUnsupported, kExportOmitted,
      kParse,        kAttribute,        kGoalAmbiguous,  kCsv,           kEstimate,
      kSizeGuard,    kEmitSyntax,       kEmitUndeclared, kEmitWeights,   kEmitStructure,
      kEmitQuery,    kBadRequest,       kNotFound,       kIo,
  };
  return all;
}

Diagnostic make_error(std::string_view code, std::string message, std::optional<std::string> vertex,
                      std::optional<Target> target) {
  return Diagnostic{std::string(code), Severity::error, std::move(vertex), target,
                    std::move(message)};
}

Diagnostic make_warning(std::string_view code, std::string message,
                        std::optional<std::string> vertex, std::optional<Target> target) {
  return Diagnostic{std::string(code), Severity::warning, std::move(vertex), target,
                    std::move(message)};
}

bool has_errors(const Diagnostics& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::info: return "info";
  }
  return "error";
}

std::string_view to_string(Target target) {
  switch (target) {
    case Target::analysis_bottomup: return "analysis-bottomup";
    case Target::analysis_pac: return "analysis-pac";
    case Target::export_xml: return "export-xml";
    case Target::export_prism: return "export-prism";
    case Target::export_uppaal: return "export-uppaal";
  }
  return "analysis-bottomup";
}

std::optional<Target> parse_target(std::string_view name) {
  for (auto t : {Target::analysis_bottomup, Target::analysis_pac, Target::export_xml,
                 Target::export_prism, Target::export_uppaal}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = d.code + ": " + d.message;
  if (d.vertex) out += " @" + *d.vertex;
  return out;
}

namespace {

std::string summarize(const Diagnostics& diagnostics) {
  if (diagnostics.empty()) return "operation rejected";
  std::string out = format_diagnostic(diagnostics.front());
  if (diagnostics.size() > 1) {
    out += " (+" + std::to_string(diagnostics.size() - 1) + " more)";
  }
  return out;
}

Diagnostics non_empty(Diagnostics diagnostics) {
  if (diagnostics.empty()) {
    diagnostics.push_back(make_error(codes::kBadRequest, "operation rejected"));
  }
  return diagnostics;
}

}  // namespace

AdtError::AdtError(Diagnostics diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(non_empty(std::move(diagnostics))) {}

AdtError::AdtError(std::string_view code, std::string message, std::optional<std::string> vertex)
    : AdtError(Diagnostics{make_error(code, std::move(message), std::move(vertex))}) {}

}  // namespace adtquant
