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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adtquant {

enum class Severity { error, warning, info };

/// Analyses and exports a model can be checked against.
enum class Target { analysis_bottomup, analysis_pac, export_xml, export_prism, export_uppaal };

struct Diagnostic {
  std::string code;
  Severity severity = Severity::error;
  std::optional<std::string> vertex;
  std::optional<Target> target;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

/// Stable diagnostic codes. docs/diagnostics.md lists what each one means.
namespace codes {
inline constexpr std::string_view kId = "E_ID";
inline constexpr std::string_view kUnknownVertex = "E_UNKNOWN_VERTEX";
inline constexpr std::string_view kNoGoal = "E_NO_GOAL";
inline constexpr std::string_view kGoalNotSink = "E_GOAL_NOT_SINK";
inline constexpr std::string_view kBasicEventInput = "E_BE_HAS_INPUT";
inline constexpr std::string_view kArity = "E_ARITY";
inline constexpr std::string_view kCycle = "E_CYCLE";
inline constexpr std::string_view kDuplicateEdge = "E_DUPLICATE_EDGE";
inline constexpr std::string_view kTriggerEdge = "E_TRIGGER_EDGE";
inline constexpr std::string_view kResetEdge = "E_RESET_EDGE";
inline constexpr std::string_view kAnnotation = "E_ANNOTATION";
inline constexpr std::string_view kAnalysisShape = "E_ANALYSIS_SHAPE";
inline constexpr std::string_view kTriggerShared = "E_TR_SHARED";
inline constexpr std::string_view kMissingAnnotation = "E_MISSING_ANNOTATION";
inline constexpr std::string_view kXmlMultiRoot = "W_XML_MULTIROOT";
inline constexpr std::string_view kXmlUnsupported = "E_XML_UNSUPPORTED";
inline constexpr std::string_view kXmlDropped = "W_XML_DROPPED";
inline constexpr std::string_view kPrismUnsupported = "E_PRISM_UNSUPPORTED";
inline constexpr std::string_view kExportOmitted = "I_EXPORT_OMITTED";
inline constexpr std::string_view kParse = "E_PARSE";
inline constexpr std::string_view kAttribute = "E_ATTRIBUTE";
inline constexpr std::string_view kGoalAmbiguous = "E_GOAL_AMBIGUOUS";
inline constexpr std::string_view kCsv = "E_CSV";
inline constexpr std::string_view kEstimate = "E_ESTIMATE";
inline constexpr std::string_view kSizeGuard = "E_SIZE_GUARD";
inline constexpr std::string_view kEmitSyntax = "E_EMIT_SYNTAX";
inline constexpr std::string_view kEmitUndeclared = "E_EMIT_UNDECLARED";
inline constexpr std::string_view kEmitWeights = "E_EMIT_WEIGHTS";
inline constexpr std::string_view kEmitStructure = "E_EMIT_STRUCTURE";
inline constexpr std::string_view kEmitQuery = "E_EMIT_QUERY";
inline constexpr std::string_view kBadRequest = "E_BAD_REQUEST";
inline constexpr std::string_view kNotFound = "E_NOT_FOUND";
inline constexpr std::string_view kIo = "E_IO";
}  // namespace codes

/// Every code above, in declaration order.
const std::vector<std::string_view>& diagnostic_catalogue();

Diagnostic make_error(std::string_view code, std::string message,
                      std::optional<std::string> vertex = std::nullopt,
                      std::optional<Target> target = std::nullopt);
Diagnostic make_warning(std::string_view code, std::string message,
                        std::optional<std::string> vertex = std::nullopt,
                        std::optional<Target> target = std::nullopt);

bool has_errors(const Diagnostics& diagnostics);

std::string_view to_string(Severity severity);
std::string_view to_string(Target target);
std::optional<Target> parse_target(std::string_view name);

/// `code: message @vertex`
std::string format_diagnostic(const Diagnostic& d);

/// Thrown when an operation is rejected; carries the findings that caused it.
class AdtError : public std::runtime_error {
 public:
  explicit AdtError(Diagnostics diagnostics);
  AdtError(std::string_view code, std::string message,
           std::optional<std::string> vertex = std::nullopt);

  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }
  const std::string& code() const { return diagnostics_.front().code; }

 private:
  Diagnostics diagnostics_;
};

}  // namespace adtquant
