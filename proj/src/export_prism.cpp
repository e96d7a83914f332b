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

#include <functional>

#include "adtquant/export.hpp"
#include "adtquant/formats.hpp"

// Encoding (see docs/semantics.md):
//   sel = 0      scheduler state: pick one basic event uniformly at random
//   sel = k      event k selected; its owner attempts or skips it if it is
//                still undecided, otherwise control returns to the scheduler
//   s_<id>       0 undecided, 1 succeeded, 2 failed
// The goal label is the gate structure over s_<id>=1, read once every event is decided.

namespace adtquant {

std::string_view to_string(ExportTarget target) {
  return target == ExportTarget::prism_smg ? "prism-smg" : "uppaal-xml";
}

std::optional<ExportTarget> parse_export_target(std::string_view name) {
  if (name == "prism-smg" || name == "prism") return ExportTarget::prism_smg;
  if (name == "uppaal-xml" || name == "uppaal") return ExportTarget::uppaal_xml;
  return std::nullopt;
}

namespace {

Diagnostics split_errors(Diagnostics& all) {
  Diagnostics errors, rest;
  for (auto& d : all) (d.severity == Severity::error ? errors : rest).push_back(std::move(d));
  all = std::move(rest);
  return errors;
}

std::string structure_formula(const AdtGraph& graph, const VertexId& id,
                              const std::map<VertexId, std::vector<VertexId>>& inputs) {
  const auto& v = graph.at(id);
  if (v.is_basic_event()) return "s_" + id + "=1";
  const auto& in = inputs.at(id);
  if (*v.gate == GateType::NOT) return "!(" + structure_formula(graph, in.front(), inputs) + ")";
  const char* op = *v.gate == GateType::AND ? " & " : " | ";
  std::string out = "(";
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (i) out += op;
    out += structure_formula(graph, in[i], inputs);
  }
  return out + ")";
}

}  // namespace

ExportArtifact export_prism(const AdtGraph& graph) {
  Diagnostics notes = feedback(graph, Target::export_prism);
  if (auto errors = split_errors(notes); !errors.empty()) throw AdtError(std::move(errors));

  std::vector<VertexId> events;
  for (const auto& id : relevant_vertices(graph)) {
    if (graph.at(id).is_basic_event()) events.push_back(id);
  }
  Diagnostics missing;
  for (const auto& id : events) {
    if (!graph.at(id).quant.prob) {
      missing.push_back(make_error(codes::kMissingAnnotation,
                                   "basic event has no probability", id, Target::export_prism));
    }
  }
  if (!missing.empty()) throw AdtError(std::move(missing));

  const auto inputs = graph.input_map();
  const std::size_t n = events.size();
  std::string m;
  m += "// attack-defense tree";
  if (!graph.name.empty()) m += " " + graph.name;
  m += ", goal " + graph.goal + "\n";
  m += "// sel=0: uniform choice of the next basic event; s_<id>: 0 undecided, 1 succeeded, 2 failed\n";
  m += "smg\n\n";

  for (Player player : {Player::attacker, Player::defender}) {
    std::vector<std::string> actions;
    if (player == Player::attacker) actions = {"[pick]", "[reselect]", "[finish]"};
    for (const auto& id : events) {
      if (graph.at(id).player != player) continue;
      actions.push_back("[attempt_" + id + "]");
      actions.push_back("[skip_" + id + "]");
    }
    if (actions.empty()) continue;
    m += "player " + std::string(to_string(player)) + "\n  ";
    for (std::size_t i = 0; i < actions.size(); ++i) m += (i ? ", " : "") + actions[i];
    m += "\nendplayer\n\n";
  }

  std::string done;
  for (std::size_t k = 0; k < n; ++k) done += (k ? " & " : "") + ("s_" + events[k] + "!=0");
  m += "formula done = " + done + ";\n\n";

  m += "module adt\n";
  m += "  sel : [0.." + std::to_string(n) + "] init 0;\n";
  for (const auto& id : events) m += "  s_" + id + " : [0..2] init 0;\n";
  m += "\n";

  std::string any_undecided;
  for (std::size_t k = 0; k < n; ++k) any_undecided += (k ? " | " : "") + ("s_" + events[k] + "=0");
  m += "  [pick] sel=0 & (" + any_undecided + ") -> ";
  for (std::size_t k = 0; k < n; ++k) {
    if (k) m += " + ";
    m += "1/" + std::to_string(n) + ":(sel'=" + std::to_string(k + 1) + ")";
  }
  m += ";\n";

  for (std::size_t k = 0; k < n; ++k) {
    const auto& id = events[k];
    const std::string sel = "sel=" + std::to_string(k + 1);
    const std::string var = "s_" + id;
    const double p = *graph.at(id).quant.prob;
    m += "  [attempt_" + id + "] " + sel + " & " + var + "=0 -> ";
    std::vector<std::string> branches;
    if (p > 0.0) branches.push_back(format_real(p) + ":(" + var + "'=1)&(sel'=0)");
    if (p < 1.0) branches.push_back(format_complement(p) + ":(" + var + "'=2)&(sel'=0)");
    for (std::size_t b = 0; b < branches.size(); ++b) m += (b ? " + " : "") + branches[b];
    m += ";\n";
    m += "  [skip_" + id + "] " + sel + " & " + var + "=0 -> (" + var + "'=2)&(sel'=0);\n";
    m += "  [reselect] " + sel + " & " + var + "!=0 -> (sel'=0);\n";
  }
  m += "  [finish] sel=0 & done -> true;\n";
  m += "endmodule\n\n";

  m += "label \"goal\" = done & " + structure_formula(graph, graph.goal, inputs) + ";\n";

  ExportArtifact artifact;
  artifact.files["model.prism"] = std::move(m);
  artifact.files["props.props"] =
      "// maximal probability that the attacker reaches the goal\n"
      "<<attacker>> Pmax=? [ F \"goal\" ]\n";
  artifact.diagnostics = std::move(notes);
  return artifact;
}

ExportArtifact export_model(const AdtGraph& graph, ExportTarget target,
                            std::optional<double> horizon) {
  return target == ExportTarget::prism_smg ? export_prism(graph) : export_uppaal(graph, horizon);
}

}  // namespace adtquant
