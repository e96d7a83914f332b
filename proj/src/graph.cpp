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

#include "adtquant/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>

namespace adtquant {

std::string_view to_string(GateType type) {
  switch (type) {
    case GateType::AND: return "AND";
    case GateType::OR: return "OR";
    case GateType::NOT: return "NOT";
    case GateType::SAND: return "SAND";
    case GateType::SOR: return "SOR";
    case GateType::TR: return "TR";
    case GateType::RE: return "RE";
  }
  return "AND";
}

std::optional<GateType> parse_gate_type(std::string_view name) {
  for (auto t : {GateType::AND, GateType::OR, GateType::NOT, GateType::SAND, GateType::SOR,
                 GateType::TR, GateType::RE}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::string_view to_string(Player player) {
  return player == Player::attacker ? "attacker" : "defender";
}

std::optional<Player> parse_player(std::string_view name) {
  if (name == "attacker") return Player::attacker;
  if (name == "defender") return Player::defender;
  return std::nullopt;
}

Player opponent(Player player) {
  return player == Player::attacker ? Player::defender : Player::attacker;
}

bool is_valid_vertex_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

// ---------------------------------------------------------------------------
// AdtGraph

AdtGraph& AdtGraph::add_basic_event(const VertexId& id, Player player, QuantAnnotation quant,
                                    std::string label) {
  Vertex v;
  v.player = player;
  v.quant = std::move(quant);
  v.label = std::move(label);
  vertices[id] = std::move(v);
  return *this;
}

AdtGraph& AdtGraph::add_gate(const VertexId& id, GateType type,
                             const std::vector<VertexId>& inputs, std::string label) {
  Vertex v;
  v.gate = type;
  v.label = std::move(label);
  vertices[id] = std::move(v);
  for (const auto& child : inputs) add_input(child, id);
  return *this;
}

AdtGraph& AdtGraph::add_input(const VertexId& child, const VertexId& parent) {
  input_edges.push_back(Edge{child, parent, {}});
  return *this;
}

AdtGraph& AdtGraph::add_trigger(const VertexId& tr_gate, const VertexId& basic_event) {
  trigger_edges.push_back(Edge{tr_gate, basic_event, {}});
  return *this;
}

AdtGraph& AdtGraph::add_reset(const VertexId& re_gate, const VertexId& basic_event) {
  reset_edges.push_back(Edge{re_gate, basic_event, {}});
  return *this;
}

AdtGraph& AdtGraph::set_goal(const VertexId& id) {
  goal = id;
  return *this;
}

const Vertex& AdtGraph::at(const VertexId& id) const {
  auto it = vertices.find(id);
  if (it == vertices.end()) throw AdtError(codes::kUnknownVertex, "no such vertex", id);
  return it->second;
}

Vertex& AdtGraph::at(const VertexId& id) {
  auto it = vertices.find(id);
  if (it == vertices.end()) throw AdtError(codes::kUnknownVertex, "no such vertex", id);
  return it->second;
}

std::map<VertexId, std::vector<VertexId>> AdtGraph::input_map() const {
  std::map<VertexId, std::vector<VertexId>> result;
  for (const auto& [id, v] : vertices) result[id];
  for (const auto& e : input_edges) result[e.to].push_back(e.from);
  return result;
}

std::map<VertexId, std::size_t> AdtGraph::out_degree() const {
  std::map<VertexId, std::size_t> result;
  for (const auto& [id, v] : vertices) result[id] = 0;
  for (const auto& e : input_edges) ++result[e.from];
  return result;
}

std::vector<VertexId> AdtGraph::sinks() const {
  std::vector<VertexId> result;
  for (const auto& [id, degree] : out_degree()) {
    if (degree == 0 && contains(id)) result.push_back(id);
  }
  return result;
}

std::vector<VertexId> AdtGraph::basic_events() const {
  std::vector<VertexId> result;
  for (const auto& [id, v] : vertices) {
    if (v.is_basic_event()) result.push_back(id);
  }
  return result;
}

// ---------------------------------------------------------------------------
// validate

namespace {

bool finite_non_negative(double x) { return std::isfinite(x) && x >= 0.0; }
bool unit_interval(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

void check_pair(const std::string& id, std::string_view what, const QuantPair& pair,
                Diagnostics& out) {
  auto bad = [&](const std::string& msg) {
    out.push_back(make_error(codes::kAnnotation, std::string(what) + ": " + msg, id));
  };
  if (!finite_non_negative(pair.succeed) || !finite_non_negative(pair.fail)) {
    bad("components must be finite and non-negative");
  }
  if ((pair.eps_succeed && !finite_non_negative(*pair.eps_succeed)) ||
      (pair.eps_fail && !finite_non_negative(*pair.eps_fail))) {
    bad("eps must be finite and non-negative");
  }
  if (pair.delta && !unit_interval(*pair.delta)) bad("delta must lie in [0,1]");
  if ((pair.eps_succeed || pair.eps_fail) && !pair.delta) bad("eps given without delta");
}

void check_annotation(const std::string& id, const Vertex& v, Diagnostics& out) {
  const auto& q = v.quant;
  if (!v.is_basic_event()) {
    if (!q.empty()) {
      out.push_back(make_error(codes::kAnnotation, "gates carry no quantities", id));
    }
    return;
  }
  if (q.prob && !unit_interval(*q.prob)) {
    out.push_back(make_error(codes::kAnnotation, "prob must lie in [0,1]", id));
  }
  if (q.prob_eps && !finite_non_negative(*q.prob_eps)) {
    out.push_back(make_error(codes::kAnnotation, "prob eps must be non-negative", id));
  }
  if (q.prob_delta && !unit_interval(*q.prob_delta)) {
    out.push_back(make_error(codes::kAnnotation, "prob delta must lie in [0,1]", id));
  }
  if (q.prob_eps && !q.prob_delta) {
    out.push_back(make_error(codes::kAnnotation, "prob eps given without delta", id));
  }
  if ((q.prob_eps || q.prob_delta) && !q.prob) {
    out.push_back(make_error(codes::kAnnotation, "PAC parameters given without prob", id));
  }
  if (q.cost) check_pair(id, "cost", *q.cost, out);
  if (q.delay) check_pair(id, "delay", *q.delay, out);
}

bool needs_two_inputs(GateType t) {
  return t == GateType::AND || t == GateType::OR || t == GateType::SAND || t == GateType::SOR;
}

/// Strongly connected components of the successor relation that contain a cycle.
std::vector<std::vector<VertexId>> cyclic_components(
    const std::map<VertexId, std::vector<VertexId>>& successors) {
  std::map<VertexId, int> index, low;
  std::set<VertexId> on_stack;
  std::vector<VertexId> stack;
  std::vector<std::vector<VertexId>> result;
  int counter = 0;

  std::function<void(const VertexId&)> strongconnect = [&](const VertexId& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    auto it = successors.find(v);
    if (it != successors.end()) {
      for (const auto& w : it->second) {
        if (!index.count(w)) {
          strongconnect(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack.count(w)) {
          low[v] = std::min(low[v], index[w]);
        }
      }
    }
    if (low[v] == index[v]) {
      std::vector<VertexId> component;
      VertexId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        component.push_back(w);
      } while (w != v);
      bool self_loop = false;
      if (component.size() == 1 && it != successors.end()) {
        self_loop = std::find(it->second.begin(), it->second.end(), v) != it->second.end();
      }
      if (component.size() > 1 || self_loop) {
        std::sort(component.begin(), component.end());
        result.push_back(std::move(component));
      }
    }
  };

  for (const auto& [v, succ] : successors) {
    if (!index.count(v)) strongconnect(v);
  }
  std::sort(result.begin(), result.end());
  return result;
}

void check_side_edges(const AdtGraph& graph, const std::vector<Edge>& edges, GateType gate,
                      std::string_view code, std::string_view kind, Diagnostics& out) {
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& e : edges) {
    bool known = true;
    for (const auto* end : {&e.from, &e.to}) {
      if (!graph.contains(*end)) {
        out.push_back(make_error(codes::kUnknownVertex,
                                 std::string(kind) + " edge refers to unknown vertex", *end));
        known = false;
      }
    }
    if (!known) continue;
    const auto& src = graph.at(e.from);
    if (src.gate != gate) {
      out.push_back(make_error(code,
                               std::string(kind) + " edges must start at a " +
                                   std::string(to_string(gate)) + " gate",
                               e.from));
    }
    if (!graph.at(e.to).is_basic_event()) {
      out.push_back(make_error(code, std::string(kind) + " edges must end at a basic event", e.to));
    }
    if (!seen.insert({e.from, e.to}).second) {
      out.push_back(make_error(codes::kDuplicateEdge,
                               std::string(kind) + " edge " + e.from + " -> " + e.to + " repeated",
                               e.to));
    }
  }
}

}  // namespace

Diagnostics validate(const AdtGraph& graph) {
  Diagnostics out;

  for (const auto& [id, v] : graph.vertices) {
    if (!is_valid_vertex_id(id)) {
      out.push_back(make_error(codes::kId, "vertex id must match [A-Za-z0-9_]+", id));
    }
  }

  if (graph.goal.empty() || !graph.contains(graph.goal)) {
    out.push_back(make_error(codes::kNoGoal, "goal vertex is missing or unknown",
                             graph.goal.empty() ? std::nullopt
                                                : std::optional<std::string>(graph.goal)));
  }

  std::map<VertexId, std::vector<VertexId>> successors;
  std::map<VertexId, std::size_t> in_count;
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const auto& e : graph.input_edges) {
    bool known = true;
    for (const auto* end : {&e.from, &e.to}) {
      if (!graph.contains(*end)) {
        out.push_back(make_error(codes::kUnknownVertex, "input edge refers to unknown vertex", *end));
        known = false;
      }
    }
    if (!known) continue;
    if (!seen.insert({e.from, e.to}).second) {
      out.push_back(make_error(codes::kDuplicateEdge,
                               "input edge " + e.from + " -> " + e.to + " repeated", e.to));
      continue;
    }
    successors[e.from].push_back(e.to);
    ++in_count[e.to];
  }

  for (const auto& [id, v] : graph.vertices) {
    std::size_t inputs = in_count.count(id) ? in_count.at(id) : 0;
    if (v.is_basic_event()) {
      if (inputs != 0) {
        out.push_back(make_error(codes::kBasicEventInput, "basic events cannot have inputs", id));
      }
    } else if (needs_two_inputs(*v.gate)) {
      if (inputs < 2) {
        out.push_back(make_error(codes::kArity,
                                 std::string(to_string(*v.gate)) + " gate needs at least two inputs, has " +
                                     std::to_string(inputs),
                                 id));
      }
    } else if (inputs != 1) {
      out.push_back(make_error(codes::kArity,
                               std::string(to_string(*v.gate)) + " gate needs exactly one input, has " +
                                   std::to_string(inputs),
                               id));
    }
    check_annotation(id, v, out);
  }

  for (const auto& component : cyclic_components(successors)) {
    std::string members;
    for (const auto& id : component) members += (members.empty() ? "" : ", ") + id;
    out.push_back(make_error(codes::kCycle, "input edges form a cycle through " + members,
                             component.front()));
  }

  if (successors.count(graph.goal) && !successors.at(graph.goal).empty()) {
    out.push_back(make_error(codes::kGoalNotSink, "goal must not be an input of another vertex",
                             graph.goal));
  }

  check_side_edges(graph, graph.trigger_edges, GateType::TR, codes::kTriggerEdge, "trigger", out);
  check_side_edges(graph, graph.reset_edges, GateType::RE, codes::kResetEdge, "reset", out);
  return out;
}

// ---------------------------------------------------------------------------
// topo_order

namespace {

/// Kahn's algorithm restricted to `members`, smallest id first among ready vertices.
/// Returns nullopt when the dependency relation has a cycle inside `members`.
std::optional<std::vector<VertexId>> ordered(
    const std::set<VertexId>& members, const std::map<VertexId, std::vector<VertexId>>& deps) {
  std::map<VertexId, std::size_t> pending;
  std::map<VertexId, std::vector<VertexId>> dependents;
  for (const auto& id : members) {
    pending[id] = 0;
    auto it = deps.find(id);
    if (it == deps.end()) continue;
    for (const auto& d : it->second) {
      if (!members.count(d)) continue;
      ++pending[id];
      dependents[d].push_back(id);
    }
  }
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
  for (const auto& [id, count] : pending) {
    if (count == 0) ready.push(id);
  }
  std::vector<VertexId> order;
  order.reserve(members.size());
  while (!ready.empty()) {
    VertexId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (const auto& w : dependents[v]) {
      if (--pending[w] == 0) ready.push(w);
    }
  }
  if (order.size() != members.size()) return std::nullopt;
  return order;
}

std::set<VertexId> all_ids(const AdtGraph& graph) {
  std::set<VertexId> ids;
  for (const auto& [id, v] : graph.vertices) ids.insert(id);
  return ids;
}

/// Input edges plus trigger sources as evaluation dependencies.
std::map<VertexId, std::vector<VertexId>> evaluation_deps(const AdtGraph& graph) {
  auto deps = graph.input_map();
  for (const auto& e : graph.trigger_edges) deps[e.to].push_back(e.from);
  return deps;
}

}  // namespace

std::vector<VertexId> topo_order(const AdtGraph& graph) {
  auto diagnostics = validate(graph);
  if (has_errors(diagnostics)) throw AdtError(std::move(diagnostics));
  auto order = ordered(all_ids(graph), graph.input_map());
  return std::move(*order);
}

std::vector<VertexId> relevant_vertices(const AdtGraph& graph, bool include_resets) {
  auto inputs = graph.input_map();
  std::map<VertexId, std::vector<VertexId>> side;
  for (const auto& e : graph.trigger_edges) side[e.to].push_back(e.from);
  if (include_resets) {
    for (const auto& e : graph.reset_edges) side[e.to].push_back(e.from);
  }
  std::set<VertexId> seen;
  std::vector<VertexId> work;
  if (graph.contains(graph.goal)) work.push_back(graph.goal);
  while (!work.empty()) {
    VertexId v = work.back();
    work.pop_back();
    if (!seen.insert(v).second || !graph.contains(v)) continue;
    for (const auto& c : inputs[v]) work.push_back(c);
    if (auto it = side.find(v); it != side.end()) {
      for (const auto& s : it->second) work.push_back(s);
    }
  }
  std::vector<VertexId> result;
  for (const auto& id : seen) {
    if (graph.contains(id)) result.push_back(id);
  }
  return result;
}

// ---------------------------------------------------------------------------
// feedback

namespace {

void analysis_feedback(const AdtGraph& graph, Target target, Diagnostics& out) {
  auto relevant = relevant_vertices(graph);
  std::set<VertexId> members(relevant.begin(), relevant.end());
  auto degree = graph.out_degree();

  for (const auto& id : relevant) {
    const auto& v = graph.at(id);
    if (v.gate && *v.gate != GateType::AND && *v.gate != GateType::OR &&
        *v.gate != GateType::NOT && *v.gate != GateType::TR) {
      out.push_back(make_error(codes::kAnalysisShape,
                               std::string(to_string(*v.gate)) +
                                   " gates have no static interpretation; use AND, OR, NOT, TR",
                               id, target));
    }
    if (degree[id] > 1) {
      out.push_back(make_error(codes::kAnalysisShape,
                               "vertex is an input of " + std::to_string(degree[id]) +
                                   " gates; bottom-up analysis needs a tree",
                               id, target));
    }
    if (v.gate == GateType::TR && degree[id] > 0) {
      out.push_back(
          make_error(codes::kAnalysisShape, "TR gates must not be inputs of other gates", id, target));
    }
  }

  std::map<VertexId, std::size_t> triggered_by;
  for (const auto& e : graph.trigger_edges) {
    if (members.count(e.to)) ++triggered_by[e.to];
  }
  for (const auto& [id, count] : triggered_by) {
    if (count > 1) {
      out.push_back(make_error(codes::kTriggerShared,
                               "basic event is triggered by " + std::to_string(count) + " vertices",
                               id, target));
    }
  }
  for (const auto& e : graph.reset_edges) {
    if (members.count(e.to)) {
      out.push_back(make_error(codes::kAnalysisShape,
                               "reset basic events can be attempted repeatedly", e.to, target));
    }
  }

  if (!ordered(members, evaluation_deps(graph))) {
    out.push_back(make_error(codes::kAnalysisShape,
                             "trigger edges create a circular dependency", graph.goal, target));
  }
}

void omitted_roots(const AdtGraph& graph, Target target, const std::set<VertexId>& members,
                   Diagnostics& out) {
  std::vector<VertexId> omitted;
  for (const auto& s : graph.sinks()) {
    if (!members.count(s)) omitted.push_back(s);
  }
  if (omitted.empty()) return;
  std::string list;
  for (const auto& s : omitted) list += (list.empty() ? "" : ", ") + s;
  if (target == Target::export_xml) {
    out.push_back(make_warning(codes::kXmlMultiRoot,
                               "only the goal tree is exported; omitted roots: " + list,
                               omitted.front(), target));
  } else {
    Diagnostic d{std::string(codes::kExportOmitted), Severity::info, omitted.front(), target,
                 "vertices outside the goal's dependencies are not exported: " + list};
    out.push_back(std::move(d));
  }
}

void xml_feedback(const AdtGraph& graph, Diagnostics& out) {
  const Target target = Target::export_xml;
  auto inputs = graph.input_map();
  auto degree = graph.out_degree();
  std::set<VertexId> cone;

  bool pac_dropped = false;
  bool quant_dropped = false;

  // Walk the goal tree carrying the player the ADTool role context expects.
  std::function<void(const VertexId&, Player, std::optional<GateType>)> walk =
      [&](const VertexId& id, Player role, std::optional<GateType> parent) {
        if (!cone.insert(id).second) return;
        const auto& v = graph.at(id);
        if (degree[id] > 1) {
          out.push_back(make_error(codes::kXmlUnsupported,
                                   "shared vertex; ADTool XML stores strict trees", id, target));
        }
        if (v.is_basic_event()) {
          if (v.player != role) {
            out.push_back(make_error(codes::kXmlUnsupported,
                                     "player does not match its ADTool role (countermeasures "
                                     "switch role once per NOT)",
                                     id, target));
          }
          if (v.quant.has_pac()) pac_dropped = true;
          if (!v.quant.empty()) quant_dropped = true;
          return;
        }
        const auto type = *v.gate;
        if (type == GateType::NOT) {
          if (parent != GateType::AND) {
            out.push_back(make_error(codes::kXmlUnsupported,
                                     "NOT is only representable as a countermeasure input of an "
                                     "AND gate",
                                     id, target));
          }
          for (const auto& c : inputs[id]) {
            const auto& child = graph.at(c);
            if (child.gate == GateType::NOT) {
              out.push_back(make_error(codes::kXmlUnsupported,
                                       "NOT directly over NOT has no ADTool encoding", id, target));
            }
            walk(c, opponent(role), type);
          }
          return;
        }
        if (type != GateType::AND && type != GateType::OR && type != GateType::SAND) {
          out.push_back(make_error(codes::kXmlUnsupported,
                                   std::string(to_string(type)) +
                                       " gates are not representable; ADTool XML supports AND, "
                                       "OR, SAND and countermeasures",
                                   id, target));
        }
        std::size_t regular = 0;
        for (const auto& c : inputs[id]) {
          if (graph.contains(c) && graph.at(c).gate != GateType::NOT) ++regular;
        }
        if (type == GateType::AND && regular == 0) {
          out.push_back(make_error(codes::kXmlUnsupported,
                                   "AND gate needs at least one input that is not a NOT", id,
                                   target));
        }
        for (const auto& c : inputs[id]) walk(c, role, type);
      };

  if (graph.at(graph.goal).gate == GateType::NOT) {
    out.push_back(make_error(codes::kXmlUnsupported, "the goal cannot be a countermeasure",
                             graph.goal, target));
  }
  walk(graph.goal, Player::attacker, std::nullopt);

  for (const auto& e : graph.trigger_edges) {
    if (cone.count(e.to)) {
      out.push_back(make_error(codes::kXmlUnsupported, "trigger edges are not representable",
                               e.to, target));
    }
  }
  for (const auto& e : graph.reset_edges) {
    if (cone.count(e.to)) {
      out.push_back(make_error(codes::kXmlUnsupported, "reset edges are not representable", e.to,
                               target));
    }
  }
  omitted_roots(graph, target, cone, out);
  if (pac_dropped) {
    out.push_back(make_warning(codes::kXmlDropped, "PAC parameters are not exported", std::nullopt,
                               target));
  } else if (quant_dropped) {
    out.push_back(make_warning(codes::kXmlDropped, "quantitative annotations are not exported",
                               std::nullopt, target));
  }
}

void prism_feedback(const AdtGraph& graph, Diagnostics& out) {
  const Target target = Target::export_prism;
  auto relevant = relevant_vertices(graph);
  std::set<VertexId> members(relevant.begin(), relevant.end());
  for (const auto& id : relevant) {
    const auto& v = graph.at(id);
    if (v.gate && *v.gate != GateType::AND && *v.gate != GateType::OR &&
        *v.gate != GateType::NOT) {
      out.push_back(make_error(codes::kPrismUnsupported,
                               std::string(to_string(*v.gate)) +
                                   " gates are not supported by the PRISM export (AND, OR, NOT only)",
                               id, target));
    }
  }
  for (const auto& e : graph.trigger_edges) {
    if (members.count(e.to)) {
      out.push_back(make_error(codes::kPrismUnsupported,
                               "triggered basic events are not supported by the PRISM export", e.to,
                               target));
    }
  }
  for (const auto& e : graph.reset_edges) {
    if (members.count(e.to)) {
      out.push_back(make_error(codes::kPrismUnsupported,
                               "reset basic events are not supported by the PRISM export", e.to,
                               target));
    }
  }
  for (const auto& id : relevant) {
    const auto& v = graph.at(id);
    if (v.is_basic_event() && !v.quant.prob) {
      out.push_back(make_error(codes::kMissingAnnotation, "basic event has no probability", id,
                               target));
    }
  }
  omitted_roots(graph, target, members, out);
}

void uppaal_feedback(const AdtGraph& graph, Diagnostics& out) {
  auto relevant = relevant_vertices(graph, true);
  std::set<VertexId> members(relevant.begin(), relevant.end());
  for (const auto& id : relevant) {
    const auto& v = graph.at(id);
    if (!v.is_basic_event()) continue;
    if (!v.quant.prob) {
      out.push_back(make_error(codes::kMissingAnnotation, "basic event has no probability", id,
                               Target::export_uppaal));
    }
    if (!v.quant.delay) {
      out.push_back(make_error(codes::kMissingAnnotation, "basic event has no delay", id,
                               Target::export_uppaal));
    }
  }
  omitted_roots(graph, Target::export_uppaal, members, out);
}

}  // namespace

Diagnostics feedback(const AdtGraph& graph, Target target) {
  auto structural = validate(graph);
  if (has_errors(structural)) {
    for (auto& d : structural) d.target = target;
    return structural;
  }
  Diagnostics out;
  switch (target) {
    case Target::analysis_bottomup:
    case Target::analysis_pac: analysis_feedback(graph, target, out); break;
    case Target::export_xml: xml_feedback(graph, out); break;
    case Target::export_prism: prism_feedback(graph, out); break;
    case Target::export_uppaal: uppaal_feedback(graph, out); break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// merge

AdtGraph merge(const AdtGraph& a, const AdtGraph& b, GateType root_type) {
  if (root_type != GateType::AND && root_type != GateType::OR) {
    throw AdtError(codes::kArity, "merge root must be AND or OR");
  }
  for (const auto* g : {&a, &b}) {
    auto d = validate(*g);
    if (has_errors(d)) throw AdtError(std::move(d));
  }

  std::set<VertexId> taken;
  for (const auto& [id, v] : a.vertices) taken.insert(id);
  for (const auto& [id, v] : b.vertices) taken.insert(id);

  auto fresh = [&](const VertexId& base) {
    for (std::size_t k = 1;; ++k) {
      VertexId candidate = base + "_" + std::to_string(k);
      if (taken.insert(candidate).second) return candidate;
    }
  };

  std::map<VertexId, VertexId> rename;
  for (const auto& [id, v] : b.vertices) {
    rename[id] = a.contains(id) ? fresh(id) : id;
  }

  AdtGraph result = a;
  for (const auto& [id, v] : b.vertices) result.vertices[rename[id]] = v;
  for (auto edges : {std::pair{&b.input_edges, &result.input_edges},
                     std::pair{&b.trigger_edges, &result.trigger_edges},
                     std::pair{&b.reset_edges, &result.reset_edges}}) {
    for (const auto& e : *edges.first) {
      edges.second->push_back(Edge{rename[e.from], rename[e.to], e.extra});
    }
  }

  VertexId root = taken.count("root") ? fresh("root") : VertexId("root");
  taken.insert(root);
  result.add_gate(root, root_type, {a.goal, rename[b.goal]});
  result.goal = root;
  return result;
}

// ---------------------------------------------------------------------------
// EvalPlan

std::size_t EvalPlan::basic_event_count() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) {
    return n.vertex->is_basic_event();
  }));
}

EvalPlan make_eval_plan(const AdtGraph& graph) {
  auto diagnostics = feedback(graph, Target::analysis_bottomup);
  if (has_errors(diagnostics)) {
    Diagnostics errors;
    for (auto& d : diagnostics) {
      if (d.severity == Severity::error) errors.push_back(std::move(d));
    }
    throw AdtError(std::move(errors));
  }
  auto relevant = relevant_vertices(graph);
  std::set<VertexId> members(relevant.begin(), relevant.end());
  auto order = ordered(members, evaluation_deps(graph));

  EvalPlan plan;
  plan.nodes.reserve(order->size());
  for (std::size_t i = 0; i < order->size(); ++i) {
    plan.index[(*order)[i]] = i;
    plan.nodes.push_back(EvalPlan::Node{(*order)[i], &graph.at((*order)[i]), {}, std::nullopt});
  }
  for (const auto& e : graph.input_edges) {
    auto parent = plan.index.find(e.to);
    if (parent == plan.index.end()) continue;
    plan.nodes[parent->second].inputs.push_back(plan.index.at(e.from));
  }
  for (const auto& e : graph.trigger_edges) {
    auto target = plan.index.find(e.to);
    if (target == plan.index.end()) continue;
    plan.nodes[target->second].trigger = plan.index.at(e.from);
  }
  plan.goal = plan.index.at(graph.goal);
  return plan;
}

}  // namespace adtquant
