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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adtquant/diagnostics.hpp"

namespace adtquant {

/// Vertex identifier. Valid ids match `[A-Za-z0-9_]+`, which covers DOT
/// identifiers and DOT numerals such as "10".
using VertexId = std::string;

/// Foreign key/value attributes carried through import and export untouched.
using Attributes = std::map<std::string, std::string>;

enum class GateType { AND, OR, NOT, SAND, SOR, TR, RE };

enum class Player { attacker, defender };

std::string_view to_string(GateType type);
std::optional<GateType> parse_gate_type(std::string_view name);
std::string_view to_string(Player player);
std::optional<Player> parse_player(std::string_view name);
Player opponent(Player player);

bool is_valid_vertex_id(std::string_view id);

/// Imprecision bound and uncertainty probability of a PAC estimate.
struct PacParams {
  double eps = 0.0;
  double delta = 0.0;

  bool operator==(const PacParams&) const = default;
};

/// (succeed, fail) quantity with optional per-component eps and one shared delta.
struct QuantPair {
  double succeed = 0.0;
  double fail = 0.0;
  std::optional<double> eps_succeed;
  std::optional<double> eps_fail;
  std::optional<double> delta;

  bool has_pac() const { return eps_succeed || eps_fail || delta; }
  bool operator==(const QuantPair&) const = default;
};

struct QuantAnnotation {
  std::optional<double> prob;
  std::optional<double> prob_eps;
  std::optional<double> prob_delta;
  std::optional<QuantPair> cost;
  std::optional<QuantPair> delay;

  bool empty() const { return !prob && !prob_eps && !prob_delta && !cost && !delay; }
  bool has_pac() const {
    return prob_eps || prob_delta || (cost && cost->has_pac()) || (delay && delay->has_pac());
  }
  bool operator==(const QuantAnnotation&) const = default;
};

struct Vertex {
  /// Empty for basic events.
  std::optional<GateType> gate;
  /// Meaningful for basic events only.
  Player player = Player::attacker;
  std::string label;
  QuantAnnotation quant;
  Attributes extra;

  bool is_basic_event() const { return !gate.has_value(); }
  bool operator==(const Vertex&) const = default;
};

/// Input edges run child -> parent. Trigger and reset edges run gate -> basic event.
struct Edge {
  VertexId from;
  VertexId to;
  Attributes extra;

  bool operator==(const Edge&) const = default;
};

class AdtGraph {
 public:
  std::string name;
  Attributes graph_attributes;
  std::map<VertexId, Vertex> vertices;
  std::vector<Edge> input_edges;
  std::vector<Edge> trigger_edges;
  std::vector<Edge> reset_edges;
  VertexId goal;

  AdtGraph& add_basic_event(const VertexId& id, Player player = Player::attacker,
                            QuantAnnotation quant = {}, std::string label = {});
  /// Adds a gate and one input edge per element of `inputs`, in order.
  AdtGraph& add_gate(const VertexId& id, GateType type, const std::vector<VertexId>& inputs,
                     std::string label = {});
  AdtGraph& add_input(const VertexId& child, const VertexId& parent);
  AdtGraph& add_trigger(const VertexId& tr_gate, const VertexId& basic_event);
  AdtGraph& add_reset(const VertexId& re_gate, const VertexId& basic_event);
  AdtGraph& set_goal(const VertexId& id);

  bool contains(const VertexId& id) const { return vertices.count(id) != 0; }
  const Vertex& at(const VertexId& id) const;
  Vertex& at(const VertexId& id);

  /// Inputs of every vertex in input-edge order; vertices without inputs map to {}.
  std::map<VertexId, std::vector<VertexId>> input_map() const;
  /// Number of outgoing input edges per vertex.
  std::map<VertexId, std::size_t> out_degree() const;
  /// Vertices without outgoing input edges.
  std::vector<VertexId> sinks() const;
  std::vector<VertexId> basic_events() const;

  bool operator==(const AdtGraph&) const = default;
};

/// Structural check against the model invariants. Empty result means the graph is valid.
Diagnostics validate(const AdtGraph& graph);

/// Topological order over input edges, ties broken lexicographically by id.
/// Throws AdtError when validate() reports errors.
std::vector<VertexId> topo_order(const AdtGraph& graph);

/// Incompatibilities between `graph` and what `target` accepts. Errors from
/// validate() are returned first when the graph itself is invalid.
Diagnostics feedback(const AdtGraph& graph, Target target);

/// Joins two models under a fresh `root_type` gate (AND or OR) that becomes the goal.
/// Ids of `b` that collide with ids of `a` are renamed with a numeric suffix.
AdtGraph merge(const AdtGraph& a, const AdtGraph& b, GateType root_type);

/// Vertices whose value the goal depends on: the goal's input cone closed under
/// trigger sources (and, with `include_resets`, reset sources) of its basic events.
std::vector<VertexId> relevant_vertices(const AdtGraph& graph, bool include_resets = false);

/// Index-based view of the relevant part of a graph, ordered so every vertex
/// follows its inputs and its trigger source. Shared by the analyses and oracles.
struct EvalPlan {
  struct Node {
    VertexId id;
    const Vertex* vertex = nullptr;
    std::vector<std::size_t> inputs;
    /// TR gate feeding a triggerable basic event.
    std::optional<std::size_t> trigger;
  };

  std::vector<Node> nodes;
  std::size_t goal = 0;
  std::map<VertexId, std::size_t> index;

  std::size_t basic_event_count() const;
};

/// Builds the evaluation plan for bottom-up analysis. Throws AdtError carrying
/// the errors of feedback(graph, analysis-bottomup) if there are any.
EvalPlan make_eval_plan(const AdtGraph& graph);

}  // namespace adtquant
