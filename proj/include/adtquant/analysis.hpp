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
#include <string_view>
#include <variant>

#include "adtquant/graph.hpp"

namespace adtquant {

enum class Domain { prob, cost_min, cost_max, delay_min, delay_max };

std::string_view to_string(Domain domain);
std::optional<Domain> parse_domain(std::string_view name);
bool is_pair_domain(Domain domain);

/// (succeed, fail) value of the cost and delay domains.
struct ValuePair {
  double succeed = 0.0;
  double fail = 0.0;

  bool operator==(const ValuePair&) const = default;
};

/// Probability for Domain::prob, a ValuePair otherwise.
using NodeValue = std::variant<double, ValuePair>;

struct AnalysisResult {
  Domain domain = Domain::prob;
  VertexId goal;
  /// Vertices the goal depends on (input cone plus trigger sources).
  std::map<VertexId, NodeValue> per_vertex;
};

namespace rules {

// Probability interpretation. OR is clamped to [0,1] against rounding.
inline double prob_and(double x, double y) { return x * y; }
double prob_or(double x, double y);
inline double prob_not(double x) { return 1.0 - x; }

enum class Op { add, min, max };

/// Componentwise operations of a pair domain for one binary gate application.
struct PairRule {
  Op succeed;
  Op fail;
};

/// Rule for AND (`conjunctive`) or OR gates of a cost/delay domain.
PairRule pair_rule(Domain domain, bool conjunctive);

double apply(Op op, double x, double y);

}  // namespace rules

struct LeafValuation {
  std::map<VertexId, NodeValue> values;
  /// One E_MISSING_ANNOTATION per basic event lacking the domain's quantity.
  Diagnostics missing;
};

/// Projects basic-event annotations into `domain`. Player does not matter.
LeafValuation leaf_valuation(const AdtGraph& graph, Domain domain);

/// Exact bottom-up analysis. n-ary gates fold pairwise left to right in
/// input-edge order; NOT swaps pairs; TR is the identity; a triggered basic
/// event is AND(trigger source, own value).
/// Throws AdtError on shape errors or missing annotations.
AnalysisResult analyze(const AdtGraph& graph, Domain domain);

}  // namespace adtquant
