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
#include <variant>

#include "adtquant/analysis.hpp"
#include "adtquant/graph.hpp"

namespace adtquant {

/// An estimate that lies within `eps` of the true value with probability at least 1 - delta.
struct PacValue {
  double value = 0.0;
  double eps = 0.0;
  double delta = 0.0;

  bool operator==(const PacValue&) const = default;
};

/// Closed interval [lo, hi] reported next to a PacValue.
struct PacInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool operator==(const PacInterval&) const = default;
};

struct PacPair {
  PacValue succeed;
  PacValue fail;

  bool operator==(const PacPair&) const = default;
};

/// How child uncertainty probabilities combine at a gate.
enum class DeltaRule {
  independent,  ///< 1 - (1 - d1)(1 - d2)
  union_bound,  ///< min(1, d1 + d2)
};

double combine_delta(double d1, double d2, DeltaRule rule = DeltaRule::independent);

/// [max(0, value - eps), value + eps], capped at 1 for probabilities.
PacInterval interval(const PacValue& v, bool probability);

PacValue pac_not(const PacValue& a);
PacValue pac_mul(const PacValue& a, const PacValue& b, DeltaRule rule = DeltaRule::independent);
PacValue pac_prob_or(const PacValue& a, const PacValue& b,
                     DeltaRule rule = DeltaRule::independent);
PacValue pac_add(const PacValue& a, const PacValue& b, DeltaRule rule = DeltaRule::independent);
PacValue pac_max(const PacValue& a, const PacValue& b, DeltaRule rule = DeltaRule::independent);
PacValue pac_min(const PacValue& a, const PacValue& b, DeltaRule rule = DeltaRule::independent);

using PacNodeValue = std::variant<PacValue, PacPair>;

struct PacEntry {
  PacNodeValue value;
  /// One interval for probabilities, (succeed, fail) intervals for pairs.
  PacInterval interval;
  PacInterval fail_interval;
};

struct PacAnalysisResult {
  Domain domain = Domain::prob;
  DeltaRule delta_rule = DeltaRule::independent;
  VertexId goal;
  std::map<VertexId, PacEntry> per_vertex;
};

/// PAC-aware bottom-up analysis. Leaves without eps/delta are treated as (0, 0)-PAC
/// only when `exact_leaves_allowed`; otherwise they are reported as missing.
PacAnalysisResult analyze_pac(const AdtGraph& graph, Domain domain,
                              DeltaRule rule = DeltaRule::independent,
                              bool exact_leaves_allowed = false);

}  // namespace adtquant
