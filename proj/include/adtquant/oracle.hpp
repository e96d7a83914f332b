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

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "adtquant/analysis.hpp"
#include "adtquant/graph.hpp"

// Reference semantics used to cross-check the bottom-up analyses: Boolean
// evaluation, the powerset (satisfying / unsatisfying assignment sets)
// semantics, and brute-force enumeration over all assignments of the basic
// events. Everything here is exponential in the number of basic events and is
// guarded by OracleOptions::max_events.

namespace adtquant {

/// Basic events set to true; every other basic event is false.
struct Assignment {
  std::set<VertexId> true_set;
};

/// Satisfying and unsatisfying assignments of one vertex, as bit masks over
/// PowersetResult::events. A mask lists the events set to true.
struct AssignmentSetPair {
  std::vector<std::uint64_t> sat;
  std::vector<std::uint64_t> unsat;

  bool operator==(const AssignmentSetPair&) const = default;
};

struct PowersetResult {
  /// Bit i of a mask stands for events[i].
  std::vector<VertexId> events;
  std::map<VertexId, AssignmentSetPair> per_vertex;

  std::set<std::set<VertexId>> decode(const std::vector<std::uint64_t>& masks) const;
};

struct OracleOptions {
  std::size_t max_events = 20;
  /// Lifts the cap up to 62 events. Runtime doubles per event.
  bool unsafe_large = false;
};

std::map<VertexId, bool> bool_eval(const AdtGraph& graph, const Assignment& assignment);

PowersetResult powerset_eval(const AdtGraph& graph, OracleOptions options = {});

/// Probability that `vertex` evaluates to true, summed over all assignments of the
/// basic events it depends on. OpenMP-parallel over fixed assignment ranges.
double enum_prob(const AdtGraph& graph, const VertexId& vertex, OracleOptions options = {});
/// Single-threaded reference for enum_prob.
double enum_prob_serial(const AdtGraph& graph, const VertexId& vertex, OracleOptions options = {});
/// Probability mass of the assignments under which `vertex` is false.
double enum_unsat_mass(const AdtGraph& graph, const VertexId& vertex, OracleOptions options = {});
/// Probability of `vertex` computed from its powerset satisfying set.
double powerset_prob(const AdtGraph& graph, const VertexId& vertex, OracleOptions options = {});

/// (min success cost, min failure cost) at the goal over all assignments, each
/// assignment scored by witness recursion (see docs/semantics.md).
ValuePair enum_min_cost(const AdtGraph& graph, OracleOptions options = {});
ValuePair enum_min_cost_serial(const AdtGraph& graph, OracleOptions options = {});

/// Same enumeration for the min-delay reading: AND succeeds after its slowest
/// child, fails with its fastest failing child; OR dually.
ValuePair witness_delay_min(const AdtGraph& graph, OracleOptions options = {});
ValuePair witness_delay_min_serial(const AdtGraph& graph, OracleOptions options = {});

}  // namespace adtquant
