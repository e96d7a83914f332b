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

#include <algorithm>
#include <vector>

#include "adtquant/formats.hpp"
#include "adtquant/rng.hpp"

namespace adtquant {

AdtGraph gen_benchmark(std::int64_t leaf_count, std::uint64_t seed) {
  if (leaf_count < 1) {
    throw AdtError(codes::kSizeGuard, "leaf count must be at least 1");
  }
  SplitMix64 rng(seed);
  AdtGraph graph;
  std::vector<VertexId> forest;
  forest.reserve(static_cast<std::size_t>(leaf_count));

  for (std::int64_t i = 0; i < leaf_count; ++i) {
    QuantAnnotation q;
    q.prob = rng.next_double();
    q.prob_eps = 0.05 * rng.next_double();
    q.prob_delta = 0.05;
    VertexId id = "b" + std::to_string(i);
    graph.add_basic_event(id, Player::attacker, q);
    forest.push_back(std::move(id));
  }

  std::int64_t gates = 0;
  while (forest.size() > 1) {
    const auto size = static_cast<std::uint64_t>(forest.size());
    const auto i = rng.next_below(size);
    auto j = rng.next_below(size - 1);
    if (j >= i) ++j;
    const GateType type = rng.next_below(2) == 0 ? GateType::AND : GateType::OR;
    VertexId gate = "g" + std::to_string(gates++);
    graph.add_gate(gate, type, {forest[i], forest[j]});
    // Swap-remove the higher index first so the lower one stays valid.
    for (auto k : {std::max(i, j), std::min(i, j)}) {
      forest[k] = std::move(forest.back());
      forest.pop_back();
    }
    forest.push_back(std::move(gate));
  }
  graph.set_goal(forest.front());
  return graph;
}

}  // namespace adtquant
