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

#include "adtquant/oracle.hpp"

#include <algorithm>
#include <limits>


namespace adtquant {

namespace {

enum class Kind { leaf, conj, disj, neg, identity };

struct Node {
  Kind kind = Kind::leaf;
  std::vector<std::uint32_t> inputs;
  int trigger = -1;
  int bit = -1;
  double prob = 0.0;
  ValuePair pair;
};

/// Cone of one vertex, topologically ordered, with basic events numbered by bit.
struct Compiled {
  std::vector<Node> nodes;
  std::vector<VertexId> ids;
  std::vector<VertexId> events;
  std::size_t root = 0;
};

Kind kind_of(const Vertex& v) {
  if (v.is_basic_event()) return Kind::leaf;
  switch (*v.gate) {
    case GateType::AND: return Kind::conj;
    case GateType::OR: return Kind::disj;
    case GateType::NOT: return Kind::neg;
    case GateType::TR: return Kind::identity;
    default: break;
  }
  throw AdtError(codes::kAnalysisShape, "gate has no Boolean interpretation");
}

std::size_t event_cap(const OracleOptions& options) {
  return options.unsafe_large ? 62 : std::min<std::size_t>(options.max_events, 62);
}

void guard(std::size_t events, const OracleOptions& options) {
  if (events > event_cap(options)) {
    throw AdtError(codes::kSizeGuard, "enumeration over " + std::to_string(events) +
                                          " basic events exceeds the cap of " +
                                          std::to_string(event_cap(options)));
  }
}

/// `domain` selects which leaf quantity is loaded; nullopt loads nothing.
Compiled compile(const AdtGraph& graph, const VertexId& root, std::optional<Domain> domain,
                 const OracleOptions& options) {
  const auto plan = make_eval_plan(graph);
  auto root_it = plan.index.find(root);
  if (root_it == plan.index.end()) {
    throw AdtError(codes::kUnknownVertex, "vertex is not part of the goal's dependencies", root);
  }

  std::vector<bool> keep(plan.nodes.size(), false);
  std::vector<std::size_t> work{root_it->second};
  while (!work.empty()) {
    auto i = work.back();
    work.pop_back();
    if (keep[i]) continue;
    keep[i] = true;
    for (auto c : plan.nodes[i].inputs) work.push_back(c);
    if (plan.nodes[i].trigger) work.push_back(*plan.nodes[i].trigger);
  }

  Compiled out;
  std::vector<std::uint32_t> remap(plan.nodes.size());
  for (std::size_t i = 0; i < plan.nodes.size(); ++i) {
    if (!keep[i]) continue;
    const auto& pn = plan.nodes[i];
    Node n;
    n.kind = kind_of(*pn.vertex);
    for (auto c : pn.inputs) n.inputs.push_back(remap[c]);
    if (pn.trigger) n.trigger = static_cast<int>(remap[*pn.trigger]);
    if (n.kind == Kind::leaf) {
      n.bit = static_cast<int>(out.events.size());
      out.events.push_back(pn.id);
      const auto& q = pn.vertex->quant;
      if (domain == Domain::prob) {
        if (!q.prob) throw AdtError(codes::kMissingAnnotation, "basic event has no prob", pn.id);
        n.prob = *q.prob;
      } else if (domain) {
        const auto& pair =
            (*domain == Domain::cost_min || *domain == Domain::cost_max) ? q.cost : q.delay;
        if (!pair) {
          throw AdtError(codes::kMissingAnnotation, "basic event has no cost/delay pair", pn.id);
        }
        n.pair = ValuePair{pair->succeed, pair->fail};
      }
    }
    remap[i] = static_cast<std::uint32_t>(out.nodes.size());
    out.ids.push_back(pn.id);
    out.nodes.push_back(std::move(n));
  }
  out.root = remap[root_it->second];
  guard(out.events.size(), options);
  return out;
}

void eval_status(const Compiled& c, std::uint64_t mask, std::vector<std::uint8_t>& st) {
  st.resize(c.nodes.size());
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    switch (n.kind) {
      case Kind::leaf: {
        std::uint8_t own = (mask >> n.bit) & 1u;
        st[i] = n.trigger >= 0 ? static_cast<std::uint8_t>(st[n.trigger] & own) : own;
        break;
      }
      case Kind::conj: {
        std::uint8_t v = 1;
        for (auto k : n.inputs) v &= st[k];
        st[i] = v;
        break;
      }
      case Kind::disj: {
        std::uint8_t v = 0;
        for (auto k : n.inputs) v |= st[k];
        st[i] = v;
        break;
      }
      case Kind::neg: st[i] = st[n.inputs.front()] ^ 1u; break;
      case Kind::identity: st[i] = st[n.inputs.front()]; break;
    }
  }
}

double weight(const Compiled& c, std::uint64_t mask) {
  double w = 1.0;
  for (const auto& n : c.nodes) {
    if (n.kind != Kind::leaf) continue;
    w *= ((mask >> n.bit) & 1u) ? n.prob : 1.0 - n.prob;
  }
  return w;
}

/// Witness recursion: a vertex's quantity folds the quantities of exactly those
/// children whose status equals its own, with the domain's op for that status.
void eval_witness(const Compiled& c, Domain domain, const std::vector<std::uint8_t>& st,
                  std::vector<double>& w, std::uint64_t mask) {
  const auto and_rule = rules::pair_rule(domain, true);
  const auto or_rule = rules::pair_rule(domain, false);
  w.resize(c.nodes.size());

  auto fold = [&](rules::Op op, bool status, auto&& children) {
    bool first = true;
    double acc = 0.0;
    for (auto [child_status, value] : children) {
      if (child_status != status) continue;
      acc = first ? value : rules::apply(op, acc, value);
      first = false;
    }
    return acc;
  };

  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    switch (n.kind) {
      case Kind::leaf: {
        const bool own = (mask >> n.bit) & 1u;
        const double own_value = own ? n.pair.succeed : n.pair.fail;
        if (n.trigger < 0) {
          w[i] = own_value;
        } else {
          const bool status = st[i];
          std::pair<bool, double> kids[2] = {{st[n.trigger] != 0, w[n.trigger]}, {own, own_value}};
          w[i] = fold(status ? and_rule.succeed : and_rule.fail, status, kids);
        }
        break;
      }
      case Kind::conj:
      case Kind::disj: {
        const auto& r = n.kind == Kind::conj ? and_rule : or_rule;
        const bool status = st[i];
        std::vector<std::pair<bool, double>> kids;
        kids.reserve(n.inputs.size());
        for (auto k : n.inputs) kids.emplace_back(st[k] != 0, w[k]);
        w[i] = fold(status ? r.succeed : r.fail, status, kids);
        break;
      }
      case Kind::neg:
      case Kind::identity: w[i] = w[n.inputs.front()]; break;
    }
  }
}

constexpr std::uint64_t kChunks = 64;

std::uint64_t chunk_count(std::uint64_t total) { return std::min(kChunks, total); }

/// Sum over assignments where the root status equals `want`, fixed chunking so the
/// result does not depend on the thread count.
double mass_parallel(const Compiled& c, bool want) {
  const std::uint64_t total = std::uint64_t{1} << c.events.size();
  const std::uint64_t chunks = chunk_count(total);
  const std::uint64_t per_chunk = total / chunks;
  std::vector<double> partial(chunks, 0.0);

#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(chunks); ++k) {
    std::vector<std::uint8_t> st;
    double sum = 0.0;
    const std::uint64_t begin = static_cast<std::uint64_t>(k) * per_chunk;
    for (std::uint64_t mask = begin; mask < begin + per_chunk; ++mask) {
      eval_status(c, mask, st);
      if (static_cast<bool>(st[c.root]) == want) sum += weight(c, mask);
    }
    partial[k] = sum;
  }
  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

double mass_serial(const Compiled& c, bool want) {
  const std::uint64_t total = std::uint64_t{1} << c.events.size();
  std::vector<std::uint8_t> st;
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    eval_status(c, mask, st);
    if (static_cast<bool>(st[c.root]) == want) sum += weight(c, mask);
  }
  return sum;
}

constexpr double kNone = std::numeric_limits<double>::infinity();

ValuePair witness_min_parallel(const Compiled& c, Domain domain) {
  const std::uint64_t total = std::uint64_t{1} << c.events.size();
  const std::uint64_t chunks = chunk_count(total);
  const std::uint64_t per_chunk = total / chunks;
  std::vector<ValuePair> partial(chunks, ValuePair{kNone, kNone});

#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(chunks); ++k) {
    std::vector<std::uint8_t> st;
    std::vector<double> w;
    ValuePair best{kNone, kNone};
    const std::uint64_t begin = static_cast<std::uint64_t>(k) * per_chunk;
    for (std::uint64_t mask = begin; mask < begin + per_chunk; ++mask) {
      eval_status(c, mask, st);
      eval_witness(c, domain, st, w, mask);
      double& slot = st[c.root] ? best.succeed : best.fail;
      slot = std::min(slot, w[c.root]);
    }
    partial[k] = best;
  }
  ValuePair best{kNone, kNone};
  for (const auto& p : partial) {
    best.succeed = std::min(best.succeed, p.succeed);
    best.fail = std::min(best.fail, p.fail);
  }
  return best;
}

ValuePair witness_min_serial(const Compiled& c, Domain domain) {
  const std::uint64_t total = std::uint64_t{1} << c.events.size();
  std::vector<std::uint8_t> st;
  std::vector<double> w;
  ValuePair best{kNone, kNone};
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    eval_status(c, mask, st);
    eval_witness(c, domain, st, w, mask);
    double& slot = st[c.root] ? best.succeed : best.fail;
    slot = std::min(slot, w[c.root]);
  }
  return best;
}

// --- powerset ---------------------------------------------------------------

using Masks = std::vector<std::uint64_t>;

void normalize(Masks& m) {
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
}

/// X (x) Y = { x | y : x in X, y in Y }
Masks cross(const Masks& x, const Masks& y) {
  Masks out;
  out.reserve(x.size() * y.size());
  for (auto a : x) {
    for (auto b : y) out.push_back(a | b);
  }
  normalize(out);
  return out;
}

Masks unite(std::initializer_list<const Masks*> parts) {
  Masks out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  normalize(out);
  return out;
}

AssignmentSetPair powerset_and(const AssignmentSetPair& x, const AssignmentSetPair& y) {
  auto ff = cross(x.unsat, y.unsat);
  auto ft = cross(x.unsat, y.sat);
  auto tf = cross(x.sat, y.unsat);
  return AssignmentSetPair{cross(x.sat, y.sat), unite({&ft, &tf, &ff})};
}

AssignmentSetPair powerset_or(const AssignmentSetPair& x, const AssignmentSetPair& y) {
  auto tt = cross(x.sat, y.sat);
  auto tf = cross(x.sat, y.unsat);
  auto ft = cross(x.unsat, y.sat);
  return AssignmentSetPair{unite({&tt, &tf, &ft}), cross(x.unsat, y.unsat)};
}

std::vector<AssignmentSetPair> powerset_values(const Compiled& c) {
  std::vector<AssignmentSetPair> values(c.nodes.size());
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    switch (n.kind) {
      case Kind::leaf: {
        AssignmentSetPair own{{std::uint64_t{1} << n.bit}, {0}};
        values[i] = n.trigger >= 0 ? powerset_and(values[n.trigger], own) : own;
        break;
      }
      case Kind::conj:
      case Kind::disj: {
        auto acc = values[n.inputs.front()];
        for (std::size_t k = 1; k < n.inputs.size(); ++k) {
          acc = n.kind == Kind::conj ? powerset_and(acc, values[n.inputs[k]])
                                     : powerset_or(acc, values[n.inputs[k]]);
        }
        values[i] = std::move(acc);
        break;
      }
      case Kind::neg: {
        const auto& x = values[n.inputs.front()];
        values[i] = AssignmentSetPair{x.unsat, x.sat};
        break;
      }
      case Kind::identity: values[i] = values[n.inputs.front()]; break;
    }
  }
  return values;
}

}  // namespace

std::set<std::set<VertexId>> PowersetResult::decode(const std::vector<std::uint64_t>& masks) const {
  std::set<std::set<VertexId>> out;
  for (auto m : masks) {
    std::set<VertexId> s;
    for (std::size_t i = 0; i < events.size(); ++i) {
      if ((m >> i) & 1u) s.insert(events[i]);
    }
    out.insert(std::move(s));
  }
  return out;
}

std::map<VertexId, bool> bool_eval(const AdtGraph& graph, const Assignment& assignment) {
  for (const auto& id : assignment.true_set) {
    if (!graph.contains(id) || !graph.at(id).is_basic_event()) {
      throw AdtError(codes::kUnknownVertex, "assignment names a vertex that is not a basic event",
                     id);
    }
  }
  auto c = compile(graph, graph.goal, std::nullopt, OracleOptions{62, true});
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < c.events.size(); ++i) {
    if (assignment.true_set.count(c.events[i])) mask |= std::uint64_t{1} << i;
  }
  std::vector<std::uint8_t> st;
  eval_status(c, mask, st);
  std::map<VertexId, bool> out;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) out.emplace(c.ids[i], st[i] != 0);
  return out;
}

PowersetResult powerset_eval(const AdtGraph& graph, OracleOptions options) {
  auto c = compile(graph, graph.goal, std::nullopt, options);
  PowersetResult result;
  result.events = c.events;
  auto values = powerset_values(c);
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    result.per_vertex.emplace(c.ids[i], std::move(values[i]));
  }
  return result;
}

double enum_prob(const AdtGraph& graph, const VertexId& vertex, OracleOptions options) {
  return mass_parallel(compile(graph, vertex, Domain::prob, options), true);
}

double enum_prob_serial(const AdtGraph& graph, const VertexId& vertex, OracleOptions options) {
  return mass_serial(compile(graph, vertex, Domain::prob, options), true);
}

double enum_unsat_mass(const AdtGraph& graph, const VertexId& vertex, OracleOptions options) {
  return mass_parallel(compile(graph, vertex, Domain::prob, options), false);
}

double powerset_prob(const AdtGraph& graph, const VertexId& vertex, OracleOptions options) {
  auto c = compile(graph, vertex, Domain::prob, options);
  auto values = powerset_values(c);
  double sum = 0.0;
  for (auto mask : values[c.root].sat) sum += weight(c, mask);
  return sum;
}

ValuePair enum_min_cost(const AdtGraph& graph, OracleOptions options) {
  return witness_min_parallel(compile(graph, graph.goal, Domain::cost_min, options),
                              Domain::cost_min);
}

ValuePair enum_min_cost_serial(const AdtGraph& graph, OracleOptions options) {
  return witness_min_serial(compile(graph, graph.goal, Domain::cost_min, options),
                            Domain::cost_min);
}

ValuePair witness_delay_min(const AdtGraph& graph, OracleOptions options) {
  return witness_min_parallel(compile(graph, graph.goal, Domain::delay_min, options),
                              Domain::delay_min);
}

ValuePair witness_delay_min_serial(const AdtGraph& graph, OracleOptions options) {
  return witness_min_serial(compile(graph, graph.goal, Domain::delay_min, options),
                            Domain::delay_min);
}

}  // namespace adtquant
