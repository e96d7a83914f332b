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

#include "adtquant/report.hpp"

#include <cstdio>
#include <functional>
#include <set>

namespace adtquant {

std::string_view to_string(DeltaRule rule) {
  return rule == DeltaRule::independent ? "independent" : "union";
}

std::optional<DeltaRule> parse_delta_rule(std::string_view name) {
  if (name == "independent") return DeltaRule::independent;
  if (name == "union") return DeltaRule::union_bound;
  return std::nullopt;
}

Json to_json(const Diagnostic& d) {
  Json j{{"code", d.code}, {"severity", to_string(d.severity)}, {"message", d.message}};
  if (d.vertex) j["vertex"] = *d.vertex;
  if (d.target) j["target"] = to_string(*d.target);
  return j;
}

Json to_json(const Diagnostics& ds) {
  Json j = Json::array();
  for (const auto& d : ds) j.push_back(to_json(d));
  return j;
}

Json to_json(const PacValue& v) { return Json{{"value", v.value}, {"eps", v.eps}, {"delta", v.delta}}; }

Json to_json(const ExportArtifact& artifact) {
  Json files = Json::object();
  for (const auto& [name, content] : artifact.files) files[name] = content;
  return Json{{"files", files}, {"diagnostics", to_json(artifact.diagnostics)}};
}

namespace {

Json pair_json(double succeed, double fail) { return Json{{"succeed", succeed}, {"fail", fail}}; }

// Vertices of the result in listing order: goal tree first, then remaining roots.
std::vector<std::pair<VertexId, int>> listing_order(const AdtGraph& graph,
                                                    const std::set<VertexId>& members) {
  auto inputs = graph.input_map();
  std::vector<std::pair<VertexId, int>> order;
  std::set<VertexId> seen;
  std::function<void(const VertexId&, int)> walk = [&](const VertexId& id, int depth) {
    if (!members.count(id) || !seen.insert(id).second) return;
    order.emplace_back(id, depth);
    for (const auto& c : inputs[id]) walk(c, depth + 1);
  };
  walk(graph.goal, 0);
  for (const auto& id : members) {
    bool root = true;
    for (const auto& e : graph.input_edges) {
      if (e.from == id && members.count(e.to)) root = false;
    }
    if (root) walk(id, 0);
  }
  for (const auto& id : members) walk(id, 0);
  return order;
}

std::string symbol(Domain domain) {
  switch (domain) {
    case Domain::prob: return "p";
    case Domain::cost_min:
    case Domain::cost_max: return "cost";
    default: return "delay";
  }
}

}  // namespace

std::string short_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7g", value);
  return buf;
}

Json analysis_payload(const AdtGraph& graph, const AnalysisRequest& request) {
  Json results = Json::object();
  Json payload{{"domain", to_string(request.domain)}, {"pac", request.pac}};
  if (!request.pac) {
    auto result = analyze(graph, request.domain);
    payload["goal"] = result.goal;
    for (const auto& [id, v] : result.per_vertex) {
      if (const auto* p = std::get_if<double>(&v)) {
        results[id] = Json{{"value", *p}};
      } else {
        const auto& pair = std::get<ValuePair>(v);
        results[id] = Json{{"pair", pair_json(pair.succeed, pair.fail)}};
      }
    }
  } else {
    auto result = analyze_pac(graph, request.domain, request.delta_rule, request.exact_leaves);
    payload["goal"] = result.goal;
    payload["deltaRule"] = to_string(request.delta_rule);
    for (const auto& [id, entry] : result.per_vertex) {
      if (const auto* p = std::get_if<PacValue>(&entry.value)) {
        results[id] = Json{{"value", p->value},
                           {"eps", p->eps},
                           {"delta", p->delta},
                           {"intervalLo", entry.interval.lo},
                           {"intervalHi", entry.interval.hi}};
      } else {
        const auto& pair = std::get<PacPair>(entry.value);
        results[id] = Json{{"pair", pair_json(pair.succeed.value, pair.fail.value)},
                           {"eps", pair_json(pair.succeed.eps, pair.fail.eps)},
                           {"delta", std::max(pair.succeed.delta, pair.fail.delta)},
                           {"intervalLo", pair_json(entry.interval.lo, entry.fail_interval.lo)},
                           {"intervalHi", pair_json(entry.interval.hi, entry.fail_interval.hi)}};
      }
    }
  }
  payload["results"] = std::move(results);
  payload["diagnostics"] = Json::array();
  return payload;
}

std::string analysis_listing(const AdtGraph& graph, const AnalysisRequest& request) {
  const Json payload = analysis_payload(graph, request);
  const auto& results = payload["results"];
  std::set<VertexId> members;
  for (const auto& [id, _] : results.items()) members.insert(id);

  std::string out = "# domain " + std::string(to_string(request.domain));
  out += request.pac ? " (PAC, delta rule " + std::string(to_string(request.delta_rule)) + ")"
                     : " (exact)";
  if (request.domain == Domain::prob) out += "; basic events assumed mutually independent";
  out += "\n";

  const std::string sym = symbol(request.domain);
  for (const auto& [id, depth] : listing_order(graph, members)) {
    const auto& r = results[id];
    std::string line(static_cast<std::size_t>(depth) * 2, ' ');
    line += "ID " + id + " " + sym + ": ";
    if (r.contains("value")) {
      line += short_real(r["value"].get<double>());
      if (request.pac) {
        line += " ε: " + short_real(r["eps"].get<double>()) +
                " δ: " + short_real(r["delta"].get<double>());
      }
    } else {
      const auto& pair = r["pair"];
      if (request.pac) {
        line += "(" + short_real(pair["succeed"].get<double>()) +
                " ε: " + short_real(r["eps"]["succeed"].get<double>()) + ", " +
                short_real(pair["fail"].get<double>()) +
                " ε: " + short_real(r["eps"]["fail"].get<double>()) +
                ") δ: " + short_real(r["delta"].get<double>());
      } else {
        line += "(" + short_real(pair["succeed"].get<double>()) + ", " +
                short_real(pair["fail"].get<double>()) + ")";
      }
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace adtquant
