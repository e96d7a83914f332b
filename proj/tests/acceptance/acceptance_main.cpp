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

// Acceptance runner: one PASS/FAIL line per acceptance criterion. Tolerances and
// time limits are pinned in the constants below; the exit status is non-zero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "adtquant/estimation.hpp"
#include "adtquant/export.hpp"
#include "adtquant/formats.hpp"
#include "adtquant/pac.hpp"
#include "checks.hpp"

using namespace adtquant;
using namespace adtquant::testkit;

namespace {

constexpr double kExactTol = 1e-7;
constexpr double kPacValueTol = 1e-6;
constexpr double kPacEpsTol = 2e-4;
constexpr double kPacDeltaTol = 1e-6;
constexpr double kEstimateTol = 1e-5;
constexpr double kDeltaGrowthTol = 1e-6;
constexpr double kIntervalSlack = 1e-12;
constexpr double kCoverageFloor = 0.93;
constexpr double kFigureBudgetMs = 10.0;
constexpr double kOracleBudgetS = 60.0;
constexpr double kPacBudgetS = 5.0;
constexpr double kExactBudgetS = 1.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
  void note(const std::string& what) {
    if (pass) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Best of `runs` timings of `f`, in milliseconds.
double best_ms(int runs, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < runs; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, seconds_since(t0) * 1e3);
  }
  return best;
}

AdtGraph load(const std::string& name) {
  std::ifstream in(std::string(ADTQUANT_TEST_DATA) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read test data " + name);
  std::stringstream text;
  text << in.rdbuf();
  return parse_dot(text.str());
}

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(ADTQUANT_TEST_DATA) + "/golden/" + name, std::ios::binary);
  if (!in) return "<missing golden file " + name + ">";
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

SampleSeries bernoulli_series(int ones, int n) {
  SampleSeries s;
  for (int i = 0; i < n; ++i) s.values.push_back(i < ones ? 1.0 : 0.0);
  return s;
}

Outcome exact_probability() {
  Outcome o;
  const auto g = load("powermeter.dot");
  AnalysisResult r;
  const double ms = best_ms(5, [&] { r = analyze(g, Domain::prob); });
  for (auto [id, want] : {std::pair{"4", 0.92818}, {"19", 0.9188982}, {"10", 0.4594491}}) {
    const double got = std::get<double>(r.per_vertex.at(id));
    if (std::abs(got - want) > kExactTol) o.fail("vertex " + std::string(id) + " = " + fmt("%.9g", got));
  }
  if (ms >= kFigureBudgetMs) o.fail("runtime " + fmt("%.3f", ms) + " ms");
  o.note("goal " + fmt("%.7f", std::get<double>(r.per_vertex.at("10"))) + ", " + fmt("%.3f", ms) + " ms");
  return o;
}

Outcome pac_propagation() {
  Outcome o;
  const auto g = load("powermeter_pac.dot");
  PacAnalysisResult r;
  const double ms = best_ms(5, [&] { r = analyze_pac(g, Domain::prob); });
  const std::vector<std::pair<std::string, PacValue>> expected = {
      {"4", {0.930528, 0.1894165, 0.142625}},
      {"19", {0.924015, 0.193929, 0.185494}},
      {"17", {0.494, 0.031003, 0.05}},
      {"10", {0.456463, 0.130461, 0.226219}}};
  for (const auto& [id, want] : expected) {
    const auto got = std::get<PacValue>(r.per_vertex.at(id).value);
    if (std::abs(got.value - want.value) > kPacValueTol ||
        std::abs(got.eps - want.eps) > kPacEpsTol ||
        std::abs(got.delta - want.delta) > kPacDeltaTol) {
      o.fail("vertex " + id + " = (" + fmt("%.7g", got.value) + ", " + fmt("%.7g", got.eps) + ", " +
             fmt("%.7g", got.delta) + ")");
    }
  }
  if (ms >= kFigureBudgetMs) o.fail("runtime " + fmt("%.3f", ms) + " ms");
  const auto goal = std::get<PacValue>(r.per_vertex.at("10").value);
  o.note("goal (" + fmt("%.6f", goal.value) + ", " + fmt("%.6f", goal.eps) + ", " +
         fmt("%.6f", goal.delta) + "), " + fmt("%.3f", ms) + " ms");
  return o;
}

Outcome estimator_leaves() {
  Outcome o;
  for (auto [ones, want] : {std::pair{233, 0.026214}, {993, 0.005170}, {506, 0.031003}}) {
    const auto v = estimate_gaussian({bernoulli_series(ones, 1000), 0.05});
    if (std::abs(v.eps - want) > kEstimateTol) {
      o.fail(std::to_string(ones) + "/1000: eps " + fmt("%.7f", v.eps));
    } else {
      o.note(std::to_string(ones) + "/1000 eps " + fmt("%.6f", v.eps));
    }
  }
  return o;
}

Outcome delta_growth() {
  Outcome o;
  for (auto [delta, want] : {std::pair{0.05, 1.0 - std::pow(0.95, 16)}, {0.01, 1.0 - std::pow(0.99, 16)}}) {
    const auto g = balanced_tree(16, 0.9, 0.01, delta);
    const auto r = analyze_pac(g, Domain::prob);
    const double got = std::get<PacValue>(r.per_vertex.at(g.goal).value).delta;
    if (std::abs(got - want) > kDeltaGrowthTol) {
      o.fail("leaf delta " + fmt("%g", delta) + ": goal delta " + fmt("%.7f", got));
    } else {
      o.note("leaf delta " + fmt("%g", delta) + " -> " + fmt("%.5f", got));
    }
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  Rng rng(20260501);
  const auto t0 = std::chrono::steady_clock::now();
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const auto g = random_boolean_tree(rng, TreeShape{12, 0.2, 3});
    if (auto why = check_oracle_agreement(g); !why.empty()) {
      if (failures++ == 0) o.fail("tree " + std::to_string(i) + ": " + why);
    }
  }
  const double s = seconds_since(t0);
  if (failures) o.fail(std::to_string(failures) + " of 200 trees disagree");
  if (s >= kOracleBudgetS) o.fail("runtime " + fmt("%.2f", s) + " s");
  o.note("200 trees, " + fmt("%.2f", s) + " s");
  return o;
}

Outcome pac_containment() {
  Outcome o;
  Rng rng(20260502);
  long escapes = 0, checks = 0;
  for (int i = 0; i < 100; ++i) {
    const auto g = random_boolean_tree(rng, TreeShape{10, 0.2, 3}, true);
    for (Domain d : {Domain::prob, Domain::cost_min, Domain::cost_max, Domain::delay_min,
                     Domain::delay_max}) {
      const int e = count_interval_escapes(g, d, 1000, rng, kIntervalSlack);
      if (e && escapes == 0) o.fail("tree " + std::to_string(i) + ", domain " + std::string(to_string(d)));
      escapes += e;
      checks += 1000;
    }
  }
  if (escapes) o.fail(std::to_string(escapes) + " escapes");
  o.note(std::to_string(checks) + " perturbations, 0 escapes");
  return o;
}

Outcome powerset_boolean() {
  Outcome o;
  const auto small = all_small_trees(4, 5);
  int mismatches = 0;
  for (const auto& g : small) {
    if (auto why = check_powerset_agreement(g); !why.empty()) {
      if (mismatches++ == 0) o.fail(why);
    }
  }
  Rng rng(20260503);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_boolean_tree(rng, TreeShape{10, 0.25, 3});
    if (auto why = check_powerset_agreement(g); !why.empty()) {
      if (mismatches++ == 0) o.fail(why);
    }
  }
  if (mismatches) o.fail(std::to_string(mismatches) + " mismatching trees");
  o.note(std::to_string(small.size()) + " exhaustive + 100 random trees");
  return o;
}

Outcome performance() {
  Outcome o;
  const auto g = gen_benchmark(678, 1);
  if (g.vertices.size() != 1355) o.fail(std::to_string(g.vertices.size()) + " vertices");
  auto t0 = std::chrono::steady_clock::now();
  analyze_pac(g, Domain::prob);
  const double pac_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  analyze(g, Domain::prob);
  const double exact_s = seconds_since(t0);
  if (pac_s >= kPacBudgetS) o.fail("PAC " + fmt("%.3f", pac_s) + " s");
  if (exact_s >= kExactBudgetS) o.fail("exact " + fmt("%.3f", exact_s) + " s");
  o.note("1355 vertices: PAC " + fmt("%.4f", pac_s) + " s, exact " + fmt("%.4f", exact_s) + " s");
  return o;
}

Outcome round_trips() {
  Outcome o;
  Rng rng(20260504);
  int dot_failures = 0, xml_failures = 0;
  for (int i = 0; i < 200; ++i) {
    const auto g = random_rich_graph(rng);
    if (!(parse_dot(emit_dot(g)) == g) && dot_failures++ == 0) {
      o.fail("DOT round trip differs for graph " + std::to_string(i));
    }
  }
  for (int i = 0; i < 200; ++i) {
    const auto g = random_xml_tree(rng, 10);
    const auto back = parse_adtool_xml(emit_adtool_xml(g).text);
    if (structure_signature(back) != structure_signature(g) && xml_failures++ == 0) {
      o.fail("XML round trip differs for tree " + std::to_string(i));
    }
  }
  const auto pm = load("powermeter.dot");
  const auto timed = load("powermeter_timed.dot");
  const auto prism = export_prism(pm);
  const auto uppaal = export_uppaal(timed);
  const std::vector<std::pair<std::string, std::string>> goldens = {
      {"powermeter.dot", emit_dot(pm)},
      {"powermeter.xml", emit_adtool_xml(pm).text},
      {"powermeter.prism", prism.files.at("model.prism")},
      {"powermeter.props", prism.files.at("props.props")},
      {"powermeter_uppaal.xml", uppaal.files.at("model.xml")},
      {"powermeter_uppaal.q", uppaal.files.at("queries.q")}};
  for (const auto& [name, text] : goldens) {
    if (read_golden(name) != text) o.fail("golden " + name + " differs");
  }
  o.note("200 DOT + 200 XML round trips, 6 golden files");
  return o;
}

Outcome export_validation() {
  Outcome o;
  Rng rng(20260505);
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const auto g = random_boolean_tree(rng, TreeShape{10, 0.2, 3});
    if (auto why = check_export_closure(g, ExportTarget::prism_smg); !why.empty() && failures++ == 0) {
      o.fail("PRISM tree " + std::to_string(i) + ": " + why);
    }
  }
  for (int i = 0; i < 200; ++i) {
    const auto g = random_timed_tree(rng, 10);
    if (auto why = check_export_closure(g, ExportTarget::uppaal_xml); !why.empty() && failures++ == 0) {
      o.fail("UPPAAL tree " + std::to_string(i) + ": " + why);
    }
  }
  for (int i = 0; i < 50; ++i) {
    const auto g = random_boolean_tree(rng, TreeShape{8, 0.2, 3});
    if (auto why = check_prism_smoke(g, rng); !why.empty() && failures++ == 0) {
      o.fail("smoke tree " + std::to_string(i) + ": " + why);
    }
  }
  o.note("200 PRISM + 200 UPPAAL exports accepted, 50 smoke checks agree");
  return o;
}

Outcome estimator_coverage() {
  Outcome o;
  Rng rng(20260506);
  for (double p : {0.233, 0.5}) {
    std::bernoulli_distribution coin(p);
    int covered = 0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
      SampleSeries s;
      for (int i = 0; i < 1000; ++i) s.values.push_back(coin(rng) ? 1.0 : 0.0);
      const auto v = estimate_gaussian({std::move(s), 0.05});
      if (std::abs(v.value - p) <= v.eps) ++covered;
    }
    const double coverage = static_cast<double>(covered) / trials;
    if (coverage < kCoverageFloor) {
      o.fail("p = " + fmt("%g", p) + ": coverage " + fmt("%.4f", coverage));
    } else {
      o.note("p = " + fmt("%g", p) + ": coverage " + fmt("%.4f", coverage));
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exact probability on the power-meter model", exact_probability},
      {"PAC propagation on the power-meter model", pac_propagation},
      {"Gaussian estimator on the power-meter leaves", estimator_leaves},
      {"delta growth on a 16-leaf balanced tree", delta_growth},
      {"bottom-up analysis equals the enumeration oracles", oracle_equivalence},
      {"PAC goal intervals contain perturbed exact values", pac_containment},
      {"powerset and Boolean semantics agree", powerset_boolean},
      {"analysis time on a 1355-vertex benchmark tree", performance},
      {"format round trips and golden files", round_trips},
      {"exporter outputs pass self-validation", export_validation},
      {"estimator interval coverage", estimator_coverage}};

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
