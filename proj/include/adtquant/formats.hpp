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
#include <string>
#include <string_view>

#include "adtquant/estimation.hpp"
#include "adtquant/graph.hpp"

namespace adtquant {

// --- DOT -------------------------------------------------------------------
//
// Node attributes: type (BE|AND|OR|NOT|SAND|SOR|TR|RE, default BE),
// player (attacker|defender, default attacker), label, goal ("true"),
// prob, prob_eps, prob_delta, cost_s, cost_f, cost_eps_s, cost_eps_f,
// cost_delta, delay_s, delay_f, delay_eps_s, delay_eps_f, delay_delta.
// An edge `child -> parent` is an input edge; kind="trigger" / kind="reset"
// mark trigger and reset edges (gate -> basic event). Everything else is kept
// verbatim. docs/formats.md has the full schema.

/// Throws AdtError (E_PARSE with line:column, E_ATTRIBUTE, E_GOAL_AMBIGUOUS).
AdtGraph parse_dot(std::string_view text);

/// Canonical, byte-deterministic DOT: vertices sorted by id, attribute keys
/// sorted, reals in shortest round-trip form, LF line endings.
std::string emit_dot(const AdtGraph& graph);

/// Shortest decimal that reads back to the same double.
std::string format_real(double value);

/// 1 - p rounded to 15 significant digits, then format_real. Used for branch weights.
std::string format_complement(double p);

// --- ADTool XML ------------------------------------------------------------

struct XmlExport {
  std::string text;
  /// Warnings about what the format could not carry (PAC values, extra roots).
  Diagnostics diagnostics;
};

/// Throws AdtError on malformed XML or an unknown refinement.
AdtGraph parse_adtool_xml(std::string_view text);

/// Throws AdtError (E_XML_UNSUPPORTED and friends) when feedback(export-xml) has errors.
XmlExport emit_adtool_xml(const AdtGraph& graph);

// --- CSV samples -----------------------------------------------------------

/// One value per line, an optional non-numeric header line, blank lines ignored.
/// Throws AdtError (E_CSV) naming the offending line.
SampleSeries parse_csv_samples(std::string_view text);

// --- Benchmark generation --------------------------------------------------

/// Random binary AND/OR tree with `leaf_count` attacker leaves, built by
/// repeatedly joining two random trees under a random gate. Deterministic in
/// (leaf_count, seed); the procedure is specified in docs/formats.md.
AdtGraph gen_benchmark(std::int64_t leaf_count, std::uint64_t seed);

}  // namespace adtquant
