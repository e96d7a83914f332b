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
#include <string>
#include <string_view>
#include <vector>

#include "adtquant/diagnostics.hpp"

// Reader for the fragment of the PRISM-games language that export_prism emits,
// plus a small explicit-state evaluator used for smoke checks. Not a general
// PRISM implementation.

namespace adtquant::prism {

struct Expr {
  enum class Kind { number, variable, formula, negation, conjunction, disjunction, compare };
  Kind kind = Kind::number;
  double number = 0.0;
  /// Variable or formula index for Kind::variable / Kind::formula.
  std::size_t ref = 0;
  /// Identifier as written, before resolution.
  std::string name;
  /// One of "=", "!=", "<", "<=", ">", ">=" for Kind::compare.
  std::string op;
  std::vector<Expr> operands;
};

struct Variable {
  std::string name;
  int low = 0;
  int high = 0;
  int init = 0;
};

struct Assign {
  std::string target;
  /// Index into Model::variables once resolved.
  std::size_t variable = 0;
  Expr value;
};

struct Branch {
  double weight = 1.0;
  std::vector<Assign> assignments;
};

struct Command {
  std::string action;
  Expr guard;
  std::vector<Branch> branches;
};

struct Model {
  std::map<std::string, std::vector<std::string>> players;
  std::string module;
  std::vector<Variable> variables;
  std::vector<std::pair<std::string, Expr>> formulas;
  std::vector<Command> commands;
  std::map<std::string, Expr> labels;
};

/// Parses model text. Problems are appended to `out`; returns nullopt on syntax errors.
std::optional<Model> parse_model(std::string_view text, Diagnostics& out);

/// Checks a properties file of `<<players>> Pmax=? [ F "label" ]` lines against `model`.
Diagnostics check_properties(std::string_view text, const Model& model);

/// Probability of reaching `label` when every player prefers attempt_* actions,
/// computed by value iteration over the reachable state space. Throws AdtError
/// (E_SIZE_GUARD) above `max_states`.
double reach_probability_always_attempt(const Model& model, const std::string& label,
                                        std::size_t max_states = 200000);

}  // namespace adtquant::prism
