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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "adtquant/estimation.hpp"
#include "adtquant/export.hpp"
#include "adtquant/formats.hpp"
#include "adtquant/report.hpp"
#include "adtquant/service.hpp"

namespace fs = std::filesystem;
using namespace adtquant;

namespace {

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct IoFailure {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure{"cannot read " + path};
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw IoFailure{"cannot write " + path.string()};
}

AdtGraph load_model(const std::string& path) {
  const std::string text = read_file(path);
  if (fs::path(path).extension() == ".xml") return parse_adtool_xml(text);
  return parse_dot(text);
}

void print(const Diagnostics& ds) {
  for (const auto& d : ds) std::cerr << format_diagnostic(d) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adtquant: quantitative attack-defense tree workbench"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string file, out, domain_name = "prob", delta_rule_name = "independent", to, target_name;
  std::string static_dir, data_dir, host = "127.0.0.1";
  bool pac = false, json = false, exact_leaves = false, seed_ids = false;
  double delta = 0.05;
  std::optional<double> horizon;
  std::int64_t size = 0;
  std::uint64_t seed = 0;
  int port = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check a model and report diagnostics");
  validate_cmd->add_option("file", file, "model file (.dot or .xml)")->required();
  validate_cmd->add_option("--target", target_name,
                           "also report feedback for analysis-bottomup, analysis-pac, export-xml, "
                           "export-prism or export-uppaal");

  auto* analyze_cmd = app.add_subcommand("analyze", "bottom-up analysis of a model");
  analyze_cmd->add_option("file", file, "model file (.dot or .xml)")->required();
  analyze_cmd->add_option("--domain", domain_name, "prob, cost-min, cost-max, delay-min, delay-max");
  analyze_cmd->add_flag("--pac", pac, "propagate PAC parameters");
  analyze_cmd->add_option("--delta-rule", delta_rule_name, "independent or union");
  analyze_cmd->add_flag("--exact-leaves", exact_leaves,
                        "treat leaves without PAC parameters as exact");
  analyze_cmd->add_flag("--json", json, "machine-readable output");

  auto* estimate_cmd = app.add_subcommand("estimate", "Gaussian PAC estimate from CSV samples");
  estimate_cmd->add_option("file", file, "CSV file, one value per line")->required();
  estimate_cmd->add_option("--delta", delta, "uncertainty probability in (0,1)");
  estimate_cmd->add_flag("--json", json, "machine-readable output");

  auto* convert_cmd = app.add_subcommand("convert", "convert between DOT and ADTool XML");
  convert_cmd->add_option("file", file, "model file (.dot or .xml)")->required();
  convert_cmd->add_option("--to", to, "dot or xml")->required()->check(CLI::IsMember({"dot", "xml"}));
  convert_cmd->add_option("-o,--output", out, "output file")->required();

  auto* export_cmd = app.add_subcommand("export", "emit model-checker input files");
  export_cmd->add_option("file", file, "model file (.dot or .xml)")->required();
  export_cmd->add_option("--to", to, "prism or uppaal")->required()->check(
      CLI::IsMember({"prism", "uppaal", "prism-smg", "uppaal-xml"}));
  export_cmd->add_option("-o,--output", out, "output directory")->required();
  export_cmd->add_option("--horizon", horizon, "UPPAAL query horizon");

  auto* gen_cmd = app.add_subcommand("gen", "generate a random benchmark tree");
  gen_cmd->add_option("--size", size, "number of leaves")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", seed, "64-bit seed");
  gen_cmd->add_option("-o,--output", out, "output DOT file")->required();

  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP JSON service");
  serve_cmd->add_option("--port", port, "port (default: $ADTQUANT_PORT or 8080)");
  serve_cmd->add_option("--host", host, "listen address");
  serve_cmd->add_option("--static", static_dir, "directory served at /");
  serve_cmd->add_option("--data", data_dir, "persist models as DOT files in this directory");
  serve_cmd->add_flag("--seed-ids", seed_ids, "deterministic model ids m1, m2, ...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate_cmd) {
      AdtGraph graph = load_model(file);
      Diagnostics ds = validate(graph);
      if (!target_name.empty()) {
        auto target = parse_target(target_name);
        if (!target) {
          std::cerr << "unknown target " << target_name << "\n";
          return kUsage;
        }
        if (!has_errors(ds)) ds = feedback(graph, *target);
      }
      print(ds);
      if (!has_errors(ds)) std::cout << "ok\n";
      return has_errors(ds) ? kDiagnostics : kOk;
    }

    if (*analyze_cmd) {
      AnalysisRequest request;
      auto domain = parse_domain(domain_name);
      auto rule = parse_delta_rule(delta_rule_name);
      if (!domain || !rule) {
        std::cerr << "unknown " << (domain ? "delta rule " + delta_rule_name : "domain " + domain_name)
                  << "\n";
        return kUsage;
      }
      request.domain = *domain;
      request.pac = pac;
      request.delta_rule = *rule;
      request.exact_leaves = exact_leaves;
      AdtGraph graph = load_model(file);
      if (json) {
        std::cout << analysis_payload(graph, request).dump(2) << "\n";
      } else {
        std::cout << analysis_listing(graph, request);
      }
      return kOk;
    }

    if (*estimate_cmd) {
      EstimateRequest request{parse_csv_samples(read_file(file)), delta};
      PacValue v = estimate_gaussian(request);
      if (json) {
        std::cout << to_json(v).dump(2) << "\n";
      } else {
        std::cout << "p: " << short_real(v.value) << " ε: " << short_real(v.eps)
                  << " δ: " << short_real(v.delta) << "  (n = " << request.samples.values.size()
                  << ")\n";
      }
      return kOk;
    }

    if (*convert_cmd) {
      AdtGraph graph = load_model(file);
      if (to == "dot") {
        write_file(out, emit_dot(graph));
      } else {
        XmlExport x = emit_adtool_xml(graph);
        print(x.diagnostics);
        write_file(out, x.text);
      }
      return kOk;
    }

    if (*export_cmd) {
      AdtGraph graph = load_model(file);
      ExportArtifact artifact = export_model(graph, *parse_export_target(to), horizon);
      print(artifact.diagnostics);
      std::error_code ec;
      fs::create_directories(out, ec);
      if (ec) throw IoFailure{"cannot create " + out + ": " + ec.message()};
      for (const auto& [name, content] : artifact.files) write_file(fs::path(out) / name, content);
      return kOk;
    }

    if (*gen_cmd) {
      write_file(out, emit_dot(gen_benchmark(size, seed)));
      return kOk;
    }

    if (*serve_cmd) {
      ServeOptions options;
      options.host = host;
      options.port = 8080;
      if (const char* env = std::getenv("ADTQUANT_PORT")) options.port = std::atoi(env);
      if (port > 0) options.port = port;
      if (!static_dir.empty()) options.static_dir = static_dir;
      std::optional<fs::path> data;
      if (!data_dir.empty()) data = data_dir;
      ApiService api(seed_ids, data);
      std::cerr << "adtquant " << kVersion << " listening on http://" << options.host << ":"
                << options.port << "\n";
      if (!serve(api, options)) throw IoFailure{"cannot listen on port " + std::to_string(options.port)};
      return kOk;
    }
  } catch (const IoFailure& e) {
    std::cerr << codes::kIo << ": " << e.message << "\n";
    return kIo;
  } catch (const AdtError& e) {
    print(e.diagnostics());
    return e.code() == codes::kIo ? kIo : kDiagnostics;
  }
  return kUsage;
}
