// Copyright 2026 The sortc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "sortc/metatheory.hpp"

namespace {

nlohmann::ordered_json to_json(const sortc::MetaConfig& cfg,
                               const sortc::MetaReport& report) {
  nlohmann::ordered_json props = nlohmann::ordered_json::array();
  for (const auto& p : report.properties)
    props.push_back({{"name", p.name},
                     {"target", p.target},
                     {"trials", p.trials},
                     {"failures", p.failures},
                     {"unknowns", p.unknowns},
                     {"passed", p.passed()},
                     {"seconds", p.seconds},
                     {"counterexamples", p.counterexamples}});
  return {{"seed", cfg.seed},
          {"trials", cfg.trials},
          {"mutant", cfg.mutant},
          {"passed", report.passed()},
          {"properties", props}};
}

}  // namespace

int main(int argc, char** argv) {
  sortc::MetaConfig cfg;
  std::string report_path;
  bool list = false;
  bool serial = false;
  CLI::App app{"Property-based checks of the typing metatheory"};
  app.add_option("--trials", cfg.trials, "Trials per property")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Base seed");
  app.add_option("--only", cfg.only, "Run only these properties");
  app.add_flag("--mutant", cfg.mutant,
               "Compare arrow domains covariantly; some property should fail");
  app.add_option("--corpus", cfg.corpus_dir, "Directory of extra *.dsr programs");
  app.add_option("--report", report_path, "Write the JSON report here");
  app.add_flag("--list", list, "List property names and exit");
  app.add_flag("--serial", serial, "Run properties one after another");
  CLI11_PARSE(app, argc, argv);
  cfg.parallel = !serial;

  if (list) {
    for (const auto& name : sortc::property_names()) std::cout << name << "\n";
    return 0;
  }

  sortc::MetaReport report;
  try {
    report = sortc::run_metatheory(cfg);
  } catch (const std::invalid_argument& ex) {
    std::cerr << "sortc-meta: " << ex.what() << "\n";
    return 64;
  }

  for (const auto& p : report.properties) {
    std::cout << (p.passed() ? "PASS " : "FAIL ") << p.name << "  trials "
              << p.trials << "/" << p.target << "  failures " << p.failures
              << "  unknown " << p.unknowns << "  "
              << static_cast<int>(p.seconds * 1000) << "ms\n";
    for (const auto& c : p.counterexamples) std::cout << "    " << c << "\n";
  }
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << to_json(cfg, report).dump(2) << "\n";
  }
  return report.passed() ? 0 : 1;
}
