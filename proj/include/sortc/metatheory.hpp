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

#ifndef SORTC_METATHEORY_HPP_
#define SORTC_METATHEORY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sortc/oracles.hpp"

namespace sortc {

struct MetaConfig {
  int trials = 500;
  std::uint64_t seed = 1;
  /** Property names to run; empty runs all of them. */
  std::vector<std::string> only;
  /** Run the checker with covariant arrow domains to test the harness. */
  bool mutant = false;
  /** Extra fixture programs (*.dsr); empty uses the built-in ones only. */
  std::string corpus_dir;
  GenBounds bounds;
  int oracle_depth = 2;
  std::size_t oracle_budget = 200000;
  double timeout_seconds = 5.0;
  std::size_t max_counterexamples = 5;
  bool parallel = true;
};

struct PropertyResult {
  std::string name;
  int target = 0;
  int trials = 0;
  int failures = 0;
  /** Trials where the declarative oracle ran out of candidates or budget. */
  int unknowns = 0;
  std::vector<std::string> counterexamples;
  double seconds = 0;

  bool passed() const { return failures == 0 && trials >= target; }
};

struct MetaReport {
  std::vector<PropertyResult> properties;
  bool passed() const;
};

std::vector<std::string> property_names();

/** Throws std::invalid_argument for unknown names in config.only. */
MetaReport run_metatheory(const MetaConfig& config);

}  // namespace sortc

#endif  // SORTC_METATHEORY_HPP_
