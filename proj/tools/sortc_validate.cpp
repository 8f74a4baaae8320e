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
// Checks sortc --json output against a JSON Schema.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sortc/cli.hpp"
#include "sortc/json_schema.hpp"

namespace {

bool slurp(std::istream& in, std::string& out) {
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return !in.bad();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sortc-validate: check JSON documents against a JSON Schema"};
  std::string schema_path;
  std::string doc_path = "-";
  app.add_option("schema", schema_path, "schema file")->required();
  app.add_option("document", doc_path, "document file, or - for stdin");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : sortc::kExitUsage;
  }
  std::ifstream schema_in(schema_path, std::ios::binary);
  std::string schema_text, doc_text;
  if (!schema_in || !slurp(schema_in, schema_text)) {
    std::cerr << "sortc-validate: cannot read '" << schema_path << "'\n";
    return sortc::kExitUsage;
  }
  if (doc_path == "-") {
    slurp(std::cin, doc_text);
  } else {
    std::ifstream doc_in(doc_path, std::ios::binary);
    if (!doc_in || !slurp(doc_in, doc_text)) {
      std::cerr << "sortc-validate: cannot read '" << doc_path << "'\n";
      return sortc::kExitUsage;
    }
  }
  try {
    auto errs = sortc::validate_json(schema_text, doc_text);
    for (const auto& e : errs) std::cout << e << "\n";
    if (errs.empty()) std::cout << "valid\n";
    return errs.empty() ? 0 : 1;
  } catch (const sortc::SchemaError& e) {
    std::cerr << "sortc-validate: " << e.what() << "\n";
    return sortc::kExitUsage;
  }
}
