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
#ifndef SORTC_JSON_SCHEMA_HPP_
#define SORTC_JSON_SCHEMA_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace sortc {

/**
 * Validates a JSON document against a JSON Schema. Supports the keywords
 * used by the shipped output schema: type, const, enum, required,
 * properties, additionalProperties, items, minItems, maxItems, minimum,
 * pattern, anyOf and local $ref. Other keywords throw SchemaError.
 * Returns one message per violation, each prefixed by a JSON pointer.
 */
std::vector<std::string> validate_json(const std::string& schema_text,
                                       const std::string& document_text);

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sortc

#endif  // SORTC_JSON_SCHEMA_HPP_
