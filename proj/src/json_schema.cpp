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
#include "sortc/json_schema.hpp"

#include <regex>
#include <set>

#include "json.hpp"

namespace sortc {
namespace {

using Json = nlohmann::json;

const std::set<std::string> kIgnored{"$schema", "$id", "title", "description", "$defs"};

bool has_type(const Json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "number") return v.is_number();
  if (t == "integer") return v.is_number_integer();
  throw SchemaError("unknown type '" + t + "'");
}

class Validator {
 public:
  explicit Validator(const Json& root) : root_(root) {}

  void check(const Json& schema, const Json& v, const std::string& at,
             std::vector<std::string>& errs) const {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) errs.push_back(at + ": no value is allowed here");
      return;
    }
    for (const auto& [key, rule] : schema.items()) {
      if (kIgnored.count(key)) continue;
      if (key == "$ref") {
        check(resolve(rule.get<std::string>()), v, at, errs);
      } else if (key == "type") {
        bool any = false;
        if (rule.is_array()) {
          for (const auto& t : rule) any = any || has_type(v, t.get<std::string>());
        } else {
          any = has_type(v, rule.get<std::string>());
        }
        if (!any) errs.push_back(at + ": expected type " + rule.dump());
      } else if (key == "const") {
        if (v != rule) errs.push_back(at + ": expected " + rule.dump());
      } else if (key == "enum") {
        if (std::find(rule.begin(), rule.end(), v) == rule.end())
          errs.push_back(at + ": " + v.dump() + " is not one of " + rule.dump());
      } else if (key == "required") {
        if (!v.is_object()) continue;
        for (const auto& k : rule)
          if (!v.contains(k.get<std::string>()))
            errs.push_back(at + ": missing property '" + k.get<std::string>() + "'");
      } else if (key == "properties") {
        if (!v.is_object()) continue;
        for (const auto& [k, sub] : rule.items())
          if (v.contains(k)) check(sub, v.at(k), at + "/" + k, errs);
      } else if (key == "additionalProperties") {
        if (!v.is_object()) continue;
        const Json* props = schema.contains("properties") ? &schema.at("properties") : nullptr;
        for (const auto& [k, sub] : v.items()) {
          if (props && props->contains(k)) continue;
          if (rule.is_boolean() && !rule.get<bool>())
            errs.push_back(at + ": unexpected property '" + k + "'");
          else
            check(rule, sub, at + "/" + k, errs);
        }
      } else if (key == "items") {
        if (!v.is_array()) continue;
        for (std::size_t i = 0; i < v.size(); ++i)
          check(rule, v[i], at + "/" + std::to_string(i), errs);
      } else if (key == "minItems") {
        if (v.is_array() && v.size() < rule.get<std::size_t>())
          errs.push_back(at + ": fewer than " + rule.dump() + " items");
      } else if (key == "maxItems") {
        if (v.is_array() && v.size() > rule.get<std::size_t>())
          errs.push_back(at + ": more than " + rule.dump() + " items");
      } else if (key == "minimum") {
        if (v.is_number() && v.get<double>() < rule.get<double>())
          errs.push_back(at + ": below minimum " + rule.dump());
      } else if (key == "pattern") {
        if (v.is_string() &&
            !std::regex_search(v.get<std::string>(), std::regex(rule.get<std::string>())))
          errs.push_back(at + ": does not match " + rule.dump());
      } else if (key == "anyOf") {
        bool any = false;
        for (const auto& alt : rule) {
          std::vector<std::string> sub;
          check(alt, v, at, sub);
          if (sub.empty()) {
            any = true;
            break;
          }
        }
        if (!any) errs.push_back(at + ": matches none of the alternatives");
      } else {
        throw SchemaError("unsupported schema keyword '" + key + "'");
      }
    }
  }

 private:
  const Json& resolve(const std::string& ref) const {
    if (ref.rfind("#", 0) != 0) throw SchemaError("only local references are supported: " + ref);
    const Json* cur = &root_;
    try {
      cur = &root_.at(Json::json_pointer(ref.substr(1)));
    } catch (const Json::exception&) {
      throw SchemaError("unresolved reference " + ref);
    }
    return *cur;
  }

  const Json& root_;
};

}  // namespace

std::vector<std::string> validate_json(const std::string& schema_text,
                                       const std::string& document_text) {
  Json schema, doc;
  try {
    schema = Json::parse(schema_text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("schema is not JSON: ") + e.what());
  }
  try {
    doc = Json::parse(document_text);
  } catch (const Json::parse_error& e) {
    return {std::string("document is not JSON: ") + e.what()};
  }
  std::vector<std::string> errs;
  Validator(schema).check(schema, doc, "", errs);
  for (auto& e : errs)
    if (e.front() == ':') e.insert(0, "/");
  return errs;
}

}  // namespace sortc
