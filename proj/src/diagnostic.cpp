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

#include "sortc/diagnostic.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace sortc {

const std::string* Diagnostic::find_extra(const std::string& key) const {
  for (const auto& [k, v] : extra)
    if (k == key) return &v;
  return nullptr;
}

Diagnostic make_diagnostic(std::string code, std::string message,
                           SourceLoc span) {
  Diagnostic d;
  d.code = std::move(code);
  d.message = std::move(message);
  d.span = span;
  return d;
}

DiagnosticClass classify(const std::string& code) {
  static const std::set<std::string> parse = {"PARSE", "DUPDATA", "DUPCTOR"};
  static const std::set<std::string> signature = {
      "DUPSORT",       "UNKNOWN_DATATYPE", "SUBSORT_BACKPATCH",
      "UNSAFE_CTOR",   "SCOPE",            "UNKNOWN_CTOR",
      "CTOR_MISMATCH", "SUBSORT_DATATYPE", "UNDECLARED_SORT"};
  if (parse.count(code)) return DiagnosticClass::Parse;
  if (signature.count(code)) return DiagnosticClass::Signature;
  return DiagnosticClass::Type;
}

int exit_code_for(const std::vector<Diagnostic>& diags) {
  int code = 0;
  for (const auto& d : diags) {
    if (d.severity != Severity::Error) continue;
    switch (classify(d.code)) {
      case DiagnosticClass::Parse:
        return 2;
      case DiagnosticClass::Signature:
        code = 3;
        break;
      case DiagnosticClass::Type:
        if (code == 0) code = 1;
        break;
    }
  }
  return code;
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.span.line, a.span.col, a.span.length,
                                     a.code, a.message) <
                            std::tie(b.span.line, b.span.col, b.span.length,
                                     b.code, b.message);
                   });
}

}  // namespace sortc
