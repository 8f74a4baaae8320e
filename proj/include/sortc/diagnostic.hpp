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

#ifndef SORTC_DIAGNOSTIC_HPP_
#define SORTC_DIAGNOSTIC_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sortc/syntax.hpp"

namespace sortc {

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  SourceLoc span;
  /** Ordered key/value payload, e.g. a residual pattern or a witness. */
  std::vector<std::pair<std::string, std::string>> extra;

  const std::string* find_extra(const std::string& key) const;
};

Diagnostic make_diagnostic(std::string code, std::string message,
                           SourceLoc span = {});

/** Which pipeline stage a diagnostic code belongs to. */
enum class DiagnosticClass { Parse, Signature, Type };

DiagnosticClass classify(const std::string& code);

/** Process exit status implied by a diagnostic list: 0, 1, 2 or 3. */
int exit_code_for(const std::vector<Diagnostic>& diags);

/** Stable order: by span, then by code, then by message. */
void sort_diagnostics(std::vector<Diagnostic>& diags);

/** Raised on violated preconditions, e.g. an ill-shaped scrutiny. */
class Error : public std::runtime_error {
 public:
  explicit Error(Diagnostic d)
      : std::runtime_error(d.code + ": " + d.message), diag_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

}  // namespace sortc

#endif  // SORTC_DIAGNOSTIC_HPP_
