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

#ifndef SORTC_EVAL_HPP_
#define SORTC_EVAL_HPP_

#include <cstddef>
#include <functional>
#include <optional>

#include "sortc/syntax.hpp"

namespace sortc {

/**
 * Called when a `declare` is discarded; may rewrite the body, e.g. to
 * rename the sorts it declared. Receives the extension and the body.
 */
using DeclareHook = std::function<Expr(const Signature&, const Expr&)>;

struct StepOptions {
  DeclareHook on_declare;
};

/** One call-by-value step, or nothing for values and stuck terms. */
std::optional<Expr> step(const Expr& e, const StepOptions& opts = {});

/** Body of the first arm matching v, with the match applied. */
std::optional<Expr> step_matches(const Matches& ms, const Expr& v);

enum class EvalStatus { Value, Stuck, OutOfFuel };

struct EvalResult {
  EvalStatus status;
  Expr term;
  std::size_t steps;
};

enum class AnnotationMode {
  /** Annotations stay in the term and are dropped on elimination. */
  Keep,
  /** All annotations are erased before the first step. */
  Erase,
};

EvalResult eval(const Expr& e, std::size_t fuel,
                AnnotationMode mode = AnnotationMode::Keep,
                const StepOptions& opts = {});

const char* status_name(EvalStatus s);

}  // namespace sortc

#endif  // SORTC_EVAL_HPP_
