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

#include "sortc/eval.hpp"

#include "sortc/patterns.hpp"

namespace sortc {
namespace {

Expr unwrap(Expr v) {
  while (auto a = v.as<Expr::Anno>()) v = a->body;
  return v;
}

}  // namespace

std::optional<Expr> step_matches(const Matches& ms, const Expr& v) {
  for (const auto& arm : ms)
    if (auto theta = match_value(arm.pattern, v))
      return subst(*theta, arm.body);
  return std::nullopt;
}

std::optional<Expr> step(const Expr& e, const StepOptions& opts) {
  if (is_value(e)) return std::nullopt;
  const SourceLoc& loc = e.loc();

  if (auto app = e.as<Expr::App>()) {
    if (!is_value(app->fn)) {
      auto f = step(app->fn, opts);
      if (!f) return std::nullopt;
      return Expr::app(*f, app->arg, loc);
    }
    if (!is_value(app->arg)) {
      auto a = step(app->arg, opts);
      if (!a) return std::nullopt;
      return Expr::app(app->fn, *a, loc);
    }
    auto lam = unwrap(app->fn).as<Expr::Lam>();
    if (!lam) return std::nullopt;
    return subst(Substitution{{lam->var, app->arg}}, lam->body);
  }

  if (auto c = e.as<Expr::Ctor>()) {
    auto a = step(c->arg, opts);
    if (!a) return std::nullopt;
    return Expr::ctor(c->ctor, *a, loc);
  }

  if (auto p = e.as<Expr::Pair>()) {
    if (!is_value(p->left)) {
      auto l = step(p->left, opts);
      if (!l) return std::nullopt;
      return Expr::pair(*l, p->right, loc);
    }
    auto r = step(p->right, opts);
    if (!r) return std::nullopt;
    return Expr::pair(p->left, *r, loc);
  }

  if (auto cs = e.as<Expr::Case>()) {
    if (!is_value(cs->scrutinee)) {
      auto s = step(cs->scrutinee, opts);
      if (!s) return std::nullopt;
      return Expr::case_(*s, cs->arms, loc);
    }
    return step_matches(cs->arms, cs->scrutinee);
  }

  if (auto d = e.as<Expr::Declare>()) {
    if (opts.on_declare) return opts.on_declare(d->ext, d->body);
    return d->body;
  }

  if (auto an = e.as<Expr::Anno>()) {
    auto b = step(an->body, opts);
    if (!b) return std::nullopt;
    return Expr::anno(*b, an->types, loc);
  }

  return std::nullopt;
}

EvalResult eval(const Expr& e, std::size_t fuel, AnnotationMode mode,
                const StepOptions& opts) {
  Expr cur = mode == AnnotationMode::Erase ? erase(e) : e;
  std::size_t steps = 0;
  while (true) {
    if (is_value(cur)) return {EvalStatus::Value, cur, steps};
    if (steps == fuel) return {EvalStatus::OutOfFuel, cur, steps};
    auto next = step(cur, opts);
    if (!next) return {EvalStatus::Stuck, cur, steps};
    cur = *next;
    ++steps;
  }
}

const char* status_name(EvalStatus s) {
  switch (s) {
    case EvalStatus::Value:
      return "value";
    case EvalStatus::Stuck:
      return "stuck";
    case EvalStatus::OutOfFuel:
      return "out_of_fuel";
  }
  return "unknown";
}

}  // namespace sortc
