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

#include "sortc/typecheck.hpp"

#include <set>

#include "sortc/patterns.hpp"
#include "sortc/subtyping.hpp"

namespace sortc {
namespace {

std::vector<Diagnostic> one(std::string code, std::string message,
                            const SourceLoc& loc) {
  return {make_diagnostic(std::move(code), std::move(message), loc)};
}

void add_projections(const Type& a, std::vector<Type>& out) {
  bool seen = false;
  for (const auto& t : out) seen = seen || t == a;
  if (!seen) out.push_back(a);
  if (auto i = a.as<Type::Intersect>()) {
    add_projections(i->left, out);
    add_projections(i->right, out);
  }
}

std::vector<Type> close_projections(const std::vector<Type>& in) {
  std::vector<Type> out;
  for (const auto& a : in) add_projections(a, out);
  return out;
}

std::optional<Name> duplicate_var(const Pattern& p) {
  std::set<Name> seen;
  for (const auto& x : pattern_vars(p))
    if (!seen.insert(x).second) return x;
  return std::nullopt;
}

}  // namespace

CheckSession::CheckSession(UnrefinedSignature ursig, Signature sig,
                           CheckOptions options)
    : ursig_(std::move(ursig)),
      env_(std::make_shared<SigEnv>(std::move(sig), options.mode)),
      options_(options) {}

std::vector<CtorTyping> CheckSession::ctor_types(const Name& c) const {
  return env_->typings_of(c);
}

CheckOutcome CheckSession::check(const Context& gamma, const Expr& e,
                                 const Type& a) {
  return CheckOutcome{check_in(env_, gamma, e, a)};
}

SynthOutcome CheckSession::synth(const Context& gamma, const Expr& e) {
  return synth_in(env_, gamma, e);
}

CheckOutcome CheckSession::check_matches(const Context& gamma, const Type& a,
                                         const Pattern& residual,
                                         const Matches& ms, const Type& d) {
  return CheckOutcome{matches_in(env_, gamma, a, residual, ms, d, {})};
}

CheckSession::MemoKey CheckSession::memo_key(const Env& env, const Context& g,
                                             const Expr& e,
                                             const std::string& type_text) {
  return MemoKey{env.get(), e.identity(), print_context(g), type_text};
}

CheckSession::Diags CheckSession::check_in(const Env& env, const Context& g,
                                           const Expr& e, const Type& a) {
  if (!options_.memoize) return check_uncached(env, g, e, a);
  MemoKey key = memo_key(env, g, e, print_type(a));
  if (auto it = check_memo_.find(key); it != check_memo_.end())
    return it->second;
  Diags r = check_uncached(env, g, e, a);
  pinned_.push_back(env);
  pinned_.push_back(e.shared());
  check_memo_.emplace(std::move(key), r);
  return r;
}

CheckSession::Diags CheckSession::check_uncached(const Env& env,
                                                 const Context& g,
                                                 const Expr& e,
                                                 const Type& a) {
  const SourceLoc& loc = e.loc();
  auto mismatch = [&](const std::string& rule) {
    return one("TYPE_MISMATCH",
               rule + ": " + print_expr(e) + " does not check against " +
                   print_type(a),
               loc);
  };

  if (auto i = a.as<Type::Intersect>(); i && is_value(e)) {
    Diags l = check_in(env, g, e, i->left);
    if (!l.empty()) return l;
    return check_in(env, g, e, i->right);
  }

  if (auto lam = e.as<Expr::Lam>()) {
    auto arr = a.as<Type::Arrow>();
    if (!arr) return mismatch("ChkArrI");
    Context inner = g;
    inner.push(lam->var, arr->dom);
    return check_in(env, inner, lam->body, arr->cod);
  }

  if (auto pair = e.as<Expr::Pair>()) {
    auto prod = a.as<Type::Prod>();
    if (!prod) return mismatch("ChkProdI");
    Diags l = check_in(env, g, pair->left, prod->left);
    if (!l.empty()) return l;
    return check_in(env, g, pair->right, prod->right);
  }

  if (e.is<Expr::Unit>()) {
    if (!a.as<Type::Unit>()) return mismatch("ChkUnitI");
    return {};
  }

  if (auto c = e.as<Expr::Ctor>()) {
    auto s = a.as<Type::Sort>();
    if (!s) return mismatch("ChkDataI");
    std::optional<Diags> first_failure;
    for (const auto& k : env->typings()) {
      if (k.ctor != c->ctor || !env->subsort(k.result, s->name)) continue;
      Diags r = check_in(env, g, c->arg, k.arg);
      if (r.empty()) return r;
      if (!first_failure) first_failure = std::move(r);
    }
    if (first_failure) return *first_failure;
    return one("NO_CTOR_TYPING",
               "ChkDataI: no typing of " + c->ctor + " produces a subsort of " +
                   s->name,
               loc);
  }

  if (auto cs = e.as<Expr::Case>()) {
    SynthOutcome scrut = synth_in(env, g, cs->scrutinee);
    if (!scrut.ok()) return scrut.errors;
    std::optional<Diags> chosen;
    for (const auto& b : scrut.types) {
      Diags r = matches_in(env, g, b, Pattern::wild(), cs->arms, a, loc);
      if (r.empty()) return r;
      bool shape = r.size() == 1 && r.front().code == "ILLTYPED_SCRUTINY";
      if (!chosen || (!shape && chosen->front().code == "ILLTYPED_SCRUTINY"))
        chosen = std::move(r);
    }
    return *chosen;
  }

  if (auto d = e.as<Expr::Declare>()) {
    Diags sig = check_extension(env->signature(), d->ext, ursig_);
    if (!sig.empty()) return sig;
    if (!type_wf(*env, a))
      return one("SCOPE_ESCAPE",
                 "ChkDeclare: type " + print_type(a) +
                     " mentions a sort declared inside the extension",
                 loc);
    return check_in(env->extend(d->ext), g, d->body, a);
  }

  SynthOutcome syn = synth_in(env, g, e);
  if (!syn.ok()) return syn.errors;
  for (const auto& b : syn.types)
    if (subtype(*env, b, a)) return {};
  return one("TYPE_MISMATCH",
             "ChkSub: " + print_expr(e) + " synthesizes " +
                 print_type(syn.types.front()) + ", which is not a subtype of " +
                 print_type(a),
             loc);
}

SynthOutcome CheckSession::synth_in(const Env& env, const Context& g,
                                    const Expr& e) {
  if (!options_.memoize) return synth_uncached(env, g, e);
  MemoKey key = memo_key(env, g, e, "");
  if (auto it = synth_memo_.find(key); it != synth_memo_.end())
    return it->second;
  SynthOutcome r = synth_uncached(env, g, e);
  pinned_.push_back(env);
  pinned_.push_back(e.shared());
  synth_memo_.emplace(std::move(key), r);
  return r;
}

SynthOutcome CheckSession::synth_uncached(const Env& env, const Context& g,
                                          const Expr& e) {
  const SourceLoc& loc = e.loc();
  SynthOutcome out;

  if (auto v = e.as<Expr::Var>()) {
    const Type* a = g.lookup(v->name);
    if (!a) {
      out.errors = one("UNBOUND_VAR",
                       "SynVar: variable '" + v->name + "' is not bound", loc);
      return out;
    }
    out.types = close_projections({*a});
    return out;
  }

  if (auto an = e.as<Expr::Anno>()) {
    std::vector<Type> found;
    std::optional<Diags> first_failure;
    for (const auto& a : an->types) {
      if (!type_wf(*env, a)) {
        out.errors = one("BAD_TYPE",
                         "SynAnno: annotation " + print_type(a) +
                             " is not a well-formed type here",
                         loc);
        return out;
      }
      Diags r = check_in(env, g, an->body, a);
      if (r.empty())
        found.push_back(a);
      else if (!first_failure)
        first_failure = std::move(r);
    }
    if (found.empty()) {
      out.errors = std::move(*first_failure);
      return out;
    }
    out.types = close_projections(found);
    return out;
  }

  if (auto app = e.as<Expr::App>()) {
    SynthOutcome fn = synth_in(env, g, app->fn);
    if (!fn.ok()) return fn;
    std::vector<Type> found;
    std::optional<Diags> first_failure;
    bool any_arrow = false;
    for (const auto& f : fn.types) {
      auto arr = f.as<Type::Arrow>();
      if (!arr) continue;
      any_arrow = true;
      Diags r = check_in(env, g, app->arg, arr->dom);
      if (r.empty())
        found.push_back(arr->cod);
      else if (!first_failure)
        first_failure = std::move(r);
    }
    if (!any_arrow) {
      out.errors = one("TYPE_MISMATCH",
                       "SynArrE: " + print_expr(app->fn) + " synthesizes " +
                           print_type(fn.types.front()) +
                           ", which is not a function type",
                       loc);
      return out;
    }
    if (found.empty()) {
      out.errors = std::move(*first_failure);
      return out;
    }
    out.types = close_projections(found);
    return out;
  }

  out.errors = one("NO_SYNTH",
                   "SynAnno: " + print_expr(e) +
                       " needs a type annotation to synthesize a type",
                   loc);
  return out;
}

CheckSession::Diags CheckSession::matches_in(const Env& env, const Context& g,
                                             const Type& a, Pattern residual,
                                             const Matches& ms, const Type& d,
                                             const SourceLoc& loc) {
  auto tau = refined_type(*env, a);
  if (!tau)
    return one("TYPE_MISMATCH",
               "TypeMs: scrutinee type " + print_type(a) +
                   " refines no unrefined type",
               loc);
  CoverageRecord record{loc, a, {}, residual, false};
  try {
    for (const auto& arm : ms) {
      SourceLoc arm_loc = arm.body.loc();
      if (!pat_type(ursig_, arm.pattern, *tau))
        return one("TYPE_MISMATCH",
                   "TypeMs: pattern " + print_pattern(arm.pattern) +
                       " does not fit values of " + print_utype(*tau),
                   arm_loc);
      if (auto x = duplicate_var(arm.pattern))
        return one("DUP_PATVAR",
                   "TypeMs: variable '" + *x + "' is bound twice in " +
                       print_pattern(arm.pattern),
                   arm_loc);
      auto tracks =
          intersect(*env, a, pat_intersect(residual, arm.pattern));
      if (options_.optimize_tracks) tracks = optimize_tracks(*env, tracks);
      record.arms.push_back({arm.pattern, tracks});
      for (const auto& t : tracks) {
        Diags r = check_in(env, g.extended(t.bindings), arm.body, d);
        if (!r.empty()) return r;
      }
      residual = normalize(
          pat_intersect(residual, complement(ursig_, *tau, arm.pattern)));
    }
    auto rest = intersect(*env, a, residual);
    record.residual = residual;
    record.exhaustive = rest.empty();
    if (coverage_) coverage_->push_back(record);
    if (rest.empty()) return {};
    Diagnostic diag = make_diagnostic(
        "NONEXHAUSTIVE",
        "TypeMsEmpty: values of " + print_type(a) +
            " matching " + print_pattern(residual) + " are not covered",
        loc);
    diag.extra.emplace_back("residual", print_pattern(residual));
    if (auto w = find_witness(*env, a, residual))
      diag.extra.emplace_back("witness", print_expr(*w));
    return {diag};
  } catch (const Error& err) {
    Diagnostic diag = err.diagnostic();
    diag.span = loc;
    return {diag};
  }
}

ProgramOutcome check_program(const Program& prog,
                             const std::optional<Type>& goal,
                             CheckOptions options, CoverageLog* coverage) {
  ProgramOutcome out;
  out.diagnostics = ursig_wf(prog.ursig);
  auto sig = sig_wf(prog.sig, prog.ursig);
  out.diagnostics.insert(out.diagnostics.end(), sig.begin(), sig.end());
  if (!out.diagnostics.empty()) {
    sort_diagnostics(out.diagnostics);
    return out;
  }
  CheckSession session(prog.ursig, prog.sig, options);
  session.set_coverage_log(coverage);
  if (goal) {
    if (!type_wf(session.env(), *goal)) {
      out.diagnostics = one("BAD_TYPE",
                            "goal " + print_type(*goal) +
                                " is not a well-formed type here",
                            prog.main.loc());
      return out;
    }
    out.diagnostics = session.check({}, prog.main, *goal).errors;
    if (out.diagnostics.empty()) out.type = goal;
  } else {
    SynthOutcome syn = session.synth({}, prog.main);
    out.diagnostics = syn.errors;
    if (syn.ok()) out.type = syn.types.front();
  }
  sort_diagnostics(out.diagnostics);
  return out;
}

}  // namespace sortc
