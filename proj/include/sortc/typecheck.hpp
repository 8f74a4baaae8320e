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

#ifndef SORTC_TYPECHECK_HPP_
#define SORTC_TYPECHECK_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sortc/diagnostic.hpp"
#include "sortc/signatures.hpp"
#include "sortc/surface.hpp"
#include "sortc/syntax.hpp"

namespace sortc {

struct CheckOptions {
  bool optimize_tracks = false;
  bool memoize = true;
  SubtypeMode mode = SubtypeMode::Standard;
};

struct CheckOutcome {
  std::vector<Diagnostic> errors;
  bool ok() const { return errors.empty(); }
};

struct SynthOutcome {
  /** Candidates in backtracking order, closed under intersection projection. */
  std::vector<Type> types;
  /** Why nothing was synthesized; empty whenever `types` is non-empty. */
  std::vector<Diagnostic> errors;
  bool ok() const { return !types.empty(); }
};

/** What the checker saw at one case expression under one scrutinee type. */
struct CoverageRecord {
  struct ArmTracks {
    Pattern pattern;
    std::vector<Track> tracks;
  };
  SourceLoc loc;
  Type scrutinee;
  std::vector<ArmTracks> arms;
  Pattern residual;
  bool exhaustive;
};

using CoverageLog = std::vector<CoverageRecord>;

/** Checker state for one program: signatures, options and memo tables. */
class CheckSession {
 public:
  CheckSession(UnrefinedSignature ursig, Signature sig,
               CheckOptions options = {});

  const UnrefinedSignature& ursig() const { return ursig_; }
  const SigEnv& env() const { return *env_; }
  const CheckOptions& options() const { return options_; }

  /** Every declared typing of c, in signature order. */
  std::vector<CtorTyping> ctor_types(const Name& c) const;

  CheckOutcome check(const Context& gamma, const Expr& e, const Type& a);
  SynthOutcome synth(const Context& gamma, const Expr& e);
  CheckOutcome check_matches(const Context& gamma, const Type& a,
                             const Pattern& residual, const Matches& ms,
                             const Type& d);

  /** Cases are recorded here while set; pass nullptr to stop. */
  void set_coverage_log(CoverageLog* log) { coverage_ = log; }

 private:
  using Env = std::shared_ptr<const SigEnv>;
  using Diags = std::vector<Diagnostic>;

  Diags check_in(const Env& env, const Context& g, const Expr& e,
                 const Type& a);
  Diags check_uncached(const Env& env, const Context& g, const Expr& e,
                       const Type& a);
  SynthOutcome synth_in(const Env& env, const Context& g, const Expr& e);
  SynthOutcome synth_uncached(const Env& env, const Context& g,
                              const Expr& e);
  Diags matches_in(const Env& env, const Context& g, const Type& a,
                   Pattern residual, const Matches& ms, const Type& d,
                   const SourceLoc& loc);

  using MemoKey = std::tuple<const void*, const void*, std::string, std::string>;
  MemoKey memo_key(const Env& env, const Context& g, const Expr& e,
                   const std::string& type_text);

  UnrefinedSignature ursig_;
  Env env_;
  CheckOptions options_;
  CoverageLog* coverage_ = nullptr;
  std::map<MemoKey, Diags> check_memo_;
  std::map<MemoKey, SynthOutcome> synth_memo_;
  // Keeps memo key addresses from being reused by later allocations.
  std::vector<std::shared_ptr<const void>> pinned_;
};

struct ProgramOutcome {
  std::vector<Diagnostic> diagnostics;
  /** The checked goal, or the first synthesized type. */
  std::optional<Type> type;
  bool ok() const { return diagnostics.empty(); }
};

/** Signature checks first; typechecking is skipped if they fail. */
ProgramOutcome check_program(const Program& prog,
                             const std::optional<Type>& goal,
                             CheckOptions options = {},
                             CoverageLog* coverage = nullptr);

}  // namespace sortc

#endif  // SORTC_TYPECHECK_HPP_
