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

#ifndef SORTC_ORACLES_HPP_
#define SORTC_ORACLES_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sortc/signatures.hpp"
#include "sortc/syntax.hpp"
#include "sortc/typecheck.hpp"

namespace sortc {

// ---------------------------------------------------------------------------
// Reference relations, written independently of the checker's.

/** Subsort pairs by naive fixpoint iteration over the declared edges. */
class NaiveClosure {
 public:
  explicit NaiveClosure(const Signature& sig);
  bool holds(const Name& s, const Name& t) const;
  const std::vector<Name>& sorts() const { return sorts_; }

 private:
  std::vector<Name> sorts_;
  std::map<Name, std::size_t> index_;
  std::vector<std::vector<char>> rel_;
};

/** A <= B read off the declarative rules, over a NaiveClosure. */
bool reference_subtype(const NaiveClosure& c, const Type& a, const Type& b);

// ---------------------------------------------------------------------------
// Values.

/** Closed values of a with at most max_size nodes that check against a. */
std::vector<Expr> enum_values(CheckSession& session, const Type& a,
                              std::size_t max_size);

/** Whether theta gives each variable of gamma a closed term of its type. */
bool substitution_checks(CheckSession& session, const Substitution& theta,
                         const Context& gamma);

// ---------------------------------------------------------------------------
// Declarative typing by bounded search.

enum class Tri { No, Yes, Unknown };
const char* tri_name(Tri t);

struct OracleVerdict {
  Tri verdict = Tri::Unknown;
  /** On yes: the term with annotations that let the checker succeed. */
  std::optional<Expr> annotated;
};

/**
 * Searches for a type assignment derivation of an annotation-free term.
 * Arrow-typed guesses come from a depth-bounded universe, so a failed
 * search that needed one answers unknown rather than no.
 */
class DeclarativeOracle {
 public:
  DeclarativeOracle(UnrefinedSignature ursig, Signature sig,
                    int type_depth = 2, std::size_t budget = 200000);
  ~DeclarativeOracle();

  OracleVerdict typable(const Context& gamma, const Expr& e, const Type& a);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Tri declarative_typable(const CheckSession& session, const Context& gamma,
                        const Expr& e, const Type& a, int depth);

/** Unrefined type of every node of e, or nothing if e has none at tau. */
std::optional<std::map<const void*, UType>> infer_unrefined(
    const UnrefinedSignature& ursig,
    const std::vector<std::pair<Name, UType>>& gamma, const Expr& e,
    const UType& tau);

// ---------------------------------------------------------------------------
// Generators.

struct GenBounds {
  int max_blocks = 4;
  int max_sorts = 6;
  int max_ctor_typings = 6;
  int term_depth = 3;
  std::size_t max_term_size = 14;
  int attempts = 40;
};

using Rng = std::mt19937_64;

/** Datatypes shared by all generated signatures. */
UnrefinedSignature generator_ursig();

struct GeneratedSignature {
  Signature sig;
  std::vector<Diagnostic> diagnostics;  // sig_wf verdict
  bool accepted() const { return diagnostics.empty(); }
};

GeneratedSignature gen_signature(std::uint64_t seed,
                                 const GenBounds& bounds = {});

/** Blocks after `base` whose new sorts are named `prefix` + number. */
Signature gen_extension(Rng& rng, const Signature& base,
                        const UnrefinedSignature& ursig,
                        const std::string& prefix, int blocks,
                        const GenBounds& bounds = {});

/** A well-formed type under env: sorts, unit, products, arrows, &. */
Type gen_type(Rng& rng, const SigEnv& env, int depth);
/** A type refining tau, if env has sorts for every datatype in it. */
std::optional<Type> gen_type_refining(Rng& rng, const SigEnv& env,
                                      const UType& tau, int depth);
/** A pattern suitable for tau; as-variables are fresh per pattern. */
Pattern gen_pattern(Rng& rng, const UnrefinedSignature& ursig,
                    const UType& tau, int depth);

/** A term that checks against a, built rule by rule and then re-checked. */
std::optional<Expr> gen_typed_term(std::uint64_t seed, CheckSession& session,
                                   const Type& a, const GenBounds& bounds = {});

/** Renames sorts inside declare blocks and annotations. */
Expr rename_sorts(const Expr& e, const std::map<Name, Name>& renaming);
Signature rename_sorts(const Signature& sig,
                       const std::map<Name, Name>& renaming);

}  // namespace sortc

#endif  // SORTC_ORACLES_HPP_
