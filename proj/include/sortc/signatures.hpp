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

#ifndef SORTC_SIGNATURES_HPP_
#define SORTC_SIGNATURES_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sortc/diagnostic.hpp"
#include "sortc/syntax.hpp"

namespace sortc {

/** Reflexive-transitive subsort relation over the declared sorts. */
class SubsortClosure {
 public:
  SubsortClosure() = default;

  /** Builds the closure; edges naming undeclared sorts are skipped. */
  static SubsortClosure lenient(const Signature& sig);

  bool contains(const Name& s) const { return index_.count(s) > 0; }
  bool holds(const Name& sub, const Name& sup) const;
  const std::vector<Name>& sorts() const { return sorts_; }
  /** All pairs (s, t) with s below t, in declaration order. */
  std::vector<std::pair<Name, Name>> pairs() const;

 private:
  std::vector<Name> sorts_;
  std::map<Name, std::size_t> index_;
  std::vector<std::vector<bool>> reach_;
};

/** Sorts in declaration order. */
std::vector<Name> dom(const Signature& sig);

/** Throws Error(UNDECLARED_SORT) if an edge mentions a sort outside dom. */
SubsortClosure subsort_closure(const Signature& sig);

struct CtorTyping {
  Name ctor;
  Type arg;
  Name result;

  friend bool operator==(const CtorTyping&, const CtorTyping&) = default;
};

enum class SubtypeMode {
  Standard,
  /** Arrow domains compared covariantly; used only to test the harness. */
  CovariantArrowMutant,
};

/**
 * A signature together with its derived tables: the subsort closure,
 * each sort's datatype and the flattened constructor typings.
 */
class SigEnv {
 public:
  explicit SigEnv(Signature sig, SubtypeMode mode = SubtypeMode::Standard);

  /** Environment for this signature followed by `ext`. */
  std::shared_ptr<const SigEnv> extend(const Signature& ext) const;

  const Signature& signature() const { return sig_; }
  const SubsortClosure& closure() const { return closure_; }
  SubtypeMode mode() const { return mode_; }
  bool has_sort(const Name& s) const { return refines_.count(s) > 0; }
  const Name* datatype_of(const Name& s) const;
  bool subsort(const Name& s, const Name& t) const {
    return closure_.holds(s, t);
  }
  const std::vector<CtorTyping>& typings() const { return typings_; }
  std::vector<CtorTyping> typings_of(const Name& c) const;

 private:
  Signature sig_;
  SubtypeMode mode_;
  SubsortClosure closure_;
  std::map<Name, Name> refines_;
  std::vector<CtorTyping> typings_;
};

/** The unique τ with A ⊏ τ, if any. */
std::optional<UType> refined_type(const SigEnv& env, const Type& a);
bool refines(const SigEnv& env, const Type& a, const UType& tau);
bool refines(const Signature& sig, const Type& a, const UType& tau);

bool type_wf(const SigEnv& env, const Type& a);
bool type_wf(const Signature& sig, const Type& a);

/** Empty when the typing is well-formed; otherwise the reason. */
std::optional<Diagnostic> contype_problem(const SigEnv& env,
                                          const UnrefinedSignature& ursig,
                                          const Name& c, const Type& arg,
                                          const Name& result);
bool contype_wf(const Signature& sig, const Name& c, const Type& arg,
                const Name& result, const UnrefinedSignature& ursig);

bool safe_con_at(const Signature& prefix, const Block& block, const Name& c,
                 const Type& arg, const Name& result, const Name& t);
bool block_elem_ok(const Signature& prefix, const Block& block,
                   const BlockItem& item, const UnrefinedSignature& ursig);

/** All violations across all blocks; empty means well-formed. */
std::vector<Diagnostic> sig_wf(const Signature& sig,
                               const UnrefinedSignature& ursig);
/** Checks only the blocks of `ext`, each against everything before it. */
std::vector<Diagnostic> check_extension(const Signature& base,
                                        const Signature& ext,
                                        const UnrefinedSignature& ursig);

/** Violations of the unrefined signature's own invariants. */
std::vector<Diagnostic> ursig_wf(const UnrefinedSignature& ursig);

}  // namespace sortc

#endif  // SORTC_SIGNATURES_HPP_
