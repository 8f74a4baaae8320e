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

#ifndef SORTC_PATTERNS_HPP_
#define SORTC_PATTERNS_HPP_

#include <optional>
#include <vector>

#include "sortc/signatures.hpp"
#include "sortc/syntax.hpp"

namespace sortc {

/** Whether p is suitable for values of unrefined type tau. */
bool pat_type(const UnrefinedSignature& ursig, const Pattern& p,
              const UType& tau);

/**
 * A pattern matching exactly the values of tau that p rejects.
 * Never produces as-bindings. Throws Error(ILLTYPED_PATTERN) if p does
 * not fit tau.
 */
Pattern complement(const UnrefinedSignature& ursig, const UType& tau,
                   const Pattern& p);

/** A pattern matching the values both inputs match. */
Pattern pat_intersect(const Pattern& p1, const Pattern& p2);

/** Flattens or-patterns and prunes branches no value can match. */
Pattern normalize(const Pattern& p);

/** Matching substitution for a closed value, if p matches it. */
std::optional<Substitution> match_value(const Pattern& p, const Expr& v);

/**
 * Tracks for the values of type a that match p, in signature order.
 * Throws Error(ILLTYPED_SCRUTINY) when a's shape cannot face p.
 */
std::vector<Track> intersect(const SigEnv& env, const Type& a,
                             const Pattern& p);

/** Drops tracks whose bindings are pointwise below a retained track's. */
std::vector<Track> optimize_tracks(const SigEnv& env,
                                   std::vector<Track> tracks);

/** Whether closed first-order value v inhabits a (arrows never do). */
bool inhabits(const SigEnv& env, const Type& a, const Expr& v);

/**
 * First-order closed values of a with exactly `size` nodes, built from
 * the constructor typings. Arrow types yield nothing.
 */
std::vector<Expr> values_of_size(const SigEnv& env, const Type& a,
                                 std::size_t size);

/** Smallest value of a (by size, up to max_size) that matches p. */
std::optional<Expr> find_witness(const SigEnv& env, const Type& a,
                                 const Pattern& p, std::size_t max_size = 5);

}  // namespace sortc

#endif  // SORTC_PATTERNS_HPP_
