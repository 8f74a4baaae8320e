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

#ifndef SORTC_SUBTYPING_HPP_
#define SORTC_SUBTYPING_HPP_

#include "sortc/signatures.hpp"
#include "sortc/syntax.hpp"

namespace sortc {

/**
 * Decides A <= B. Right intersections split first, then left
 * intersections try each arm; no transitivity search.
 */
bool subtype(const SigEnv& env, const Type& a, const Type& b);
bool subtype(const Signature& sig, const Type& a, const Type& b);

}  // namespace sortc

#endif  // SORTC_SUBTYPING_HPP_
