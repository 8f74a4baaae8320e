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
#include <gtest/gtest.h>

#include "sortc/oracles.hpp"
#include "sortc/subtyping.hpp"
#include "support.hpp"

namespace sortc {
namespace {

using test::T;

struct Subtyping : ::testing::Test {
  Program bits = test::program(test::kBits);
  SigEnv env{bits.sig};
};

TEST_F(Subtyping, SortBelowItsSupersort) {
  EXPECT_TRUE(subtype(env, T("even"), T("bits_s")));
  EXPECT_FALSE(subtype(env, T("bits_s"), T("even")));
}

TEST_F(Subtyping, IntersectionProjects) {
  EXPECT_TRUE(subtype(env, T("(even -> odd) & (odd -> even)"), T("odd -> even")));
  EXPECT_TRUE(subtype(env, T("(even -> odd) & (odd -> even)"), T("even -> odd")));
}

TEST_F(Subtyping, ArrowsAreContravariantInTheDomain) {
  EXPECT_TRUE(subtype(env, T("bits_s -> even"), T("odd -> bits_s")));
  EXPECT_FALSE(subtype(env, T("odd -> odd"), T("bits_s -> odd")));
}

TEST_F(Subtyping, CovariantMutantAcceptsTheWrongDirection) {
  SigEnv mutant(bits.sig, SubtypeMode::CovariantArrowMutant);
  EXPECT_TRUE(subtype(mutant, T("odd -> odd"), T("bits_s -> odd")));
}

TEST_F(Subtyping, RightIntersectionNeedsBothArms) {
  EXPECT_TRUE(subtype(env, T("even & odd"), T("even & odd")));
  EXPECT_FALSE(subtype(env, T("even"), T("even & odd")));
  EXPECT_TRUE(subtype(env, T("even & odd"), T("bits_s & odd")));
}

TEST_F(Subtyping, Products) {
  EXPECT_TRUE(subtype(env, T("even * odd"), T("bits_s * bits_s")));
  EXPECT_FALSE(subtype(env, T("even * bits_s"), T("bits_s * odd")));
  EXPECT_TRUE(subtype(env, T("unit"), T("unit")));
}

TEST_F(Subtyping, AgreesWithReferenceOnTypePools) {
  NaiveClosure n(bits.sig);
  std::vector<Type> pool;
  for (const char* a : {"even", "odd", "bits_s", "even & odd", "bits_s & odd"})
    pool.push_back(T(a));
  std::vector<Type> arrows;
  for (const auto& a : pool)
    for (const auto& b : pool) arrows.push_back(Type::arrow(a, b));
  arrows.push_back(T("(even -> odd) & (odd -> even)"));
  for (const auto* set : {&pool, &arrows})
    for (const auto& a : *set)
      for (const auto& b : *set)
        EXPECT_EQ(subtype(env, a, b), reference_subtype(n, a, b))
            << print_type(a) << " <= " << print_type(b);
}

TEST_F(Subtyping, ReflexiveAndTransitiveOnPool) {
  std::vector<Type> ts;
  for (const char* a : {"even", "odd", "bits_s", "even & odd"})
    for (const char* b : {"even", "odd", "bits_s"})
      ts.push_back(Type::arrow(T(a), T(b)));
  for (const auto& a : ts) {
    EXPECT_TRUE(subtype(env, a, a));
    for (const auto& b : ts)
      for (const auto& c : ts)
        if (subtype(env, a, b) && subtype(env, b, c))
          EXPECT_TRUE(subtype(env, a, c));
  }
}

}  // namespace
}  // namespace sortc
