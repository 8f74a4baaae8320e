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

#include "sortc/subtyping.hpp"

#include <map>
#include <utility>

namespace sortc {
namespace {

class Subtyper {
 public:
  explicit Subtyper(const SigEnv& env) : env_(env) {}

  bool run(const Type& a, const Type& b) {
    auto key = std::make_pair(a.identity(), b.identity());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = decide(a, b);
    memo_.emplace(key, r);
    return r;
  }

 private:
  bool decide(const Type& a, const Type& b) {
    if (auto r = b.as<Type::Intersect>())
      return run(a, r->left) && run(a, r->right);
    if (auto l = a.as<Type::Intersect>())
      return run(l->left, b) || run(l->right, b);
    if (a.as<Type::Unit>()) return b.as<Type::Unit>() != nullptr;
    if (auto s = a.as<Type::Sort>()) {
      auto t = b.as<Type::Sort>();
      return t && env_.subsort(s->name, t->name);
    }
    if (auto p = a.as<Type::Prod>()) {
      auto q = b.as<Type::Prod>();
      return q && run(p->left, q->left) && run(p->right, q->right);
    }
    auto f = a.as<Type::Arrow>();
    auto g = b.as<Type::Arrow>();
    if (!g) return false;
    bool dom = env_.mode() == SubtypeMode::CovariantArrowMutant
                   ? run(f->dom, g->dom)
                   : run(g->dom, f->dom);
    return dom && run(f->cod, g->cod);
  }

  const SigEnv& env_;
  // Keys are node addresses; both inputs outlive the query.
  std::map<std::pair<const void*, const void*>, bool> memo_;
};

}  // namespace

bool subtype(const SigEnv& env, const Type& a, const Type& b) {
  return Subtyper(env).run(a, b);
}

bool subtype(const Signature& sig, const Type& a, const Type& b) {
  return subtype(SigEnv(sig), a, b);
}

}  // namespace sortc
