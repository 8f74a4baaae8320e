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

#include <algorithm>
#include <functional>

#include "sortc/oracles.hpp"
#include "sortc/patterns.hpp"
#include "sortc/subtyping.hpp"

namespace sortc {

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool chance(Rng& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

std::vector<Name> sorts_of(const SigEnv& env, const Name& d) {
  std::vector<Name> out;
  for (const auto& s : env.closure().sorts())
    if (*env.datatype_of(s) == d) out.push_back(s);
  return out;
}

UType gen_utype(Rng& rng, const UnrefinedSignature& ursig, int depth) {
  std::size_t k = depth <= 0 ? 2 : 4;
  switch (pick(rng, k + 1)) {
    case 0:
      return UType::unit();
    case 1:
    case 2:
      return UType::data(ursig.datatypes[pick(rng, ursig.datatypes.size())]);
    case 3:
      return UType::prod(gen_utype(rng, ursig, depth - 1),
                         gen_utype(rng, ursig, depth - 1));
    default:
      return UType::arrow(gen_utype(rng, ursig, depth - 1),
                          gen_utype(rng, ursig, depth - 1));
  }
}

UnrefinedSignature ursig_of(const SigEnv& env) {
  UnrefinedSignature u = generator_ursig();
  for (const auto& b : env.signature().blocks)
    for (const auto& s : b.sorts)
      if (!u.has_datatype(s.refines)) u.datatypes.push_back(s.refines);
  return u;
}

}  // namespace

UnrefinedSignature generator_ursig() {
  UnrefinedSignature u;
  u.datatypes = {"bits", "tree"};
  u.ctors = {
      {"Empty", UType::unit(), "bits"},
      {"One", UType::data("bits"), "bits"},
      {"Zero", UType::data("bits"), "bits"},
      {"Leaf", UType::unit(), "tree"},
      {"Node", UType::prod(UType::data("tree"), UType::data("tree")), "tree"},
  };
  return u;
}

std::optional<Type> gen_type_refining(Rng& rng, const SigEnv& env,
                                      const UType& tau, int depth) {
  if (tau.as<UType::Unit>()) return Type::unit();
  if (auto d = tau.as<UType::Data>()) {
    auto sorts = sorts_of(env, d->name);
    if (sorts.empty()) return std::nullopt;
    Type t = Type::sort(sorts[pick(rng, sorts.size())]);
    if (sorts.size() > 1 && chance(rng, 0.2))
      t = Type::intersect(t, Type::sort(sorts[pick(rng, sorts.size())]));
    return t;
  }
  if (auto p = tau.as<UType::Prod>()) {
    auto l = gen_type_refining(rng, env, p->left, depth - 1);
    auto r = gen_type_refining(rng, env, p->right, depth - 1);
    if (!l || !r) return std::nullopt;
    return Type::prod(*l, *r);
  }
  auto f = tau.as<UType::Arrow>();
  auto make = [&]() -> std::optional<Type> {
    auto a = gen_type_refining(rng, env, f->dom, depth - 1);
    auto b = gen_type_refining(rng, env, f->cod, depth - 1);
    if (!a || !b) return std::nullopt;
    return Type::arrow(*a, *b);
  };
  auto t = make();
  if (t && chance(rng, 0.15))
    if (auto u = make()) t = Type::intersect(*t, *u);
  return t;
}

Type gen_type(Rng& rng, const SigEnv& env, int depth) {
  UnrefinedSignature u = ursig_of(env);
  for (int i = 0; i < 20; ++i)
    if (auto t = gen_type_refining(rng, env, gen_utype(rng, u, depth), depth))
      return *t;
  return Type::unit();
}

Pattern gen_pattern(Rng& rng, const UnrefinedSignature& ursig,
                    const UType& tau, int depth) {
  int fresh = 0;
  std::function<Pattern(const UType&, int)> go = [&](const UType& t,
                                                     int d) -> Pattern {
    std::size_t roll = pick(rng, 10);
    if (d <= 0 || roll == 0) return Pattern::wild();
    if (roll == 1) return Pattern::bind("x" + std::to_string(++fresh), go(t, d - 1));
    if (roll == 2) return Pattern::or_(go(t, d - 1), go(t, d - 1));
    if (roll == 3 && chance(rng, 0.3)) return Pattern::empty();
    if (t.as<UType::Unit>()) return Pattern::unit();
    if (auto p = t.as<UType::Prod>())
      return Pattern::pair(go(p->left, d - 1), go(p->right, d - 1));
    if (auto dt = t.as<UType::Data>()) {
      auto cs = ursig.ctors_of(dt->name);
      if (cs.empty()) return Pattern::wild();
      const UCtor& c = cs[pick(rng, cs.size())];
      return Pattern::ctor(c.ctor, go(c.arg, d - 1));
    }
    return Pattern::bind("x" + std::to_string(++fresh), Pattern::wild());
  };
  return go(tau, depth);
}

Signature gen_extension(Rng& rng, const Signature& base,
                        const UnrefinedSignature& ursig,
                        const std::string& prefix, int blocks,
                        const GenBounds& bounds) {
  Signature ext;
  std::vector<std::pair<Name, Name>> known;  // (sort, datatype)
  for (const auto& b : base.blocks)
    for (const auto& s : b.sorts) known.emplace_back(s.sort, s.refines);
  int fresh = 0;
  int typings = 0;
  for (int bi = 0; bi < blocks; ++bi) {
    int room = bounds.max_sorts - static_cast<int>(known.size());
    if (room <= 0) break;
    Block block;
    std::size_t old = known.size();
    int n = 1 + static_cast<int>(pick(rng, std::min(3, room)));
    for (int i = 0; i < n; ++i) {
      Name s = prefix + std::to_string(++fresh);
      Name d = ursig.datatypes[pick(rng, ursig.datatypes.size())];
      block.sorts.push_back(SortDecl{s, d, {}});
      known.emplace_back(s, d);
    }
    auto same_type = [&](const Name& d, bool only_old) {
      std::vector<Name> out;
      std::size_t end = only_old ? old : known.size();
      for (std::size_t i = 0; i < end; ++i)
        if (known[i].second == d) out.push_back(known[i].first);
      return out;
    };
    for (std::size_t i = old; i < known.size(); ++i) {
      const auto& [s, d] = known[i];
      // Edges inside the block, and now and then to an older sort.
      for (std::size_t j = old; j < known.size(); ++j)
        if (j != i && known[j].second == d && chance(rng, 0.3))
          block.items.push_back(BlockItem{SubsortDecl{s, known[j].first}, {}});
      auto olds = same_type(d, true);
      if (!olds.empty() && chance(rng, 0.25)) {
        const Name& t = olds[pick(rng, olds.size())];
        block.items.push_back(
            BlockItem{chance(rng, 0.8) ? SubsortDecl{s, t} : SubsortDecl{t, s},
                      {}});
      }
    }
    SigEnv env(base.extended(ext).extended(Signature{{block}}));
    for (std::size_t i = old; i < known.size(); ++i) {
      const auto& [s, d] = known[i];
      for (const auto& c : ursig.ctors_of(d)) {
        if (typings >= bounds.max_ctor_typings || !chance(rng, 0.6)) continue;
        auto arg = gen_type_refining(rng, env, c.arg, 1);
        if (!arg) continue;
        block.items.push_back(BlockItem{CtorDecl{c.ctor, *arg, s}, {}});
        ++typings;
      }
    }
    ext.blocks.push_back(std::move(block));
  }
  return ext;
}

GeneratedSignature gen_signature(std::uint64_t seed, const GenBounds& bounds) {
  Rng rng(seed);
  UnrefinedSignature u = generator_ursig();
  int blocks = 1 + static_cast<int>(pick(rng, bounds.max_blocks));
  Signature sig = gen_extension(rng, Signature{}, u, "s", blocks, bounds);
  GeneratedSignature g{sig, sig_wf(sig, u)};
  return g;
}

namespace {

class TermGen {
 public:
  TermGen(Rng& rng, CheckSession& session)
      : rng_(rng), session_(session), ursig_(session.ursig()) {}

  using Env = std::shared_ptr<const SigEnv>;

  std::optional<Expr> gen(const Env& env, const Context& g, const Type& a,
                          int depth) {
    if (depth <= 0) return leaf(env, g, a);
    for (int tries = 0; tries < 6; ++tries) {
      std::optional<Expr> e;
      switch (pick(rng_, 9)) {
        case 0:
          e = variable(env, g, a);
          break;
        case 1:
        case 2:
          e = intro(env, g, a, depth);
          break;
        case 3:
          e = apply(env, g, a, depth);
          break;
        case 4:
        case 5:
          e = case_of(env, g, a, depth);
          break;
        case 6:
          e = declare(env, g, a, depth);
          break;
        case 7: {
          auto inner = gen(env, g, a, depth - 1);
          if (inner) e = Expr::anno(*inner, {a});
          break;
        }
        default:
          e = leaf(env, g, a);
      }
      if (e) return e;
    }
    return leaf(env, g, a);
  }

 private:
  std::optional<Expr> variable(const Env& env, const Context& g,
                               const Type& a) {
    std::vector<Name> hits;
    for (const auto& [x, t] : g.entries())
      if (g.lookup(x) == &t && subtype(*env, t, a)) hits.push_back(x);
    if (hits.empty()) return std::nullopt;
    return Expr::var(hits[pick(rng_, hits.size())]);
  }

  std::optional<Expr> leaf(const Env& env, const Context& g, const Type& a) {
    if (auto v = variable(env, g, a); v && chance(rng_, 0.5)) return v;
    if (auto f = a.as<Type::Arrow>()) {
      Name x = fresh();
      Context inner = g;
      inner.push(x, f->dom);
      auto body = leaf(env, inner, f->cod);
      if (!body) return std::nullopt;
      return Expr::lam(x, *body);
    }
    if (a.is_intersect()) {
      auto vs = enum_values(session_, a, 4);
      if (!vs.empty()) return vs[pick(rng_, vs.size())];
    }
    for (std::size_t size = 1; size <= 5; ++size) {
      auto vs = values_of_size(*env, a, size);
      if (!vs.empty() && (size == 5 || chance(rng_, 0.6)))
        return vs[pick(rng_, vs.size())];
    }
    return variable(env, g, a);
  }

  std::optional<Expr> intro(const Env& env, const Context& g, const Type& a,
                            int depth) {
    if (a.as<Type::Unit>()) return Expr::unit();
    if (auto f = a.as<Type::Arrow>()) {
      Name x = fresh();
      Context inner = g;
      inner.push(x, f->dom);
      auto body = gen(env, inner, f->cod, depth - 1);
      if (!body) return std::nullopt;
      return Expr::lam(x, *body);
    }
    if (auto p = a.as<Type::Prod>()) {
      auto l = gen(env, g, p->left, depth - 1);
      auto r = l ? gen(env, g, p->right, depth - 1) : std::nullopt;
      if (!r) return std::nullopt;
      return Expr::pair(*l, *r);
    }
    if (auto s = a.as<Type::Sort>()) {
      std::vector<CtorTyping> fits;
      for (const auto& k : env->typings())
        if (env->subsort(k.result, s->name)) fits.push_back(k);
      if (fits.empty()) return std::nullopt;
      const CtorTyping& k = fits[pick(rng_, fits.size())];
      auto arg = gen(env, g, k.arg, depth - 1);
      if (!arg) return std::nullopt;
      return Expr::ctor(k.ctor, *arg);
    }
    return leaf(env, g, a);
  }

  std::optional<Expr> apply(const Env& env, const Context& g, const Type& a,
                            int depth) {
    // Through an arrow-typed variable when one fits.
    for (const auto& [x, t] : g.entries()) {
      auto f = t.as<Type::Arrow>();
      if (!f || g.lookup(x) != &t || !subtype(*env, f->cod, a)) continue;
      if (auto arg = gen(env, g, f->dom, depth - 1))
        return Expr::app(Expr::var(x), *arg);
    }
    Type b = gen_type(rng_, *env, 1);
    Name x = fresh();
    Context inner = g;
    inner.push(x, b);
    auto body = gen(env, inner, a, depth - 1);
    auto arg = body ? gen(env, g, b, depth - 1) : std::nullopt;
    if (!arg) return std::nullopt;
    return Expr::app(Expr::anno(Expr::lam(x, *body), {Type::arrow(b, a)}),
                     *arg);
  }

  std::optional<Expr> case_of(const Env& env, const Context& g, const Type& a,
                              int depth) {
    Expr scrutinee = Expr::unit();
    std::optional<Type> b;
    std::vector<std::pair<Name, Type>> data_vars;
    for (const auto& [x, t] : g.entries())
      if (g.lookup(x) == &t && t.as<Type::Sort>()) data_vars.emplace_back(x, t);
    if (!data_vars.empty() && chance(rng_, 0.6)) {
      const auto& [x, t] = data_vars[pick(rng_, data_vars.size())];
      scrutinee = Expr::var(x);
      b = t;
    } else {
      const Name& d = ursig_.datatypes[pick(rng_, ursig_.datatypes.size())];
      auto sorts = sorts_of(*env, d);
      if (sorts.empty()) return std::nullopt;
      b = Type::sort(sorts[pick(rng_, sorts.size())]);
      auto e0 = gen(env, g, *b, depth - 1);
      if (!e0) return std::nullopt;
      scrutinee = Expr::anno(*e0, {*b});
    }
    auto tau = refined_type(*env, *b);
    const Name& d = tau->as<UType::Data>()->name;
    Matches arms;
    Pattern residual = Pattern::wild();
    for (const auto& c : ursig_.ctors_of(d)) {
      bool bind = chance(rng_, 0.5);
      Name y = fresh();
      Pattern p = Pattern::ctor(
          c.ctor, bind ? Pattern::bind(y, Pattern::wild()) : Pattern::wild());
      auto tracks = intersect(*env, *b, pat_intersect(residual, p));
      Context inner = g;
      if (bind && !tracks.empty()) inner = g.extended(tracks.front().bindings);
      auto body = gen(env, inner, a, depth - 1);
      if (!body) return std::nullopt;
      arms.push_back(Arm{p, *body});
      residual = normalize(pat_intersect(residual, complement(ursig_, *tau, p)));
    }
    return Expr::case_(scrutinee, std::move(arms));
  }

  std::optional<Expr> declare(const Env& env, const Context& g, const Type& a,
                              int depth) {
    const auto& ks = env->typings();
    if (ks.empty()) return std::nullopt;
    const CtorTyping& k = ks[pick(rng_, ks.size())];
    Name n;
    do n = "dz" + std::to_string(++fresh_); while (env->has_sort(n));
    Block block;
    block.sorts.push_back(SortDecl{n, *env->datatype_of(k.result), {}});
    block.items.push_back(BlockItem{SubsortDecl{n, k.result}, {}});
    block.items.push_back(BlockItem{CtorDecl{k.ctor, k.arg, n}, {}});
    Signature ext{{block}};
    auto inner = env->extend(ext);
    auto body = gen(inner, g, a, depth - 1);
    if (!body) return std::nullopt;
    return Expr::declare(ext, *body);
  }

  Name fresh() { return "v" + std::to_string(++fresh_); }

  Rng& rng_;
  CheckSession& session_;
  const UnrefinedSignature& ursig_;
  int fresh_ = 0;
};

}  // namespace

std::optional<Expr> gen_typed_term(std::uint64_t seed, CheckSession& session,
                                   const Type& a, const GenBounds& bounds) {
  Rng rng(seed);
  auto root = std::make_shared<SigEnv>(session.env().signature(),
                                       session.env().mode());
  // Keep the largest of a few checked candidates; small terms are cheap
  // to hit and tell the properties little.
  std::optional<Expr> best;
  int found = 0;
  for (int i = 0; i < bounds.attempts && found < 3; ++i) {
    TermGen gen(rng, session);
    int depth = 1 + static_cast<int>(pick(rng, std::max(1, bounds.term_depth)));
    auto e = gen.gen(root, Context{}, a, depth);
    if (!e || expr_size(*e) > bounds.max_term_size) continue;
    if (!session.check(Context{}, *e, a).ok()) continue;
    ++found;
    if (!best || expr_size(*e) > expr_size(*best)) best = e;
  }
  return best;
}

}  // namespace sortc
