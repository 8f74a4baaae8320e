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

// Goal-directed search over the type assignment rules. Guesses that the
// rules leave open (the type of an argument, of a scrutinee, of a
// function in head position) come from finite candidate sets; a set is
// complete when every type that could matter is represented in it up to
// equivalence, and only then may a failed search answer no.

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include "sortc/oracles.hpp"
#include "sortc/patterns.hpp"
#include "sortc/surface.hpp"

namespace sortc {

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::No:
      return "no";
    case Tri::Yes:
      return "yes";
    case Tri::Unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

struct Res {
  Tri t = Tri::No;
  std::optional<Expr> ann;
};

Res no() { return {Tri::No, std::nullopt}; }
Res unknown() { return {Tri::Unknown, std::nullopt}; }
Res yes(Expr e) { return {Tri::Yes, std::move(e)}; }

void conjuncts(const Type& a, std::vector<Type>& out) {
  if (auto i = a.as<Type::Intersect>()) {
    conjuncts(i->left, out);
    conjuncts(i->right, out);
  } else {
    out.push_back(a);
  }
}

std::vector<Type> conjuncts(const Type& a) {
  std::vector<Type> out;
  conjuncts(a, out);
  return out;
}

Type meet(const std::vector<Type>& ts) {
  Type out = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) out = Type::intersect(out, ts[i]);
  return out;
}

void add_unique(std::vector<Type>& v, const Type& t) {
  for (const auto& u : v)
    if (u == t) return;
  v.push_back(t);
}

// Types above c that a case may scrutinize at, narrowest first.
std::vector<Type> projections(const Type& c) {
  std::vector<Type> out;
  if (auto i = c.as<Type::Intersect>()) {
    out.push_back(c);
    for (const auto& t : projections(i->left)) add_unique(out, t);
    for (const auto& t : projections(i->right)) add_unique(out, t);
    return out;
  }
  if (auto p = c.as<Type::Prod>()) {
    for (const auto& l : projections(p->left))
      for (const auto& r : projections(p->right))
        add_unique(out, Type::prod(l, r));
    return out;
  }
  return {c};
}

bool has_principal(const Expr& e) {
  if (e.is<Expr::Var>()) return true;
  if (auto a = e.as<Expr::App>()) return has_principal(a->fn);
  return false;
}

// Joins two annotated copies of the same erased term.
Expr merge(const Expr& a, const Expr& b) {
  if (a.identity() == b.identity()) return a;
  auto aa = a.as<Expr::Anno>();
  auto bb = b.as<Expr::Anno>();
  if (aa || bb) {
    std::vector<Type> ts = aa ? aa->types : std::vector<Type>{};
    if (bb)
      for (const auto& t : bb->types) add_unique(ts, t);
    return Expr::anno(merge(aa ? aa->body : a, bb ? bb->body : b), ts,
                      a.loc());
  }
  if (auto l = a.as<Expr::Lam>())
    return Expr::lam(l->var, merge(l->body, b.as<Expr::Lam>()->body), a.loc());
  if (auto x = a.as<Expr::App>()) {
    auto y = b.as<Expr::App>();
    return Expr::app(merge(x->fn, y->fn), merge(x->arg, y->arg), a.loc());
  }
  if (auto x = a.as<Expr::Pair>()) {
    auto y = b.as<Expr::Pair>();
    return Expr::pair(merge(x->left, y->left), merge(x->right, y->right),
                      a.loc());
  }
  if (auto x = a.as<Expr::Ctor>())
    return Expr::ctor(x->ctor, merge(x->arg, b.as<Expr::Ctor>()->arg), a.loc());
  if (auto x = a.as<Expr::Case>()) {
    auto y = b.as<Expr::Case>();
    Matches arms;
    for (std::size_t i = 0; i < x->arms.size(); ++i)
      arms.push_back(
          Arm{x->arms[i].pattern, merge(x->arms[i].body, y->arms[i].body)});
    return Expr::case_(merge(x->scrutinee, y->scrutinee), std::move(arms),
                       a.loc());
  }
  if (auto x = a.as<Expr::Declare>())
    return Expr::declare(x->ext, merge(x->body, b.as<Expr::Declare>()->body),
                         a.loc());
  return a;
}

struct Universe {
  std::vector<Type> types;
  bool complete = true;
};

constexpr std::size_t kUniverseCap = 256;

}  // namespace

struct DeclarativeOracle::Impl {
  using Env = std::shared_ptr<const SigEnv>;

  UnrefinedSignature ursig;
  Env root;
  int type_depth;
  std::size_t budget;
  std::size_t steps = 0;

  std::map<const SigEnv*, std::unique_ptr<NaiveClosure>> closures;
  std::map<std::pair<const SigEnv*, const void*>, Env> extensions;
  std::map<const void*, UType> utypes;
  using Key = std::tuple<const SigEnv*, const void*, std::string, std::string>;
  std::map<Key, Res> memo;

  Impl(UnrefinedSignature u, Signature sig, int depth, std::size_t b)
      : ursig(std::move(u)),
        root(std::make_shared<SigEnv>(std::move(sig))),
        type_depth(depth),
        budget(b) {}

  const NaiveClosure& closure(const Env& env) {
    auto& slot = closures[env.get()];
    if (!slot) slot = std::make_unique<NaiveClosure>(env->signature());
    return *slot;
  }

  bool sub(const Env& env, const Type& a, const Type& b) {
    return reference_subtype(closure(env), a, b);
  }

  // ---- candidate types --------------------------------------------------

  Universe universe(const Env& env, const UType& tau, int depth) {
    Universe u;
    if (tau.as<UType::Unit>()) {
      u.types.push_back(Type::unit());
      return u;
    }
    if (auto d = tau.as<UType::Data>()) {
      std::vector<Name> sorts;
      for (const auto& s : env->closure().sorts())
        if (*env->datatype_of(s) == d->name) sorts.push_back(s);
      if (sorts.size() > 10) sorts.resize(10), u.complete = false;
      const NaiveClosure& c = closure(env);
      std::set<std::set<Name>> seen_up;
      std::size_t n = sorts.size();
      std::vector<std::vector<std::size_t>> subsets;
      for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (std::size_t{1} << i)) idx.push_back(i);
        subsets.push_back(idx);
      }
      std::stable_sort(subsets.begin(), subsets.end(),
                       [](const auto& a, const auto& b) {
                         return a.size() < b.size();
                       });
      for (const auto& idx : subsets) {
        std::set<Name> up;
        for (const auto& t : sorts)
          for (auto i : idx)
            if (c.holds(sorts[i], t)) up.insert(t);
        if (!seen_up.insert(up).second) continue;
        std::vector<Type> parts;
        for (auto i : idx) parts.push_back(Type::sort(sorts[i]));
        u.types.push_back(meet(parts));
      }
      return u;
    }
    if (auto p = tau.as<UType::Prod>()) {
      Universe l = universe(env, p->left, depth);
      Universe r = universe(env, p->right, depth);
      u.complete = l.complete && r.complete;
      for (const auto& a : l.types)
        for (const auto& b : r.types) {
          if (u.types.size() == kUniverseCap) {
            u.complete = false;
            return u;
          }
          u.types.push_back(Type::prod(a, b));
        }
      return u;
    }
    // Arrows: single arrows between bounded universes; never complete.
    auto f = tau.as<UType::Arrow>();
    u.complete = false;
    if (depth <= 0) return u;
    Universe l = universe(env, f->dom, depth - 1);
    Universe r = universe(env, f->cod, depth - 1);
    for (const auto& a : l.types)
      for (const auto& b : r.types) {
        if (u.types.size() == kUniverseCap) return u;
        u.types.push_back(Type::arrow(a, b));
      }
    return u;
  }

  Universe universe_of(const Env& env, const Expr& e) {
    auto it = utypes.find(e.identity());
    if (it == utypes.end()) return Universe{{}, false};
    return universe(env, it->second, type_depth);
  }

  struct Principal {
    std::vector<std::pair<Type, Expr>> items;
    bool complete = true;
  };

  Principal principal(const Env& env, const Context& g, const Expr& e) {
    Principal p;
    if (auto v = e.as<Expr::Var>()) {
      if (const Type* a = g.lookup(v->name)) p.items.emplace_back(*a, e);
      return p;
    }
    auto app = e.as<Expr::App>();
    Principal fn = principal(env, g, app->fn);
    p.complete = fn.complete;
    std::set<std::string> seen;
    for (const auto& [c, fn_ann] : fn.items) {
      for (const auto& conj : conjuncts(c)) {
        auto arr = conj.as<Type::Arrow>();
        if (!arr) continue;
        Res r = derive(env, g, app->arg, arr->dom);
        if (r.t == Tri::Unknown) p.complete = false;
        if (r.t != Tri::Yes) continue;
        if (seen.insert(print_type(arr->cod)).second)
          p.items.emplace_back(arr->cod, Expr::app(fn_ann, *r.ann, e.loc()));
      }
    }
    return p;
  }

  // ---- derivation search ------------------------------------------------

  Res derive(const Env& env, const Context& g, const Expr& e, const Type& a) {
    if (++steps > budget) return unknown();
    Key key{env.get(), e.identity(), print_context(g), print_type(a)};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Res r = derive_uncached(env, g, e, a);
    memo.emplace(std::move(key), r);
    return r;
  }

  static Res both(const Res& l, const Res& r, const std::function<Expr(
                                                  const Expr&, const Expr&)>& mk) {
    if (l.t == Tri::No || r.t == Tri::No) return no();
    if (l.t == Tri::Unknown || r.t == Tri::Unknown) return unknown();
    return yes(mk(*l.ann, *r.ann));
  }

  Res derive_uncached(const Env& env, const Context& g, const Expr& e,
                      const Type& a) {
    const SourceLoc& loc = e.loc();
    if (auto an = e.as<Expr::Anno>()) return derive(env, g, an->body, a);

    if (auto i = a.as<Type::Intersect>(); i && is_value(e)) {
      Res l = derive(env, g, e, i->left);
      if (l.t == Tri::No) return l;
      Res r = derive(env, g, e, i->right);
      return both(l, r, [](const Expr& x, const Expr& y) { return merge(x, y); });
    }

    if (auto v = e.as<Expr::Var>()) {
      const Type* b = g.lookup(v->name);
      return b && sub(env, *b, a) ? yes(e) : no();
    }

    if (auto lam = e.as<Expr::Lam>()) {
      auto arr = a.as<Type::Arrow>();
      if (!arr) return no();
      Context inner = g;
      inner.push(lam->var, arr->dom);
      Res r = derive(env, inner, lam->body, arr->cod);
      if (r.t != Tri::Yes) return r;
      return yes(Expr::lam(lam->var, *r.ann, loc));
    }

    if (e.is<Expr::Unit>()) return a.as<Type::Unit>() ? yes(e) : no();

    if (auto pair = e.as<Expr::Pair>()) {
      std::vector<Type> ls, rs;
      for (const auto& c : conjuncts(a)) {
        auto p = c.as<Type::Prod>();
        if (!p) return no();
        ls.push_back(p->left);
        rs.push_back(p->right);
      }
      Type lt = meet(ls), rt = meet(rs);
      Res l = derive(env, g, pair->left, lt);
      if (l.t == Tri::No) return l;
      Res r = derive(env, g, pair->right, rt);
      bool value = is_value(e);
      return both(l, r, [&](const Expr& x, const Expr& y) {
        Expr p = Expr::pair(x, y, loc);
        return value ? p : Expr::anno(p, {Type::prod(lt, rt)}, loc);
      });
    }

    if (auto c = e.as<Expr::Ctor>()) {
      std::vector<Name> targets;
      for (const auto& t : conjuncts(a)) {
        auto s = t.as<Type::Sort>();
        if (!s) return no();
        targets.push_back(s->name);
      }
      bool value = is_value(e);
      const NaiveClosure& cl = closure(env);
      Tri best = Tri::No;
      for (const auto& k : env->typings()) {
        if (k.ctor != c->ctor) continue;
        bool fits = true;
        for (const auto& t : targets) fits = fits && cl.holds(k.result, t);
        if (!fits) continue;
        Res r = derive(env, g, c->arg, k.arg);
        if (r.t == Tri::Yes) {
          Expr out = Expr::ctor(c->ctor, *r.ann, loc);
          if (!value) out = Expr::anno(out, {Type::sort(k.result)}, loc);
          return yes(out);
        }
        if (r.t == Tri::Unknown) best = Tri::Unknown;
      }
      return {best, std::nullopt};
    }

    if (auto app = e.as<Expr::App>()) {
      Tri best = Tri::No;
      if (has_principal(app->fn)) {
        Principal fn = principal(env, g, app->fn);
        if (!fn.complete) best = Tri::Unknown;
        for (const auto& [c, fn_ann] : fn.items) {
          for (const auto& conj : conjuncts(c)) {
            auto arr = conj.as<Type::Arrow>();
            if (!arr || !sub(env, arr->cod, a)) continue;
            Res r = derive(env, g, app->arg, arr->dom);
            if (r.t == Tri::Yes) return yes(Expr::app(fn_ann, *r.ann, loc));
            if (r.t == Tri::Unknown) best = Tri::Unknown;
          }
        }
        return {best, std::nullopt};
      }
      std::vector<Type> domains;
      if (has_principal(app->arg)) {
        Principal arg = principal(env, g, app->arg);
        if (!arg.complete) best = Tri::Unknown;
        for (const auto& item : arg.items) add_unique(domains, item.first);
      } else {
        Universe u = universe_of(env, app->arg);
        if (!u.complete) best = Tri::Unknown;
        domains = std::move(u.types);
      }
      for (const auto& b : domains) {
        Res r2 = derive(env, g, app->arg, b);
        if (r2.t == Tri::No) continue;
        Type fn_type = Type::arrow(b, a);
        Res r1 = derive(env, g, app->fn, fn_type);
        Res r = both(r1, r2, [&](const Expr& f, const Expr& x) {
          return Expr::app(Expr::anno(f, {fn_type}, loc), x, loc);
        });
        if (r.t == Tri::Yes) return r;
        if (r.t == Tri::Unknown) best = Tri::Unknown;
      }
      return {best, std::nullopt};
    }

    if (auto cs = e.as<Expr::Case>()) {
      Tri best = Tri::No;
      std::vector<Type> candidates;
      if (has_principal(cs->scrutinee)) {
        Principal p = principal(env, g, cs->scrutinee);
        if (!p.complete) best = Tri::Unknown;
        for (const auto& item : p.items)
          for (const auto& t : projections(item.first))
            add_unique(candidates, t);
      } else {
        Universe u = universe_of(env, cs->scrutinee);
        if (!u.complete) best = Tri::Unknown;
        candidates = std::move(u.types);
      }
      for (const auto& b : candidates) {
        Res r0 = derive(env, g, cs->scrutinee, b);
        if (r0.t == Tri::No) continue;
        Matches arms;
        Res rm = matches(env, g, b, cs->arms, a, arms);
        Res r = both(r0, rm, [&](const Expr& s, const Expr&) {
          return Expr::case_(Expr::anno(s, {b}, loc), arms, loc);
        });
        if (r.t == Tri::Yes) return r;
        if (r.t == Tri::Unknown) best = Tri::Unknown;
      }
      return {best, std::nullopt};
    }

    auto d = e.as<Expr::Declare>();
    if (!check_extension(env->signature(), d->ext, ursig).empty()) return no();
    if (!type_wf(*env, a)) return no();
    auto& slot = extensions[{env.get(), e.identity()}];
    if (!slot) slot = env->extend(d->ext);
    Res r = derive(slot, g, d->body, a);
    if (r.t != Tri::Yes) return r;
    return yes(Expr::declare(d->ext, *r.ann, loc));
  }

  // Match typing at scrutinee type b; fills `out` with annotated arms.
  Res matches(const Env& env, const Context& g, const Type& b,
              const Matches& ms, const Type& goal, Matches& out) {
    auto tau = refined_type(*env, b);
    if (!tau) return no();
    Pattern residual = Pattern::wild();
    Tri verdict = Tri::Yes;
    try {
      for (const auto& arm : ms) {
        if (!pat_type(ursig, arm.pattern, *tau)) return no();
        auto vars = pattern_vars(arm.pattern);
        std::set<Name> distinct(vars.begin(), vars.end());
        if (distinct.size() != vars.size()) return no();
        std::optional<Expr> body;
        for (const auto& t :
             intersect(*env, b, pat_intersect(residual, arm.pattern))) {
          Res r = derive(env, g.extended(t.bindings), arm.body, goal);
          if (r.t == Tri::No) return no();
          if (r.t == Tri::Unknown) {
            verdict = Tri::Unknown;
            continue;
          }
          body = body ? merge(*body, *r.ann) : *r.ann;
        }
        out.push_back(Arm{arm.pattern, body ? *body : arm.body});
        residual = normalize(
            pat_intersect(residual, complement(ursig, *tau, arm.pattern)));
      }
      if (!intersect(*env, b, residual).empty()) return no();
    } catch (const Error&) {
      return no();
    }
    if (verdict == Tri::Unknown) return unknown();
    return yes(Expr::unit());
  }
};

DeclarativeOracle::DeclarativeOracle(UnrefinedSignature ursig, Signature sig,
                                     int type_depth, std::size_t budget)
    : impl_(std::make_unique<Impl>(std::move(ursig), std::move(sig),
                                   type_depth, budget)) {}

DeclarativeOracle::~DeclarativeOracle() = default;

OracleVerdict DeclarativeOracle::typable(const Context& gamma, const Expr& e,
                                         const Type& a) {
  Impl& m = *impl_;
  m.steps = 0;
  m.memo.clear();
  m.extensions.clear();
  m.closures.clear();
  m.utypes.clear();
  auto tau = refined_type(*m.root, a);
  if (!tau) return {Tri::No, std::nullopt};
  std::vector<std::pair<Name, UType>> ug;
  for (const auto& [x, t] : gamma.entries()) {
    auto u = refined_type(*m.root, t);
    if (!u) return {Tri::No, std::nullopt};
    ug.emplace_back(x, *u);
  }
  auto inferred = infer_unrefined(m.ursig, ug, e, *tau);
  if (!inferred) return {Tri::No, std::nullopt};
  m.utypes = std::move(*inferred);
  Res r = m.derive(m.root, gamma, e, a);
  return {r.t, r.ann};
}

Tri declarative_typable(const CheckSession& session, const Context& gamma,
                        const Expr& e, const Type& a, int depth) {
  DeclarativeOracle oracle(session.ursig(), session.env().signature(), depth);
  return oracle.typable(gamma, e, a).verdict;
}

}  // namespace sortc
