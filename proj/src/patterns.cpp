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

#include "sortc/patterns.hpp"

#include <map>
#include <set>
#include <string>

#include "sortc/subtyping.hpp"
#include "sortc/surface.hpp"

namespace sortc {

bool pat_type(const UnrefinedSignature& ursig, const Pattern& p,
              const UType& tau) {
  if (p.is<Pattern::Wild>() || p.is<Pattern::Empty>()) return true;
  if (p.is<Pattern::Unit>()) return tau.as<UType::Unit>() != nullptr;
  if (auto c = p.as<Pattern::Ctor>()) {
    const UCtor* u = ursig.find_ctor(c->ctor);
    auto d = tau.as<UType::Data>();
    return u && d && d->name == u->result && pat_type(ursig, c->arg, u->arg);
  }
  if (auto q = p.as<Pattern::Pair>()) {
    auto t = tau.as<UType::Prod>();
    return t && pat_type(ursig, q->left, t->left) &&
           pat_type(ursig, q->right, t->right);
  }
  if (auto a = p.as<Pattern::As>()) return pat_type(ursig, a->inner, tau);
  auto o = p.as<Pattern::Or>();
  return pat_type(ursig, o->left, tau) && pat_type(ursig, o->right, tau);
}

namespace {

[[noreturn]] void ill_typed_pattern(const Pattern& p, const UType& tau) {
  throw Error(make_diagnostic("ILLTYPED_PATTERN", "pattern " +
                                                      print_pattern(p) +
                                                      " does not fit type " +
                                                      print_utype(tau)));
}

}  // namespace

Pattern complement(const UnrefinedSignature& ursig, const UType& tau,
                   const Pattern& p) {
  if (p.is<Pattern::Wild>()) return Pattern::empty();
  if (p.is<Pattern::Empty>()) return Pattern::wild();
  if (p.is<Pattern::Unit>()) return Pattern::empty();
  if (auto a = p.as<Pattern::As>()) return complement(ursig, tau, a->inner);
  if (auto o = p.as<Pattern::Or>())
    return pat_intersect(complement(ursig, tau, o->left),
                         complement(ursig, tau, o->right));
  if (auto q = p.as<Pattern::Pair>()) {
    auto t = tau.as<UType::Prod>();
    if (!t) ill_typed_pattern(p, tau);
    return Pattern::or_(
        Pattern::pair(complement(ursig, t->left, q->left), Pattern::wild()),
        Pattern::pair(Pattern::wild(), complement(ursig, t->right, q->right)));
  }
  auto c = p.as<Pattern::Ctor>();
  const UCtor* u = ursig.find_ctor(c->ctor);
  if (!u) ill_typed_pattern(p, tau);
  std::vector<Pattern> others;
  for (const auto& k : ursig.ctors_of(u->result))
    if (k.ctor != c->ctor) others.push_back(Pattern::ctor(k.ctor, Pattern::wild()));
  Pattern rest = Pattern::ctor(c->ctor, complement(ursig, u->arg, c->arg));
  if (others.empty()) return rest;
  Pattern tail = others.back();
  for (std::size_t i = others.size() - 1; i-- > 0;)
    tail = Pattern::or_(others[i], tail);
  return Pattern::or_(rest, tail);
}

Pattern pat_intersect(const Pattern& p1, const Pattern& p2) {
  if (p1.is<Pattern::Empty>() || p2.is<Pattern::Empty>())
    return Pattern::empty();
  if (p1.is<Pattern::Wild>()) return p2;
  if (p2.is<Pattern::Wild>()) return p1;
  if (auto a = p1.as<Pattern::As>())
    return Pattern::bind(a->var, pat_intersect(a->inner, p2));
  if (auto a = p2.as<Pattern::As>())
    return Pattern::bind(a->var, pat_intersect(p1, a->inner));
  if (auto o = p1.as<Pattern::Or>())
    return Pattern::or_(pat_intersect(o->left, p2),
                        pat_intersect(o->right, p2));
  if (auto o = p2.as<Pattern::Or>())
    return Pattern::or_(pat_intersect(p1, o->left),
                        pat_intersect(p1, o->right));
  if (auto c1 = p1.as<Pattern::Ctor>()) {
    auto c2 = p2.as<Pattern::Ctor>();
    if (!c2 || c1->ctor != c2->ctor) return Pattern::empty();
    return Pattern::ctor(c1->ctor, pat_intersect(c1->arg, c2->arg));
  }
  if (auto q1 = p1.as<Pattern::Pair>()) {
    auto q2 = p2.as<Pattern::Pair>();
    if (!q2) return Pattern::empty();
    return Pattern::pair(pat_intersect(q1->left, q2->left),
                         pat_intersect(q1->right, q2->right));
  }
  return p2.is<Pattern::Unit>() ? Pattern::unit() : Pattern::empty();
}

namespace {

void flatten_or(const Pattern& p, std::vector<Pattern>& out) {
  if (auto o = p.as<Pattern::Or>()) {
    flatten_or(o->left, out);
    flatten_or(o->right, out);
  } else {
    out.push_back(p);
  }
}

}  // namespace

Pattern normalize(const Pattern& p) {
  if (auto c = p.as<Pattern::Ctor>()) {
    Pattern a = normalize(c->arg);
    return a.is<Pattern::Empty>() ? a : Pattern::ctor(c->ctor, a);
  }
  if (auto q = p.as<Pattern::Pair>()) {
    Pattern l = normalize(q->left), r = normalize(q->right);
    if (l.is<Pattern::Empty>() || r.is<Pattern::Empty>())
      return Pattern::empty();
    return Pattern::pair(l, r);
  }
  if (auto a = p.as<Pattern::As>()) {
    Pattern i = normalize(a->inner);
    return i.is<Pattern::Empty>() ? i : Pattern::bind(a->var, i);
  }
  if (!p.is<Pattern::Or>()) return p;
  std::vector<Pattern> raw, kept;
  flatten_or(p, raw);
  for (const auto& b : raw) {
    std::vector<Pattern> parts;
    flatten_or(normalize(b), parts);
    for (const auto& q : parts) {
      if (q.is<Pattern::Empty>()) continue;
      bool dup = false;
      for (const auto& k : kept) dup = dup || k == q;
      if (!dup) kept.push_back(q);
    }
  }
  if (kept.empty()) return Pattern::empty();
  Pattern out = kept.back();
  for (std::size_t i = kept.size() - 1; i-- > 0;)
    out = Pattern::or_(kept[i], out);
  return out;
}

namespace {

Expr strip_annotations(Expr v) {
  while (auto a = v.as<Expr::Anno>()) v = a->body;
  return v;
}

bool match_into(const Pattern& p, const Expr& given, Substitution& theta) {
  if (p.is<Pattern::Wild>()) return true;
  if (p.is<Pattern::Empty>()) return false;
  if (auto a = p.as<Pattern::As>()) {
    if (!match_into(a->inner, given, theta)) return false;
    theta.insert_or_assign(a->var, given);
    return true;
  }
  if (auto o = p.as<Pattern::Or>()) {
    Substitution left = theta;
    if (match_into(o->left, given, left)) {
      theta = std::move(left);
      return true;
    }
    return match_into(o->right, given, theta);
  }
  Expr v = strip_annotations(given);
  if (p.is<Pattern::Unit>()) return v.is<Expr::Unit>();
  if (auto c = p.as<Pattern::Ctor>()) {
    auto w = v.as<Expr::Ctor>();
    return w && w->ctor == c->ctor && match_into(c->arg, w->arg, theta);
  }
  auto q = p.as<Pattern::Pair>();
  auto w = v.as<Expr::Pair>();
  return w && match_into(q->left, w->left, theta) &&
         match_into(q->right, w->right, theta);
}

}  // namespace

std::optional<Substitution> match_value(const Pattern& p, const Expr& v) {
  Substitution theta;
  if (!match_into(p, v, theta)) return std::nullopt;
  return theta;
}

std::vector<Track> intersect(const SigEnv& env, const Type& a,
                             const Pattern& p) {
  if (p.is<Pattern::Wild>()) return {Track{{}, {}, a}};
  if (p.is<Pattern::Empty>()) return {};
  if (auto b = p.as<Pattern::As>()) {
    auto tracks = intersect(env, a, b->inner);
    for (auto& t : tracks) t.bindings.push(b->var, t.residual);
    return tracks;
  }
  if (auto o = p.as<Pattern::Or>()) {
    auto tracks = intersect(env, a, o->left);
    auto more = intersect(env, a, o->right);
    tracks.insert(tracks.end(), more.begin(), more.end());
    return tracks;
  }
  // Constructor argument types may be intersections, so a nested pattern can
  // meet one. Tracks of the two conjuncts that bind the same variables come
  // from the same or-branches and are met pointwise.
  if (auto both = a.as<Type::Intersect>()) {
    auto lefts = intersect(env, both->left, p);
    auto rights = intersect(env, both->right, p);
    auto names = [](const Context& g) {
      std::vector<Name> xs;
      for (const auto& [x, b] : g.entries()) xs.push_back(x);
      return xs;
    };
    std::vector<Track> out;
    for (const auto& l : lefts)
      for (const auto& r : rights) {
        if (names(l.bindings) != names(r.bindings)) continue;
        Context meet;
        for (const auto& [x, b] : l.bindings.entries())
          meet.push(x, Type::intersect(b, *r.bindings.lookup(x)));
        out.push_back(Track{{}, std::move(meet),
                            Type::intersect(l.residual, r.residual)});
      }
    return out;
  }
  if (p.is<Pattern::Unit>() && a.as<Type::Unit>())
    return {Track{{}, {}, Type::unit()}};
  if (auto q = p.as<Pattern::Pair>()) {
    if (auto prod = a.as<Type::Prod>()) {
      auto lefts = intersect(env, prod->left, q->left);
      auto rights = intersect(env, prod->right, q->right);
      std::vector<Track> out;
      for (const auto& l : lefts)
        for (const auto& r : rights)
          out.push_back(Track{{}, l.bindings.extended(r.bindings),
                              Type::prod(l.residual, r.residual)});
      return out;
    }
  }
  if (auto c = p.as<Pattern::Ctor>()) {
    if (auto s = a.as<Type::Sort>()) {
      std::vector<Track> out;
      for (const auto& k : env.typings()) {
        if (k.ctor != c->ctor || !env.subsort(k.result, s->name)) continue;
        for (auto& t : intersect(env, k.arg, c->arg))
          out.push_back(Track{{}, std::move(t.bindings), Type::sort(k.result)});
      }
      return out;
    }
  }
  throw Error(make_diagnostic("ILLTYPED_SCRUTINY",
                              "intersect: type " + print_type(a) +
                                  " cannot face pattern " + print_pattern(p)));
}

namespace {

bool bindings_below(const SigEnv& env, const Context& lo, const Context& hi) {
  for (const auto& [x, a] : lo.entries()) {
    const Type* b = hi.lookup(x);
    if (!b || !subtype(env, *lo.lookup(x), *b)) return false;
  }
  return true;
}

}  // namespace

std::vector<Track> optimize_tracks(const SigEnv& env,
                                   std::vector<Track> tracks) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < tracks.size() && !changed; ++i) {
      for (std::size_t j = 0; j < tracks.size(); ++j) {
        if (i == j) continue;
        if (!bindings_below(env, tracks[i].bindings, tracks[j].bindings))
          continue;
        bool tie = bindings_below(env, tracks[j].bindings, tracks[i].bindings);
        if (!tie || j < i) {
          tracks.erase(tracks.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
  }
  return tracks;
}

bool inhabits(const SigEnv& env, const Type& a, const Expr& given) {
  Expr v = strip_annotations(given);
  if (auto i = a.as<Type::Intersect>())
    return inhabits(env, i->left, v) && inhabits(env, i->right, v);
  if (a.as<Type::Unit>()) return v.is<Expr::Unit>();
  if (auto p = a.as<Type::Prod>()) {
    auto w = v.as<Expr::Pair>();
    return w && inhabits(env, p->left, w->left) &&
           inhabits(env, p->right, w->right);
  }
  if (auto s = a.as<Type::Sort>()) {
    auto w = v.as<Expr::Ctor>();
    if (!w) return false;
    for (const auto& k : env.typings())
      if (k.ctor == w->ctor && env.subsort(k.result, s->name) &&
          inhabits(env, k.arg, w->arg))
        return true;
    return false;
  }
  return false;
}

namespace {

class ValueEnumerator {
 public:
  explicit ValueEnumerator(const SigEnv& env) : env_(env) {}

  const std::vector<Expr>& of_size(const Type& a, std::size_t n) {
    auto key = std::make_pair(print_type(a), n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Expr> out = build(a, n);
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  std::vector<Expr> build(const Type& a, std::size_t n) {
    std::vector<Expr> out;
    if (n == 0) return out;
    if (auto i = a.as<Type::Intersect>()) {
      for (const auto& v : of_size(i->left, n))
        if (inhabits(env_, i->right, v)) out.push_back(v);
      return out;
    }
    if (a.as<Type::Unit>()) {
      if (n == 1) out.push_back(Expr::unit());
      return out;
    }
    if (auto p = a.as<Type::Prod>()) {
      for (std::size_t k = 1; k + 1 < n; ++k) {
        const auto& ls = of_size(p->left, k);
        if (ls.empty()) continue;
        const auto& rs = of_size(p->right, n - 1 - k);
        for (const auto& l : ls)
          for (const auto& r : rs) out.push_back(Expr::pair(l, r));
      }
      return out;
    }
    auto s = a.as<Type::Sort>();
    if (!s) return out;
    std::set<std::string> seen;
    for (const auto& k : env_.typings()) {
      if (!env_.subsort(k.result, s->name)) continue;
      for (const auto& v : of_size(k.arg, n - 1)) {
        Expr e = Expr::ctor(k.ctor, v);
        if (seen.insert(print_expr(e)).second) out.push_back(e);
      }
    }
    return out;
  }

  const SigEnv& env_;
  std::map<std::pair<std::string, std::size_t>, std::vector<Expr>> memo_;
};

}  // namespace

std::vector<Expr> values_of_size(const SigEnv& env, const Type& a,
                                 std::size_t size) {
  return ValueEnumerator(env).of_size(a, size);
}

std::optional<Expr> find_witness(const SigEnv& env, const Type& a,
                                 const Pattern& p, std::size_t max_size) {
  ValueEnumerator en(env);
  for (std::size_t n = 1; n <= max_size; ++n)
    for (const auto& v : en.of_size(a, n))
      if (match_value(p, v)) return v;
  return std::nullopt;
}

}  // namespace sortc
