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

#include "sortc/syntax.hpp"

#include <algorithm>

namespace sortc {

// ---------------------------------------------------------------------------
// UType

UType UType::unit() {
  return UType(std::make_shared<UTypeNode>(UTypeNode{Unit{}}));
}
UType UType::arrow(UType dom, UType cod) {
  return UType(std::make_shared<UTypeNode>(
      UTypeNode{Arrow{std::move(dom), std::move(cod)}}));
}
UType UType::prod(UType left, UType right) {
  return UType(std::make_shared<UTypeNode>(
      UTypeNode{Prod{std::move(left), std::move(right)}}));
}
UType UType::data(Name name) {
  return UType(std::make_shared<UTypeNode>(UTypeNode{Data{std::move(name)}}));
}

namespace {

int compare(const UType& a, const UType& b) {
  if (&a.node() == &b.node()) return 0;
  auto ia = a.node().v.index(), ib = b.node().v.index();
  if (ia != ib) return ia < ib ? -1 : 1;
  if (auto x = a.as<UType::Arrow>()) {
    auto y = b.as<UType::Arrow>();
    if (int c = compare(x->dom, y->dom)) return c;
    return compare(x->cod, y->cod);
  }
  if (auto x = a.as<UType::Prod>()) {
    auto y = b.as<UType::Prod>();
    if (int c = compare(x->left, y->left)) return c;
    return compare(x->right, y->right);
  }
  if (auto x = a.as<UType::Data>()) {
    return x->name.compare(b.as<UType::Data>()->name);
  }
  return 0;
}

int compare(const Type& a, const Type& b) {
  if (a.identity() == b.identity()) return 0;
  auto ia = a.node().v.index(), ib = b.node().v.index();
  if (ia != ib) return ia < ib ? -1 : 1;
  return std::visit(
      [&](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node().v);
        if constexpr (std::is_same_v<T, Type::Unit>) {
          return 0;
        } else if constexpr (std::is_same_v<T, Type::Sort>) {
          int c = x.name.compare(y.name);
          return c < 0 ? -1 : (c > 0 ? 1 : 0);
        } else if constexpr (std::is_same_v<T, Type::Arrow>) {
          if (int c = compare(x.dom, y.dom)) return c;
          return compare(x.cod, y.cod);
        } else {
          if (int c = compare(x.left, y.left)) return c;
          return compare(x.right, y.right);
        }
      },
      a.node().v);
}

}  // namespace

bool operator==(const UType& a, const UType& b) { return compare(a, b) == 0; }
bool operator<(const UType& a, const UType& b) { return compare(a, b) < 0; }

bool UnrefinedSignature::has_datatype(const Name& d) const {
  return std::find(datatypes.begin(), datatypes.end(), d) != datatypes.end();
}

const UCtor* UnrefinedSignature::find_ctor(const Name& c) const {
  for (const auto& u : ctors)
    if (u.ctor == c) return &u;
  return nullptr;
}

std::vector<UCtor> UnrefinedSignature::ctors_of(const Name& d) const {
  std::vector<UCtor> out;
  for (const auto& u : ctors)
    if (u.result == d) out.push_back(u);
  return out;
}

// ---------------------------------------------------------------------------
// Type

Type Type::unit() {
  return Type(std::make_shared<TypeNode>(TypeNode{Unit{}}));
}
Type Type::arrow(Type dom, Type cod) {
  return Type(std::make_shared<TypeNode>(
      TypeNode{Arrow{std::move(dom), std::move(cod)}}));
}
Type Type::prod(Type left, Type right) {
  return Type(std::make_shared<TypeNode>(
      TypeNode{Prod{std::move(left), std::move(right)}}));
}
Type Type::sort(Name name) {
  return Type(std::make_shared<TypeNode>(TypeNode{Sort{std::move(name)}}));
}
Type Type::intersect(Type left, Type right) {
  return Type(std::make_shared<TypeNode>(
      TypeNode{Intersect{std::move(left), std::move(right)}}));
}

bool Type::is_intersect() const { return as<Intersect>() != nullptr; }

bool operator==(const Type& a, const Type& b) { return compare(a, b) == 0; }
bool operator<(const Type& a, const Type& b) { return compare(a, b) < 0; }

// ---------------------------------------------------------------------------
// Signatures

namespace {

int compare(const BlockItem& a, const BlockItem& b) {
  auto ia = a.v.index(), ib = b.v.index();
  if (ia != ib) return ia < ib ? -1 : 1;
  if (auto x = a.subsort()) {
    auto y = b.subsort();
    if (int c = x->sub.compare(y->sub)) return c;
    return x->sup.compare(y->sup);
  }
  auto x = a.ctor();
  auto y = b.ctor();
  if (int c = x->ctor.compare(y->ctor)) return c;
  if (int c = x->result.compare(y->result)) return c;
  return compare(x->arg, y->arg);
}

std::vector<BlockItem> canonical_items(const std::vector<BlockItem>& items) {
  std::vector<BlockItem> out = items;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

bool operator==(const BlockItem& a, const BlockItem& b) {
  return compare(a, b) == 0;
}
bool operator<(const BlockItem& a, const BlockItem& b) {
  return compare(a, b) < 0;
}

bool Block::declares(const Name& s) const {
  for (const auto& d : sorts)
    if (d.sort == s) return true;
  return false;
}

bool operator==(const Block& a, const Block& b) {
  return a.sorts == b.sorts &&
         canonical_items(a.items) == canonical_items(b.items);
}

Signature Signature::extended(const Signature& ext) const {
  Signature out = *this;
  out.blocks.insert(out.blocks.end(), ext.blocks.begin(), ext.blocks.end());
  return out;
}

// ---------------------------------------------------------------------------
// Pattern

Pattern Pattern::wild() {
  static const Pattern w(std::make_shared<PatternNode>(PatternNode{Wild{}}));
  return w;
}
Pattern Pattern::empty() {
  static const Pattern e(std::make_shared<PatternNode>(PatternNode{Empty{}}));
  return e;
}
Pattern Pattern::unit() {
  static const Pattern u(std::make_shared<PatternNode>(PatternNode{Unit{}}));
  return u;
}
Pattern Pattern::ctor(Name c, Pattern arg) {
  return Pattern(std::make_shared<PatternNode>(
      PatternNode{Ctor{std::move(c), std::move(arg)}}));
}
Pattern Pattern::pair(Pattern left, Pattern right) {
  return Pattern(std::make_shared<PatternNode>(
      PatternNode{Pair{std::move(left), std::move(right)}}));
}
Pattern Pattern::bind(Name var, Pattern inner) {
  return Pattern(std::make_shared<PatternNode>(
      PatternNode{As{std::move(var), std::move(inner)}}));
}
Pattern Pattern::or_(Pattern left, Pattern right) {
  return Pattern(std::make_shared<PatternNode>(
      PatternNode{Or{std::move(left), std::move(right)}}));
}

bool operator==(const Pattern& a, const Pattern& b) {
  if (&a.node() == &b.node()) return true;
  if (a.node().v.index() != b.node().v.index()) return false;
  if (auto x = a.as<Pattern::Ctor>()) {
    auto y = b.as<Pattern::Ctor>();
    return x->ctor == y->ctor && x->arg == y->arg;
  }
  if (auto x = a.as<Pattern::Pair>()) {
    auto y = b.as<Pattern::Pair>();
    return x->left == y->left && x->right == y->right;
  }
  if (auto x = a.as<Pattern::As>()) {
    auto y = b.as<Pattern::As>();
    return x->var == y->var && x->inner == y->inner;
  }
  if (auto x = a.as<Pattern::Or>()) {
    auto y = b.as<Pattern::Or>();
    return x->left == y->left && x->right == y->right;
  }
  return true;
}

namespace {

void collect_vars(const Pattern& p, std::vector<Name>& out) {
  if (auto c = p.as<Pattern::Ctor>()) {
    collect_vars(c->arg, out);
  } else if (auto q = p.as<Pattern::Pair>()) {
    collect_vars(q->left, out);
    collect_vars(q->right, out);
  } else if (auto a = p.as<Pattern::As>()) {
    out.push_back(a->var);
    collect_vars(a->inner, out);
  } else if (auto o = p.as<Pattern::Or>()) {
    collect_vars(o->left, out);
    collect_vars(o->right, out);
  }
}

}  // namespace

std::vector<Name> pattern_vars(const Pattern& p) {
  std::vector<Name> out;
  collect_vars(p, out);
  return out;
}

// ---------------------------------------------------------------------------
// Expr

Expr Expr::var(Name x, SourceLoc loc) {
  return Expr(std::make_shared<ExprNode>(ExprNode{Var{std::move(x)}, loc}));
}
Expr Expr::lam(Name x, Expr body, SourceLoc loc) {
  return Expr(std::make_shared<ExprNode>(
      ExprNode{Lam{std::move(x), std::move(body)}, loc}));
}
Expr Expr::app(Expr fn, Expr arg, SourceLoc loc) {
  return Expr(std::make_shared<ExprNode>(
      ExprNode{App{std::move(fn), std::move(arg)}, loc}));
}
Expr Expr::pair(Expr left, Expr right, SourceLoc loc) {
  return Expr(std::make_shared<ExprNode>(
      ExprNode{Pair{std::move(left), std::move(right)}, loc}));
}
Expr Expr::unit(SourceLoc loc) {
  return Expr(std::make_shared<ExprNode>(ExprNode{Unit{}, loc}));
}
Expr Expr::ctor(Name c, Expr arg, SourceLoc loc) {
  return Expr(std::make_shared<ExprNode>(
      ExprNode{Ctor{std::move(c), std::move(arg)}, loc}));
}
Expr Expr::case_(Expr scrutinee, std::vector<Arm> arms, SourceLoc loc) {
  return Expr(std::make_shared<ExprNode>(
      ExprNode{Case{std::move(scrutinee), std::move(arms)}, loc}));
}
Expr Expr::declare(Signature ext, Expr body, SourceLoc loc) {
  return Expr(std::make_shared<ExprNode>(
      ExprNode{Declare{std::move(ext), std::move(body)}, loc}));
}
Expr Expr::anno(Expr body, std::vector<Type> types, SourceLoc loc) {
  return Expr(std::make_shared<ExprNode>(
      ExprNode{Anno{std::move(body), std::move(types)}, loc}));
}

const SourceLoc& Expr::loc() const { return node_->loc; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.identity() == b.identity()) return true;
  if (a.node().v.index() != b.node().v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node().v);
        if constexpr (std::is_same_v<T, Expr::Var>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Expr::Lam>) {
          return x.var == y.var && x.body == y.body;
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          return x.fn == y.fn && x.arg == y.arg;
        } else if constexpr (std::is_same_v<T, Expr::Pair>) {
          return x.left == y.left && x.right == y.right;
        } else if constexpr (std::is_same_v<T, Expr::Unit>) {
          return true;
        } else if constexpr (std::is_same_v<T, Expr::Ctor>) {
          return x.ctor == y.ctor && x.arg == y.arg;
        } else if constexpr (std::is_same_v<T, Expr::Case>) {
          return x.scrutinee == y.scrutinee && x.arms == y.arms;
        } else if constexpr (std::is_same_v<T, Expr::Declare>) {
          return x.ext == y.ext && x.body == y.body;
        } else {
          return x.body == y.body && x.types == y.types;
        }
      },
      a.node().v);
}

// ---------------------------------------------------------------------------
// Context

Context Context::extended(const Context& more) const {
  Context out = *this;
  out.entries_.insert(out.entries_.end(), more.entries_.begin(),
                      more.entries_.end());
  return out;
}

const Type* Context::lookup(const Name& x) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->first == x) return &it->second;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Term operations

bool is_value(const Expr& e) {
  if (e.is<Expr::Var>() || e.is<Expr::Lam>() || e.is<Expr::Unit>())
    return true;
  if (auto p = e.as<Expr::Pair>()) return is_value(p->left) && is_value(p->right);
  if (auto c = e.as<Expr::Ctor>()) return is_value(c->arg);
  if (auto a = e.as<Expr::Anno>()) return is_value(a->body);
  return false;
}

namespace {

void free_vars_into(const Expr& e, std::set<Name>& bound,
                    std::set<Name>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::Var>) {
          if (!bound.count(x.name)) out.insert(x.name);
        } else if constexpr (std::is_same_v<T, Expr::Lam>) {
          bool fresh = bound.insert(x.var).second;
          free_vars_into(x.body, bound, out);
          if (fresh) bound.erase(x.var);
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          free_vars_into(x.fn, bound, out);
          free_vars_into(x.arg, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Pair>) {
          free_vars_into(x.left, bound, out);
          free_vars_into(x.right, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Ctor>) {
          free_vars_into(x.arg, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Case>) {
          free_vars_into(x.scrutinee, bound, out);
          for (const auto& arm : x.arms) {
            std::vector<Name> added;
            for (const auto& v : pattern_vars(arm.pattern))
              if (bound.insert(v).second) added.push_back(v);
            free_vars_into(arm.body, bound, out);
            for (const auto& v : added) bound.erase(v);
          }
        } else if constexpr (std::is_same_v<T, Expr::Declare>) {
          free_vars_into(x.body, bound, out);
        } else if constexpr (std::is_same_v<T, Expr::Anno>) {
          free_vars_into(x.body, bound, out);
        }
      },
      e.node().v);
}

Name fresh_name(const Name& base, const std::set<Name>& avoid) {
  for (int i = 1;; ++i) {
    Name candidate = base + "_" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

Pattern rename_pattern(const Pattern& p, const std::map<Name, Name>& ren) {
  if (auto c = p.as<Pattern::Ctor>())
    return Pattern::ctor(c->ctor, rename_pattern(c->arg, ren));
  if (auto q = p.as<Pattern::Pair>())
    return Pattern::pair(rename_pattern(q->left, ren),
                         rename_pattern(q->right, ren));
  if (auto a = p.as<Pattern::As>()) {
    auto it = ren.find(a->var);
    return Pattern::bind(it == ren.end() ? a->var : it->second,
                       rename_pattern(a->inner, ren));
  }
  if (auto o = p.as<Pattern::Or>())
    return Pattern::or_(rename_pattern(o->left, ren),
                        rename_pattern(o->right, ren));
  return p;
}

class Substituter {
 public:
  explicit Substituter(const Substitution& theta) {
    for (const auto& [x, v] : theta) {
      auto fv = free_vars(v);
      range_fv_.insert(fv.begin(), fv.end());
    }
  }

  Expr run(const Expr& e, const std::map<Name, Expr>& active) {
    if (active.empty()) return e;
    const SourceLoc& loc = e.loc();
    return std::visit(
        [&](const auto& x) -> Expr {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Expr::Var>) {
            auto it = active.find(x.name);
            return it == active.end() ? e : it->second;
          } else if constexpr (std::is_same_v<T, Expr::Lam>) {
            auto inner = active;
            inner.erase(x.var);
            if (inner.empty()) return e;
            Name v = x.var;
            Expr body = x.body;
            if (range_fv_.count(v)) {
              std::set<Name> avoid = range_fv_;
              auto fv = free_vars(body);
              avoid.insert(fv.begin(), fv.end());
              for (const auto& [k, _] : inner) avoid.insert(k);
              Name nv = fresh_name(v, avoid);
              Substitution r{{v, Expr::var(nv)}};
              body = Substituter(r).run(body, r);
              v = nv;
            }
            return Expr::lam(v, run(body, inner), loc);
          } else if constexpr (std::is_same_v<T, Expr::App>) {
            return Expr::app(run(x.fn, active), run(x.arg, active), loc);
          } else if constexpr (std::is_same_v<T, Expr::Pair>) {
            return Expr::pair(run(x.left, active), run(x.right, active), loc);
          } else if constexpr (std::is_same_v<T, Expr::Unit>) {
            return e;
          } else if constexpr (std::is_same_v<T, Expr::Ctor>) {
            return Expr::ctor(x.ctor, run(x.arg, active), loc);
          } else if constexpr (std::is_same_v<T, Expr::Case>) {
            Matches arms;
            for (const auto& arm : x.arms) arms.push_back(run_arm(arm, active));
            return Expr::case_(run(x.scrutinee, active), std::move(arms), loc);
          } else if constexpr (std::is_same_v<T, Expr::Declare>) {
            return Expr::declare(x.ext, run(x.body, active), loc);
          } else {
            return Expr::anno(run(x.body, active), x.types, loc);
          }
        },
        e.node().v);
  }

 private:
  Arm run_arm(const Arm& arm, const std::map<Name, Expr>& active) {
    auto inner = active;
    auto vars = pattern_vars(arm.pattern);
    for (const auto& v : vars) inner.erase(v);
    if (inner.empty()) return arm;
    std::map<Name, Name> ren;
    std::set<Name> avoid = range_fv_;
    auto fv = free_vars(arm.body);
    avoid.insert(fv.begin(), fv.end());
    avoid.insert(vars.begin(), vars.end());
    for (const auto& [k, _] : inner) avoid.insert(k);
    for (const auto& v : vars) {
      if (range_fv_.count(v)) {
        Name nv = fresh_name(v, avoid);
        avoid.insert(nv);
        ren[v] = nv;
      }
    }
    Pattern p = arm.pattern;
    Expr body = arm.body;
    if (!ren.empty()) {
      Substitution r;
      for (const auto& [from, to] : ren) r.emplace(from, Expr::var(to));
      body = Substituter(r).run(body, r);
      p = rename_pattern(p, ren);
    }
    return Arm{p, run(body, inner)};
  }

  std::set<Name> range_fv_;
};

}  // namespace

std::set<Name> free_vars(const Expr& e) {
  std::set<Name> bound, out;
  free_vars_into(e, bound, out);
  return out;
}

Expr subst(const Substitution& theta, const Expr& e) {
  if (theta.empty()) return e;
  return Substituter(theta).run(e, theta);
}

Expr erase(const Expr& e) {
  const SourceLoc& loc = e.loc();
  return std::visit(
      [&](const auto& x) -> Expr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::Var> ||
                      std::is_same_v<T, Expr::Unit>) {
          return e;
        } else if constexpr (std::is_same_v<T, Expr::Lam>) {
          return Expr::lam(x.var, erase(x.body), loc);
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          return Expr::app(erase(x.fn), erase(x.arg), loc);
        } else if constexpr (std::is_same_v<T, Expr::Pair>) {
          return Expr::pair(erase(x.left), erase(x.right), loc);
        } else if constexpr (std::is_same_v<T, Expr::Ctor>) {
          return Expr::ctor(x.ctor, erase(x.arg), loc);
        } else if constexpr (std::is_same_v<T, Expr::Case>) {
          Matches arms;
          for (const auto& arm : x.arms)
            arms.push_back(Arm{arm.pattern, erase(arm.body)});
          return Expr::case_(erase(x.scrutinee), std::move(arms), loc);
        } else if constexpr (std::is_same_v<T, Expr::Declare>) {
          return Expr::declare(x.ext, erase(x.body), loc);
        } else {
          return erase(x.body);
        }
      },
      e.node().v);
}

std::size_t expr_size(const Expr& e) {
  return std::visit(
      [&](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::Var> ||
                      std::is_same_v<T, Expr::Unit>) {
          return 1;
        } else if constexpr (std::is_same_v<T, Expr::Lam>) {
          return 1 + expr_size(x.body);
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          return 1 + expr_size(x.fn) + expr_size(x.arg);
        } else if constexpr (std::is_same_v<T, Expr::Pair>) {
          return 1 + expr_size(x.left) + expr_size(x.right);
        } else if constexpr (std::is_same_v<T, Expr::Ctor>) {
          return 1 + expr_size(x.arg);
        } else if constexpr (std::is_same_v<T, Expr::Case>) {
          std::size_t n = 1 + expr_size(x.scrutinee);
          for (const auto& arm : x.arms) n += expr_size(arm.body);
          return n;
        } else if constexpr (std::is_same_v<T, Expr::Declare>) {
          return 1 + expr_size(x.body);
        } else {
          return expr_size(x.body);
        }
      },
      e.node().v);
}

}  // namespace sortc
