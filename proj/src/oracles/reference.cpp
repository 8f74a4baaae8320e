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

#include <set>

#include "sortc/oracles.hpp"
#include "sortc/surface.hpp"

namespace sortc {

// ---------------------------------------------------------------------------
// NaiveClosure

NaiveClosure::NaiveClosure(const Signature& sig) {
  for (const auto& b : sig.blocks)
    for (const auto& d : b.sorts)
      if (index_.emplace(d.sort, sorts_.size()).second)
        sorts_.push_back(d.sort);
  std::size_t n = sorts_.size();
  rel_.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) rel_[i][i] = 1;
  for (const auto& b : sig.blocks)
    for (const auto& it : b.items)
      if (auto e = it.subsort()) {
        auto a = index_.find(e->sub), c = index_.find(e->sup);
        if (a != index_.end() && c != index_.end())
          rel_[a->second][c->second] = 1;
      }
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (rel_[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (rel_[k][j] && !rel_[i][j]) {
              rel_[i][j] = 1;
              grew = true;
            }
  }
}

bool NaiveClosure::holds(const Name& s, const Name& t) const {
  auto a = index_.find(s), b = index_.find(t);
  return a != index_.end() && b != index_.end() && rel_[a->second][b->second];
}

namespace {

void conjuncts(const Type& a, std::vector<Type>& out) {
  if (auto i = a.as<Type::Intersect>()) {
    conjuncts(i->left, out);
    conjuncts(i->right, out);
  } else {
    out.push_back(a);
  }
}

// One non-intersection type on the left against one on the right.
bool atom_below(const NaiveClosure& c, const Type& a, const Type& b) {
  if (b.as<Type::Unit>()) return a.as<Type::Unit>() != nullptr;
  if (auto t = b.as<Type::Sort>()) {
    auto s = a.as<Type::Sort>();
    return s && c.holds(s->name, t->name);
  }
  if (auto q = b.as<Type::Prod>()) {
    auto p = a.as<Type::Prod>();
    return p && reference_subtype(c, p->left, q->left) &&
           reference_subtype(c, p->right, q->right);
  }
  auto g = b.as<Type::Arrow>();
  auto f = a.as<Type::Arrow>();
  return g && f && reference_subtype(c, g->dom, f->dom) &&
         reference_subtype(c, f->cod, g->cod);
}

}  // namespace

bool reference_subtype(const NaiveClosure& c, const Type& a, const Type& b) {
  // Every conjunct on the right must be reached from one on the left.
  std::vector<Type> lefts, rights;
  conjuncts(a, lefts);
  conjuncts(b, rights);
  for (const auto& r : rights) {
    bool found = false;
    for (const auto& l : lefts) found = found || atom_below(c, l, r);
    if (!found) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// enum_values

namespace {

class Enumerator {
 public:
  explicit Enumerator(const SigEnv& env) : env_(env) {}

  const std::vector<Expr>& of_size(const Type& a, std::size_t n) {
    auto key = std::make_pair(print_type(a), n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto out = build(a, n);
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  std::vector<Expr> build(const Type& a, std::size_t n) {
    std::vector<Expr> out;
    if (n == 0) return out;
    if (auto i = a.as<Type::Intersect>()) {
      // Candidates only; the caller filters by checking.
      return of_size(i->left, n);
    }
    if (a.as<Type::Unit>()) {
      if (n == 1) out.push_back(Expr::unit());
      return out;
    }
    if (a.as<Type::Arrow>()) {
      if (n == 2) out.push_back(Expr::lam("x", Expr::var("x")));
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

std::vector<Expr> enum_values(CheckSession& session, const Type& a,
                              std::size_t max_size) {
  Enumerator en(session.env());
  std::vector<Expr> out;
  for (std::size_t n = 1; n <= max_size; ++n)
    for (const auto& v : en.of_size(a, n))
      if (session.check({}, v, a).ok()) out.push_back(v);
  return out;
}

bool substitution_checks(CheckSession& session, const Substitution& theta,
                         const Context& gamma) {
  if (theta.size() != gamma.size()) return false;
  for (const auto& [x, a] : gamma.entries()) {
    auto it = theta.find(x);
    if (it == theta.end() || !free_vars(it->second).empty()) return false;
    if (!session.check(Context{}, it->second, a).ok()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Unrefined type inference by unification.

namespace {

class Unifier {
 public:
  struct Term {
    enum Kind { Var, Unit, Arrow, Prod, Data } kind;
    int a = -1, b = -1;
    Name data = {};
  };

  int fresh() { return add({Term::Var}); }
  int add(Term t) {
    terms_.push_back(std::move(t));
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(terms_.size()) - 1;
  }
  int from(const UType& t) {
    if (t.as<UType::Unit>()) return add({Term::Unit});
    if (auto d = t.as<UType::Data>()) return add({Term::Data, -1, -1, d->name});
    if (auto f = t.as<UType::Arrow>()) {
      int x = from(f->dom), y = from(f->cod);
      return add({Term::Arrow, x, y});
    }
    auto p = t.as<UType::Prod>();
    int x = from(p->left), y = from(p->right);
    return add({Term::Prod, x, y});
  }
  int find(int i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  bool unify(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return true;
    Term tx = terms_[x], ty = terms_[y];
    if (tx.kind == Term::Var) {
      if (occurs(x, y)) return false;
      parent_[x] = y;
      return true;
    }
    if (ty.kind == Term::Var) return unify(y, x);
    if (tx.kind != ty.kind) return false;
    if (tx.kind == Term::Data) return tx.data == ty.data;
    if (tx.kind == Term::Unit) return true;
    parent_[x] = y;
    return unify(tx.a, ty.a) && unify(tx.b, ty.b);
  }
  // Unconstrained variables resolve to unit.
  UType resolve(int i) {
    const Term& t = terms_[find(i)];
    switch (t.kind) {
      case Term::Var:
      case Term::Unit:
        return UType::unit();
      case Term::Data:
        return UType::data(t.data);
      case Term::Arrow:
        return UType::arrow(resolve(t.a), resolve(t.b));
      case Term::Prod:
        return UType::prod(resolve(t.a), resolve(t.b));
    }
    return UType::unit();
  }

 private:
  bool occurs(int v, int t) {
    t = find(t);
    if (t == v) return true;
    const Term& term = terms_[t];
    if (term.kind == Term::Arrow || term.kind == Term::Prod)
      return occurs(v, term.a) || occurs(v, term.b);
    return false;
  }

  std::vector<Term> terms_;
  std::vector<int> parent_;
};

class Inference {
 public:
  explicit Inference(const UnrefinedSignature& ursig) : ursig_(ursig) {}

  bool expr(std::vector<std::pair<Name, int>>& g, const Expr& e, int t) {
    nodes_.emplace_back(e.identity(), t);
    if (auto v = e.as<Expr::Var>()) {
      for (auto it = g.rbegin(); it != g.rend(); ++it)
        if (it->first == v->name) return u_.unify(it->second, t);
      return false;
    }
    if (auto l = e.as<Expr::Lam>()) {
      int a = u_.fresh(), b = u_.fresh();
      if (!u_.unify(t, u_.add({Unifier::Term::Arrow, a, b}))) return false;
      g.emplace_back(l->var, a);
      bool ok = expr(g, l->body, b);
      g.pop_back();
      return ok;
    }
    if (auto app = e.as<Expr::App>()) {
      int a = u_.fresh();
      return expr(g, app->fn, u_.add({Unifier::Term::Arrow, a, t})) &&
             expr(g, app->arg, a);
    }
    if (auto p = e.as<Expr::Pair>()) {
      int a = u_.fresh(), b = u_.fresh();
      return u_.unify(t, u_.add({Unifier::Term::Prod, a, b})) &&
             expr(g, p->left, a) && expr(g, p->right, b);
    }
    if (e.is<Expr::Unit>()) return u_.unify(t, u_.add({Unifier::Term::Unit}));
    if (auto c = e.as<Expr::Ctor>()) {
      const UCtor* k = ursig_.find_ctor(c->ctor);
      if (!k) return false;
      return u_.unify(t, u_.from(UType::data(k->result))) &&
             expr(g, c->arg, u_.from(k->arg));
    }
    if (auto cs = e.as<Expr::Case>()) {
      int s = u_.fresh();
      if (!expr(g, cs->scrutinee, s)) return false;
      for (const auto& arm : cs->arms) {
        std::size_t mark = g.size();
        if (!pattern(g, arm.pattern, s)) return false;
        bool ok = expr(g, arm.body, t);
        g.resize(mark);
        if (!ok) return false;
      }
      return true;
    }
    if (auto d = e.as<Expr::Declare>()) return expr(g, d->body, t);
    auto an = e.as<Expr::Anno>();
    return expr(g, an->body, t);
  }

  bool pattern(std::vector<std::pair<Name, int>>& g, const Pattern& p, int t) {
    if (p.is<Pattern::Wild>() || p.is<Pattern::Empty>()) return true;
    if (p.is<Pattern::Unit>()) return u_.unify(t, u_.add({Unifier::Term::Unit}));
    if (auto c = p.as<Pattern::Ctor>()) {
      const UCtor* k = ursig_.find_ctor(c->ctor);
      if (!k) return false;
      return u_.unify(t, u_.from(UType::data(k->result))) &&
             pattern(g, c->arg, u_.from(k->arg));
    }
    if (auto q = p.as<Pattern::Pair>()) {
      int a = u_.fresh(), b = u_.fresh();
      return u_.unify(t, u_.add({Unifier::Term::Prod, a, b})) &&
             pattern(g, q->left, a) && pattern(g, q->right, b);
    }
    if (auto a = p.as<Pattern::As>()) {
      g.emplace_back(a->var, t);
      return pattern(g, a->inner, t);
    }
    auto o = p.as<Pattern::Or>();
    return pattern(g, o->left, t) && pattern(g, o->right, t);
  }

  Unifier& unifier() { return u_; }
  const std::vector<std::pair<const void*, int>>& nodes() const {
    return nodes_;
  }

 private:
  const UnrefinedSignature& ursig_;
  Unifier u_;
  std::vector<std::pair<const void*, int>> nodes_;
};

}  // namespace

std::optional<std::map<const void*, UType>> infer_unrefined(
    const UnrefinedSignature& ursig,
    const std::vector<std::pair<Name, UType>>& gamma, const Expr& e,
    const UType& tau) {
  Inference inf(ursig);
  std::vector<std::pair<Name, int>> g;
  for (const auto& [x, t] : gamma) g.emplace_back(x, inf.unifier().from(t));
  if (!inf.expr(g, e, inf.unifier().from(tau))) return std::nullopt;
  std::map<const void*, UType> out;
  for (const auto& [node, t] : inf.nodes())
    out.insert_or_assign(node, inf.unifier().resolve(t));
  return out;
}

// ---------------------------------------------------------------------------
// Sort renaming

namespace {

Name renamed(const Name& s, const std::map<Name, Name>& r) {
  auto it = r.find(s);
  return it == r.end() ? s : it->second;
}

Type rename_type(const Type& a, const std::map<Name, Name>& r) {
  if (auto s = a.as<Type::Sort>()) return Type::sort(renamed(s->name, r));
  if (auto f = a.as<Type::Arrow>())
    return Type::arrow(rename_type(f->dom, r), rename_type(f->cod, r));
  if (auto p = a.as<Type::Prod>())
    return Type::prod(rename_type(p->left, r), rename_type(p->right, r));
  if (auto i = a.as<Type::Intersect>())
    return Type::intersect(rename_type(i->left, r), rename_type(i->right, r));
  return a;
}

}  // namespace

Signature rename_sorts(const Signature& sig,
                       const std::map<Name, Name>& renaming) {
  Signature out;
  for (const auto& b : sig.blocks) {
    Block nb;
    nb.loc = b.loc;
    for (const auto& d : b.sorts)
      nb.sorts.push_back(SortDecl{renamed(d.sort, renaming), d.refines, d.loc});
    for (const auto& it : b.items) {
      if (auto e = it.subsort())
        nb.items.push_back(BlockItem{
            SubsortDecl{renamed(e->sub, renaming), renamed(e->sup, renaming)},
            it.loc});
      else if (auto c = it.ctor())
        nb.items.push_back(
            BlockItem{CtorDecl{c->ctor, rename_type(c->arg, renaming),
                               renamed(c->result, renaming)},
                      it.loc});
    }
    out.blocks.push_back(std::move(nb));
  }
  return out;
}

Expr rename_sorts(const Expr& e, const std::map<Name, Name>& r) {
  const SourceLoc& loc = e.loc();
  if (auto l = e.as<Expr::Lam>())
    return Expr::lam(l->var, rename_sorts(l->body, r), loc);
  if (auto a = e.as<Expr::App>())
    return Expr::app(rename_sorts(a->fn, r), rename_sorts(a->arg, r), loc);
  if (auto p = e.as<Expr::Pair>())
    return Expr::pair(rename_sorts(p->left, r), rename_sorts(p->right, r), loc);
  if (auto c = e.as<Expr::Ctor>())
    return Expr::ctor(c->ctor, rename_sorts(c->arg, r), loc);
  if (auto cs = e.as<Expr::Case>()) {
    Matches arms;
    for (const auto& arm : cs->arms)
      arms.push_back(Arm{arm.pattern, rename_sorts(arm.body, r)});
    return Expr::case_(rename_sorts(cs->scrutinee, r), std::move(arms), loc);
  }
  if (auto d = e.as<Expr::Declare>())
    return Expr::declare(rename_sorts(d->ext, r), rename_sorts(d->body, r),
                         loc);
  if (auto an = e.as<Expr::Anno>()) {
    std::vector<Type> ts;
    for (const auto& t : an->types) ts.push_back(rename_type(t, r));
    return Expr::anno(rename_sorts(an->body, r), std::move(ts), loc);
  }
  return e;
}

}  // namespace sortc
