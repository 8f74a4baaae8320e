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

#include "sortc/signatures.hpp"

#include <set>

#include "sortc/surface.hpp"
#include "sortc/subtyping.hpp"

namespace sortc {

// ---------------------------------------------------------------------------
// SubsortClosure

SubsortClosure SubsortClosure::lenient(const Signature& sig) {
  SubsortClosure c;
  for (const auto& s : dom(sig)) {
    if (c.index_.emplace(s, c.sorts_.size()).second) c.sorts_.push_back(s);
  }
  std::size_t n = c.sorts_.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& b : sig.blocks) {
    for (const auto& it : b.items) {
      auto e = it.subsort();
      if (!e) continue;
      auto from = c.index_.find(e->sub), to = c.index_.find(e->sup);
      if (from == c.index_.end() || to == c.index_.end()) continue;
      succ[from->second].push_back(to->second);
    }
  }
  c.reach_.assign(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    c.reach_[s][s] = true;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : succ[u]) {
        if (!c.reach_[s][v]) {
          c.reach_[s][v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return c;
}

bool SubsortClosure::holds(const Name& sub, const Name& sup) const {
  auto a = index_.find(sub), b = index_.find(sup);
  if (a == index_.end() || b == index_.end()) return false;
  return reach_[a->second][b->second];
}

std::vector<std::pair<Name, Name>> SubsortClosure::pairs() const {
  std::vector<std::pair<Name, Name>> out;
  for (std::size_t i = 0; i < sorts_.size(); ++i)
    for (std::size_t j = 0; j < sorts_.size(); ++j)
      if (reach_[i][j]) out.emplace_back(sorts_[i], sorts_[j]);
  return out;
}

std::vector<Name> dom(const Signature& sig) {
  std::vector<Name> out;
  for (const auto& b : sig.blocks)
    for (const auto& d : b.sorts) out.push_back(d.sort);
  return out;
}

SubsortClosure subsort_closure(const Signature& sig) {
  auto names = dom(sig);
  std::set<Name> known(names.begin(), names.end());
  for (const auto& b : sig.blocks) {
    for (const auto& it : b.items) {
      auto e = it.subsort();
      if (!e) continue;
      for (const Name* s : {&e->sub, &e->sup}) {
        if (!known.count(*s))
          throw Error(make_diagnostic("UNDECLARED_SORT",
                                      "sort '" + *s + "' is not declared",
                                      it.loc));
      }
    }
  }
  return SubsortClosure::lenient(sig);
}

// ---------------------------------------------------------------------------
// SigEnv

SigEnv::SigEnv(Signature sig, SubtypeMode mode)
    : sig_(std::move(sig)), mode_(mode) {
  closure_ = SubsortClosure::lenient(sig_);
  for (const auto& b : sig_.blocks) {
    for (const auto& d : b.sorts) refines_.emplace(d.sort, d.refines);
    for (const auto& it : b.items)
      if (auto c = it.ctor())
        typings_.push_back(CtorTyping{c->ctor, c->arg, c->result});
  }
}

std::shared_ptr<const SigEnv> SigEnv::extend(const Signature& ext) const {
  return std::make_shared<SigEnv>(sig_.extended(ext), mode_);
}

const Name* SigEnv::datatype_of(const Name& s) const {
  auto it = refines_.find(s);
  return it == refines_.end() ? nullptr : &it->second;
}

std::vector<CtorTyping> SigEnv::typings_of(const Name& c) const {
  std::vector<CtorTyping> out;
  for (const auto& t : typings_)
    if (t.ctor == c) out.push_back(t);
  return out;
}

// ---------------------------------------------------------------------------
// Refinement and well-formedness

std::optional<UType> refined_type(const SigEnv& env, const Type& a) {
  if (a.as<Type::Unit>()) return UType::unit();
  if (auto s = a.as<Type::Sort>()) {
    const Name* d = env.datatype_of(s->name);
    if (!d) return std::nullopt;
    return UType::data(*d);
  }
  if (auto f = a.as<Type::Arrow>()) {
    auto dom = refined_type(env, f->dom), cod = refined_type(env, f->cod);
    if (!dom || !cod) return std::nullopt;
    return UType::arrow(*dom, *cod);
  }
  if (auto p = a.as<Type::Prod>()) {
    auto l = refined_type(env, p->left), r = refined_type(env, p->right);
    if (!l || !r) return std::nullopt;
    return UType::prod(*l, *r);
  }
  auto i = a.as<Type::Intersect>();
  auto l = refined_type(env, i->left), r = refined_type(env, i->right);
  if (!l || !r || !(*l == *r)) return std::nullopt;
  return l;
}

bool refines(const SigEnv& env, const Type& a, const UType& tau) {
  auto t = refined_type(env, a);
  return t && *t == tau;
}

bool refines(const Signature& sig, const Type& a, const UType& tau) {
  return refines(SigEnv(sig), a, tau);
}

bool type_wf(const SigEnv& env, const Type& a) {
  if (a.as<Type::Unit>()) return true;
  if (auto s = a.as<Type::Sort>()) return env.has_sort(s->name);
  if (auto f = a.as<Type::Arrow>())
    return type_wf(env, f->dom) && type_wf(env, f->cod);
  if (auto p = a.as<Type::Prod>())
    return type_wf(env, p->left) && type_wf(env, p->right);
  auto i = a.as<Type::Intersect>();
  return type_wf(env, i->left) && type_wf(env, i->right) &&
         refined_type(env, a).has_value();
}

bool type_wf(const Signature& sig, const Type& a) {
  return type_wf(SigEnv(sig), a);
}

std::optional<Diagnostic> contype_problem(const SigEnv& env,
                                          const UnrefinedSignature& ursig,
                                          const Name& c, const Type& arg,
                                          const Name& result) {
  const UCtor* u = ursig.find_ctor(c);
  if (!u)
    return make_diagnostic("UNKNOWN_CTOR",
                           "constructor '" + c + "' is not declared by any datatype");
  if (!type_wf(env, arg))
    return make_diagnostic("SCOPE", "ContypeArr: argument type " +
                                        print_type(arg) +
                                        " is not well-formed here");
  if (!env.has_sort(result))
    return make_diagnostic("SCOPE", "ContypeArr: result sort '" + result +
                                        "' is not in scope");
  auto tau = refined_type(env, arg);
  if (!tau || !(*tau == u->arg) || *env.datatype_of(result) != u->result)
    return make_diagnostic(
        "CTOR_MISMATCH", "ContypeArr: " + c + " : " + print_type(arg) +
                             " -> " + result + " does not refine " + c +
                             " : " + print_utype(u->arg) + " -> " + u->result);
  return std::nullopt;
}

bool contype_wf(const Signature& sig, const Name& c, const Type& arg,
                const Name& result, const UnrefinedSignature& ursig) {
  return !contype_problem(SigEnv(sig), ursig, c, arg, result).has_value();
}

// ---------------------------------------------------------------------------
// Block checks

namespace {

Signature with_block(const Signature& prefix, const Block& block) {
  Signature s = prefix;
  s.blocks.push_back(block);
  return s;
}

bool safe_under(const SigEnv& prefix_env, const SigEnv& full, const Name& c,
                const Type& arg, const Name& result, const Name& t) {
  for (const auto& old : prefix_env.typings_of(c)) {
    if (full.subsort(old.result, t) && full.subsort(result, old.result) &&
        subtype(full, arg, old.arg))
      return true;
  }
  return false;
}

bool in_scope(const std::set<Name>& prefix_dom, const Block& block,
              const Name& s) {
  return prefix_dom.count(s) || block.declares(s);
}

std::vector<Diagnostic> check_block(const Signature& prefix,
                                    const Block& block,
                                    const UnrefinedSignature& ursig) {
  std::vector<Diagnostic> out;
  SigEnv before(prefix);
  SigEnv after(with_block(prefix, block));
  auto prefix_names = dom(prefix);
  std::set<Name> prefix_dom(prefix_names.begin(), prefix_names.end());

  std::set<Name> seen;
  for (const auto& d : block.sorts) {
    if (prefix_dom.count(d.sort) || !seen.insert(d.sort).second)
      out.push_back(make_diagnostic(
          "DUPSORT", "SigBlock: sort '" + d.sort + "' is already declared",
          d.loc));
    if (!ursig.has_datatype(d.refines))
      out.push_back(make_diagnostic("UNKNOWN_DATATYPE",
                                    "SigBlock: sort '" + d.sort +
                                        "' refines unknown datatype '" +
                                        d.refines + "'",
                                    d.loc));
  }

  for (const auto& it : block.items) {
    if (auto e = it.subsort()) {
      bool ok = true;
      for (const Name* s : {&e->sub, &e->sup}) {
        if (!in_scope(prefix_dom, block, *s)) {
          out.push_back(make_diagnostic(
              "SCOPE", "BlockSubsort: sort '" + *s + "' is not in scope",
              it.loc));
          ok = false;
        }
      }
      if (ok) {
        const Name* d1 = after.datatype_of(e->sub);
        const Name* d2 = after.datatype_of(e->sup);
        if (d1 && d2 && *d1 != *d2)
          out.push_back(make_diagnostic(
              "SUBSORT_DATATYPE",
              "BlockSubsort: " + e->sub + " <= " + e->sup +
                  " relates sorts of different datatypes " + *d1 + " and " +
                  *d2,
              it.loc));
      }
      continue;
    }
    auto c = it.ctor();
    if (!block.declares(c->result)) {
      out.push_back(make_diagnostic(
          "SCOPE", "BlockCon: constructor typing " + c->ctor + " : " +
                       print_type(c->arg) + " -> " + c->result +
                       " must target a sort declared in this block",
          it.loc));
      continue;
    }
    if (auto bad = contype_problem(after, ursig, c->ctor, c->arg, c->result)) {
      bad->span = it.loc;
      out.push_back(*bad);
      continue;
    }
    for (const auto& t : prefix_names) {
      if (!after.subsort(c->result, t)) continue;
      if (!safe_under(before, after, c->ctor, c->arg, c->result, t)) {
        Diagnostic d = make_diagnostic(
            "UNSAFE_CTOR", "SafeConAt: " + c->ctor + " : " +
                               print_type(c->arg) + " -> " + c->result +
                               " adds new values to existing sort '" + t + "'",
            it.loc);
        d.extra.emplace_back("sort", t);
        out.push_back(d);
      }
    }
  }

  for (const auto& t1 : prefix_names) {
    for (const auto& t2 : prefix_names) {
      if (before.subsort(t1, t2) != after.subsort(t1, t2)) {
        Diagnostic d = make_diagnostic(
            "SUBSORT_BACKPATCH", "SigBlock: block makes " + t1 + " <= " + t2 +
                                     " hold between previously declared sorts",
            block.loc);
        d.extra.emplace_back("sub", t1);
        d.extra.emplace_back("sup", t2);
        out.push_back(d);
      }
    }
  }
  return out;
}

}  // namespace

bool safe_con_at(const Signature& prefix, const Block& block, const Name& c,
                 const Type& arg, const Name& result, const Name& t) {
  SigEnv before(prefix);
  SigEnv after(with_block(prefix, block));
  return safe_under(before, after, c, arg, result, t);
}

bool block_elem_ok(const Signature& prefix, const Block& block,
                   const BlockItem& item, const UnrefinedSignature& ursig) {
  auto prefix_names = dom(prefix);
  std::set<Name> prefix_dom(prefix_names.begin(), prefix_names.end());
  if (auto e = item.subsort())
    return in_scope(prefix_dom, block, e->sub) &&
           in_scope(prefix_dom, block, e->sup);
  auto c = item.ctor();
  if (!block.declares(c->result)) return false;
  SigEnv before(prefix);
  SigEnv after(with_block(prefix, block));
  if (contype_problem(after, ursig, c->ctor, c->arg, c->result)) return false;
  for (const auto& t : prefix_names) {
    if (after.subsort(c->result, t) &&
        !safe_under(before, after, c->ctor, c->arg, c->result, t))
      return false;
  }
  return true;
}

std::vector<Diagnostic> check_extension(const Signature& base,
                                        const Signature& ext,
                                        const UnrefinedSignature& ursig) {
  std::vector<Diagnostic> out;
  Signature prefix = base;
  for (const auto& b : ext.blocks) {
    auto diags = check_block(prefix, b, ursig);
    out.insert(out.end(), diags.begin(), diags.end());
    prefix.blocks.push_back(b);
  }
  return out;
}

std::vector<Diagnostic> sig_wf(const Signature& sig,
                               const UnrefinedSignature& ursig) {
  return check_extension(Signature{}, sig, ursig);
}

namespace {

void unknown_datatypes(const UnrefinedSignature& ursig, const UType& t,
                       const Name& ctor, std::vector<Diagnostic>& out) {
  if (auto d = t.as<UType::Data>()) {
    if (!ursig.has_datatype(d->name))
      out.push_back(make_diagnostic("UNKNOWN_DATATYPE",
                                    "constructor '" + ctor +
                                        "' mentions unknown datatype '" +
                                        d->name + "'"));
  } else if (auto a = t.as<UType::Arrow>()) {
    unknown_datatypes(ursig, a->dom, ctor, out);
    unknown_datatypes(ursig, a->cod, ctor, out);
  } else if (auto p = t.as<UType::Prod>()) {
    unknown_datatypes(ursig, p->left, ctor, out);
    unknown_datatypes(ursig, p->right, ctor, out);
  }
}

}  // namespace

std::vector<Diagnostic> ursig_wf(const UnrefinedSignature& ursig) {
  std::vector<Diagnostic> out;
  std::set<Name> datas, ctors;
  for (const auto& d : ursig.datatypes)
    if (!datas.insert(d).second)
      out.push_back(make_diagnostic("DUPDATA",
                                    "datatype '" + d + "' is declared twice"));
  for (const auto& c : ursig.ctors) {
    if (!ctors.insert(c.ctor).second)
      out.push_back(make_diagnostic(
          "DUPCTOR", "constructor '" + c.ctor + "' is declared twice"));
    if (!datas.count(c.result))
      out.push_back(make_diagnostic("UNKNOWN_DATATYPE",
                                    "constructor '" + c.ctor +
                                        "' builds unknown datatype '" +
                                        c.result + "'"));
    unknown_datatypes(ursig, c.arg, c.ctor, out);
  }
  return out;
}

}  // namespace sortc
