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

#include "sortc/metatheory.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>
#include <stdexcept>

#include "sortc/eval.hpp"
#include "sortc/patterns.hpp"
#include "sortc/subtyping.hpp"
#include "sortc/surface.hpp"

namespace sortc {

bool MetaReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed(); });
}

namespace {

// ---------------------------------------------------------------------------
// Fixtures.

constexpr const char* kBits = R"(
data bits { Empty : unit; One : bits; Zero : bits }
block (bits_s of bits, even of bits, odd of bits) {
  even <= bits_s; odd <= bits_s;
  Empty : unit -> even;
  One : even -> odd; One : odd -> even;
  Zero : even -> even; Zero : odd -> odd;
  One : bits_s -> bits_s; Zero : bits_s -> bits_s; Empty : unit -> bits_s;
}
in (fn b => One(b) : odd -> even) One(Empty())
)";

constexpr const char* kList = R"(
data list { Nil : unit; Cons : list }
block (list of list, empty of list) {
  empty <= list;
  Nil : unit -> empty;
  Cons : list -> list;
}
in (fn x => case x of { Nil() => () } : empty -> unit)
)";

constexpr const char* kListSubempty = R"(
block (subempty of list) {
  subempty <= empty;
  Nil : unit -> subempty;
}
)";

constexpr const char* kMutant = R"(
data bits { Empty : unit; One : bits; Zero : bits }
block (bits_s of bits, even of bits, odd of bits) {
  even <= bits_s; odd <= bits_s;
  Empty : unit -> even;
  One : even -> odd; One : odd -> even;
  Zero : even -> even; Zero : odd -> odd;
  One : bits_s -> bits_s; Zero : bits_s -> bits_s; Empty : unit -> bits_s;
}
in ((fn x => case x of { One(y) => y; Zero(z) => One(z) } : odd -> even)
    : bits_s -> even) Empty()
)";

struct Fixture {
  std::string name;
  std::string text;  // empty for generated signatures
  UnrefinedSignature ursig;
  Signature sig;
  std::optional<Expr> main;
  /** Set when main checks in the configured mode. */
  std::optional<Type> goal;
};

struct Verdict {
  enum Kind { Pass, Fail, Unknown, Skip } kind = Pass;
  std::string detail;
};

Verdict pass() { return {}; }
Verdict skip() { return {Verdict::Skip, {}}; }
Verdict fail(std::string why) { return {Verdict::Fail, std::move(why)}; }
Verdict unknown(std::string why) { return {Verdict::Unknown, std::move(why)}; }

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

template <typename T>
const T& pick_from(Rng& rng, const std::vector<T>& v) {
  return v[pick(rng, v.size())];
}

// FNV-1a, so seeds do not depend on the standard library's hash.
std::uint64_t mix(std::uint64_t seed, const std::string& name,
                  std::uint64_t i) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  auto feed = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ULL;
  };
  for (char c : name) feed(static_cast<unsigned char>(c));
  for (int k = 0; k < 8; ++k) feed(static_cast<unsigned char>(i >> (8 * k)));
  return h;
}

std::vector<Name> declared_sorts(const Signature& sig) { return dom(sig); }

std::string show(const Signature& sig) { return print_signature(sig); }

/** A first-order unrefined type over the given datatypes. */
UType gen_first_order(Rng& rng, const UnrefinedSignature& u, int depth) {
  std::size_t roll = pick(rng, depth <= 0 ? 3 : 5);
  if (roll == 0) return UType::unit();
  if (roll <= 2 || roll == 4)
    return UType::data(pick_from(rng, u.datatypes));
  return UType::prod(gen_first_order(rng, u, depth - 1),
                     gen_first_order(rng, u, depth - 1));
}

UType gen_any(Rng& rng, const UnrefinedSignature& u, int depth) {
  if (depth > 0 && pick(rng, 4) == 0)
    return UType::arrow(gen_any(rng, u, depth - 1), gen_any(rng, u, depth - 1));
  return gen_first_order(rng, u, depth);
}

std::vector<Expr> values_up_to(const SigEnv& env, const Type& a,
                               std::size_t max_size) {
  std::vector<Expr> out;
  for (std::size_t s = 1; s <= max_size; ++s)
    for (auto& v : values_of_size(env, a, s)) out.push_back(std::move(v));
  return out;
}

void subterms(const Expr& e, std::vector<Expr>& out) {
  out.push_back(e);
  if (auto x = e.as<Expr::Lam>()) subterms(x->body, out);
  if (auto x = e.as<Expr::App>()) subterms(x->fn, out), subterms(x->arg, out);
  if (auto x = e.as<Expr::Pair>())
    subterms(x->left, out), subterms(x->right, out);
  if (auto x = e.as<Expr::Ctor>()) subterms(x->arg, out);
  if (auto x = e.as<Expr::Case>()) {
    subterms(x->scrutinee, out);
    for (const auto& arm : x->arms) subterms(arm.body, out);
  }
  if (auto x = e.as<Expr::Declare>()) subterms(x->body, out);
  if (auto x = e.as<Expr::Anno>()) subterms(x->body, out);
}

std::vector<std::string> codes(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.code);
  return out;
}

// ---------------------------------------------------------------------------
// Shared state for all properties; read-only once built.

class World {
 public:
  explicit World(const MetaConfig& cfg) : cfg_(cfg) {
    add_text("builtin:bits", kBits);
    add_text("builtin:list", kList);
    add_text("builtin:mutant", kMutant);
    if (!cfg.corpus_dir.empty() && std::filesystem::is_directory(cfg.corpus_dir)) {
      std::vector<std::filesystem::path> files;
      for (const auto& entry :
           std::filesystem::directory_iterator(cfg.corpus_dir))
        if (entry.path().extension() == ".dsr") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        std::ifstream in(f);
        std::stringstream ss;
        ss << in.rdbuf();
        add_text(f.filename().string(), ss.str());
      }
    }
    UnrefinedSignature u = generator_ursig();
    for (std::uint64_t s = cfg.seed; generated_.size() < 8; ++s) {
      GenBounds b = cfg.bounds;
      auto g = gen_signature(s * 7919 + 13, b);
      if (!g.accepted() || dom(g.sig).size() < 2) continue;
      Fixture fx{"generated:" + std::to_string(s), "", u, g.sig, std::nullopt,
                 std::nullopt};
      generated_.push_back(fixtures_.size());
      fixtures_.push_back(std::move(fx));
    }

    auto list = parse_program(kList);
    auto ext = parse_signature(kListSubempty);
    list_ = Fixture{"builtin:list", kList, list.value->ursig, list.value->sig,
                    std::nullopt, std::nullopt};
    list_ext_ = *ext.value;
  }

  const MetaConfig& config() const { return cfg_; }
  CheckOptions options() const {
    CheckOptions o;
    if (cfg_.mutant) o.mode = SubtypeMode::CovariantArrowMutant;
    return o;
  }
  const std::vector<Fixture>& fixtures() const { return fixtures_; }
  const Fixture& any_fixture(Rng& rng) const {
    return fixtures_[pick(rng, fixtures_.size())];
  }
  const Fixture& generated_fixture(Rng& rng) const {
    return fixtures_[generated_[pick(rng, generated_.size())]];
  }
  const std::vector<const Fixture*>& checked() const { return checked_; }
  const std::vector<const Fixture*>& texts() const { return texts_; }
  const Fixture& list() const { return list_; }
  const Signature& list_ext() const { return list_ext_; }

  struct Sample {
    const Fixture* fx;
    Expr e;
    Type a;
  };

  /** Corpus programs first, then generated terms over random fixtures. */
  std::optional<Sample> term(std::uint64_t seed, std::size_t index) const {
    if (index < checked_.size()) {
      const Fixture* f = checked_[index];
      return Sample{f, *f->main, *f->goal};
    }
    Rng rng(seed);
    const Fixture& f = any_fixture(rng);
    SigEnv env(f.sig);
    Type a = rng() % 2 ? Type::arrow(gen_type(rng, env, 1), gen_type(rng, env, 1))
                       : gen_type(rng, env, 2);
    CheckSession s(f.ursig, f.sig, options());
    auto e = gen_typed_term(rng(), s, a, cfg_.bounds);
    if (!e) return std::nullopt;
    return Sample{&f, *e, a};
  }

  DeclarativeOracle oracle(const Fixture& f, const Signature& sig) const {
    return DeclarativeOracle(f.ursig, sig, cfg_.oracle_depth,
                             cfg_.oracle_budget);
  }

 private:
  void add_text(const std::string& name, const std::string& text) {
    auto p = parse_program(text);
    if (!p.ok()) return;
    if (!ursig_wf(p.value->ursig).empty()) return;
    Fixture fx{name, text, p.value->ursig, p.value->sig, p.value->main,
               std::nullopt};
    bool sig_ok = sig_wf(fx.sig, fx.ursig).empty();
    if (sig_ok) {
      auto out = check_program(*p.value, std::nullopt, options());
      if (out.ok()) fx.goal = out.type;
    }
    if (sig_ok) {
      fixtures_.push_back(std::move(fx));
    } else {
      rejected_.push_back(std::move(fx));
    }
    rebuild_views();
  }

  void rebuild_views() {
    checked_.clear();
    texts_.clear();
    for (const auto& f : fixtures_) {
      if (f.goal) checked_.push_back(&f);
      if (!f.text.empty()) texts_.push_back(&f);
    }
    for (const auto& f : rejected_) texts_.push_back(&f);
  }

 public:
  void finish() { rebuild_views(); }

 private:
  MetaConfig cfg_;
  std::vector<Fixture> fixtures_;
  std::vector<Fixture> rejected_;
  std::vector<std::size_t> generated_;
  std::vector<const Fixture*> checked_;
  std::vector<const Fixture*> texts_;
  Fixture list_;
  Signature list_ext_;
};

using Trial = std::function<Verdict(const World&, std::uint64_t, std::size_t)>;

struct Property {
  std::string name;
  Trial trial;
  int min_trials = 0;  // floor on top of the configured count
};

// ---------------------------------------------------------------------------
// Signature-level properties.

/** An accepted generated signature, or nothing for this seed. */
std::optional<Signature> accepted_base(std::uint64_t seed,
                                       const MetaConfig& cfg) {
  GenBounds b = cfg.bounds;
  b.max_sorts = 4;
  b.max_blocks = 2;
  auto g = gen_signature(seed, b);
  if (!g.accepted()) return std::nullopt;
  return g.sig;
}

Signature extension_of(Rng& rng, const Signature& base,
                       const UnrefinedSignature& u, const std::string& prefix,
                       const MetaConfig& cfg) {
  GenBounds b = cfg.bounds;
  b.max_sorts = static_cast<int>(dom(base).size()) + 3;
  b.max_ctor_typings = 4;
  return gen_extension(rng, base, u, prefix, 1 + static_cast<int>(pick(rng, 2)),
                       b);
}

Verdict closure_naive(const World& w, std::uint64_t seed, std::size_t) {
  GenBounds b = w.config().bounds;
  b.max_sorts = 8;
  auto g = gen_signature(seed, b);
  SubsortClosure c = SubsortClosure::lenient(g.sig);
  NaiveClosure n(g.sig);
  for (const auto& s : n.sorts())
    for (const auto& t : n.sorts())
      if (c.holds(s, t) != n.holds(s, t))
        return fail(s + " <= " + t + " in\n" + show(g.sig));
  return pass();
}

Verdict closure_conservation(const World& w, std::uint64_t seed,
                             std::size_t) {
  auto base = accepted_base(seed, w.config());
  if (!base) return skip();
  Rng rng(seed);
  UnrefinedSignature u = generator_ursig();
  Signature ext = extension_of(rng, *base, u, "t", w.config());
  if (!check_extension(*base, ext, u).empty()) return skip();
  SigEnv before(*base), after(base->extended(ext));
  for (const auto& s : dom(*base))
    for (const auto& t : dom(*base))
      if (before.subsort(s, t) != after.subsort(s, t))
        return fail(s + " <= " + t + " changed by\n" + show(ext) +
                    "\nover\n" + show(*base));
  return pass();
}

Verdict interleaving(const World& w, std::uint64_t seed, std::size_t) {
  auto base = accepted_base(seed, w.config());
  if (!base) return skip();
  Rng rng(seed);
  UnrefinedSignature u = generator_ursig();
  Signature later = extension_of(rng, *base, u, "p", w.config());
  Signature middle = extension_of(rng, *base, u, "q", w.config());
  if (!check_extension(*base, later, u).empty() ||
      !check_extension(*base, middle, u).empty())
    return skip();
  Signature all = base->extended(middle).extended(later);
  auto ds = sig_wf(all, u);
  if (!ds.empty()) return fail(ds.front().code + " on\n" + show(all));
  return pass();
}

Verdict nonadjacent_preservation(const World& w, std::uint64_t seed,
                                 std::size_t) {
  auto base = accepted_base(seed, w.config());
  if (!base) return skip();
  Rng rng(seed);
  UnrefinedSignature u = generator_ursig();
  Signature second = extension_of(rng, *base, u, "p", w.config());
  Signature third = extension_of(rng, *base, u, "q", w.config());
  if (!check_extension(*base, second, u).empty() ||
      !check_extension(*base, third, u).empty())
    return skip();
  Signature two = base->extended(second);
  SigEnv before(two), after(two.extended(third));
  for (const auto& s : dom(two))
    for (const auto& t : dom(two))
      if (before.subsort(s, t) != after.subsort(s, t))
        return fail(s + " <= " + t + " changed by\n" + show(third));
  return pass();
}

// ---------------------------------------------------------------------------
// Subtyping.

struct TypePool {
  std::vector<Type> types;
};

/** Well-formed types refining one random unrefined type. */
std::optional<TypePool> pool(Rng& rng, const SigEnv& env,
                             const UnrefinedSignature& u, int depth,
                             std::size_t n) {
  UType tau = gen_any(rng, u, depth);
  TypePool p;
  for (std::size_t i = 0; i < n * 2 && p.types.size() < n; ++i)
    if (auto t = gen_type_refining(rng, env, tau, depth)) {
      if (std::find(p.types.begin(), p.types.end(), *t) == p.types.end())
        p.types.push_back(*t);
    }
  if (p.types.empty()) return std::nullopt;
  return p;
}

std::shared_ptr<SigEnv> env_for(const World& w, const Signature& sig) {
  return std::make_shared<SigEnv>(sig, w.options().mode);
}

Verdict subtype_reference(const World& w, std::uint64_t seed, std::size_t) {
  Rng rng(seed);
  const Fixture& f = w.any_fixture(rng);
  auto env = env_for(w, f.sig);
  auto p = pool(rng, *env, f.ursig, 3, 6);
  if (!p) return skip();
  NaiveClosure n(f.sig);
  for (const auto& a : p->types)
    for (const auto& b : p->types)
      if (subtype(*env, a, b) != reference_subtype(n, a, b))
        return fail(print_type(a) + " <= " + print_type(b) + " under " +
                    f.name);
  return pass();
}

Verdict subtype_reflexivity(const World& w, std::uint64_t seed, std::size_t) {
  Rng rng(seed);
  const Fixture& f = w.any_fixture(rng);
  auto env = env_for(w, f.sig);
  Type a = gen_type(rng, *env, 3);
  if (!type_wf(*env, a)) return fail("generated ill-formed " + print_type(a));
  if (!subtype(*env, a, a)) return fail(print_type(a) + " under " + f.name);
  return pass();
}

Verdict subtype_transitivity(const World& w, std::uint64_t seed, std::size_t) {
  Rng rng(seed);
  const Fixture& f = w.any_fixture(rng);
  auto env = env_for(w, f.sig);
  auto p = pool(rng, *env, f.ursig, 3, 12);
  if (!p) return skip();
  const auto& ts = p->types;
  auto above = [&](const Type& a) {
    std::vector<Type> out;
    for (const auto& t : ts)
      if (subtype(*env, a, t)) out.push_back(t);
    return out;
  };
  // Prefer chains of three distinct types when the pool has one.
  for (int tries = 0; tries < 8; ++tries) {
    const Type& a = pick_from(rng, ts);
    auto bs = above(a);
    if (bs.empty()) continue;
    const Type& b = pick_from(rng, bs);
    auto cs = above(b);
    if (cs.empty()) continue;
    const Type& c = pick_from(rng, cs);
    if (!subtype(*env, a, c))
      return fail(print_type(a) + " <= " + print_type(b) + " <= " +
                  print_type(c) + " under " + f.name);
    if (!(a == b) && !(b == c)) return pass();
  }
  return pass();
}

Verdict subtype_stability(const World& w, std::uint64_t seed, std::size_t) {
  auto base = accepted_base(seed, w.config());
  if (!base) return skip();
  Rng rng(seed);
  UnrefinedSignature u = generator_ursig();
  Signature ext = extension_of(rng, *base, u, "t", w.config());
  if (!check_extension(*base, ext, u).empty()) return skip();
  auto before = env_for(w, *base);
  auto after = env_for(w, base->extended(ext));
  auto p = pool(rng, *before, u, 3, 8);
  if (!p) return skip();
  for (const auto& a : p->types)
    for (const auto& b : p->types)
      if (subtype(*before, a, b) && !subtype(*after, a, b))
        return fail(print_type(a) + " <= " + print_type(b) + " lost after\n" +
                    show(ext));
  return pass();
}

// ---------------------------------------------------------------------------
// Patterns.

struct ValueCase {
  const Fixture* fx;
  std::shared_ptr<SigEnv> env;
  UType tau;
  Type a;
  Expr v;
};

std::optional<ValueCase> value_case(const World& w, Rng& rng,
                                    std::size_t max_size = 6) {
  const Fixture& f = w.any_fixture(rng);
  auto env = env_for(w, f.sig);
  UType tau = gen_first_order(rng, f.ursig, 2);
  auto a = gen_type_refining(rng, *env, tau, 2);
  if (!a) return std::nullopt;
  auto vs = values_up_to(*env, *a, max_size);
  if (vs.empty()) return std::nullopt;
  return ValueCase{&f, env, tau, *a, pick_from(rng, vs)};
}

Verdict dichotomy(const World& w, std::uint64_t seed, std::size_t) {
  Rng rng(seed);
  auto c = value_case(w, rng);
  if (!c) return skip();
  CheckSession s(c->fx->ursig, c->fx->sig, w.options());
  if (!s.check({}, c->v, c->a).ok())
    return fail("enumerated value " + print_expr(c->v) + " is not a " +
                print_type(c->a));
  Pattern p = gen_pattern(rng, c->fx->ursig, c->tau, 4);
  auto direct = match_value(p, c->v);
  auto other = match_value(complement(c->fx->ursig, c->tau, p), c->v);
  bool ok = direct ? !other : (other && other->empty());
  if (!ok)
    return fail(print_pattern(p) + " against " + print_expr(c->v));
  return pass();
}

Verdict pattern_intersection(const World& w, std::uint64_t seed,
                             std::size_t) {
  Rng rng(seed);
  auto c = value_case(w, rng);
  if (!c) return skip();
  for (int tries = 0; tries < 20; ++tries) {
    Pattern p1 = gen_pattern(rng, c->fx->ursig, c->tau, 4);
    Pattern p2 = gen_pattern(rng, c->fx->ursig, c->tau, 4);
    bool both = match_value(p1, c->v) && match_value(p2, c->v);
    bool meet = match_value(pat_intersect(p1, p2), c->v).has_value();
    if (both != meet)
      return fail(print_pattern(p1) + " & " + print_pattern(p2) +
                  " against " + print_expr(c->v));
    if (both) return pass();
  }
  return skip();
}

Verdict normalize_semantics(const World& w, std::uint64_t seed, std::size_t) {
  Rng rng(seed);
  auto c = value_case(w, rng);
  if (!c) return skip();
  Pattern p = gen_pattern(rng, c->fx->ursig, c->tau, 4);
  if (rng() % 2)
    p = pat_intersect(p, complement(c->fx->ursig, c->tau,
                                    gen_pattern(rng, c->fx->ursig, c->tau, 3)));
  bool before = match_value(p, c->v).has_value();
  bool after = match_value(normalize(p), c->v).has_value();
  if (before != after)
    return fail(print_pattern(p) + " vs " + print_pattern(normalize(p)) +
                " on " + print_expr(c->v));
  return pass();
}

Verdict intersect_covers(const World& w, std::uint64_t seed, std::size_t) {
  Rng rng(seed);
  auto c = value_case(w, rng, 5);
  if (!c) return skip();
  std::optional<Pattern> p;
  std::optional<Substitution> theta;
  for (int tries = 0; tries < 20 && !theta; ++tries) {
    p = gen_pattern(rng, c->fx->ursig, c->tau, 4);
    theta = match_value(*p, c->v);
  }
  if (!theta) return skip();
  CheckSession s(c->fx->ursig, c->fx->sig, w.options());
  auto oracle = w.oracle(*c->fx, c->fx->sig);
  bool unsure = false;
  for (const auto& t : intersect(*c->env, c->a, *p)) {
    if (!subtype(*c->env, t.residual, c->a)) continue;
    if (!s.check({}, c->v, t.residual).ok()) continue;
    if (!substitution_checks(s, *theta, t.bindings)) continue;
    auto o = oracle.typable({}, c->v, t.residual);
    if (o.verdict == Tri::Yes) return pass();
    if (o.verdict == Tri::Unknown) unsure = true;
  }
  std::string what = print_expr(c->v) + " : " + print_type(c->a) +
                     " against " + print_pattern(*p);
  return unsure ? unknown(what) : fail("no track covers " + what);
}

bool stronger(const SigEnv& env, const Track& strong, const Track& weak) {
  if (strong.bindings.size() != weak.bindings.size()) return false;
  for (const auto& [x, a] : strong.bindings.entries()) {
    const Type* b = weak.bindings.lookup(x);
    if (!b || !subtype(env, a, *b)) return false;
  }
  return subtype(env, strong.residual, weak.residual);
}

Verdict intersect_strengthening(const World& w, std::uint64_t seed,
                                std::size_t) {
  Rng rng(seed);
  const Fixture& f = w.list();
  auto base = env_for(w, f.sig);
  auto ext = env_for(w, f.sig.extended(w.list_ext()));
  UType tau = gen_first_order(rng, f.ursig, 1);
  auto a = gen_type_refining(rng, *base, tau, 2);
  if (!a) return skip();
  Pattern p = gen_pattern(rng, f.ursig, tau, 4);
  auto weak = intersect(*base, *a, p);
  for (const auto& t : intersect(*ext, *a, p)) {
    bool covered = std::any_of(weak.begin(), weak.end(), [&](const Track& u) {
      return stronger(*ext, t, u);
    });
    if (!covered)
      return fail(print_track(t) + " from " + print_type(*a) + " against " +
                  print_pattern(p));
  }
  return pass();
}

// ---------------------------------------------------------------------------
// Terms.

Verdict subst_laws(const World& w, std::uint64_t seed, std::size_t index) {
  auto s = w.term(seed, index);
  if (!s) return skip();
  if (!(subst({}, s->e) == s->e)) return fail("empty substitution changed " +
                                              print_expr(s->e));
  for (const auto& sub : [&] {
         std::vector<Expr> v;
         subterms(s->e, v);
         return v;
       }()) {
    if (is_value(sub) && !is_value(erase(sub)))
      return fail("erasing a value: " + print_expr(sub));
  }
  // Compose on an open pair of the term with two fresh variables.
  Expr open = Expr::pair(Expr::var("sx"), Expr::pair(Expr::var("sy"), s->e));
  Expr v = Expr::unit(), u = Expr::ctor("K", Expr::unit());
  Expr seq = subst({{"sy", u}}, subst({{"sx", v}}, open));
  Expr sim = subst({{"sx", v}, {"sy", u}}, open);
  if (!(seq == sim)) return fail("composition on " + print_expr(open));
  return pass();
}

Verdict roundtrip(const World& w, std::uint64_t seed, std::size_t index) {
  auto s = w.term(seed, index);
  if (!s) return skip();
  Program p{s->fx->ursig, s->fx->sig, s->e};
  std::string text = print_program(p);
  auto back = parse_program(text);
  if (!back.ok()) return fail("does not parse:\n" + text);
  if (!(*back.value == p)) return fail("differs after reparse:\n" + text);
  return pass();
}

Verdict diagnostic_spans(const World& w, std::uint64_t seed, std::size_t) {
  Rng rng(seed);
  const auto& texts = w.texts();
  std::string text = pick_from(rng, texts)->text;
  static const std::string kNoise = "(){};:|&*-><=_!x,A ";
  int edits = 1 + static_cast<int>(pick(rng, 3));
  for (int i = 0; i < edits && !text.empty(); ++i) {
    std::size_t at = pick(rng, text.size());
    switch (pick(rng, 3)) {
      case 0:
        text.erase(at, 1);
        break;
      case 1:
        text.insert(at, 1, kNoise[pick(rng, kNoise.size())]);
        break;
      default:
        text.erase(at, std::min<std::size_t>(text.size() - at, 1 + pick(rng, 8)));
    }
  }
  std::vector<std::string> lines;
  {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    if (lines.empty() || text.back() == '\n') lines.emplace_back();
  }
  std::vector<Diagnostic> ds;
  auto p = parse_program(text);
  ds = p.diagnostics;
  if (p.ok()) {
    auto out = check_program(*p.value, std::nullopt, w.options());
    ds.insert(ds.end(), out.diagnostics.begin(), out.diagnostics.end());
  }
  for (const auto& d : ds) {
    int line = d.span.line, col = d.span.col;
    bool inside = line >= 1 && line <= static_cast<int>(lines.size()) &&
                  col >= 1 &&
                  col <= static_cast<int>(lines[line - 1].size()) + 1;
    if (!inside)
      return fail(d.code + " at " + std::to_string(line) + ":" +
                  std::to_string(col) + " in\n" + text);
  }
  return pass();
}

Verdict typing_weakening(const World& w, std::uint64_t seed,
                         std::size_t index) {
  auto s = w.term(seed, index);
  if (!s) return skip();
  Rng rng(seed ^ 0x5bd1e995);
  Signature omega = extension_of(rng, s->fx->sig, s->fx->ursig, "w", w.config());
  if (!check_extension(s->fx->sig, omega, s->fx->ursig).empty()) return skip();
  CheckSession after(s->fx->ursig, s->fx->sig.extended(omega), w.options());
  auto out = after.check({}, s->e, s->a);
  if (!out.ok())
    return fail(print_expr(s->e) + " : " + print_type(s->a) + " lost (" +
                out.errors.front().code + ") after\n" + show(omega));
  return pass();
}

Verdict subsumption_coherence(const World& w, std::uint64_t seed,
                              std::size_t index) {
  auto s = w.term(seed, index);
  if (!s) return skip();
  Rng rng(seed);
  auto env = env_for(w, s->fx->sig);
  auto tau = refined_type(*env, s->a);
  std::vector<Type> ups;
  for (int i = 0; i < 12; ++i)
    if (auto b = gen_type_refining(rng, *env, *tau, 3))
      if (type_wf(*env, *b) && subtype(*env, s->a, *b)) ups.push_back(*b);
  if (ups.empty()) ups.push_back(s->a);
  const Type& b = pick_from(rng, ups);
  Expr e = Expr::anno(s->e, {s->a});
  CheckSession session(s->fx->ursig, s->fx->sig, w.options());
  if (!session.check({}, e, s->a).ok())
    return fail("annotated term no longer checks: " + print_expr(e));
  if (!session.check({}, e, b).ok())
    return fail(print_expr(e) + " fails against supertype " + print_type(b));
  return pass();
}

Verdict check_determinism(const World& w, std::uint64_t seed,
                          std::size_t index) {
  auto s = w.term(seed, index);
  if (!s) return skip();
  CheckOptions opts = w.options();
  CheckSession a(s->fx->ursig, s->fx->sig, opts);
  auto first = codes(a.check({}, s->e, s->a).errors);
  auto again = codes(a.check({}, s->e, s->a).errors);
  CheckSession fresh(s->fx->ursig, s->fx->sig, opts);
  auto third = codes(fresh.check({}, s->e, s->a).errors);
  opts.memoize = false;
  CheckSession plain(s->fx->ursig, s->fx->sig, opts);
  auto fourth = codes(plain.check({}, s->e, s->a).errors);
  if (first != again || first != third || first != fourth)
    return fail(print_expr(s->e));
  Expr anno = Expr::anno(s->e, {s->a});
  auto t1 = a.synth({}, anno).types, t2 = plain.synth({}, anno).types;
  if (t1 != t2) return fail("synth differs on " + print_expr(anno));
  return pass();
}

Verdict soundness(const World& w, std::uint64_t seed, std::size_t index) {
  auto s = w.term(seed, index);
  if (!s) return skip();
  auto oracle = w.oracle(*s->fx, s->fx->sig);
  Expr bare = erase(s->e);
  auto v = oracle.typable({}, bare, s->a);
  std::string what = print_expr(bare) + " : " + print_type(s->a);
  if (v.verdict == Tri::No) return fail("no derivation for " + what);
  if (v.verdict == Tri::Unknown) return unknown(what);
  return pass();
}

Verdict annotatability(const World& w, std::uint64_t seed,
                       std::size_t index) {
  auto s = w.term(seed, index);
  if (!s) return skip();
  auto oracle = w.oracle(*s->fx, s->fx->sig);
  Expr bare = erase(s->e);
  auto v = oracle.typable({}, bare, s->a);
  if (v.verdict == Tri::No) return skip();
  if (v.verdict == Tri::Unknown) return unknown(print_expr(bare));
  CheckSession session(s->fx->ursig, s->fx->sig, w.options());
  auto out = session.check({}, *v.annotated, s->a);
  if (!out.ok())
    return fail(print_expr(*v.annotated) + " : " + print_type(s->a) + " (" +
                out.errors.front().code + ")");
  return pass();
}

Verdict values_dont_step(const World& w, std::uint64_t seed,
                         std::size_t index) {
  auto s = w.term(seed, index);
  if (!s) return skip();
  std::vector<Expr> subs;
  subterms(s->e, subs);
  Rng rng(seed);
  auto env = env_for(w, s->fx->sig);
  for (auto& v : values_up_to(*env, gen_type(rng, *env, 1), 4))
    subs.push_back(std::move(v));
  for (const auto& e : subs)
    if (free_vars(e).empty() && is_value(e) && step(e))
      return fail(print_expr(e) + " steps");
  return pass();
}

Verdict step_determinism(const World& w, std::uint64_t seed,
                         std::size_t index) {
  auto s = w.term(seed, index);
  if (!s) return skip();
  Expr cur = s->e;
  for (int i = 0; i < 200; ++i) {
    auto a = step(cur), b = step(cur);
    if (a.has_value() != b.has_value() || (a && !(*a == *b)))
      return fail(print_expr(cur));
    if (!a) break;
    cur = *a;
  }
  auto kept = eval(s->e, 5000, AnnotationMode::Keep);
  auto erased = eval(s->e, 5000, AnnotationMode::Erase);
  if (kept.status == EvalStatus::Value && erased.status == EvalStatus::Value &&
      !(erase(kept.term) == erased.term))
    return fail("erasure changes the result of " + print_expr(s->e));
  return pass();
}

Verdict preservation(const World& w, std::uint64_t seed, std::size_t index) {
  auto s = w.term(seed, index);
  if (!s) return skip();
  Signature collected;
  int fresh = 0;
  StepOptions opts;
  opts.on_declare = [&](const Signature& ext, const Expr& body) {
    std::map<Name, Name> renaming;
    for (const auto& n : declared_sorts(ext))
      renaming[n] = "r" + std::to_string(++fresh) + "_" + n;
    Signature renamed = rename_sorts(ext, renaming);
    collected.blocks.insert(collected.blocks.end(), renamed.blocks.begin(),
                            renamed.blocks.end());
    return rename_sorts(body, renaming);
  };
  Expr cur = s->e;
  bool unsure = false;
  for (int i = 0; i < 40; ++i) {
    auto next = step(cur, opts);
    if (!next) break;
    Signature sig = s->fx->sig.extended(collected);
    CheckSession session(s->fx->ursig, sig, w.options());
    if (!session.check({}, *next, s->a).ok()) {
      auto oracle = w.oracle(*s->fx, sig);
      auto v = oracle.typable({}, erase(*next), s->a);
      if (v.verdict == Tri::No)
        return fail(print_expr(cur) + "\n  steps to " + print_expr(*next) +
                    "\n  which is not a " + print_type(s->a));
      if (v.verdict == Tri::Unknown) unsure = true;
    }
    cur = *next;
  }
  return unsure ? unknown(print_expr(s->e)) : pass();
}

Verdict progress(const World& w, std::uint64_t seed, std::size_t index) {
  auto s = w.term(seed, index);
  if (!s) return skip();
  auto r = eval(s->e, 5000, AnnotationMode::Keep);
  if (r.status == EvalStatus::Stuck)
    return fail(print_expr(s->e) + " gets stuck at " + print_expr(r.term));
  return pass();
}

Verdict decidability(const World& w, std::uint64_t seed, std::size_t index) {
  auto s = w.term(seed, index);
  if (!s) return skip();
  auto start = std::chrono::steady_clock::now();
  CheckSession session(s->fx->ursig, s->fx->sig, w.options());
  session.check({}, s->e, s->a);
  session.synth({}, Expr::anno(s->e, {s->a}));
  std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  if (took.count() > w.config().timeout_seconds)
    return fail(print_expr(s->e) + " took " + std::to_string(took.count()) +
                "s");
  return pass();
}

Verdict gen_self_check(const World& w, std::uint64_t seed, std::size_t) {
  Rng rng(seed);
  const Fixture& f = w.any_fixture(rng);
  SigEnv env(f.sig);
  Type a = gen_type(rng, env, 2);
  CheckSession gen(f.ursig, f.sig, w.options());
  auto e = gen_typed_term(rng(), gen, a, w.config().bounds);
  if (!e) return skip();
  CheckSession s(f.ursig, f.sig, w.options());
  if (!s.check({}, *e, a).ok())
    return fail(print_expr(*e) + " : " + print_type(a));
  return pass();
}

const std::vector<Property>& properties() {
  static const std::vector<Property> all = {
      {"subst_laws", subst_laws},
      {"roundtrip", roundtrip},
      {"diagnostic_spans", diagnostic_spans},
      {"closure_naive", closure_naive},
      {"closure_conservation", closure_conservation},
      {"interleaving", interleaving},
      {"nonadjacent_preservation", nonadjacent_preservation},
      {"subtype_reference", subtype_reference},
      {"subtype_reflexivity", subtype_reflexivity},
      {"subtype_transitivity", subtype_transitivity},
      {"subtype_stability", subtype_stability},
      {"dichotomy", dichotomy},
      {"pattern_intersection", pattern_intersection},
      {"normalize_semantics", normalize_semantics},
      {"intersect_covers", intersect_covers},
      {"intersect_strengthening", intersect_strengthening},
      {"typing_weakening", typing_weakening},
      {"subsumption_coherence", subsumption_coherence},
      {"check_determinism", check_determinism},
      {"soundness", soundness},
      {"annotatability", annotatability},
      {"values_dont_step", values_dont_step},
      {"step_determinism", step_determinism},
      {"preservation", preservation},
      {"progress", progress},
      {"decidability", decidability},
      {"gen_self_check", gen_self_check, 1000},
  };
  return all;
}

PropertyResult run_property(const World& w, const Property& p) {
  const MetaConfig& cfg = w.config();
  PropertyResult r;
  r.name = p.name;
  r.target = std::max(cfg.trials, p.min_trials);
  auto start = std::chrono::steady_clock::now();
  std::size_t limit = static_cast<std::size_t>(r.target) * 10;
  for (std::size_t i = 0; r.trials < r.target && i < limit; ++i) {
    Verdict v;
    try {
      v = p.trial(w, mix(cfg.seed, p.name, i), i);
    } catch (const std::exception& ex) {
      v = fail(std::string("exception: ") + ex.what());
    }
    if (v.kind == Verdict::Skip) continue;
    ++r.trials;
    if (v.kind == Verdict::Unknown) ++r.unknowns;
    if (v.kind == Verdict::Fail) {
      ++r.failures;
      if (r.counterexamples.size() < cfg.max_counterexamples)
        r.counterexamples.push_back(v.detail);
    }
  }
  std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  r.seconds = took.count();
  return r;
}

}  // namespace

std::vector<std::string> property_names() {
  std::vector<std::string> out;
  for (const auto& p : properties()) out.push_back(p.name);
  return out;
}

MetaReport run_metatheory(const MetaConfig& config) {
  std::vector<const Property*> selected;
  for (const auto& name : config.only) {
    auto it = std::find_if(properties().begin(), properties().end(),
                           [&](const Property& p) { return p.name == name; });
    if (it == properties().end())
      throw std::invalid_argument("unknown property: " + name);
  }
  for (const auto& p : properties())
    if (config.only.empty() ||
        std::find(config.only.begin(), config.only.end(), p.name) !=
            config.only.end())
      selected.push_back(&p);

  World world(config);
  world.finish();
  MetaReport report;
  if (config.parallel) {
    std::vector<std::future<PropertyResult>> jobs;
    for (const auto* p : selected)
      jobs.push_back(std::async(std::launch::async,
                                [&world, p] { return run_property(world, *p); }));
    for (auto& j : jobs) report.properties.push_back(j.get());
  } else {
    for (const auto* p : selected)
      report.properties.push_back(run_property(world, *p));
  }
  return report;
}

}  // namespace sortc
