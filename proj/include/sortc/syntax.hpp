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

#ifndef SORTC_SYNTAX_HPP_
#define SORTC_SYNTAX_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sortc {

using Name = std::string;

/** Source position used only for diagnostics; never part of equality. */
struct SourceLoc {
  int line = 0;
  int col = 0;
  int length = 0;
};

// ---------------------------------------------------------------------------
// Unrefined types: unit, arrows, products and datatype names.

struct UTypeNode;

class UType {
 public:
  struct Unit {};
  struct Arrow;
  struct Prod;
  struct Data {
    Name name;
  };

  static UType unit();
  static UType arrow(UType dom, UType cod);
  static UType prod(UType left, UType right);
  static UType data(Name name);

  const UTypeNode& node() const { return *node_; }
  template <typename T>
  const T* as() const;

  friend bool operator==(const UType& a, const UType& b);
  friend bool operator<(const UType& a, const UType& b);

 private:
  explicit UType(std::shared_ptr<const UTypeNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const UTypeNode> node_;
};

struct UType::Arrow {
  UType dom, cod;
};
struct UType::Prod {
  UType left, right;
};

struct UTypeNode {
  std::variant<UType::Unit, UType::Arrow, UType::Prod, UType::Data> v;
};

template <typename T>
const T* UType::as() const {
  return std::get_if<T>(&node_->v);
}

struct UCtor {
  Name ctor;
  UType arg;
  Name result;

  friend bool operator==(const UCtor&, const UCtor&) = default;
};

/** Datatypes and their constructors; each constructor is declared once. */
struct UnrefinedSignature {
  std::vector<Name> datatypes;
  std::vector<UCtor> ctors;

  bool has_datatype(const Name& d) const;
  const UCtor* find_ctor(const Name& c) const;
  std::vector<UCtor> ctors_of(const Name& d) const;

  friend bool operator==(const UnrefinedSignature&,
                         const UnrefinedSignature&) = default;
};

// ---------------------------------------------------------------------------
// Refined types.

struct TypeNode;

class Type {
 public:
  struct Unit {};
  struct Arrow;
  struct Prod;
  struct Sort {
    Name name;
  };
  struct Intersect;

  static Type unit();
  static Type arrow(Type dom, Type cod);
  static Type prod(Type left, Type right);
  static Type sort(Name name);
  static Type intersect(Type left, Type right);

  const TypeNode& node() const { return *node_; }
  const void* identity() const { return node_.get(); }
  template <typename T>
  const T* as() const;
  bool is_intersect() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator<(const Type& a, const Type& b);

 private:
  explicit Type(std::shared_ptr<const TypeNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TypeNode> node_;
};

struct Type::Arrow {
  Type dom, cod;
};
struct Type::Prod {
  Type left, right;
};
struct Type::Intersect {
  Type left, right;
};

struct TypeNode {
  std::variant<Type::Unit, Type::Arrow, Type::Prod, Type::Sort,
               Type::Intersect>
      v;
};

template <typename T>
const T* Type::as() const {
  return std::get_if<T>(&node_->v);
}

// ---------------------------------------------------------------------------
// Signatures: ordered blocks of sort declarations, subsortings and
// constructor typings.

struct SortDecl {
  Name sort;
  Name refines;
  SourceLoc loc;

  friend bool operator==(const SortDecl& a, const SortDecl& b) {
    return a.sort == b.sort && a.refines == b.refines;
  }
};

struct SubsortDecl {
  Name sub, sup;
};

struct CtorDecl {
  Name ctor;
  Type arg;
  Name result;
};

struct BlockItem {
  std::variant<SubsortDecl, CtorDecl> v;
  SourceLoc loc;

  const SubsortDecl* subsort() const { return std::get_if<SubsortDecl>(&v); }
  const CtorDecl* ctor() const { return std::get_if<CtorDecl>(&v); }
  friend bool operator==(const BlockItem& a, const BlockItem& b);
  friend bool operator<(const BlockItem& a, const BlockItem& b);
};

struct Block {
  std::vector<SortDecl> sorts;
  std::vector<BlockItem> items;
  SourceLoc loc;

  bool declares(const Name& s) const;

  /** Item order is irrelevant; duplicate items are idempotent. */
  friend bool operator==(const Block& a, const Block& b);
};

struct Signature {
  std::vector<Block> blocks;

  bool empty() const { return blocks.empty(); }
  Signature extended(const Signature& ext) const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

// ---------------------------------------------------------------------------
// Patterns.

struct PatternNode;

class Pattern {
 public:
  struct Wild {};
  struct Empty {};
  struct Unit {};
  struct Ctor;
  struct Pair;
  struct As;
  struct Or;

  static Pattern wild();
  static Pattern empty();
  static Pattern unit();
  static Pattern ctor(Name c, Pattern arg);
  static Pattern pair(Pattern left, Pattern right);
  static Pattern bind(Name var, Pattern inner);
  static Pattern or_(Pattern left, Pattern right);

  const PatternNode& node() const { return *node_; }
  template <typename T>
  const T* as() const;
  template <typename T>
  bool is() const {
    return as<T>() != nullptr;
  }

  friend bool operator==(const Pattern& a, const Pattern& b);

 private:
  explicit Pattern(std::shared_ptr<const PatternNode> n)
      : node_(std::move(n)) {}
  std::shared_ptr<const PatternNode> node_;
};

struct Pattern::Ctor {
  Name ctor;
  Pattern arg;
};
struct Pattern::Pair {
  Pattern left, right;
};
struct Pattern::As {
  Name var;
  Pattern inner;
};
struct Pattern::Or {
  Pattern left, right;
};

struct PatternNode {
  std::variant<Pattern::Wild, Pattern::Empty, Pattern::Unit, Pattern::Ctor,
               Pattern::Pair, Pattern::As, Pattern::Or>
      v;
};

template <typename T>
const T* Pattern::as() const {
  return std::get_if<T>(&node_->v);
}

/** As-variables bound by a pattern, left to right. */
std::vector<Name> pattern_vars(const Pattern& p);

// ---------------------------------------------------------------------------
// Expressions.

struct ExprNode;
struct Arm;

class Expr {
 public:
  struct Var {
    Name name;
  };
  struct Lam;
  struct App;
  struct Pair;
  struct Unit {};
  struct Ctor;
  struct Case;
  struct Declare;
  struct Anno;

  static Expr var(Name x, SourceLoc loc = {});
  static Expr lam(Name x, Expr body, SourceLoc loc = {});
  static Expr app(Expr fn, Expr arg, SourceLoc loc = {});
  static Expr pair(Expr left, Expr right, SourceLoc loc = {});
  static Expr unit(SourceLoc loc = {});
  static Expr ctor(Name c, Expr arg, SourceLoc loc = {});
  static Expr case_(Expr scrutinee, std::vector<Arm> arms, SourceLoc loc = {});
  static Expr declare(Signature ext, Expr body, SourceLoc loc = {});
  static Expr anno(Expr body, std::vector<Type> types, SourceLoc loc = {});

  const ExprNode& node() const { return *node_; }
  const SourceLoc& loc() const;
  const void* identity() const { return node_.get(); }
  std::shared_ptr<const ExprNode> shared() const { return node_; }
  template <typename T>
  const T* as() const;
  template <typename T>
  bool is() const {
    return as<T>() != nullptr;
  }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct Arm {
  Pattern pattern;
  Expr body;

  friend bool operator==(const Arm&, const Arm&) = default;
};

using Matches = std::vector<Arm>;

struct Expr::Lam {
  Name var;
  Expr body;
};
struct Expr::App {
  Expr fn, arg;
};
struct Expr::Pair {
  Expr left, right;
};
struct Expr::Ctor {
  Name ctor;
  Expr arg;
};
struct Expr::Case {
  Expr scrutinee;
  Matches arms;
};
struct Expr::Declare {
  Signature ext;
  Expr body;
};
struct Expr::Anno {
  Expr body;
  std::vector<Type> types;
};

struct ExprNode {
  std::variant<Expr::Var, Expr::Lam, Expr::App, Expr::Pair, Expr::Unit,
               Expr::Ctor, Expr::Case, Expr::Declare, Expr::Anno>
      v;
  SourceLoc loc;
};

template <typename T>
const T* Expr::as() const {
  return std::get_if<T>(&node_->v);
}

// ---------------------------------------------------------------------------
// Contexts, substitutions and tracks.

/** Ordered variable typings; the rightmost binding of a name wins. */
class Context {
 public:
  Context() = default;
  Context(std::initializer_list<std::pair<Name, Type>> init)
      : entries_(init) {}

  void push(Name x, Type a) { entries_.emplace_back(std::move(x), std::move(a)); }
  Context extended(const Context& more) const;
  const Type* lookup(const Name& x) const;
  const std::vector<std::pair<Name, Type>>& entries() const {
    return entries_;
  }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const Context&, const Context&) = default;

 private:
  std::vector<std::pair<Name, Type>> entries_;
};

using Substitution = std::map<Name, Expr>;

/** One obligation produced by intersecting a type with a pattern. */
struct Track {
  Signature ext;  // always empty here
  Context bindings;
  Type residual;

  friend bool operator==(const Track&, const Track&) = default;
};

// ---------------------------------------------------------------------------
// Term operations.

bool is_value(const Expr& e);
std::set<Name> free_vars(const Expr& e);
Expr subst(const Substitution& theta, const Expr& e);
Expr erase(const Expr& e);
std::size_t expr_size(const Expr& e);

}  // namespace sortc

#endif  // SORTC_SYNTAX_HPP_
