#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "compmod/partial_function.hpp"

namespace compmod {

struct Arrow {
  std::string name;
  std::string src;
  std::string tgt;

  friend bool operator==(const Arrow&, const Arrow&) = default;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

/// Finite category given by explicit composition and identity tables.
struct FiniteCategory {
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  /// (g, f) -> g . f, for every composable pair (tgt(f) = src(g)).
  std::map<std::pair<std::string, std::string>, std::string> composition;
  std::map<std::string, std::string> identities;  // object -> identity arrow

  bool has_object(const std::string& c) const;
  const Arrow& arrow(const std::string& name) const;  // throws UnknownNameError
  std::vector<std::string> arrows_from_to(const std::string& a,
                                          const std::string& b) const;
  std::vector<std::string> arrows_into(const std::string& b) const;
  const std::string& compose(const std::string& g,
                             const std::string& f) const;  // names
  const std::string& id(const std::string& c) const;
};

/// Associativity, identity, and typing of the tables, with witnesses.
ValidationReport validate_category(const FiniteCategory& cat);

/// i is a monomorphism: i.a = i.b implies a = b for all parallel pairs.
bool is_mono(const FiniteCategory& cat, const std::string& arrow_name);

/// Covariant presheaf into finite sets: a total function per arrow.
struct Presheaf {
  std::map<std::string, FiniteSet> on_objects;
  std::map<std::string, PartialFunction> on_arrows;

  const FiniteSet& at(const std::string& c) const;
  const PartialFunction& map(const std::string& arrow_name) const;
};

ValidationReport validate_presheaf(const FiniteCategory& cat,
                                   const Presheaf& S);

/// A limit cone over the cospan (f: a -> c, g: b -> c): apex p with
/// projections to_left: p -> a and to_right: p -> b.
struct PullbackSquare {
  std::string apex;
  std::string to_left;
  std::string to_right;
};

/// All pullbacks of the cospan, by exhaustive cone search.
std::vector<PullbackSquare> pullbacks_of(const FiniteCategory& cat,
                                         const std::string& f,
                                         const std::string& g);

/// For every cospan whose pullback exists, the image square under S is a
/// pullback of finite sets (the canonical comparison map is a bijection).
bool preserves_pullbacks(const FiniteCategory& cat, const Presheaf& S);

/// (i, f): mono i: d -> c1 together with f: d -> c2.
struct PartialArrow {
  std::string mono;
  std::string map;

  friend bool operator==(const PartialArrow&, const PartialArrow&) = default;
  friend auto operator<=>(const PartialArrow&, const PartialArrow&) = default;
};

std::vector<PartialArrow> enumerate_partial_arrows(const FiniteCategory& cat,
                                                   const std::string& c1,
                                                   const std::string& c2);

struct FunctorData {
  std::map<std::string, std::string> on_objects;
  std::map<std::string, std::string> on_arrows;
};

ValidationReport validate_functor(const FiniteCategory& dom,
                                  const FiniteCategory& cod,
                                  const FunctorData& F);

/// g (an arrow into e_prime with F(g) = f) is cartesian over f and e_prime.
bool is_cat_cartesian(const FiniteCategory& catE, const FiniteCategory& catB,
                      const FunctorData& F, const std::string& g_name);

/// Every f: u -> F(e) admits a cartesian lift into e.
bool is_cat_fibration(const FiniteCategory& catE, const FiniteCategory& catB,
                      const FunctorData& F);

/// Category of elements of S over cat, with the singleton presheaf pr2.
/// Objects are encoded pair names; object_decode recovers (object, element).
struct ElementsCategory {
  FiniteCategory cat;
  Presheaf pr2;
  std::map<std::string, std::pair<std::string, Element>> object_decode;
};

ElementsCategory category_of_elements(const FiniteCategory& cat,
                                      const Presheaf& S);

/// Deterministic, collision-free encoding shared with the Grothendieck
/// module: "(base,point)" with escaped separators.
std::string encode_pair_name(const std::string& base, const std::string& point);

}  // namespace compmod
