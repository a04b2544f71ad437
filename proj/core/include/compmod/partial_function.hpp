#pragma once

#include <map>
#include <string>
#include <vector>

#include "compmod/finite_set.hpp"
#include "compmod/validation.hpp"

namespace compmod {

/// Finite partial map between two named data types. The graph is a map, so
/// single-valuedness holds structurally; an empty graph (the everywhere
/// undefined function) is legal. Identity of a value includes its declared
/// source and target type names.
class PartialFunction {
 public:
  PartialFunction() = default;
  PartialFunction(TypeName source, TypeName target,
                  std::map<Element, Element> graph)
      : source_(std::move(source)),
        target_(std::move(target)),
        graph_(std::move(graph)) {}

  const TypeName& source_type() const { return source_; }
  const TypeName& target_type() const { return target_; }
  const std::map<Element, Element>& graph() const { return graph_; }

  bool defined_at(const Element& x) const { return graph_.count(x) != 0; }
  const Element& at(const Element& x) const;  // throws UnknownNameError
  bool empty() const { return graph_.empty(); }
  std::size_t domain_size() const { return graph_.size(); }

  std::vector<Element> domain() const;
  FiniteSet image() const;

  bool total_on(const FiniteSet& carrier) const;

  friend bool operator==(const PartialFunction&,
                         const PartialFunction&) = default;
  friend auto operator<=>(const PartialFunction&,
                          const PartialFunction&) = default;

 private:
  TypeName source_;
  TypeName target_;
  std::map<Element, Element> graph_;
};

/// Total function with graph {x -> x : x in s}, typed t -> t.
PartialFunction identity_partial(const FiniteSet& s, const TypeName& t);

/// Strict composition: x is in the domain iff both applications are defined.
/// Throws TypeMismatchError if f.target_type != g.source_type.
PartialFunction compose_partial(const PartialFunction& g,
                                const PartialFunction& f);

/// Graph filtered pointwise to sub_src on the left and sub_tgt on the right,
/// retyped to (new_src, new_tgt).
PartialFunction restrict_partial(const PartialFunction& f,
                                 const FiniteSet& sub_src,
                                 const FiniteSet& sub_tgt, TypeName new_src,
                                 TypeName new_tgt);

/// Extensional equality: same types, same graph.
bool partial_equal(const PartialFunction& f, const PartialFunction& g);

std::string to_string(const PartialFunction& f);

/// All partial functions src -> tgt in canonical order. Intended for desk
/// scale carriers; the count is (|tgt|+1)^|src|.
std::vector<PartialFunction> all_partial_functions(const FiniteSet& src,
                                                   const FiniteSet& tgt,
                                                   const TypeName& s,
                                                   const TypeName& t);

}  // namespace compmod
