#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "compmod/partial_function.hpp"

namespace compmod {

using HomKey = std::pair<TypeName, TypeName>;

/// Finite computability model: type names, a data type per name, and
/// hom-classes of partial functions. A valid model contains every identity
/// and is closed under strict composition (see validate_model).
struct Model {
  std::vector<TypeName> type_names;  // sorted, unique
  std::map<TypeName, FiniteSet> data;
  std::map<HomKey, std::vector<PartialFunction>> homs;

  bool has_type(const TypeName& t) const;
  const FiniteSet& data_at(const TypeName& t) const;  // throws UnknownNameError
  const std::vector<PartialFunction>& homs_at(const TypeName& s,
                                              const TypeName& t) const;

  friend bool operator==(const Model&, const Model&) = default;
};

/// Normalizes: sorts and dedups type names, sorts each hom list canonically.
/// Extensional duplicates inside hom lists are kept; validate_model flags
/// them.
Model make_model(std::vector<TypeName> type_names,
                 std::map<TypeName, FiniteSet> data,
                 std::map<HomKey, std::vector<PartialFunction>> homs);

/// Reports structural problems (elements outside declared data types,
/// mistyped hom entries) as malformed-input, and axiom failures (missing
/// identity, missing composite, duplicate hom entry) with witnesses.
ValidationReport validate_model(const Model& m);

/// Smallest model whose hom-classes contain the input's plus all identities,
/// closed under composition. Throws MalformedInputError when the input is
/// structurally broken.
Model completion_close(const Model& m);

/// True iff every element of every data type is in the image of some
/// function in homs(t0, t). Throws UnknownNameError for unknown t0.
bool is_left_regular(const Model& m, const TypeName& t0);

/// Model whose hom-classes are all partial functions between the given data
/// types (the desk-scale stand-in for the model of sets and partial
/// functions).
Model full_model(std::vector<TypeName> type_names,
                 std::map<TypeName, FiniteSet> data);

std::string to_string(const Model& m);

}  // namespace compmod
