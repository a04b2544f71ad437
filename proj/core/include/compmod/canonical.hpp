#pragma once

#include "compmod/category.hpp"
#include "compmod/model.hpp"
#include "compmod/simulation.hpp"

namespace compmod {

/// Total canonical model: type names are the objects, data types the values
/// of S, and homs(c1, c2) the deduplicated images of Hom(c1, c2) under S.
Model build_cm_total(const FiniteCategory& cat, const Presheaf& S);

struct CmPartialResult {
  Model model;
  /// (c1, c2, graph key) -> one witness partial arrow per induced function.
  std::map<std::tuple<std::string, std::string, std::string>, PartialArrow>
      provenance;
};

/// Partial canonical model: homs(c1, c2) are the partial functions induced
/// by partial arrows (i, f), with domain image(S(i)). Preconditions
/// (functoriality, pullback preservation, and the injectivity it forces) are
/// enforced; violations raise PreconditionError.
CmPartialResult build_cm_partial(const FiniteCategory& cat, const Presheaf& S);

/// Simulation induced by a functor F with S_prime . F = S: the type map is F
/// on objects and the forcing relations are diagonal. Throws
/// PreconditionError with a witness when S_prime . F != S.
Simulation simulation_from_functor(const FiniteCategory& catE,
                                   const Presheaf& S,
                                   const FiniteCategory& catB,
                                   const Presheaf& S_prime,
                                   const FunctorData& F);

std::string graph_key(const PartialFunction& f);

}  // namespace compmod
