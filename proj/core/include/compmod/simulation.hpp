#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "compmod/model.hpp"

namespace compmod {

/// Forcing pair (y, x): target-side y forces source-side x.
using ForcingPair = std::pair<Element, Element>;
using ForcingRelation = std::set<ForcingPair>;

/// Simulation between two models: a type-name map plus a forcing relation
/// per source type. Source and target models are carried by value; all
/// values are immutable after construction.
struct Simulation {
  Model source;
  Model target;
  std::map<TypeName, TypeName> type_map;
  std::map<TypeName, ForcingRelation> forcing;  // keyed by source type

  const TypeName& map_type(const TypeName& t) const;
  const ForcingRelation& forcing_at(const TypeName& t) const;
  bool forces(const TypeName& t, const Element& y, const Element& x) const;
};

/// Simulation into finite sets and partial functions: carries the sets
/// directly instead of a target model. Every partial function between the
/// carried sets counts as computable on the target side.
struct PresheafSimulation {
  Model source;
  std::map<TypeName, FiniteSet> sets;           // keyed by source type
  std::map<TypeName, ForcingRelation> forcing;  // keyed by source type

  const FiniteSet& set_at(const TypeName& t) const;
  const ForcingRelation& forcing_at(const TypeName& t) const;
  bool forces(const TypeName& t, const Element& y, const Element& x) const;
};

/// f_prime tracks f: forcing of inputs propagates through f_prime to forcing
/// of outputs, including definedness. Vacuously true when no pair qualifies.
/// Throws TypeMismatchError when f_prime is not typed between the images of
/// f's types.
bool tracks(const PartialFunction& f_prime, const PartialFunction& f,
            const Simulation& sim);

/// Presheaf variant: f_prime is typed (s, t) between sets(s) and sets(t).
bool tracks(const PartialFunction& f_prime, const PartialFunction& f,
            const PresheafSimulation& sim);

ValidationReport validate_simulation(const Simulation& sim);
ValidationReport validate_simulation(const PresheafSimulation& sim);

/// Minimal trackers of f: one value chosen per constrained y from the
/// intersection of admissible values, all combinations in canonical order.
/// Empty result iff no tracker exists. max_count caps the enumeration.
std::vector<PartialFunction> find_trackers(
    const PartialFunction& f, const PresheafSimulation& sim,
    std::size_t max_count = static_cast<std::size_t>(-1));

Simulation identity_simulation(const Model& m);

/// Composite delta . gamma with relational forcing composition. Requires
/// gamma.target == delta.source.
Simulation compose_simulations(const Simulation& delta,
                               const Simulation& gamma);

/// Composite of a presheaf-simulation after a simulation, materialized as a
/// presheaf-simulation on gamma's source.
PresheafSimulation compose_presheaf(const PresheafSimulation& delta,
                                    const Simulation& gamma);

/// Extensional equality of type maps and forcing relations. Requires the
/// same source and target models.
bool simulations_equal(const Simulation& s1, const Simulation& s2);
bool presheaf_simulations_equal(const PresheafSimulation& s1,
                                const PresheafSimulation& s2);

/// Diagonal presheaf-simulation: sets(t) = data(t), forcing is equality.
PresheafSimulation diagonal_presheaf(const Model& m);

/// Representable simulation at t0 on a valid left-regular model. Each
/// function in homs(t0, t) becomes one token "f#k" (k = canonical index);
/// the token tables and the canonical post-composition trackers g* are kept
/// alongside the simulation.
struct RepresentableSimulation {
  PresheafSimulation sim;
  /// Per type t: the functions of homs(t0, t), index-aligned with tokens.
  std::map<TypeName, std::vector<PartialFunction>> token_functions;
  /// Per hom key (s, t): g* for each g in homs(s, t), index-aligned.
  std::map<HomKey, std::vector<PartialFunction>> star_trackers;

  Element token_for(const TypeName& t, const PartialFunction& f) const;
};

RepresentableSimulation build_representable(const Model& m,
                                            const TypeName& t0);

/// Per type, a total choice function phi_t with phi_t(x) forcing x.
struct ForcingModulus {
  std::map<TypeName, PartialFunction> phi;
};

/// Per hom key, trackers index-aligned with the source hom-class.
struct TrackingModulus {
  std::map<HomKey, std::vector<PartialFunction>> mu;
};

/// phi_t(x) = canonically-first y forcing x. Precondition: sim valid.
ForcingModulus extract_forcing_modulus(const Simulation& sim);
ForcingModulus extract_forcing_modulus(const PresheafSimulation& sim);

/// mu(f) = canonically-first tracker (hom enumeration order for model
/// targets, find_trackers order for presheaf targets).
TrackingModulus extract_tracking_modulus(const Simulation& sim);
TrackingModulus extract_tracking_modulus(const PresheafSimulation& sim);

/// Builds the simulation with forcing y ⊩ x iff y = phi_t(x), after checking
/// the commuting-rectangle condition for every f and x in dom(f). Throws
/// PreconditionError with a witness (f, x) on rectangle violation.
Simulation realize_simulation(const std::map<TypeName, TypeName>& type_map,
                              const ForcingModulus& phi,
                              const TrackingModulus& mu, const Model& source,
                              const Model& target);

}  // namespace compmod
