#pragma once

#include <tuple>

#include "compmod/category.hpp"
#include "compmod/model.hpp"
#include "compmod/simulation.hpp"

namespace compmod {

/// Pair type name (t, b) with b a point of the presheaf-simulation set at t.
struct PairTypeName {
  TypeName base;
  Element point;

  std::string encoded() const { return encode_pair_name(base, point); }

  friend bool operator==(const PairTypeName&, const PairTypeName&) = default;
  friend auto operator<=>(const PairTypeName&, const PairTypeName&) = default;
};

/// The Grothendieck model of (C, gamma): pair type names, fibers of the
/// forcing relation as data types, and fiber-preserving functions of C,
/// materialized as restrictions between the fibers. hom_provenance maps each
/// restricted function back to one originating function of C.
struct GrothendieckModel {
  Model underlying;
  Model origin_model;
  PresheafSimulation origin_sim;
  std::vector<PairTypeName> pairs;
  std::map<TypeName, PairTypeName> pair_of;  // encoded name -> pair

  /// (src encoded, tgt encoded, graph key of the restriction) -> origin f.
  std::map<std::tuple<TypeName, TypeName, std::string>, PartialFunction>
      hom_provenance;

  const FiniteSet& fiber(const PairTypeName& p) const;
  const FiniteSet& fiber(const TypeName& encoded) const;
};

/// Builds the Grothendieck model. Requires gamma valid (checked).
GrothendieckModel build_grothendieck(const Model& C,
                                     const PresheafSimulation& gamma);

/// First-projection-simulation: pair names to their base, diagonal forcing
/// between C(t) and the fiber.
Simulation build_pr1(const GrothendieckModel& G);

/// One-type one-element identity-only model plus its identity
/// presheaf-simulation.
std::pair<Model, PresheafSimulation> terminal_model();

/// A simulation from any valid model to the terminal model (constant type
/// map, full forcing): the terminality witness.
Simulation simulation_to_terminal(const Model& m);

/// The lift square built from gamma: C -> D and delta (presheaf on D):
///
///   Sigma_C(delta.gamma) --lift--> Sigma_D(delta)
///        |pr1                          |pr1
///        v                             v
///        C ---------gamma------------> D
struct LiftSquare {
  Simulation gamma;
  PresheafSimulation delta;
  PresheafSimulation delta_gamma;
  GrothendieckModel sigma_source;  // over C and delta.gamma
  GrothendieckModel sigma_target;  // over D and delta
  Simulation lift;
  Simulation pr1_source;
  Simulation pr1_target;
};

LiftSquare build_lift_square(const Simulation& gamma,
                             const PresheafSimulation& delta);

/// Convenience: just the lifted simulation.
Simulation lift_simulation(const Simulation& gamma,
                           const PresheafSimulation& delta);

/// The mediating simulation into Sigma_C(delta.gamma) for a commuting outer
/// square (alpha: E -> C, beta: E -> Sigma_D(delta)). Checks commutativity
/// and fiber membership; throws PreconditionError with a witness otherwise.
Simulation mediating_simulation(const LiftSquare& square, const Model& E,
                                const Simulation& alpha,
                                const Simulation& beta);

struct PullbackReport {
  bool refused = false;
  std::string refusal_reason;
  bool square_commutes = false;
  bool triangles_commute = false;
  std::size_t mediator_count = 0;
  bool unique_mediator_matches = false;
  std::vector<std::string> witnesses;

  bool ok() const {
    return !refused && square_commutes && triangles_commute &&
           mediator_count == 1 && unique_mediator_matches;
  }
};

/// Enumerates every simulation E -> Sigma_C(delta.gamma) (all type maps x
/// all forcing subsets, filtered by validity) making both triangles commute,
/// and reports whether exactly one exists and equals mediating_simulation's
/// output. Refuses rather than hangs when sizes exceed the bound.
PullbackReport check_pullback_universal(const LiftSquare& square,
                                        const Model& E,
                                        const Simulation& alpha,
                                        const Simulation& beta,
                                        std::size_t bound);

struct StrictnessReport {
  bool identity_law = false;
  bool composition_law = false;
  std::vector<std::string> witnesses;

  bool ok() const { return identity_law && composition_law; }
};

/// Verifies the two strictness equations on the given chain
/// gamma: C -> D, delta: D -> E, epsilon a presheaf-simulation on E.
StrictnessReport check_strictness(const Simulation& gamma,
                                  const Simulation& delta,
                                  const PresheafSimulation& epsilon);

struct CompareReport {
  bool equal = false;
  std::vector<std::string> witnesses;
};

/// Builds the Grothendieck model of the partial canonical model over the
/// diagonal presheaf-simulation, and independently the partial canonical
/// model of the category of elements with the singleton presheaf; compares
/// the two under the canonical renaming.
CompareReport groth_canonical_compare(const FiniteCategory& cat,
                                      const Presheaf& S);

}  // namespace compmod
