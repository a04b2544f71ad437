#pragma once

#include <cstdint>
#include <random>

#include "compmod/category.hpp"
#include "compmod/grothendieck.hpp"
#include "compmod/model.hpp"
#include "compmod/simulation.hpp"

namespace compmod {

/// Deterministic source of randomness for instance generation. All draws go
/// through explicit modulo arithmetic on the engine output, so sequences are
/// reproducible across platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish value in [0, n); n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  /// Value in [lo, hi] inclusive.
  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + below(hi - lo + 1);
  }
  bool chance(std::size_t percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

struct ModelGenOptions {
  std::size_t max_types = 3;
  std::size_t max_elements = 3;
  std::size_t seed_functions = 3;  // functions drawn before closure
  bool total_only = false;
  bool allow_empty_data = false;
};

/// Random valid model: random data types, a few random seed functions,
/// closed under composition with identities added.
Model gen_model(Rng& rng, const ModelGenOptions& opts = {});

/// Random valid model plus its diagonal presheaf-simulation. The model's
/// functions are all total.
std::pair<Model, PresheafSimulation> gen_diagonal_instance(Rng& rng);

/// Random valid simulation out of C whose forcing is the graph of an
/// injective choice function; the target model is built around the embedded
/// functions (plus optional noise) so validity holds by construction.
Simulation gen_realized_simulation(Rng& rng, const Model& C,
                                   bool full_target = false);

/// Composable chain of `length` valid simulations starting from a random
/// model. Identity simulations are mixed in occasionally.
std::vector<Simulation> gen_simulation_chain(Rng& rng, std::size_t length);

/// Random valid presheaf-simulation on m: single-forcer core plus extra
/// forcing pairs kept only when the result stays valid.
PresheafSimulation gen_presheaf_simulation(Rng& rng, const Model& m);

/// Random valid model guaranteed left-regular at the returned type: all
/// constant functions out of it are included before closure.
std::pair<Model, TypeName> gen_left_regular_model(Rng& rng);

struct CategoryInstance {
  FiniteCategory cat;
  Presheaf S;
};

/// Random category-with-presheaf for which the presheaf preserves pullbacks:
/// discrete categories, cyclic-group actions, chains and commuting squares
/// of posets with bijective transition maps.
CategoryInstance gen_category_instance(Rng& rng);

struct FibrationInstance {
  FiniteCategory catE;
  Presheaf S;
  FiniteCategory catB;
  Presheaf S_prime;
  FunctorData F;
};

/// Hand-built category-level fibrations (identity functors, projections to
/// the terminal category, product projections), kind selects the family.
FibrationInstance gen_fibration_instance(Rng& rng, std::size_t kind);

/// Instance for the pullback square: gamma into a full-hom target with
/// single-forcer forcing, delta the diagonal presheaf-simulation on the
/// target.
struct PullbackInstance {
  Simulation gamma;
  PresheafSimulation delta;
};

PullbackInstance gen_pullback_instance(Rng& rng);

}  // namespace compmod
