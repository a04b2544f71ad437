#pragma once

#include "compmod/grothendieck.hpp"
#include "compmod/model.hpp"
#include "compmod/simulation.hpp"

namespace compmod {

/// Which way the value equation in the opcartesian hypothesis is read. The
/// printed definition composes one way in the domain clause and the other in
/// the value clause; Diagram follows the diagram (h after f_prime),
/// Transposed follows the printed value equation (f_prime after h, applicable
/// only when the base types line up).
enum class HypothesisReading { Diagram, Transposed };

struct FibrationContext {
  Model total;
  Model base;
  Simulation varpi;
};

/// Builds a context from a valid simulation (total = source, base = target).
FibrationContext make_fibration_context(const Simulation& varpi);

struct FillerKey {
  TypeName third_type;       // t'' of the definition
  std::size_t g_index;       // into total.homs for the opspan side
  std::size_t g_prime_index; // into base.homs, tracker of g
  std::size_t h_index;       // into base.homs, the comparison function

  friend auto operator<=>(const FillerKey&, const FillerKey&) = default;
};

struct CartesianResult {
  bool ok = true;
  std::string failure;
  /// Per admissible triple with at least one hypothesis point: the index of
  /// the canonically-first filler inside the relevant total hom-class, plus
  /// how many fillers exist.
  std::map<FillerKey, std::size_t> fillers;
  std::map<FillerKey, std::size_t> filler_counts;

  explicit operator bool() const { return ok; }
};

/// f (in total[t, t_prime]) is cartesian for f_prime (in base[s, s_prime])
/// and t_prime. Quantifiers run over the declared hom-classes; a filler is
/// demanded only for triples whose hypothesis is satisfiable, and the
/// conclusion is the Kleene reading (domains agree and values agree where
/// defined) at every hypothesis point.
CartesianResult is_cartesian(const FibrationContext& ctx,
                             const PartialFunction& f_prime,
                             const TypeName& t_prime, const PartialFunction& f,
                             HypothesisReading reading =
                                 HypothesisReading::Diagram);

/// Dual check: f (in total[t_prime, t]) is opcartesian for f_prime (in
/// base[s_prime, s]) and t_prime.
CartesianResult is_opcartesian(const FibrationContext& ctx,
                               const PartialFunction& f_prime,
                               const TypeName& t_prime,
                               const PartialFunction& f,
                               HypothesisReading reading =
                                   HypothesisReading::Diagram);

struct LiftEntry {
  TypeName total_type;        // the fixed endpoint t
  PartialFunction base_fn;    // the function asked to lift
  bool lifted = false;
  TypeName lift_other_type;   // source (fibration) or target (opfibration)
  PartialFunction lift;       // the canonically-first (op)cartesian lift
  std::size_t witness_count = 0;
};

struct FibrationReport {
  bool holds = false;
  std::vector<LiftEntry> entries;
  std::size_t readings_diverged = 0;  // entries whose verdict depends on the reading
};

FibrationReport is_fibration_simulation(const FibrationContext& ctx,
                                        HypothesisReading reading =
                                            HypothesisReading::Diagram);
FibrationReport is_opfibration_simulation(const FibrationContext& ctx,
                                          HypothesisReading reading =
                                              HypothesisReading::Diagram);

struct SplittingKey {
  PartialFunction base_fn;
  TypeName total_type;

  friend auto operator<=>(const SplittingKey&, const SplittingKey&) = default;
};

struct SplittingEntry {
  PartialFunction lift;
  TypeName other_endpoint;
};

/// Chosen lifts for every (base function, total type) pair, subject to the
/// identity and composition laws. For the fibration variant the lift is
/// stored as a function into the fixed type.
struct Splitting {
  enum class Variant { Fibration, Opfibration };
  Variant variant = Variant::Opfibration;
  std::map<SplittingKey, SplittingEntry> table;
};

struct SplittingBuildReport {
  Splitting splitting;
  bool degenerate = false;
  std::vector<std::string> notes;
};

/// Canonical splitting of pr1: the lift of f at (t, b) is the restriction of
/// f to the fiber, with the far point chosen through the canonical tracking
/// modulus where the fiber meets dom(f) and as the first point of the far
/// set otherwise.
SplittingBuildReport canonical_pr1_splitting(const GrothendieckModel& G);

struct SplittingReport {
  bool coverage = false;
  bool entries_cartesian = false;
  bool identity_law = false;
  bool composition_law = false;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;  // conventions applied, not failures

  bool ok() const {
    return coverage && entries_cartesian && identity_law && composition_law;
  }
};

SplittingReport validate_splitting(const FibrationContext& ctx,
                                   const Splitting& sp,
                                   HypothesisReading reading =
                                       HypothesisReading::Diagram);

}  // namespace compmod
