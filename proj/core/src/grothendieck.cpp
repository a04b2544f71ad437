#include "compmod/grothendieck.hpp"

#include <algorithm>

#include "compmod/canonical.hpp"

namespace compmod {

namespace {

// The hom filter of the Grothendieck model, read off the raw forcing
// relation: every x in dom(f) forced by a has f(x) forced by b.
bool fiber_condition(const PresheafSimulation& gamma, const PartialFunction& f,
                     const PairTypeName& a, const PairTypeName& b) {
  for (const auto& [x, fx] : f.graph()) {
    if (gamma.forces(a.base, a.point, x) && !gamma.forces(b.base, b.point, fx)) {
      return false;
    }
  }
  return true;
}

}  // namespace

const FiniteSet& GrothendieckModel::fiber(const PairTypeName& p) const {
  return underlying.data_at(p.encoded());
}

const FiniteSet& GrothendieckModel::fiber(const TypeName& encoded) const {
  return underlying.data_at(encoded);
}

GrothendieckModel build_grothendieck(const Model& C,
                                     const PresheafSimulation& gamma) {
  if (!(gamma.source == C)) {
    throw PreconditionError(
        "build_grothendieck: simulation is not over the given model");
  }
  ValidationReport valid = validate_simulation(gamma);
  if (!valid.ok()) {
    throw PreconditionError("build_grothendieck: simulation invalid: " +
                            valid.summary());
  }

  GrothendieckModel G;
  G.origin_model = C;
  G.origin_sim = gamma;

  std::vector<TypeName> names;
  std::map<TypeName, FiniteSet> data;
  for (const auto& t : C.type_names) {
    for (const auto& b : gamma.set_at(t)) {
      PairTypeName p{t, b};
      std::string enc = p.encoded();
      names.push_back(enc);
      G.pairs.push_back(p);
      G.pair_of[enc] = p;
      std::vector<Element> fiber;
      for (const auto& y : C.data_at(t)) {
        if (gamma.forces(t, b, y)) fiber.push_back(y);
      }
      data[enc] = FiniteSet(std::move(fiber));
    }
  }
  std::sort(G.pairs.begin(), G.pairs.end());

  std::map<HomKey, std::vector<PartialFunction>> homs;
  for (const auto& pa : G.pairs) {
    for (const auto& pb : G.pairs) {
      std::string src = pa.encoded();
      std::string tgt = pb.encoded();
      std::vector<PartialFunction> fns;
      for (const auto& f : C.homs_at(pa.base, pb.base)) {
        if (!fiber_condition(gamma, f, pa, pb)) continue;
        PartialFunction restricted =
            restrict_partial(f, data.at(src), data.at(tgt), src, tgt);
        if (std::find(fns.begin(), fns.end(), restricted) == fns.end()) {
          fns.push_back(restricted);
          G.hom_provenance.emplace(
              std::make_tuple(src, tgt, graph_key(restricted)), f);
        }
      }
      std::sort(fns.begin(), fns.end());
      if (!fns.empty()) homs[{src, tgt}] = std::move(fns);
    }
  }

  G.underlying = make_model(std::move(names), std::move(data), std::move(homs));
  return G;
}

Simulation build_pr1(const GrothendieckModel& G) {
  Simulation pr1;
  pr1.source = G.underlying;
  pr1.target = G.origin_model;
  for (const auto& p : G.pairs) {
    std::string enc = p.encoded();
    pr1.type_map[enc] = p.base;
    ForcingRelation rel;
    for (const auto& y : G.fiber(p)) rel.insert({y, y});
    pr1.forcing[enc] = std::move(rel);
  }
  return pr1;
}

std::pair<Model, PresheafSimulation> terminal_model() {
  FiniteSet point{"*"};
  Model m = make_model({"1"}, {{"1", point}},
                       {{{"1", "1"}, {identity_partial(point, "1")}}});
  PresheafSimulation id1;
  id1.source = m;
  id1.sets["1"] = point;
  id1.forcing["1"] = {{"*", "*"}};
  return {m, id1};
}

Simulation simulation_to_terminal(const Model& m) {
  auto [one, id1] = terminal_model();
  (void)id1;
  Simulation sim;
  sim.source = m;
  sim.target = one;
  for (const auto& t : m.type_names) {
    sim.type_map[t] = "1";
    ForcingRelation rel;
    for (const auto& x : m.data_at(t)) rel.insert({"*", x});
    sim.forcing[t] = std::move(rel);
  }
  return sim;
}

LiftSquare build_lift_square(const Simulation& gamma,
                             const PresheafSimulation& delta) {
  if (!(gamma.target == delta.source)) {
    throw PreconditionError(
        "build_lift_square: delta is not a presheaf-simulation on gamma's "
        "target");
  }
  LiftSquare sq;
  sq.gamma = gamma;
  sq.delta = delta;
  sq.delta_gamma = compose_presheaf(delta, gamma);
  sq.sigma_source = build_grothendieck(gamma.source, sq.delta_gamma);
  sq.sigma_target = build_grothendieck(gamma.target, delta);
  sq.pr1_source = build_pr1(sq.sigma_source);
  sq.pr1_target = build_pr1(sq.sigma_target);

  Simulation& lift = sq.lift;
  lift.source = sq.sigma_source.underlying;
  lift.target = sq.sigma_target.underlying;
  for (const auto& p : sq.sigma_source.pairs) {
    PairTypeName image{gamma.map_type(p.base), p.point};
    std::string enc = p.encoded();
    lift.type_map[enc] = image.encoded();
    ForcingRelation rel;
    const FiniteSet& src_fiber = sq.sigma_source.fiber(p);
    const FiniteSet& tgt_fiber = sq.sigma_target.fiber(image);
    for (const auto& [y, x] : gamma.forcing_at(p.base)) {
      if (tgt_fiber.contains(y) && src_fiber.contains(x)) rel.insert({y, x});
    }
    lift.forcing[enc] = std::move(rel);
  }
  return sq;
}

Simulation lift_simulation(const Simulation& gamma,
                           const PresheafSimulation& delta) {
  return build_lift_square(gamma, delta).lift;
}

Simulation mediating_simulation(const LiftSquare& square, const Model& E,
                                const Simulation& alpha,
                                const Simulation& beta) {
  if (!(alpha.source == E) || !(beta.source == E)) {
    throw PreconditionError("mediating_simulation: alpha/beta not over E");
  }
  if (!(alpha.target == square.gamma.source) ||
      !(beta.target == square.sigma_target.underlying)) {
    throw PreconditionError(
        "mediating_simulation: alpha/beta have wrong targets");
  }

  Simulation outer_left = compose_simulations(square.gamma, alpha);
  Simulation outer_top = compose_simulations(square.pr1_target, beta);
  if (!simulations_equal(outer_left, outer_top)) {
    // Find one witness for the report.
    std::string witness = "type maps differ";
    for (const auto& v : E.type_names) {
      if (outer_left.map_type(v) != outer_top.map_type(v)) {
        witness = "at '" + v + "': gamma.alpha goes to '" +
                  outer_left.map_type(v) + "', pr1.beta to '" +
                  outer_top.map_type(v) + "'";
        break;
      }
      if (outer_left.forcing_at(v) != outer_top.forcing_at(v)) {
        witness = "forcing relations differ at '" + v + "'";
        break;
      }
    }
    throw PreconditionError(
        "mediating_simulation: outer square does not commute: " + witness);
  }

  Simulation zeta;
  zeta.source = E;
  zeta.target = square.sigma_source.underlying;
  for (const auto& v : E.type_names) {
    const PairTypeName& bp = square.sigma_target.pair_of.at(beta.map_type(v));
    PairTypeName target_pair{alpha.map_type(v), bp.point};
    std::string enc = target_pair.encoded();
    if (!square.sigma_source.pair_of.count(enc)) {
      throw PreconditionError(
          "mediating_simulation: '" + enc +
          "' is not a type name of the source Grothendieck model");
    }
    zeta.type_map[v] = enc;
    const FiniteSet& fiber = square.sigma_source.fiber(enc);
    ForcingRelation rel;
    for (const auto& [x, e] : alpha.forcing_at(v)) {
      if (!fiber.contains(x)) {
        throw PreconditionError(
            "mediating_simulation: forced element '" + x + "' at '" + v +
            "' lies outside the fiber of " + enc +
            " (inconsistent inputs)");
      }
      rel.insert({x, e});
    }
    zeta.forcing[v] = std::move(rel);
  }
  return zeta;
}

PullbackReport check_pullback_universal(const LiftSquare& square,
                                        const Model& E,
                                        const Simulation& alpha,
                                        const Simulation& beta,
                                        std::size_t bound) {
  PullbackReport report;

  const Model& sigma = square.sigma_source.underlying;
  if (E.type_names.size() > 3) {
    report.refused = true;
    report.refusal_reason = "apex has more than 3 type names";
    return report;
  }
  for (const auto& t : E.type_names) {
    if (E.data_at(t).size() > bound) {
      report.refused = true;
      report.refusal_reason = "data set at '" + t + "' exceeds bound";
      return report;
    }
  }
  for (const auto& t : sigma.type_names) {
    if (sigma.data_at(t).size() > bound) {
      report.refused = true;
      report.refusal_reason = "fiber at '" + t + "' exceeds bound";
      return report;
    }
  }
  {
    double assignments = 1.0;
    for (std::size_t i = 0; i < E.type_names.size(); ++i) {
      assignments *= static_cast<double>(sigma.type_names.size());
    }
    if (assignments > 4096.0) {
      report.refused = true;
      report.refusal_reason = "type-map space exceeds 4096 assignments";
      return report;
    }
  }

  report.square_commutes = simulations_equal(
      compose_simulations(square.gamma, square.pr1_source),
      compose_simulations(square.pr1_target, square.lift));

  Simulation mediator;
  try {
    mediator = mediating_simulation(square, E, alpha, beta);
    report.triangles_commute =
        simulations_equal(compose_simulations(square.pr1_source, mediator),
                          alpha) &&
        simulations_equal(compose_simulations(square.lift, mediator), beta);
  } catch (const PreconditionError& e) {
    report.witnesses.push_back(e.what());
    report.triangles_commute = false;
  }

  // Brute-force enumeration of candidate mediators: all type maps times all
  // forcing subsets, filtered by simulation validity and both triangles.
  std::vector<TypeName> etypes = E.type_names;
  std::vector<TypeName> stypes = sigma.type_names;
  std::size_t n_assignments = 1;
  for (std::size_t i = 0; i < etypes.size(); ++i) {
    n_assignments *= stypes.size();
  }

  for (std::size_t code = 0; code < n_assignments; ++code) {
    std::size_t rest = code;
    std::map<TypeName, TypeName> type_map;
    for (const auto& v : etypes) {
      type_map[v] = stypes[rest % stypes.size()];
      rest /= stypes.size();
    }

    // Both triangles pin the type map; discard mismatches before touching
    // the forcing space.
    bool types_fit = true;
    for (const auto& v : etypes) {
      if (square.pr1_source.map_type(type_map[v]) != alpha.map_type(v) ||
          square.lift.map_type(type_map[v]) != beta.map_type(v)) {
        types_fit = false;
        break;
      }
    }
    if (!types_fit) continue;

    // Enumerate forcing subsets per type: the candidate space is the
    // product over types of 2^(|fiber| * |E(v)|).
    std::vector<std::vector<ForcingPair>> pools;
    std::size_t total_bits = 0;
    for (const auto& v : etypes) {
      std::vector<ForcingPair> pool;
      for (const auto& y : sigma.data_at(type_map[v])) {
        for (const auto& x : E.data_at(v)) pool.push_back({y, x});
      }
      total_bits += pool.size();
      pools.push_back(std::move(pool));
    }
    if (total_bits > 16) {
      report.refused = true;
      report.refusal_reason = "forcing-relation space exceeds 2^16";
      return report;
    }

    std::size_t n_subsets = static_cast<std::size_t>(1) << total_bits;
    for (std::size_t mask = 0; mask < n_subsets; ++mask) {
      Simulation cand;
      cand.source = E;
      cand.target = sigma;
      cand.type_map = type_map;
      std::size_t bit = 0;
      for (std::size_t i = 0; i < etypes.size(); ++i) {
        ForcingRelation rel;
        for (const auto& p : pools[i]) {
          if (mask & (static_cast<std::size_t>(1) << bit)) rel.insert(p);
          ++bit;
        }
        cand.forcing[etypes[i]] = std::move(rel);
      }

      if (!validate_simulation(cand).ok()) continue;
      if (!simulations_equal(compose_simulations(square.pr1_source, cand),
                             alpha)) {
        continue;
      }
      if (!simulations_equal(compose_simulations(square.lift, cand), beta)) {
        continue;
      }
      ++report.mediator_count;
      if (report.mediator_count == 1 && report.triangles_commute &&
          simulations_equal(cand, mediator)) {
        report.unique_mediator_matches = true;
      }
    }
  }
  if (report.mediator_count != 1) report.unique_mediator_matches = false;
  return report;
}

StrictnessReport check_strictness(const Simulation& gamma,
                                  const Simulation& delta,
                                  const PresheafSimulation& epsilon) {
  if (!(gamma.target == delta.source) || !(delta.target == epsilon.source)) {
    throw PreconditionError("check_strictness: chain does not compose");
  }
  if (!validate_simulation(gamma).ok() || !validate_simulation(delta).ok() ||
      !validate_simulation(epsilon).ok()) {
    throw PreconditionError("check_strictness: inputs must be valid");
  }
  StrictnessReport report;

  // (i) lifting the identity along epsilon gives the identity simulation.
  {
    Simulation lhs =
        lift_simulation(identity_simulation(epsilon.source), epsilon);
    Simulation rhs =
        identity_simulation(build_grothendieck(epsilon.source, epsilon).underlying);
    report.identity_law = simulations_equal(lhs, rhs);
    if (!report.identity_law) {
      report.witnesses.push_back("lift of the identity differs from the "
                                 "identity of the Grothendieck model");
    }
  }

  // (ii) lifting delta.gamma along epsilon equals the composite of the two
  // stepwise lifts.
  {
    Simulation lhs =
        lift_simulation(compose_simulations(delta, gamma), epsilon);
    Simulation step_delta = lift_simulation(delta, epsilon);
    Simulation step_gamma =
        lift_simulation(gamma, compose_presheaf(epsilon, delta));
    Simulation rhs = compose_simulations(step_delta, step_gamma);
    report.composition_law = simulations_equal(lhs, rhs);
    if (!report.composition_law) {
      for (const auto& t : lhs.source.type_names) {
        if (lhs.map_type(t) != rhs.map_type(t)) {
          report.witnesses.push_back("type maps differ at '" + t + "'");
          break;
        }
        if (lhs.forcing_at(t) != rhs.forcing_at(t)) {
          report.witnesses.push_back("forcing differs at '" + t + "'");
          break;
        }
      }
    }
  }
  return report;
}

CompareReport groth_canonical_compare(const FiniteCategory& cat,
                                      const Presheaf& S) {
  CompareReport report;

  Model M = build_cm_partial(cat, S).model;
  PresheafSimulation gammaS = diagonal_presheaf(M);
  GrothendieckModel lhsG = build_grothendieck(M, gammaS);
  const Model& lhs = lhsG.underlying;

  ElementsCategory el = category_of_elements(cat, S);
  ValidationReport elv = validate_category(el.cat);
  if (!elv.ok()) {
    report.witnesses.push_back("category of elements invalid: " +
                               elv.summary());
    return report;
  }
  Model rhs = build_cm_partial(el.cat, el.pr2).model;

  // Canonical renaming is the identity on encoded pair names.
  if (lhs.type_names != rhs.type_names) {
    report.witnesses.push_back("type-name sets differ");
    return report;
  }
  for (const auto& t : lhs.type_names) {
    if (!(lhs.data_at(t) == rhs.data_at(t))) {
      report.witnesses.push_back("data types differ at " + t);
    }
  }
  for (const auto& s : lhs.type_names) {
    for (const auto& t : lhs.type_names) {
      const auto& lf = lhs.homs_at(s, t);
      const auto& rf = rhs.homs_at(s, t);
      if (lf == rf) continue;
      for (const auto& f : lf) {
        if (std::find(rf.begin(), rf.end(), f) == rf.end()) {
          report.witnesses.push_back(
              "function " + to_string(f) +
              " in the Grothendieck side only, at homs(" + s + "," + t + ")");
        }
      }
      for (const auto& f : rf) {
        if (std::find(lf.begin(), lf.end(), f) == lf.end()) {
          report.witnesses.push_back(
              "function " + to_string(f) +
              " in the elements side only, at homs(" + s + "," + t + ")");
        }
      }
    }
  }
  report.equal = report.witnesses.empty();
  return report;
}

}  // namespace compmod
