#include "compmod/simulation.hpp"

#include <algorithm>
#include <sstream>

namespace compmod {

namespace {

const ForcingRelation kEmptyForcing{};

std::vector<Element> forcers_of(const ForcingRelation& rel, const Element& x) {
  std::vector<Element> out;
  for (const auto& [y, xx] : rel) {
    if (xx == x) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Shared tracking check. forcing_src / forcing_tgt are the relations at f's
// source and target types.
bool tracks_impl(const PartialFunction& f_prime, const PartialFunction& f,
                 const ForcingRelation& forcing_src,
                 const ForcingRelation& forcing_tgt) {
  for (const auto& [x, fx] : f.graph()) {
    for (const auto& [y, xx] : forcing_src) {
      if (xx != x) continue;
      if (!f_prime.defined_at(y)) return false;
      if (!forcing_tgt.count({f_prime.at(y), fx})) return false;
    }
  }
  return true;
}

void check_forcing_structure(const Model& source, const TypeName& t,
                             const ForcingRelation& rel,
                             const FiniteSet& target_carrier,
                             ValidationReport& report) {
  if (!source.data.count(t)) return;
  const FiniteSet& src_carrier = source.data.at(t);
  for (const auto& [y, x] : rel) {
    if (!target_carrier.contains(y)) {
      report.add(ViolationKind::MalformedInput,
                 "forcing pair (" + y + "," + x + ") at '" + t +
                     "': forcer outside the target carrier");
    }
    if (!src_carrier.contains(x)) {
      report.add(ViolationKind::MalformedInput,
                 "forcing pair (" + y + "," + x + ") at '" + t +
                     "': element outside the source data type");
    }
  }
}

}  // namespace

const TypeName& Simulation::map_type(const TypeName& t) const {
  auto it = type_map.find(t);
  if (it == type_map.end()) {
    throw UnknownNameError("simulation type map undefined at '" + t + "'");
  }
  return it->second;
}

const ForcingRelation& Simulation::forcing_at(const TypeName& t) const {
  auto it = forcing.find(t);
  return it == forcing.end() ? kEmptyForcing : it->second;
}

bool Simulation::forces(const TypeName& t, const Element& y,
                        const Element& x) const {
  return forcing_at(t).count({y, x}) != 0;
}

const FiniteSet& PresheafSimulation::set_at(const TypeName& t) const {
  auto it = sets.find(t);
  if (it == sets.end()) {
    throw UnknownNameError("presheaf-simulation has no set at '" + t + "'");
  }
  return it->second;
}

const ForcingRelation& PresheafSimulation::forcing_at(const TypeName& t) const {
  auto it = forcing.find(t);
  return it == forcing.end() ? kEmptyForcing : it->second;
}

bool PresheafSimulation::forces(const TypeName& t, const Element& y,
                                const Element& x) const {
  return forcing_at(t).count({y, x}) != 0;
}

bool tracks(const PartialFunction& f_prime, const PartialFunction& f,
            const Simulation& sim) {
  const TypeName& gs = sim.map_type(f.source_type());
  const TypeName& gt = sim.map_type(f.target_type());
  if (f_prime.source_type() != gs || f_prime.target_type() != gt) {
    throw TypeMismatchError("tracker " + to_string(f_prime) +
                            " is not typed " + gs + "->" + gt);
  }
  return tracks_impl(f_prime, f, sim.forcing_at(f.source_type()),
                     sim.forcing_at(f.target_type()));
}

bool tracks(const PartialFunction& f_prime, const PartialFunction& f,
            const PresheafSimulation& sim) {
  if (f_prime.source_type() != f.source_type() ||
      f_prime.target_type() != f.target_type()) {
    throw TypeMismatchError("presheaf tracker " + to_string(f_prime) +
                            " is not typed " + f.source_type() + "->" +
                            f.target_type());
  }
  return tracks_impl(f_prime, f, sim.forcing_at(f.source_type()),
                     sim.forcing_at(f.target_type()));
}

ValidationReport validate_simulation(const Simulation& sim) {
  ValidationReport report;

  for (const auto& t : sim.source.type_names) {
    if (!sim.type_map.count(t)) {
      report.add(ViolationKind::MalformedInput,
                 "type map undefined at '" + t + "'");
      continue;
    }
    const TypeName& u = sim.type_map.at(t);
    if (!sim.target.has_type(u)) {
      report.add(ViolationKind::MalformedInput,
                 "type map sends '" + t + "' to unknown target type '" + u +
                     "'");
    }
  }
  if (!report.ok()) return report;

  for (const auto& [t, rel] : sim.forcing) {
    if (!sim.source.has_type(t)) {
      report.add(ViolationKind::MalformedInput,
                 "forcing declared at unknown type '" + t + "'");
      continue;
    }
    check_forcing_structure(sim.source, t, rel,
                            sim.target.data_at(sim.type_map.at(t)), report);
  }
  if (!report.ok()) return report;

  for (const auto& t : sim.source.type_names) {
    const ForcingRelation& rel = sim.forcing_at(t);
    for (const auto& x : sim.source.data_at(t)) {
      bool forced = std::any_of(rel.begin(), rel.end(), [&](const auto& p) {
        return p.second == x;
      });
      if (!forced) {
        report.add(ViolationKind::TotalityFailure,
                   "element '" + x + "' of '" + t + "' is never forced");
      }
    }
  }

  for (const auto& [key, fns] : sim.source.homs) {
    const auto& [s, t] = key;
    const auto& candidates =
        sim.target.homs_at(sim.type_map.at(s), sim.type_map.at(t));
    for (const auto& f : fns) {
      bool tracked = std::any_of(
          candidates.begin(), candidates.end(),
          [&](const PartialFunction& fp) { return tracks(fp, f, sim); });
      if (!tracked) {
        report.add(ViolationKind::TrackabilityFailure,
                   "no tracker found for " + to_string(f) + " in target homs(" +
                       sim.type_map.at(s) + "," + sim.type_map.at(t) + ")");
      }
    }
  }
  return report;
}

ValidationReport validate_simulation(const PresheafSimulation& sim) {
  ValidationReport report;

  for (const auto& t : sim.source.type_names) {
    if (!sim.sets.count(t)) {
      report.add(ViolationKind::MalformedInput,
                 "no carrier set declared at '" + t + "'");
    }
  }
  if (!report.ok()) return report;

  for (const auto& [t, rel] : sim.forcing) {
    if (!sim.source.has_type(t)) {
      report.add(ViolationKind::MalformedInput,
                 "forcing declared at unknown type '" + t + "'");
      continue;
    }
    check_forcing_structure(sim.source, t, rel, sim.sets.at(t), report);
  }
  if (!report.ok()) return report;

  for (const auto& t : sim.source.type_names) {
    const ForcingRelation& rel = sim.forcing_at(t);
    for (const auto& x : sim.source.data_at(t)) {
      bool forced = std::any_of(rel.begin(), rel.end(), [&](const auto& p) {
        return p.second == x;
      });
      if (!forced) {
        report.add(ViolationKind::TotalityFailure,
                   "element '" + x + "' of '" + t + "' is never forced");
      }
    }
  }

  for (const auto& [key, fns] : sim.source.homs) {
    (void)key;
    for (const auto& f : fns) {
      if (find_trackers(f, sim, 1).empty()) {
        report.add(ViolationKind::TrackabilityFailure,
                   "no partial-function tracker exists for " + to_string(f));
      }
    }
  }
  return report;
}

std::vector<PartialFunction> find_trackers(const PartialFunction& f,
                                           const PresheafSimulation& sim,
                                           std::size_t max_count) {
  const TypeName& s = f.source_type();
  const TypeName& t = f.target_type();
  const ForcingRelation& src_rel = sim.forcing_at(s);
  const ForcingRelation& tgt_rel = sim.forcing_at(t);

  // Need(y) = intersection over x in dom(f) with y ⊩ x of the forcers of
  // f(x); y unconstrained when it forces nothing in dom(f).
  std::vector<Element> constrained;
  std::vector<std::vector<Element>> choices;
  for (const auto& y : sim.set_at(s)) {
    bool constrained_y = false;
    std::vector<Element> need;
    bool first = true;
    for (const auto& [x, fx] : f.graph()) {
      if (!src_rel.count({y, x})) continue;
      constrained_y = true;
      std::vector<Element> zs = forcers_of(tgt_rel, fx);
      if (first) {
        need = std::move(zs);
        first = false;
      } else {
        std::vector<Element> merged;
        std::set_intersection(need.begin(), need.end(), zs.begin(), zs.end(),
                              std::back_inserter(merged));
        need = std::move(merged);
      }
    }
    if (constrained_y) {
      if (need.empty()) return {};
      constrained.push_back(y);
      choices.push_back(std::move(need));
    }
  }

  std::vector<PartialFunction> out;
  std::vector<std::size_t> counter(constrained.size(), 0);
  while (out.size() < max_count) {
    std::map<Element, Element> graph;
    for (std::size_t i = 0; i < constrained.size(); ++i) {
      graph.emplace(constrained[i], choices[i][counter[i]]);
    }
    out.emplace_back(s, t, std::move(graph));

    std::size_t pos = counter.size();
    while (pos > 0) {
      --pos;
      if (++counter[pos] < choices[pos].size()) break;
      counter[pos] = 0;
      if (pos == 0) return out;
    }
    if (counter.empty()) break;
  }
  return out;
}

Simulation identity_simulation(const Model& m) {
  Simulation sim;
  sim.source = m;
  sim.target = m;
  for (const auto& t : m.type_names) {
    sim.type_map[t] = t;
    ForcingRelation rel;
    for (const auto& x : m.data_at(t)) rel.insert({x, x});
    sim.forcing[t] = std::move(rel);
  }
  return sim;
}

Simulation compose_simulations(const Simulation& delta,
                               const Simulation& gamma) {
  if (!(gamma.target == delta.source)) {
    throw TypeMismatchError(
        "compose_simulations: middle models do not agree");
  }
  Simulation out;
  out.source = gamma.source;
  out.target = delta.target;
  for (const auto& t : gamma.source.type_names) {
    const TypeName& mid = gamma.map_type(t);
    out.type_map[t] = delta.map_type(mid);
    ForcingRelation rel;
    const ForcingRelation& grel = gamma.forcing_at(t);
    const ForcingRelation& drel = delta.forcing_at(mid);
    for (const auto& [y, x] : grel) {
      for (const auto& [z, yy] : drel) {
        if (yy == y) rel.insert({z, x});
      }
    }
    out.forcing[t] = std::move(rel);
  }
  return out;
}

PresheafSimulation compose_presheaf(const PresheafSimulation& delta,
                                    const Simulation& gamma) {
  if (!(gamma.target == delta.source)) {
    throw TypeMismatchError("compose_presheaf: middle models do not agree");
  }
  PresheafSimulation out;
  out.source = gamma.source;
  for (const auto& t : gamma.source.type_names) {
    const TypeName& mid = gamma.map_type(t);
    out.sets[t] = delta.set_at(mid);
    ForcingRelation rel;
    const ForcingRelation& grel = gamma.forcing_at(t);
    const ForcingRelation& drel = delta.forcing_at(mid);
    for (const auto& [y, x] : grel) {
      for (const auto& [z, yy] : drel) {
        if (yy == y) rel.insert({z, x});
      }
    }
    out.forcing[t] = std::move(rel);
  }
  return out;
}

bool simulations_equal(const Simulation& s1, const Simulation& s2) {
  if (!(s1.source == s2.source) || !(s1.target == s2.target)) {
    throw PreconditionError(
        "simulations_equal: simulations have different endpoints");
  }
  for (const auto& t : s1.source.type_names) {
    if (s1.map_type(t) != s2.map_type(t)) return false;
    if (s1.forcing_at(t) != s2.forcing_at(t)) return false;
  }
  return true;
}

bool presheaf_simulations_equal(const PresheafSimulation& s1,
                                const PresheafSimulation& s2) {
  if (!(s1.source == s2.source)) {
    throw PreconditionError(
        "presheaf_simulations_equal: sources differ");
  }
  for (const auto& t : s1.source.type_names) {
    if (s1.set_at(t) != s2.set_at(t)) return false;
    if (s1.forcing_at(t) != s2.forcing_at(t)) return false;
  }
  return true;
}

PresheafSimulation diagonal_presheaf(const Model& m) {
  PresheafSimulation sim;
  sim.source = m;
  for (const auto& t : m.type_names) {
    sim.sets[t] = m.data_at(t);
    ForcingRelation rel;
    for (const auto& x : m.data_at(t)) rel.insert({x, x});
    sim.forcing[t] = std::move(rel);
  }
  return sim;
}

Element RepresentableSimulation::token_for(const TypeName& t,
                                           const PartialFunction& f) const {
  const auto& fns = token_functions.at(t);
  auto it = std::find(fns.begin(), fns.end(), f);
  if (it == fns.end()) {
    throw UnknownNameError("no token for " + to_string(f) + " at '" + t + "'");
  }
  return "f#" + std::to_string(it - fns.begin());
}

RepresentableSimulation build_representable(const Model& m,
                                            const TypeName& t0) {
  ValidationReport valid = validate_model(m);
  if (!valid.ok()) {
    throw PreconditionError("build_representable: model invalid: " +
                            valid.summary());
  }
  if (!is_left_regular(m, t0)) {
    // Witness: the first unreachable element.
    for (const auto& t : m.type_names) {
      for (const auto& x : m.data_at(t)) {
        bool reached = false;
        for (const auto& f : m.homs_at(t0, t)) {
          if (f.image().contains(x)) reached = true;
        }
        if (!reached) {
          throw PreconditionError("build_representable: model is not "
                                  "left-regular at '" +
                                  t0 + "': element '" + x + "' of '" + t +
                                  "' is reachable by no function");
        }
      }
    }
  }

  RepresentableSimulation rep;
  rep.sim.source = m;
  for (const auto& t : m.type_names) {
    const auto& fns = m.homs_at(t0, t);
    rep.token_functions[t] =
        std::vector<PartialFunction>(fns.begin(), fns.end());
    std::vector<Element> tokens;
    for (std::size_t k = 0; k < fns.size(); ++k) {
      tokens.push_back("f#" + std::to_string(k));
    }
    rep.sim.sets[t] = FiniteSet(tokens);
    ForcingRelation rel;
    for (std::size_t k = 0; k < fns.size(); ++k) {
      for (const auto& x : fns[k].image()) {
        rel.insert({"f#" + std::to_string(k), x});
      }
    }
    rep.sim.forcing[t] = std::move(rel);
  }

  // g*(h) = g . h, total on tokens of homs(t0, s).
  for (const auto& [key, fns] : m.homs) {
    const auto& [s, t] = key;
    std::vector<PartialFunction> stars;
    for (const auto& g : fns) {
      std::map<Element, Element> graph;
      const auto& hxs = rep.token_functions.at(s);
      for (std::size_t k = 0; k < hxs.size(); ++k) {
        PartialFunction gh = compose_partial(g, hxs[k]);
        graph.emplace("f#" + std::to_string(k), rep.token_for(t, gh));
      }
      stars.emplace_back(s, t, std::move(graph));
    }
    rep.star_trackers[key] = std::move(stars);
  }
  return rep;
}

namespace {

template <typename Sim>
ForcingModulus extract_forcing_impl(const Sim& sim) {
  ValidationReport valid = validate_simulation(sim);
  if (!valid.ok()) {
    throw PreconditionError("extract_forcing_modulus: simulation invalid: " +
                            valid.summary());
  }
  ForcingModulus out;
  for (const auto& t : sim.source.type_names) {
    std::map<Element, Element> graph;
    for (const auto& x : sim.source.data_at(t)) {
      graph.emplace(x, forcers_of(sim.forcing_at(t), x).front());
    }
    out.phi.emplace(t, PartialFunction(t, t + "'", std::move(graph)));
  }
  return out;
}

}  // namespace

ForcingModulus extract_forcing_modulus(const Simulation& sim) {
  ForcingModulus out = extract_forcing_impl(sim);
  // Retype the choice functions toward the genuine target types.
  for (auto& [t, phi] : out.phi) {
    phi = PartialFunction(t, sim.map_type(t), phi.graph());
  }
  return out;
}

ForcingModulus extract_forcing_modulus(const PresheafSimulation& sim) {
  ForcingModulus out = extract_forcing_impl(sim);
  for (auto& [t, phi] : out.phi) {
    phi = PartialFunction(t, t, phi.graph());
  }
  return out;
}

TrackingModulus extract_tracking_modulus(const Simulation& sim) {
  ValidationReport valid = validate_simulation(sim);
  if (!valid.ok()) {
    throw PreconditionError("extract_tracking_modulus: simulation invalid: " +
                            valid.summary());
  }
  TrackingModulus out;
  for (const auto& [key, fns] : sim.source.homs) {
    const auto& [s, t] = key;
    const auto& candidates =
        sim.target.homs_at(sim.map_type(s), sim.map_type(t));
    std::vector<PartialFunction> mus;
    for (const auto& f : fns) {
      auto it = std::find_if(
          candidates.begin(), candidates.end(),
          [&](const PartialFunction& fp) { return tracks(fp, f, sim); });
      mus.push_back(*it);  // precondition guarantees a tracker exists
    }
    out.mu[key] = std::move(mus);
  }
  return out;
}

TrackingModulus extract_tracking_modulus(const PresheafSimulation& sim) {
  ValidationReport valid = validate_simulation(sim);
  if (!valid.ok()) {
    throw PreconditionError("extract_tracking_modulus: simulation invalid: " +
                            valid.summary());
  }
  TrackingModulus out;
  for (const auto& [key, fns] : sim.source.homs) {
    std::vector<PartialFunction> mus;
    for (const auto& f : fns) {
      mus.push_back(find_trackers(f, sim, 1).front());
    }
    out.mu[key] = std::move(mus);
  }
  return out;
}

Simulation realize_simulation(const std::map<TypeName, TypeName>& type_map,
                              const ForcingModulus& phi,
                              const TrackingModulus& mu, const Model& source,
                              const Model& target) {
  for (const auto& t : source.type_names) {
    if (!type_map.count(t)) {
      throw MalformedInputError("realize_simulation: type map undefined at '" +
                                t + "'");
    }
    auto it = phi.phi.find(t);
    if (it == phi.phi.end() || !it->second.total_on(source.data_at(t))) {
      throw MalformedInputError(
          "realize_simulation: forcing modulus not total at '" + t + "'");
    }
  }

  // Commuting-rectangle condition: mu(f)(phi_s(x)) = phi_t(f(x)).
  for (const auto& [key, fns] : source.homs) {
    const auto& [s, t] = key;
    auto it = mu.mu.find(key);
    if (it == mu.mu.end() || it->second.size() != fns.size()) {
      throw MalformedInputError(
          "realize_simulation: tracking modulus misaligned at homs(" + s +
          "," + t + ")");
    }
    const PartialFunction& phi_s = phi.phi.at(s);
    const PartialFunction& phi_t = phi.phi.at(t);
    for (std::size_t i = 0; i < fns.size(); ++i) {
      const PartialFunction& f = fns[i];
      const PartialFunction& muf = it->second[i];
      for (const auto& [x, fx] : f.graph()) {
        const Element& y = phi_s.at(x);
        if (!muf.defined_at(y) || muf.at(y) != phi_t.at(fx)) {
          throw PreconditionError(
              "realize_simulation: rectangle violation at f=" + to_string(f) +
              ", x='" + x + "'");
        }
      }
    }
  }

  Simulation out;
  out.source = source;
  out.target = target;
  out.type_map = type_map;
  for (const auto& t : source.type_names) {
    ForcingRelation rel;
    for (const auto& x : source.data_at(t)) {
      rel.insert({phi.phi.at(t).at(x), x});
    }
    out.forcing[t] = std::move(rel);
  }
  return out;
}

}  // namespace compmod
