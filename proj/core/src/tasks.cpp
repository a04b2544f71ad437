#include "compmod/document.hpp"
#include "compmod/fibration.hpp"
#include "compmod/grothendieck.hpp"

namespace compmod {

namespace {

const std::string& require_arg(const TaskSpec& spec, const std::string& key) {
  auto it = spec.args.find(key);
  if (it == spec.args.end()) {
    throw ParseError("task '" + spec.kind + "' requires argument '" + key +
                     "'");
  }
  return it->second;
}

const Model& named_model(const Document& doc, const std::string& name) {
  auto it = doc.models.find(name);
  if (it == doc.models.end()) throw ParseError("unknown model '" + name + "'");
  return it->second;
}

const Simulation& named_simulation(const Document& doc,
                                   const std::string& name) {
  auto it = doc.simulations.find(name);
  if (it == doc.simulations.end()) {
    throw ParseError("unknown simulation '" + name + "'");
  }
  return it->second;
}

const PresheafSimulation& named_presheaf(const Document& doc,
                                         const std::string& name) {
  auto it = doc.presheaf_simulations.find(name);
  if (it == doc.presheaf_simulations.end()) {
    throw ParseError("unknown presheaf-simulation '" + name + "'");
  }
  return it->second;
}

void fill_from_validation(TaskReport& report, const ValidationReport& v) {
  report.verdict = v.ok() ? "pass" : "fail";
  for (const auto& viol : v.violations) {
    report.witnesses.push_back("[" + to_string(viol.kind) + "] " +
                               viol.message);
  }
  report.statistics["violations"] =
      static_cast<std::int64_t>(v.violations.size());
}

TaskReport run_one(const Document& doc, const TaskSpec& spec) {
  TaskReport report;
  report.index = spec.index;
  report.task = spec.kind;
  report.verdict = "pass";

  if (spec.kind == "validate-model") {
    const Model& m = named_model(doc, require_arg(spec, "model"));
    fill_from_validation(report, validate_model(m));
    report.statistics["types"] =
        static_cast<std::int64_t>(m.type_names.size());
  } else if (spec.kind == "validate-simulation") {
    const std::string& name = require_arg(spec, "simulation");
    if (doc.simulations.count(name)) {
      fill_from_validation(report, validate_simulation(named_simulation(doc, name)));
    } else {
      fill_from_validation(report, validate_simulation(named_presheaf(doc, name)));
    }
  } else if (spec.kind == "build-grothendieck") {
    const Model& C = named_model(doc, require_arg(spec, "model"));
    const PresheafSimulation& gamma =
        named_presheaf(doc, require_arg(spec, "simulation"));
    GrothendieckModel G = build_grothendieck(C, gamma);
    ValidationReport v = validate_model(G.underlying);
    v.merge(validate_simulation(build_pr1(G)));
    fill_from_validation(report, v);
    report.statistics["pair_types"] = static_cast<std::int64_t>(G.pairs.size());
    std::int64_t homs = 0;
    for (const auto& [key, fns] : G.underlying.homs) {
      (void)key;
      homs += static_cast<std::int64_t>(fns.size());
    }
    report.statistics["homs"] = homs;
  } else if (spec.kind == "build-representable") {
    const Model& m = named_model(doc, require_arg(spec, "model"));
    RepresentableSimulation rep =
        build_representable(m, require_arg(spec, "type"));
    ValidationReport v = validate_simulation(rep.sim);
    // The canonical trackers must track.
    for (const auto& [key, fns] : m.homs) {
      const auto& stars = rep.star_trackers.at(key);
      for (std::size_t i = 0; i < fns.size(); ++i) {
        if (!tracks(stars[i], fns[i], rep.sim)) {
          v.add(ViolationKind::TrackabilityFailure,
                "post-composition tracker fails for " + to_string(fns[i]));
        }
      }
    }
    fill_from_validation(report, v);
  } else if (spec.kind == "extract-moduli") {
    const Simulation& sim = named_simulation(doc, require_arg(spec, "simulation"));
    ForcingModulus phi = extract_forcing_modulus(sim);
    TrackingModulus mu = extract_tracking_modulus(sim);
    Simulation realized =
        realize_simulation(sim.type_map, phi, mu, sim.source, sim.target);
    ValidationReport v = validate_simulation(realized);
    for (const auto& t : sim.source.type_names) {
      for (const auto& p : realized.forcing_at(t)) {
        if (!sim.forcing_at(t).count(p)) {
          v.add(ViolationKind::MalformedInput,
                "realized forcing escapes the original relation at '" + t +
                    "'");
        }
      }
    }
    fill_from_validation(report, v);
  } else if (spec.kind == "check-pullback") {
    const Simulation& gamma = named_simulation(doc, require_arg(spec, "gamma"));
    const PresheafSimulation& delta =
        named_presheaf(doc, require_arg(spec, "delta"));
    LiftSquare square = build_lift_square(gamma, delta);
    Model E;
    Simulation alpha, beta;
    if (spec.args.count("e")) {
      E = named_model(doc, require_arg(spec, "e"));
      alpha = named_simulation(doc, require_arg(spec, "alpha"));
      beta = named_simulation(doc, require_arg(spec, "beta"));
    } else {
      E = square.sigma_source.underlying;
      alpha = square.pr1_source;
      beta = square.lift;
    }
    std::size_t bound = spec.bound == 0 ? 2 : spec.bound;
    PullbackReport pb = check_pullback_universal(square, E, alpha, beta, bound);
    if (pb.refused) {
      report.verdict = "refused";
      report.witnesses.push_back(pb.refusal_reason);
    } else {
      report.verdict = pb.ok() ? "pass" : "fail";
      report.witnesses = pb.witnesses;
    }
    report.statistics["mediators"] =
        static_cast<std::int64_t>(pb.mediator_count);
  } else if (spec.kind == "check-strictness") {
    const Simulation& gamma = named_simulation(doc, require_arg(spec, "gamma"));
    const Simulation& delta = named_simulation(doc, require_arg(spec, "delta"));
    const PresheafSimulation& epsilon =
        named_presheaf(doc, require_arg(spec, "epsilon"));
    StrictnessReport sr = check_strictness(gamma, delta, epsilon);
    report.verdict = sr.ok() ? "pass" : "fail";
    report.witnesses = sr.witnesses;
  } else if (spec.kind == "check-canonical-equality") {
    auto it = doc.categories.find(require_arg(spec, "category"));
    if (it == doc.categories.end()) {
      throw ParseError("unknown category '" + spec.args.at("category") + "'");
    }
    CompareReport cr = groth_canonical_compare(it->second.cat, it->second.S);
    report.verdict = cr.equal ? "pass" : "fail";
    report.witnesses = cr.witnesses;
  } else if (spec.kind == "check-fibration" ||
             spec.kind == "check-opfibration") {
    FibrationContext ctx;
    if (spec.args.count("model")) {
      const Model& C = named_model(doc, require_arg(spec, "model"));
      const PresheafSimulation& gamma =
          named_presheaf(doc, require_arg(spec, "simulation"));
      GrothendieckModel G = build_grothendieck(C, gamma);
      ctx = make_fibration_context(build_pr1(G));
    } else {
      ctx = make_fibration_context(
          named_simulation(doc, require_arg(spec, "simulation")));
    }
    bool fib = spec.kind == "check-fibration";
    FibrationReport fr = fib ? is_fibration_simulation(ctx)
                             : is_opfibration_simulation(ctx);
    FibrationReport transposed =
        fib ? is_fibration_simulation(ctx, HypothesisReading::Transposed)
            : is_opfibration_simulation(ctx, HypothesisReading::Transposed);
    std::int64_t diverged = 0;
    for (std::size_t i = 0;
         i < fr.entries.size() && i < transposed.entries.size(); ++i) {
      if (fr.entries[i].lifted != transposed.entries[i].lifted) ++diverged;
    }
    report.verdict = fr.holds ? "pass" : "fail";
    for (const auto& e : fr.entries) {
      if (!e.lifted) {
        report.witnesses.push_back("no lift for " + to_string(e.base_fn) +
                                   " at '" + e.total_type + "'");
      }
    }
    report.statistics["entries"] = static_cast<std::int64_t>(fr.entries.size());
    report.statistics["readings_diverged"] = diverged;
  } else if (spec.kind == "check-splitting") {
    const Model& C = named_model(doc, require_arg(spec, "model"));
    const PresheafSimulation& gamma =
        named_presheaf(doc, require_arg(spec, "simulation"));
    GrothendieckModel G = build_grothendieck(C, gamma);
    SplittingBuildReport sb = canonical_pr1_splitting(G);
    if (sb.degenerate) {
      report.verdict = "refused";
      report.witnesses = sb.notes;
    } else {
      FibrationContext ctx = make_fibration_context(build_pr1(G));
      SplittingReport sr = validate_splitting(ctx, sb.splitting);
      report.verdict = sr.ok() ? "pass" : "fail";
      report.witnesses = sr.witnesses;
      report.statistics["entries"] =
          static_cast<std::int64_t>(sb.splitting.table.size());
    }
  } else {
    throw ParseError("unknown task kind '" + spec.kind + "'");
  }
  return report;
}

}  // namespace

std::vector<TaskReport> run_tasks(const Document& doc) {
  std::vector<TaskReport> reports;
  for (std::size_t i = 0; i < doc.tasks.size(); ++i) {
    try {
      reports.push_back(run_one(doc, doc.tasks[i]));
    } catch (const std::exception& e) {
      TaskReport r;
      r.index = doc.tasks[i].index;
      r.task = doc.tasks[i].kind;
      r.verdict = "refused";
      r.witnesses.push_back(e.what());
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

}  // namespace compmod
