#include "compmod/fibration.hpp"

#include <algorithm>

namespace compmod {

namespace {

struct HypPoint {
  Element x;  // total-side element
  Element y;  // base-side forcer
};

// Hypothesis points for the cartesian check: y forces x, h then f_prime is
// defined along y, g_prime is defined at y, and the base triangle agrees.
std::vector<HypPoint> cartesian_hyp_points(const FibrationContext& ctx,
                                           const TypeName& third,
                                           const PartialFunction& f_prime,
                                           const PartialFunction& g_prime,
                                           const PartialFunction& h) {
  std::vector<HypPoint> out;
  for (const auto& [y, x] : ctx.varpi.forcing_at(third)) {
    if (!h.defined_at(y)) continue;
    if (!f_prime.defined_at(h.at(y))) continue;
    if (!g_prime.defined_at(y)) continue;
    if (f_prime.at(h.at(y)) != g_prime.at(y)) continue;
    out.push_back({x, y});
  }
  return out;
}

// Dual hypothesis points. Diagram reading: f_prime then h; transposed
// reading: h then f_prime, only satisfiable when the base types line up.
std::vector<HypPoint> opcartesian_hyp_points(const FibrationContext& ctx,
                                             const TypeName& t_prime,
                                             const PartialFunction& f_prime,
                                             const PartialFunction& g_prime,
                                             const PartialFunction& h,
                                             HypothesisReading reading) {
  std::vector<HypPoint> out;
  if (reading == HypothesisReading::Transposed) {
    if (f_prime.source_type() != h.source_type() ||
        h.target_type() != f_prime.source_type()) {
      // The printed composite is ill-typed here; the hypothesis is empty.
      return out;
    }
  }
  for (const auto& [y, x] : ctx.varpi.forcing_at(t_prime)) {
    if (!g_prime.defined_at(y)) continue;
    if (reading == HypothesisReading::Diagram) {
      if (!f_prime.defined_at(y)) continue;
      if (!h.defined_at(f_prime.at(y))) continue;
      if (h.at(f_prime.at(y)) != g_prime.at(y)) continue;
    } else {
      if (!h.defined_at(y)) continue;
      if (!f_prime.defined_at(h.at(y))) continue;
      if (f_prime.at(h.at(y)) != g_prime.at(y)) continue;
    }
    out.push_back({x, y});
  }
  return out;
}

// Kleene conclusion at x: outer after inner is defined at x iff g is, and
// where g is defined the two values agree.
bool kleene_conclusion(const PartialFunction& outer,
                       const PartialFunction& inner, const PartialFunction& g,
                       const Element& x) {
  bool through = inner.defined_at(x) && outer.defined_at(inner.at(x));
  if (through != g.defined_at(x)) return false;
  if (g.defined_at(x) && outer.at(inner.at(x)) != g.at(x)) return false;
  return true;
}

}  // namespace

FibrationContext make_fibration_context(const Simulation& varpi) {
  ValidationReport valid = validate_simulation(varpi);
  if (!valid.ok()) {
    throw PreconditionError("make_fibration_context: simulation invalid: " +
                            valid.summary());
  }
  return FibrationContext{varpi.source, varpi.target, varpi};
}

CartesianResult is_cartesian(const FibrationContext& ctx,
                             const PartialFunction& f_prime,
                             const TypeName& t_prime, const PartialFunction& f,
                             HypothesisReading reading) {
  (void)reading;  // the printed cartesian hypothesis is already diagrammatic
  CartesianResult result;
  const TypeName& t = f.source_type();
  if (f.target_type() != t_prime) {
    throw TypeMismatchError("is_cartesian: f must land in '" + t_prime + "'");
  }
  if (ctx.varpi.map_type(t) != f_prime.source_type() ||
      ctx.varpi.map_type(t_prime) != f_prime.target_type()) {
    throw TypeMismatchError(
        "is_cartesian: f_prime is not typed between the images of f's types");
  }

  if (!tracks(f_prime, f, ctx.varpi)) {
    result.ok = false;
    result.failure = "f_prime does not track f";
    return result;
  }

  for (const auto& third : ctx.total.type_names) {
    const auto& gs = ctx.total.homs_at(third, t_prime);
    const auto& g_primes = ctx.base.homs_at(ctx.varpi.map_type(third),
                                            ctx.varpi.map_type(t_prime));
    const auto& hs =
        ctx.base.homs_at(ctx.varpi.map_type(third), ctx.varpi.map_type(t));
    const auto& ks = ctx.total.homs_at(third, t);
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
      for (std::size_t pi = 0; pi < g_primes.size(); ++pi) {
        if (!tracks(g_primes[pi], gs[gi], ctx.varpi)) continue;
        for (std::size_t hi = 0; hi < hs.size(); ++hi) {
          auto hyp = cartesian_hyp_points(ctx, third, f_prime, g_primes[pi],
                                          hs[hi]);
          if (hyp.empty()) continue;

          FillerKey key{third, gi, pi, hi};
          std::size_t found = 0;
          for (std::size_t ki = 0; ki < ks.size(); ++ki) {
            if (!tracks(hs[hi], ks[ki], ctx.varpi)) continue;
            bool all = std::all_of(hyp.begin(), hyp.end(), [&](const HypPoint&
                                                                   p) {
              return kleene_conclusion(f, ks[ki], gs[gi], p.x);
            });
            if (all) {
              if (found == 0) result.fillers[key] = ki;
              ++found;
            }
          }
          result.filler_counts[key] = found;
          if (found == 0) {
            result.ok = false;
            result.failure = "no filler for the opspan at third type '" +
                             third + "', g=" + to_string(gs[gi]) +
                             ", g'=" + to_string(g_primes[pi]) +
                             ", h=" + to_string(hs[hi]);
            return result;
          }
        }
      }
    }
  }
  return result;
}

CartesianResult is_opcartesian(const FibrationContext& ctx,
                               const PartialFunction& f_prime,
                               const TypeName& t_prime,
                               const PartialFunction& f,
                               HypothesisReading reading) {
  CartesianResult result;
  if (f.source_type() != t_prime) {
    throw TypeMismatchError("is_opcartesian: f must start at '" + t_prime +
                            "'");
  }
  const TypeName& t = f.target_type();
  if (ctx.varpi.map_type(t_prime) != f_prime.source_type() ||
      ctx.varpi.map_type(t) != f_prime.target_type()) {
    throw TypeMismatchError(
        "is_opcartesian: f_prime is not typed between the images of f's "
        "types");
  }

  if (!tracks(f_prime, f, ctx.varpi)) {
    result.ok = false;
    result.failure = "f_prime does not track f";
    return result;
  }

  for (const auto& third : ctx.total.type_names) {
    const auto& gs = ctx.total.homs_at(t_prime, third);
    const auto& g_primes = ctx.base.homs_at(ctx.varpi.map_type(t_prime),
                                            ctx.varpi.map_type(third));
    const auto& hs =
        ctx.base.homs_at(ctx.varpi.map_type(t), ctx.varpi.map_type(third));
    const auto& ls = ctx.total.homs_at(t, third);
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
      for (std::size_t pi = 0; pi < g_primes.size(); ++pi) {
        if (!tracks(g_primes[pi], gs[gi], ctx.varpi)) continue;
        for (std::size_t hi = 0; hi < hs.size(); ++hi) {
          auto hyp = opcartesian_hyp_points(ctx, t_prime, f_prime,
                                            g_primes[pi], hs[hi], reading);
          if (hyp.empty()) continue;

          FillerKey key{third, gi, pi, hi};
          std::size_t found = 0;
          for (std::size_t li = 0; li < ls.size(); ++li) {
            if (!tracks(hs[hi], ls[li], ctx.varpi)) continue;
            bool all = std::all_of(hyp.begin(), hyp.end(), [&](const HypPoint&
                                                                   p) {
              return kleene_conclusion(ls[li], f, gs[gi], p.x);
            });
            if (all) {
              if (found == 0) result.fillers[key] = li;
              ++found;
            }
          }
          result.filler_counts[key] = found;
          if (found == 0) {
            result.ok = false;
            result.failure = "no filler for the span at third type '" + third +
                             "', g=" + to_string(gs[gi]) +
                             ", g'=" + to_string(g_primes[pi]) +
                             ", h=" + to_string(hs[hi]);
            return result;
          }
        }
      }
    }
  }
  return result;
}

FibrationReport is_fibration_simulation(const FibrationContext& ctx,
                                        HypothesisReading reading) {
  FibrationReport report;
  report.holds = true;
  for (const auto& t : ctx.total.type_names) {
    const TypeName& wt = ctx.varpi.map_type(t);
    for (const auto& u : ctx.base.type_names) {
      for (const auto& f : ctx.base.homs_at(u, wt)) {
        LiftEntry entry;
        entry.total_type = t;
        entry.base_fn = f;
        for (const auto& t_src : ctx.total.type_names) {
          if (ctx.varpi.map_type(t_src) != u) continue;
          for (const auto& g : ctx.total.homs_at(t_src, t)) {
            if (is_cartesian(ctx, f, t, g, reading)) {
              if (!entry.lifted) {
                entry.lifted = true;
                entry.lift = g;
                entry.lift_other_type = t_src;
              }
              ++entry.witness_count;
            }
          }
        }
        if (!entry.lifted) report.holds = false;
        report.entries.push_back(std::move(entry));
      }
    }
  }
  return report;
}

FibrationReport is_opfibration_simulation(const FibrationContext& ctx,
                                          HypothesisReading reading) {
  FibrationReport report;
  report.holds = true;
  for (const auto& t : ctx.total.type_names) {
    const TypeName& wt = ctx.varpi.map_type(t);
    for (const auto& u : ctx.base.type_names) {
      for (const auto& f : ctx.base.homs_at(wt, u)) {
        LiftEntry entry;
        entry.total_type = t;
        entry.base_fn = f;
        for (const auto& t_tgt : ctx.total.type_names) {
          if (ctx.varpi.map_type(t_tgt) != u) continue;
          for (const auto& g : ctx.total.homs_at(t, t_tgt)) {
            if (is_opcartesian(ctx, f, t, g, reading)) {
              if (!entry.lifted) {
                entry.lifted = true;
                entry.lift = g;
                entry.lift_other_type = t_tgt;
              }
              ++entry.witness_count;
            }
          }
        }
        if (!entry.lifted) report.holds = false;
        report.entries.push_back(std::move(entry));
      }
    }
  }
  return report;
}

SplittingBuildReport canonical_pr1_splitting(const GrothendieckModel& G) {
  SplittingBuildReport out;
  out.splitting.variant = Splitting::Variant::Opfibration;

  TrackingModulus mu = extract_tracking_modulus(G.origin_sim);
  const Model& C = G.origin_model;

  for (const auto& [key, fns] : C.homs) {
    const auto& [t, t2] = key;
    const auto& trackers = mu.mu.at(key);
    for (std::size_t i = 0; i < fns.size(); ++i) {
      const PartialFunction& f = fns[i];
      for (const auto& p : G.pairs) {
        if (p.base != t) continue;
        const FiniteSet& fiber = G.fiber(p);
        bool constrained = std::any_of(
            f.graph().begin(), f.graph().end(),
            [&](const auto& e) { return fiber.contains(e.first); });
        Element far_point;
        if (constrained) {
          far_point = trackers[i].at(p.point);
        } else {
          const FiniteSet& far_set = G.origin_sim.set_at(t2);
          if (far_set.empty()) {
            out.degenerate = true;
            out.notes.push_back("no valid far point for " + to_string(f) +
                                " at " + p.encoded() + ": the set at '" + t2 +
                                "' is empty");
            continue;
          }
          far_point = far_set.elements().front();
        }
        PairTypeName far{t2, far_point};
        PartialFunction lift = restrict_partial(
            f, fiber, G.fiber(far), p.encoded(), far.encoded());
        out.splitting.table[{f, p.encoded()}] = {std::move(lift),
                                                 far.encoded()};
      }
    }
  }
  return out;
}

SplittingReport validate_splitting(const FibrationContext& ctx,
                                   const Splitting& sp,
                                   HypothesisReading reading) {
  SplittingReport report;
  const bool opfib = sp.variant == Splitting::Variant::Opfibration;
  if (!opfib) {
    report.notes.push_back(
        "fibration variant: lifts are stored as functions into the fixed "
        "type (E[u',u]), the direction the cartesian condition checks");
  }

  report.coverage = true;
  for (const auto& [key, fns] : ctx.base.homs) {
    const auto& [t1, t2] = key;
    const TypeName& pivot = opfib ? t1 : t2;
    for (const auto& u : ctx.total.type_names) {
      if (ctx.varpi.map_type(u) != pivot) continue;
      for (const auto& f : fns) {
        if (!sp.table.count({f, u})) {
          report.coverage = false;
          report.witnesses.push_back("missing table entry for " +
                                     to_string(f) + " at '" + u + "'");
        }
      }
    }
  }
  if (!report.coverage) return report;

  report.entries_cartesian = true;
  for (const auto& [key, entry] : sp.table) {
    CartesianResult check =
        opfib ? is_opcartesian(ctx, key.base_fn, key.total_type, entry.lift,
                               reading)
              : is_cartesian(ctx, key.base_fn, key.total_type, entry.lift,
                             reading);
    if (!check) {
      report.entries_cartesian = false;
      report.witnesses.push_back(
          "entry for " + to_string(key.base_fn) + " at '" + key.total_type +
          "' is not " + (opfib ? "opcartesian: " : "cartesian: ") +
          check.failure);
    }
  }

  report.identity_law = true;
  for (const auto& u : ctx.total.type_names) {
    const TypeName& wu = ctx.varpi.map_type(u);
    PartialFunction base_id = identity_partial(ctx.base.data_at(wu), wu);
    auto it = sp.table.find({base_id, u});
    if (it == sp.table.end()) continue;  // coverage already reported
    PartialFunction total_id = identity_partial(ctx.total.data_at(u), u);
    if (!(it->second.lift == total_id) || it->second.other_endpoint != u) {
      report.identity_law = false;
      report.witnesses.push_back("identity law fails at '" + u + "'");
    }
  }

  report.composition_law = true;
  for (const auto& [fkey, fs] : ctx.base.homs) {
    const auto& [t1, t2] = fkey;
    for (const auto& [gkey, gs] : ctx.base.homs) {
      if (gkey.first != t2) continue;
      for (const auto& u1 : ctx.total.type_names) {
        if (ctx.varpi.map_type(u1) != (opfib ? t1 : gkey.second)) continue;
        for (const auto& f : fs) {
          for (const auto& g : gs) {
            PartialFunction gf = compose_partial(g, f);
            auto direct = sp.table.find({gf, u1});
            if (direct == sp.table.end()) continue;
            if (opfib) {
              const auto& ef = sp.table.at({f, u1});
              const auto& eg = sp.table.at({g, ef.other_endpoint});
              PartialFunction chained = compose_partial(eg.lift, ef.lift);
              if (!(direct->second.lift == chained) ||
                  direct->second.other_endpoint != eg.other_endpoint) {
                report.composition_law = false;
                report.witnesses.push_back(
                    "composition law fails for g=" + to_string(g) +
                    ", f=" + to_string(f) + " at '" + u1 + "'");
              }
            } else {
              const auto& eg = sp.table.at({g, u1});
              const auto& ef = sp.table.at({f, eg.other_endpoint});
              PartialFunction chained = compose_partial(eg.lift, ef.lift);
              if (!(direct->second.lift == chained) ||
                  direct->second.other_endpoint != ef.other_endpoint) {
                report.composition_law = false;
                report.witnesses.push_back(
                    "composition law fails for g=" + to_string(g) +
                    ", f=" + to_string(f) + " at '" + u1 + "'");
              }
            }
          }
        }
      }
    }
  }
  return report;
}

}  // namespace compmod
