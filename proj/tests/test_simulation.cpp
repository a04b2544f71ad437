#include <doctest.h>

#include <algorithm>

#include "compmod/generators.hpp"
#include "compmod/simulation.hpp"

using namespace compmod;

namespace {

// Two types, one non-identity function, with a forcing that needs real work:
// u forces a0, v forces a1, w forces b0.
struct RunningInstance {
  Model model;
  PresheafSimulation sim;
  PartialFunction f;

  RunningInstance() {
    FiniteSet s{"a0", "a1"};
    FiniteSet t{"b0"};
    f = PartialFunction("s", "t", {{"a0", "b0"}});
    std::map<HomKey, std::vector<PartialFunction>> homs;
    homs[{"s", "s"}] = {identity_partial(s, "s")};
    homs[{"t", "t"}] = {identity_partial(t, "t")};
    homs[{"s", "t"}] = {f};
    model = make_model({"s", "t"}, {{"s", s}, {"t", t}}, homs);
    sim.source = model;
    sim.sets["s"] = FiniteSet{"u", "v"};
    sim.sets["t"] = FiniteSet{"w"};
    sim.forcing["s"] = {{"u", "a0"}, {"v", "a1"}};
    sim.forcing["t"] = {{"w", "b0"}};
  }
};

}  // namespace

TEST_CASE("tracks: diagonal forcing, empty domain, and the running example") {
  RunningInstance inst;

  CHECK(tracks(PartialFunction("s", "t", {{"u", "w"}}), inst.f, inst.sim));
  CHECK(tracks(PartialFunction("s", "t", {{"u", "w"}, {"v", "w"}}), inst.f,
               inst.sim));
  CHECK_FALSE(tracks(PartialFunction("s", "t", {}), inst.f, inst.sim));

  // Empty-domain functions are tracked by anything.
  PartialFunction nothing("s", "t", {});
  CHECK(tracks(PartialFunction("s", "t", {}), nothing, inst.sim));

  // Identity simulation: every f tracks itself.
  Simulation id = identity_simulation(inst.model);
  CHECK(tracks(inst.f, inst.f, id));

  CHECK_THROWS_AS(tracks(PartialFunction("s", "s", {}), inst.f, inst.sim),
                  TypeMismatchError);
}

TEST_CASE("tracking is monotone in the tracker") {
  RunningInstance inst;
  auto trackers = find_trackers(inst.f, inst.sim);
  REQUIRE_FALSE(trackers.empty());
  for (const auto& tr : trackers) {
    auto enlarged = tr.graph();
    enlarged.emplace("v", "w");  // v forces nothing in dom(f)
    CHECK(tracks(PartialFunction("s", "t", enlarged), inst.f, inst.sim));
  }
}

TEST_CASE("validate_simulation reports totality and trackability failures") {
  RunningInstance inst;
  CHECK(validate_simulation(inst.sim).ok());
  CHECK(validate_simulation(identity_simulation(inst.model)).ok());

  PresheafSimulation broken = inst.sim;
  broken.forcing["s"] = {{"u", "a0"}};  // a1 never forced
  ValidationReport r = validate_simulation(broken);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations[0].kind == ViolationKind::TotalityFailure);
  CHECK(r.violations[0].message.find("a1") != std::string::npos);

  PresheafSimulation malformed = inst.sim;
  malformed.forcing["t"].insert({"zz", "b0"});
  ValidationReport r2 = validate_simulation(malformed);
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.violations[0].kind == ViolationKind::MalformedInput);
}

TEST_CASE("model-target simulations report untracked functions") {
  // Source has a swap; the target's hom-class holds only identities, so the
  // exhaustive search finds no tracker.
  FiniteSet s{"a0", "a1"};
  Model src = completion_close(make_model(
      {"s"}, {{"s", s}},
      {{{"s", "s"},
        {PartialFunction("s", "s", {{"a0", "a1"}, {"a1", "a0"}})}}}));
  FiniteSet d{"y0", "y1"};
  Model tgt = make_model({"u"}, {{"u", d}},
                         {{{"u", "u"}, {identity_partial(d, "u")}}});
  Simulation sim;
  sim.source = src;
  sim.target = tgt;
  sim.type_map["s"] = "u";
  sim.forcing["s"] = {{"y0", "a0"}, {"y1", "a1"}};
  ValidationReport r = validate_simulation(sim);
  REQUIRE_FALSE(r.ok());
  bool trackability = false;
  for (const auto& v : r.violations) {
    if (v.kind == ViolationKind::TrackabilityFailure) trackability = true;
  }
  CHECK(trackability);
}

TEST_CASE("trackability fails when one forcer needs two incompatible values") {
  // u forces both a0 and a1, f separates them, and the images have disjoint
  // forcers, so Need(u) is empty.
  FiniteSet s{"a0", "a1"};
  FiniteSet t{"b0", "b1"};
  PartialFunction f("s", "t", {{"a0", "b0"}, {"a1", "b1"}});
  std::map<HomKey, std::vector<PartialFunction>> homs;
  homs[{"s", "s"}] = {identity_partial(s, "s")};
  homs[{"t", "t"}] = {identity_partial(t, "t")};
  homs[{"s", "t"}] = {f};
  PresheafSimulation sim;
  sim.source = make_model({"s", "t"}, {{"s", s}, {"t", t}}, homs);
  sim.sets["s"] = FiniteSet{"u"};
  sim.sets["t"] = FiniteSet{"w", "w'"};
  sim.forcing["s"] = {{"u", "a0"}, {"u", "a1"}};
  sim.forcing["t"] = {{"w", "b0"}, {"w'", "b1"}};

  CHECK(find_trackers(f, sim).empty());
  ValidationReport r = validate_simulation(sim);
  REQUIRE_FALSE(r.ok());
  bool trackability = false;
  for (const auto& v : r.violations) {
    if (v.kind == ViolationKind::TrackabilityFailure) trackability = true;
  }
  CHECK(trackability);
}

TEST_CASE("find_trackers returns canonical minimal trackers") {
  RunningInstance inst;
  auto trackers = find_trackers(inst.f, inst.sim);
  REQUIRE(trackers.size() == 1);
  CHECK(trackers[0].graph() == std::map<Element, Element>{{"u", "w"}});

  // Empty-domain function: a single empty minimal tracker.
  auto none = find_trackers(PartialFunction("s", "t", {}), inst.sim);
  REQUIRE(none.size() == 1);
  CHECK(none[0].empty());

  // Diagonal forcing: the minimal tracker is the function's own graph.
  PresheafSimulation diag = diagonal_presheaf(inst.model);
  auto dts = find_trackers(inst.f, diag);
  REQUIRE(dts.size() == 1);
  CHECK(dts[0].graph() == inst.f.graph());

  // All combinations in canonical order when a forcer has two choices.
  PresheafSimulation wide = inst.sim;
  wide.sets["t"] = FiniteSet{"w", "w2"};
  wide.forcing["t"] = {{"w", "b0"}, {"w2", "b0"}};
  auto both = find_trackers(inst.f, wide);
  REQUIRE(both.size() == 2);
  CHECK(both[0].at("u") == "w");
  CHECK(both[1].at("u") == "w2");
  CHECK(find_trackers(inst.f, wide, 1).size() == 1);
}

TEST_CASE("composition: one-step relational composition of forcings") {
  FiniteSet sa{"a0"};
  Model A = make_model({"s"}, {{"s", sa}},
                       {{{"s", "s"}, {identity_partial(sa, "s")}}});
  FiniteSet sb{"u"};
  Model B = make_model({"m"}, {{"m", sb}},
                       {{{"m", "m"}, {identity_partial(sb, "m")}}});
  FiniteSet sc{"p"};
  Model C = make_model({"z"}, {{"z", sc}},
                       {{{"z", "z"}, {identity_partial(sc, "z")}}});

  Simulation gamma{A, B, {{"s", "m"}}, {{"s", {{"u", "a0"}}}}};
  Simulation delta{B, C, {{"m", "z"}}, {{"m", {{"p", "u"}}}}};
  Simulation comp = compose_simulations(delta, gamma);
  CHECK(comp.forcing_at("s") == ForcingRelation{{"p", "a0"}});
  CHECK(validate_simulation(comp).ok());

  CHECK_THROWS_AS(compose_simulations(gamma, delta), TypeMismatchError);
}

TEST_CASE("simulation laws on generated chains") {
  Rng rng(101);
  for (int i = 0; i < 15; ++i) {
    auto chain = gen_simulation_chain(rng, 3);
    const Simulation& g1 = chain[0];
    const Simulation& g2 = chain[1];
    const Simulation& g3 = chain[2];
    REQUIRE(validate_simulation(g1).ok());
    REQUIRE(validate_simulation(g2).ok());
    REQUIRE(validate_simulation(g3).ok());

    CHECK(simulations_equal(
        compose_simulations(identity_simulation(g1.target), g1), g1));
    CHECK(simulations_equal(
        compose_simulations(g1, identity_simulation(g1.source)), g1));

    Simulation left = compose_simulations(g3, compose_simulations(g2, g1));
    Simulation right = compose_simulations(compose_simulations(g3, g2), g1);
    CHECK(simulations_equal(left, right));
    CHECK(validate_simulation(left).ok());
  }
}

TEST_CASE("composite of valid simulations is valid on broad instances") {
  // Multi-forcer relations through presheaf composition as well.
  Rng rng(202);
  for (int i = 0; i < 10; ++i) {
    Model m = gen_model(rng);
    Simulation g = gen_realized_simulation(rng, m);
    PresheafSimulation p = gen_presheaf_simulation(rng, g.target);
    REQUIRE(validate_simulation(p).ok());
    PresheafSimulation comp = compose_presheaf(p, g);
    CHECK(validate_simulation(comp).ok());
  }
}

TEST_CASE("simulations_equal distinguishes forcing differences") {
  RunningInstance inst;
  Simulation id = identity_simulation(inst.model);
  Simulation id2 = id;
  CHECK(simulations_equal(id, id2));
  id2.forcing["s"].insert({"a0", "a1"});
  CHECK_FALSE(simulations_equal(id, id2));

  Rng rng(1);
  Simulation other = gen_realized_simulation(rng, inst.model);
  CHECK_THROWS_AS(simulations_equal(id, other), PreconditionError);
}

TEST_CASE("build_representable on the identities-only one-type model") {
  FiniteSet s{"x0", "x1"};
  Model m = make_model({"s"}, {{"s", s}},
                       {{{"s", "s"}, {identity_partial(s, "s")}}});
  RepresentableSimulation rep = build_representable(m, "s");
  CHECK(rep.sim.sets.at("s").size() == 1);  // one token for the identity
  CHECK(rep.sim.forcing.at("s") ==
        ForcingRelation{{"f#0", "x0"}, {"f#0", "x1"}});
  CHECK(validate_simulation(rep.sim).ok());
}

TEST_CASE("build_representable fails on non-left-regular input with witness") {
  FiniteSet s{"a0"};
  FiniteSet t{"b0"};
  Model two =
      completion_close(make_model({"s", "t"}, {{"s", s}, {"t", t}}, {}));
  CHECK_THROWS_WITH_AS(build_representable(two, "s"), doctest::Contains("b0"),
                       PreconditionError);
}

TEST_CASE("representable simulations validate and their trackers track") {
  Rng rng(303);
  for (int i = 0; i < 8; ++i) {
    auto [m, t0] = gen_left_regular_model(rng);
    RepresentableSimulation rep = build_representable(m, t0);
    CHECK(validate_simulation(rep.sim).ok());

    for (const auto& [key, fns] : m.homs) {
      const auto& stars = rep.star_trackers.at(key);
      REQUIRE(stars.size() == fns.size());
      for (std::size_t k = 0; k < fns.size(); ++k) {
        CHECK(tracks(stars[k], fns[k], rep.sim));
      }
    }
  }
}

TEST_CASE("post-composition trackers are functorial") {
  Rng rng(404);
  auto [m, t0] = gen_left_regular_model(rng);
  RepresentableSimulation rep = build_representable(m, t0);
  for (const auto& [hkey, hs] : m.homs) {
    for (const auto& [gkey, gs] : m.homs) {
      if (gkey.first != hkey.second) continue;
      for (std::size_t hi = 0; hi < hs.size(); ++hi) {
        for (std::size_t gi = 0; gi < gs.size(); ++gi) {
          PartialFunction gh = compose_partial(gs[gi], hs[hi]);
          const auto& ghs = m.homs_at(hkey.first, gkey.second);
          auto it = std::find(ghs.begin(), ghs.end(), gh);
          REQUIRE(it != ghs.end());
          const PartialFunction& star_gh =
              rep.star_trackers.at({hkey.first, gkey.second})[it - ghs.begin()];
          PartialFunction star_g_star_h = compose_partial(
              rep.star_trackers.at(gkey)[gi], rep.star_trackers.at(hkey)[hi]);
          CHECK(partial_equal(star_gh, star_g_star_h));
        }
      }
    }
  }
}

TEST_CASE("extract_forcing_modulus picks the canonically first forcer") {
  FiniteSet s{"a0"};
  Model m = make_model({"s"}, {{"s", s}},
                       {{{"s", "s"}, {identity_partial(s, "s")}}});
  PresheafSimulation sim;
  sim.source = m;
  sim.sets["s"] = FiniteSet{"u", "v"};
  sim.forcing["s"] = {{"u", "a0"}, {"v", "a0"}};
  ForcingModulus phi = extract_forcing_modulus(sim);
  CHECK(phi.phi.at("s").at("a0") == "u");

  Simulation id = identity_simulation(m);
  ForcingModulus phi_id = extract_forcing_modulus(id);
  CHECK(phi_id.phi.at("s").at("a0") == "a0");
}

TEST_CASE("extract_tracking_modulus: identity and diagonal cases") {
  RunningInstance inst;
  Simulation id = identity_simulation(inst.model);
  TrackingModulus mu = extract_tracking_modulus(id);
  const auto& fns = inst.model.homs_at("s", "t");
  for (std::size_t i = 0; i < fns.size(); ++i) {
    CHECK(tracks(mu.mu.at({"s", "t"})[i], fns[i], id));
  }

  PresheafSimulation diag = diagonal_presheaf(inst.model);
  TrackingModulus mu_diag = extract_tracking_modulus(diag);
  for (std::size_t i = 0; i < fns.size(); ++i) {
    CHECK(mu_diag.mu.at({"s", "t"})[i].graph() == fns[i].graph());
  }
}

TEST_CASE("extraction on an invalid simulation is a validation error") {
  RunningInstance inst;
  PresheafSimulation broken = inst.sim;
  broken.forcing["s"] = {{"u", "a0"}};
  CHECK_THROWS_AS(extract_forcing_modulus(broken), PreconditionError);
}

TEST_CASE("realize_simulation rejects rectangle violations with witness") {
  RunningInstance inst;
  Simulation id = identity_simulation(inst.model);
  ForcingModulus phi = extract_forcing_modulus(id);
  TrackingModulus mu = extract_tracking_modulus(id);

  // Sabotage: make mu(f) undefined at phi_s(a0).
  mu.mu.at({"s", "t"})[0] = PartialFunction("s", "t", {});
  CHECK_THROWS_WITH_AS(
      realize_simulation(id.type_map, phi, mu, id.source, id.target),
      doctest::Contains("rectangle"), PreconditionError);
}

TEST_CASE("extract and realize rebuilds the identity simulation") {
  RunningInstance inst;
  Simulation id = identity_simulation(inst.model);
  Simulation realized =
      realize_simulation(id.type_map, extract_forcing_modulus(id),
                         extract_tracking_modulus(id), id.source, id.target);
  CHECK(simulations_equal(realized, id));
}

TEST_CASE("moduli round-trip on generated instances") {
  Rng rng(505);
  for (int i = 0; i < 12; ++i) {
    Model m = gen_model(rng);
    Simulation sim = gen_realized_simulation(rng, m);
    REQUIRE(validate_simulation(sim).ok());
    Simulation realized = realize_simulation(
        sim.type_map, extract_forcing_modulus(sim),
        extract_tracking_modulus(sim), sim.source, sim.target);
    CHECK(validate_simulation(realized).ok());
    for (const auto& t : sim.source.type_names) {
      for (const auto& p : realized.forcing_at(t)) {
        CHECK(sim.forcing_at(t).count(p) == 1);
      }
    }
  }
}
