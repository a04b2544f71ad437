#include "compmod/canonical.hpp"

#include <algorithm>

namespace compmod {

std::string graph_key(const PartialFunction& f) { return to_string(f); }

Model build_cm_total(const FiniteCategory& cat, const Presheaf& S) {
  ValidationReport pres = validate_presheaf(cat, S);
  if (!pres.ok()) {
    throw PreconditionError("build_cm_total: presheaf invalid: " +
                            pres.summary());
  }

  std::map<TypeName, FiniteSet> data;
  for (const auto& c : cat.objects) data[c] = S.at(c);

  std::map<HomKey, std::vector<PartialFunction>> homs;
  for (const auto& c1 : cat.objects) {
    for (const auto& c2 : cat.objects) {
      std::vector<PartialFunction> fns;
      for (const auto& f : cat.arrows_from_to(c1, c2)) {
        fns.push_back(S.map(f));
      }
      std::sort(fns.begin(), fns.end());
      fns.erase(std::unique(fns.begin(), fns.end()), fns.end());
      if (!fns.empty()) homs[{c1, c2}] = std::move(fns);
    }
  }
  return make_model(cat.objects, std::move(data), std::move(homs));
}

CmPartialResult build_cm_partial(const FiniteCategory& cat,
                                 const Presheaf& S) {
  ValidationReport pres = validate_presheaf(cat, S);
  if (!pres.ok()) {
    throw PreconditionError("build_cm_partial: presheaf invalid: " +
                            pres.summary());
  }
  if (!preserves_pullbacks(cat, S)) {
    throw PreconditionError(
        "build_cm_partial: presheaf does not preserve pullbacks");
  }

  std::map<TypeName, FiniteSet> data;
  for (const auto& c : cat.objects) data[c] = S.at(c);

  CmPartialResult out;
  std::map<HomKey, std::vector<PartialFunction>> homs;
  for (const auto& c1 : cat.objects) {
    for (const auto& c2 : cat.objects) {
      std::vector<PartialFunction> fns;
      for (const auto& pa : enumerate_partial_arrows(cat, c1, c2)) {
        const PartialFunction& si = S.map(pa.mono);
        const PartialFunction& sf = S.map(pa.map);
        // Monos are pullbacks of themselves, so preservation forces S(i) to
        // be injective; a failure here is a pullback-preservation failure.
        std::map<Element, Element> inverse;
        bool injective = true;
        for (const auto& [z, iz] : si.graph()) {
          if (!inverse.emplace(iz, z).second) injective = false;
        }
        if (!injective) {
          throw PreconditionError(
              "build_cm_partial: S(" + pa.mono +
              ") is not injective (pullback-preservation failure)");
        }
        std::map<Element, Element> graph;
        for (const auto& [iz, z] : inverse) {
          graph.emplace(iz, sf.at(z));
        }
        PartialFunction induced(c1, c2, std::move(graph));
        if (std::find(fns.begin(), fns.end(), induced) == fns.end()) {
          fns.push_back(induced);
          out.provenance.emplace(std::make_tuple(c1, c2, graph_key(induced)),
                                 pa);
        }
      }
      std::sort(fns.begin(), fns.end());
      if (!fns.empty()) homs[{c1, c2}] = std::move(fns);
    }
  }
  out.model = make_model(cat.objects, std::move(data), std::move(homs));
  return out;
}

Simulation simulation_from_functor(const FiniteCategory& catE,
                                   const Presheaf& S,
                                   const FiniteCategory& catB,
                                   const Presheaf& S_prime,
                                   const FunctorData& F) {
  ValidationReport fun = validate_functor(catE, catB, F);
  if (!fun.ok()) {
    throw PreconditionError("simulation_from_functor: functor invalid: " +
                            fun.summary());
  }

  // S_prime . F = S, on objects and on arrows.
  for (const auto& e : catE.objects) {
    if (!(S_prime.at(F.on_objects.at(e)) == S.at(e))) {
      throw PreconditionError("simulation_from_functor: S'(F(" + e +
                              ")) != S(" + e + ")");
    }
  }
  for (const auto& a : catE.arrows) {
    PartialFunction lhs = S_prime.map(F.on_arrows.at(a.name));
    PartialFunction rhs = S.map(a.name);
    if (lhs.graph() != rhs.graph()) {
      throw PreconditionError("simulation_from_functor: S'(F(" + a.name +
                              ")) != S(" + a.name + ")");
    }
  }

  Simulation sim;
  sim.source = build_cm_total(catE, S);
  sim.target = build_cm_total(catB, S_prime);
  for (const auto& e : catE.objects) {
    sim.type_map[e] = F.on_objects.at(e);
    ForcingRelation rel;
    for (const auto& x : S.at(e)) rel.insert({x, x});
    sim.forcing[e] = std::move(rel);
  }
  return sim;
}

}  // namespace compmod
