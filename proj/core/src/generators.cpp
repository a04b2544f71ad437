#include "compmod/generators.hpp"

#include <algorithm>

namespace compmod {

namespace {

std::vector<Element> fresh_elements(const std::string& stem, std::size_t n) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(stem + std::to_string(i));
  }
  return out;
}

PartialFunction random_function(Rng& rng, const FiniteSet& src,
                                const FiniteSet& tgt, const TypeName& s,
                                const TypeName& t, bool total) {
  std::map<Element, Element> graph;
  for (const auto& x : src) {
    if (tgt.empty()) continue;
    if (!total && rng.chance(30)) continue;  // leave undefined
    graph.emplace(x, tgt.elements()[rng.below(tgt.size())]);
  }
  return PartialFunction(s, t, std::move(graph));
}

PartialFunction random_bijection(Rng& rng, const FiniteSet& src,
                                 const FiniteSet& tgt, const TypeName& s,
                                 const TypeName& t) {
  std::vector<Element> targets = tgt.elements();
  for (std::size_t i = targets.size(); i > 1; --i) {
    std::swap(targets[i - 1], targets[rng.below(i)]);
  }
  std::map<Element, Element> graph;
  for (std::size_t i = 0; i < src.size(); ++i) {
    graph.emplace(src.elements()[i], targets[i]);
  }
  return PartialFunction(s, t, std::move(graph));
}

}  // namespace

Model gen_model(Rng& rng, const ModelGenOptions& opts) {
  std::size_t n_types = rng.between(1, opts.max_types);
  std::vector<TypeName> types;
  std::map<TypeName, FiniteSet> data;
  for (std::size_t i = 0; i < n_types; ++i) {
    TypeName t = "t" + std::to_string(i);
    std::size_t lo = opts.allow_empty_data && rng.chance(10) ? 0 : 1;
    std::size_t n = rng.between(lo, opts.max_elements);
    data[t] = FiniteSet(fresh_elements(t + "_e", n));
    types.push_back(t);
  }

  std::map<HomKey, std::vector<PartialFunction>> homs;
  for (std::size_t k = 0; k < opts.seed_functions; ++k) {
    const TypeName& s = types[rng.below(types.size())];
    const TypeName& t = types[rng.below(types.size())];
    homs[{s, t}].push_back(
        random_function(rng, data[s], data[t], s, t, opts.total_only));
  }
  return completion_close(make_model(std::move(types), std::move(data),
                                     std::move(homs)));
}

std::pair<Model, PresheafSimulation> gen_diagonal_instance(Rng& rng) {
  ModelGenOptions opts;
  opts.total_only = true;
  Model m = gen_model(rng, opts);
  return {m, diagonal_presheaf(m)};
}

Simulation gen_realized_simulation(Rng& rng, const Model& C,
                                   bool full_target) {
  std::size_t n_targets = rng.between(1, C.type_names.size());
  std::vector<TypeName> utypes;
  for (std::size_t i = 0; i < n_targets; ++i) {
    utypes.push_back("u" + std::to_string(i));
  }

  std::map<TypeName, TypeName> type_map;
  for (const auto& t : C.type_names) {
    type_map[t] = utypes[rng.below(utypes.size())];
  }

  // Injective embedding per source type: element x of t becomes "t.x", so
  // every induced function is well defined.
  std::map<TypeName, std::vector<Element>> carrier;
  for (const auto& t : C.type_names) {
    for (const auto& x : C.data_at(t)) {
      carrier[type_map[t]].push_back(t + "." + x);
    }
  }
  for (const auto& u : utypes) {
    std::size_t noise = rng.below(2);
    for (std::size_t i = 0; i < noise; ++i) {
      carrier[u].push_back(u + ".n" + std::to_string(i));
    }
  }

  std::map<TypeName, FiniteSet> ddata;
  for (const auto& u : utypes) ddata[u] = FiniteSet(carrier[u]);

  auto embed = [&](const TypeName& t, const Element& x) { return t + "." + x; };

  Model D;
  if (full_target) {
    D = full_model(utypes, ddata);
  } else {
    std::map<HomKey, std::vector<PartialFunction>> dhoms;
    for (const auto& [key, fns] : C.homs) {
      const auto& [s, t] = key;
      for (const auto& f : fns) {
        std::map<Element, Element> graph;
        for (const auto& [x, fx] : f.graph()) {
          graph.emplace(embed(s, x), embed(t, fx));
        }
        dhoms[{type_map[s], type_map[t]}].push_back(
            PartialFunction(type_map[s], type_map[t], std::move(graph)));
      }
    }
    // A little noise that closure absorbs.
    if (rng.chance(50) && !utypes.empty()) {
      const TypeName& s = utypes[rng.below(utypes.size())];
      const TypeName& t = utypes[rng.below(utypes.size())];
      dhoms[{s, t}].push_back(
          random_function(rng, ddata[s], ddata[t], s, t, false));
    }
    D = completion_close(make_model(utypes, ddata, std::move(dhoms)));
  }

  Simulation sim;
  sim.source = C;
  sim.target = D;
  sim.type_map = type_map;
  for (const auto& t : C.type_names) {
    ForcingRelation rel;
    for (const auto& x : C.data_at(t)) rel.insert({embed(t, x), x});
    sim.forcing[t] = std::move(rel);
  }
  return sim;
}

std::vector<Simulation> gen_simulation_chain(Rng& rng, std::size_t length) {
  ModelGenOptions opts;
  Model current = gen_model(rng, opts);
  std::vector<Simulation> chain;
  for (std::size_t i = 0; i < length; ++i) {
    if (rng.chance(20)) {
      chain.push_back(identity_simulation(current));
    } else {
      chain.push_back(gen_realized_simulation(rng, current));
      current = chain.back().target;
    }
  }
  return chain;
}

PresheafSimulation gen_presheaf_simulation(Rng& rng, const Model& m) {
  // Single-forcer core guarantees validity; extra pairs are kept only when
  // the enriched relation still validates.
  PresheafSimulation sim;
  sim.source = m;
  for (const auto& t : m.type_names) {
    std::size_t extra = rng.below(2);
    std::vector<Element> pool;
    for (const auto& x : m.data_at(t)) pool.push_back("c." + x);
    for (std::size_t i = 0; i < extra; ++i) {
      pool.push_back("c.n" + std::to_string(i));
    }
    sim.sets[t] = FiniteSet(pool);
    ForcingRelation rel;
    for (const auto& x : m.data_at(t)) rel.insert({"c." + x, x});
    sim.forcing[t] = std::move(rel);
  }

  for (std::size_t attempt = 0; attempt < 4; ++attempt) {
    PresheafSimulation enriched = sim;
    for (const auto& t : m.type_names) {
      if (m.data_at(t).empty() || enriched.sets[t].empty()) continue;
      if (!rng.chance(60)) continue;
      const auto& ys = enriched.sets[t].elements();
      const auto& xs = m.data_at(t).elements();
      enriched.forcing[t].insert(
          {ys[rng.below(ys.size())], xs[rng.below(xs.size())]});
    }
    if (validate_simulation(enriched).ok()) sim = enriched;
  }
  return sim;
}

std::pair<Model, TypeName> gen_left_regular_model(Rng& rng) {
  ModelGenOptions opts;
  Model base = gen_model(rng, opts);

  TypeName t0 = base.type_names.front();
  for (const auto& t : base.type_names) {
    if (!base.data_at(t).empty()) {
      t0 = t;
      break;
    }
  }

  auto homs = base.homs;
  for (const auto& s : base.type_names) {
    for (const auto& t : base.type_names) {
      for (const auto& x : base.data_at(t)) {
        std::map<Element, Element> graph;
        for (const auto& w : base.data_at(s)) graph.emplace(w, x);
        homs[{s, t}].push_back(PartialFunction(s, t, std::move(graph)));
      }
    }
  }
  Model m = completion_close(make_model(base.type_names, base.data, homs));
  return {m, t0};
}

namespace {

CategoryInstance discrete_instance(Rng& rng) {
  CategoryInstance inst;
  std::size_t n = rng.between(1, 3);
  for (std::size_t i = 0; i < n; ++i) {
    std::string c = "c" + std::to_string(i);
    std::string id = "id_" + c;
    inst.cat.objects.push_back(c);
    inst.cat.arrows.push_back({id, c, c});
    inst.cat.identities[c] = id;
    inst.cat.composition[{id, id}] = id;
    FiniteSet s(fresh_elements(c + "x", rng.between(1, 3)));
    inst.S.on_objects[c] = s;
    inst.S.on_arrows[id] = identity_partial(s, c);
  }
  return inst;
}

CategoryInstance group_instance(Rng& rng) {
  CategoryInstance inst;
  std::size_t order = rng.between(1, 3);
  inst.cat.objects.push_back("c");
  for (std::size_t i = 0; i < order; ++i) {
    inst.cat.arrows.push_back({"g" + std::to_string(i), "c", "c"});
  }
  inst.cat.identities["c"] = "g0";
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) {
      inst.cat.composition[{"g" + std::to_string(i), "g" + std::to_string(j)}] =
          "g" + std::to_string((i + j) % order);
    }
  }

  // A set with a permutation of order dividing the group order.
  std::size_t n = rng.between(1, 3);
  FiniteSet s(fresh_elements("x", n));
  inst.S.on_objects["c"] = s;
  // Generator permutation: rotation by n/order-compatible step, or identity.
  std::vector<Element> elems = s.elements();
  std::map<Element, Element> step;
  if (order > 1 && n == order) {
    for (std::size_t i = 0; i < n; ++i) {
      step.emplace(elems[i], elems[(i + 1) % n]);
    }
  } else {
    for (const auto& x : elems) step.emplace(x, x);
  }
  PartialFunction gen1("c", "c", step);
  PartialFunction acc = identity_partial(s, "c");
  for (std::size_t i = 0; i < order; ++i) {
    inst.S.on_arrows["g" + std::to_string(i)] = acc;
    acc = compose_partial(gen1, acc);
  }
  return inst;
}

CategoryInstance chain_instance(Rng& rng) {
  CategoryInstance inst;
  std::size_t n = rng.between(2, 3);
  std::size_t setsize = rng.between(1, 3);
  std::vector<FiniteSet> sets;
  for (std::size_t i = 0; i < n; ++i) {
    std::string c = "c" + std::to_string(i);
    inst.cat.objects.push_back(c);
    sets.push_back(FiniteSet(fresh_elements(c + "x", setsize)));
    inst.S.on_objects[c] = sets.back();
  }
  // Arrows a_{i,j} for i <= j; composition by index addition.
  auto name = [](std::size_t i, std::size_t j) {
    return "a" + std::to_string(i) + std::to_string(j);
  };
  std::vector<PartialFunction> steps;  // bijection c_i -> c_{i+1}
  for (std::size_t i = 0; i + 1 < n; ++i) {
    steps.push_back(random_bijection(rng, sets[i], sets[i + 1],
                                     "c" + std::to_string(i),
                                     "c" + std::to_string(i + 1)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      inst.cat.arrows.push_back(
          {name(i, j), "c" + std::to_string(i), "c" + std::to_string(j)});
      PartialFunction acc = identity_partial(sets[i], "c" + std::to_string(i));
      for (std::size_t k = i; k < j; ++k) acc = compose_partial(steps[k], acc);
      inst.S.on_arrows[name(i, j)] = acc;
    }
    inst.cat.identities["c" + std::to_string(i)] = name(i, i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        inst.cat.composition[{name(j, k), name(i, j)}] = name(i, k);
      }
    }
  }
  return inst;
}

}  // namespace

CategoryInstance gen_category_instance(Rng& rng) {
  switch (rng.below(3)) {
    case 0: return discrete_instance(rng);
    case 1: return group_instance(rng);
    default: return chain_instance(rng);
  }
}

namespace {

FiniteCategory product_category(const FiniteCategory& a,
                                const FiniteCategory& b,
                                FunctorData* proj1) {
  FiniteCategory out;
  auto obj = [](const std::string& x, const std::string& y) {
    return encode_pair_name(x, y);
  };
  auto arr = [](const std::string& f, const std::string& g) {
    return encode_pair_name(f, g);
  };
  for (const auto& x : a.objects) {
    for (const auto& y : b.objects) {
      out.objects.push_back(obj(x, y));
      out.identities[obj(x, y)] = arr(a.id(x), b.id(y));
      if (proj1) proj1->on_objects[obj(x, y)] = x;
    }
  }
  for (const auto& f : a.arrows) {
    for (const auto& g : b.arrows) {
      out.arrows.push_back({arr(f.name, g.name), obj(f.src, g.src),
                            obj(f.tgt, g.tgt)});
      if (proj1) proj1->on_arrows[arr(f.name, g.name)] = f.name;
    }
  }
  for (const auto& f1 : a.arrows) {
    for (const auto& f2 : a.arrows) {
      if (f1.tgt != f2.src) continue;
      for (const auto& g1 : b.arrows) {
        for (const auto& g2 : b.arrows) {
          if (g1.tgt != g2.src) continue;
          out.composition[{arr(f2.name, g2.name), arr(f1.name, g1.name)}] =
              arr(a.compose(f2.name, f1.name), b.compose(g2.name, g1.name));
        }
      }
    }
  }
  return out;
}

Presheaf pull_back_presheaf(const FiniteCategory& dom, const Presheaf& S_cod,
                            const FunctorData& F) {
  Presheaf out;
  for (const auto& c : dom.objects) {
    out.on_objects[c] = S_cod.at(F.on_objects.at(c));
  }
  for (const auto& a : dom.arrows) {
    const PartialFunction& m = S_cod.map(F.on_arrows.at(a.name));
    out.on_arrows[a.name] = PartialFunction(a.src, a.tgt, m.graph());
  }
  return out;
}

FiniteCategory terminal_category() {
  FiniteCategory one;
  one.objects = {"pt"};
  one.arrows = {{"id_pt", "pt", "pt"}};
  one.identities["pt"] = "id_pt";
  one.composition[{"id_pt", "id_pt"}] = "id_pt";
  return one;
}

}  // namespace

FibrationInstance gen_fibration_instance(Rng& rng, std::size_t kind) {
  FibrationInstance inst;
  switch (kind % 3) {
    case 0: {
      // Identity functor on a random base.
      CategoryInstance base = gen_category_instance(rng);
      inst.catB = base.cat;
      inst.S_prime = base.S;
      inst.catE = base.cat;
      inst.S = base.S;
      for (const auto& c : base.cat.objects) inst.F.on_objects[c] = c;
      for (const auto& a : base.cat.arrows) inst.F.on_arrows[a.name] = a.name;
      return inst;
    }
    case 1: {
      // Collapse of a discrete category onto the terminal category.
      CategoryInstance fib = discrete_instance(rng);
      inst.catB = terminal_category();
      FiniteSet w(fresh_elements("w", rng.between(1, 3)));
      inst.S_prime.on_objects["pt"] = w;
      inst.S_prime.on_arrows["id_pt"] = identity_partial(w, "pt");
      inst.catE = fib.cat;
      for (const auto& c : fib.cat.objects) inst.F.on_objects[c] = "pt";
      for (const auto& a : fib.cat.arrows) inst.F.on_arrows[a.name] = "id_pt";
      inst.S = pull_back_presheaf(inst.catE, inst.S_prime, inst.F);
      return inst;
    }
    default: {
      // Product projection onto the first factor; the fiber is terminal so
      // the total category stays within three objects.
      CategoryInstance base = chain_instance(rng);
      inst.catB = base.cat;
      inst.S_prime = base.S;
      inst.catE = product_category(base.cat, terminal_category(), &inst.F);
      inst.S = pull_back_presheaf(inst.catE, inst.S_prime, inst.F);
      return inst;
    }
  }
}

PullbackInstance gen_pullback_instance(Rng& rng) {
  // Kept at the default enumeration bound: one base type, two elements, at
  // most one extra target point, so the apex stays enumerable.
  ModelGenOptions opts;
  opts.max_types = 1;
  opts.max_elements = 2;
  opts.seed_functions = 2;
  Model C = gen_model(rng, opts);

  PullbackInstance inst;
  inst.gamma = gen_realized_simulation(rng, C, /*full_target=*/true);
  inst.delta = diagonal_presheaf(inst.gamma.target);
  return inst;
}

}  // namespace compmod
