#include "compmod/document.hpp"

#include <json.hpp>

namespace compmod {

namespace {

using Json = nlohmann::ordered_json;

std::string type_mismatch(const std::string& path, const char* expected) {
  return "at " + path + ": expected " + expected;
}

const Json& member(const Json& j, const std::string& path,
                   const std::string& key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError("at " + path + ": missing member '" + key + "'");
  }
  return j.at(key);
}

FiniteSet parse_element_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(type_mismatch(path, "array of strings"));
  std::vector<Element> elems;
  for (const auto& e : j) {
    if (!e.is_string()) {
      throw ParseError(type_mismatch(path, "array of strings"));
    }
    elems.push_back(e.get<std::string>());
  }
  return FiniteSet(std::move(elems));
}

std::map<Element, Element> parse_graph(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(type_mismatch(path, "object"));
  std::map<Element, Element> graph;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) {
      throw ParseError(type_mismatch(path + "." + k, "string"));
    }
    graph.emplace(k, v.get<std::string>());
  }
  return graph;
}

HomKey parse_hom_key(const std::string& key, const std::string& path) {
  auto pos = key.find("->");
  if (pos == std::string::npos) {
    throw ParseError("at " + path + ": hom key '" + key +
                     "' is not of the form 's->t'");
  }
  return {key.substr(0, pos), key.substr(pos + 2)};
}

Model parse_model(const Json& j, const std::string& path) {
  std::vector<TypeName> types;
  for (const auto& t : member(j, path, "types")) {
    types.push_back(t.get<std::string>());
  }
  std::map<TypeName, FiniteSet> data;
  for (const auto& [t, elems] : member(j, path, "data").items()) {
    data[t] = parse_element_list(elems, path + ".data." + t);
  }
  std::map<HomKey, std::vector<PartialFunction>> homs;
  if (j.contains("homs")) {
    for (const auto& [key, fns] : j.at("homs").items()) {
      HomKey hk = parse_hom_key(key, path + ".homs");
      if (!fns.is_array()) {
        throw ParseError(type_mismatch(path + ".homs." + key, "array"));
      }
      for (const auto& fn : fns) {
        homs[hk].push_back(PartialFunction(
            hk.first, hk.second,
            parse_graph(member(fn, path + ".homs." + key, "graph"),
                        path + ".homs." + key + ".graph")));
      }
    }
  }
  Model m = make_model(std::move(types), std::move(data), std::move(homs));
  ValidationReport structure;
  for (const auto& [t, s] : m.data) {
    (void)s;
    if (!m.has_type(t)) {
      throw ParseError("at " + path + ": data for undeclared type '" + t + "'");
    }
  }
  for (const auto& t : m.type_names) {
    if (!m.data.count(t)) {
      throw ParseError("at " + path + ": type '" + t + "' has no data");
    }
  }
  for (const auto& [key, fns] : m.homs) {
    for (const auto& f : fns) {
      for (const auto& [x, y] : f.graph()) {
        if (!m.data_at(key.first).contains(x)) {
          throw ParseError("at " + path + ".homs: function " + to_string(f) +
                           " uses unknown element '" + x + "'");
        }
        if (!m.data_at(key.second).contains(y)) {
          throw ParseError("at " + path + ".homs: function " + to_string(f) +
                           " uses unknown element '" + y + "'");
        }
      }
    }
  }
  return m;
}

std::map<TypeName, ForcingRelation> parse_forcing(const Json& j,
                                                  const std::string& path) {
  std::map<TypeName, ForcingRelation> forcing;
  if (!j.is_object()) throw ParseError(type_mismatch(path, "object"));
  for (const auto& [t, pairs] : j.items()) {
    if (!pairs.is_array()) {
      throw ParseError(type_mismatch(path + "." + t, "array of [y,x] pairs"));
    }
    ForcingRelation rel;
    for (const auto& p : pairs) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() ||
          !p[1].is_string()) {
        throw ParseError(type_mismatch(path + "." + t, "array of [y,x] pairs"));
      }
      rel.insert({p[0].get<std::string>(), p[1].get<std::string>()});
    }
    forcing[t] = std::move(rel);
  }
  return forcing;
}

std::map<TypeName, TypeName> parse_type_map(const Json& j,
                                            const std::string& path) {
  if (!j.is_object()) throw ParseError(type_mismatch(path, "object"));
  std::map<TypeName, TypeName> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw ParseError(type_mismatch(path + "." + k, "string"));
    out[k] = v.get<std::string>();
  }
  return out;
}

void check_forcing_carriers(const std::string& path, const Model& source,
                            const std::map<TypeName, ForcingRelation>& forcing,
                            const std::map<TypeName, FiniteSet>& carriers) {
  for (const auto& [t, rel] : forcing) {
    if (!source.has_type(t)) {
      throw ParseError("at " + path + ": forcing at unknown type '" + t + "'");
    }
    auto it = carriers.find(t);
    if (it == carriers.end()) continue;
    for (const auto& [y, x] : rel) {
      if (!it->second.contains(y)) {
        throw ParseError("at " + path + ": forcing pair [" + y + "," + x +
                         "] at '" + t + "' references unknown forcer '" + y +
                         "'");
      }
      if (!source.data_at(t).contains(x)) {
        throw ParseError("at " + path + ": forcing pair [" + y + "," + x +
                         "] at '" + t + "' references unknown element '" + x +
                         "'");
      }
    }
  }
}

FiniteCategory parse_category(const Json& j, const std::string& path) {
  FiniteCategory cat;
  for (const auto& o : member(j, path, "objects")) {
    cat.objects.push_back(o.get<std::string>());
  }
  for (const auto& a : member(j, path, "arrows")) {
    if (!a.is_array() || a.size() != 3) {
      throw ParseError(type_mismatch(path + ".arrows", "[name,src,tgt]"));
    }
    cat.arrows.push_back({a[0].get<std::string>(), a[1].get<std::string>(),
                          a[2].get<std::string>()});
  }
  for (const auto& c : member(j, path, "composition")) {
    if (!c.is_array() || c.size() != 3) {
      throw ParseError(type_mismatch(path + ".composition", "[g,f,gf]"));
    }
    cat.composition[{c[0].get<std::string>(), c[1].get<std::string>()}] =
        c[2].get<std::string>();
  }
  for (const auto& [obj, id] : member(j, path, "identities").items()) {
    cat.identities[obj] = id.get<std::string>();
  }
  return cat;
}

Presheaf parse_presheaf(const Json& j, const std::string& path,
                        const FiniteCategory& cat) {
  Presheaf S;
  for (const auto& [c, elems] : member(j, path, "objects").items()) {
    S.on_objects[c] = parse_element_list(elems, path + ".objects." + c);
  }
  for (const auto& [a, graph] : member(j, path, "arrows").items()) {
    const Arrow& ar = cat.arrow(a);
    S.on_arrows[a] = PartialFunction(ar.src, ar.tgt,
                                     parse_graph(graph, path + ".arrows." + a));
  }
  return S;
}

Json graph_to_json(const PartialFunction& f) {
  Json g = Json::object();
  for (const auto& [x, y] : f.graph()) g[x] = y;
  return g;
}

}  // namespace

namespace {

Document parse_document_impl(const Json& j);

}  // namespace

Document parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
  try {
    return parse_document_impl(j);
  } catch (const nlohmann::json::exception& e) {
    // Wrong JSON value kinds surface from the accessors.
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

namespace {

Document parse_document_impl(const Json& j) {
  Document doc;
  if (!j.is_object()) throw ParseError("document root must be an object");
  doc.version = member(j, "$", "version").get<int>();
  if (doc.version != 1) {
    throw ParseError("unsupported document version " +
                     std::to_string(doc.version));
  }

  if (j.contains("models")) {
    for (const auto& [name, mj] : j.at("models").items()) {
      doc.models[name] = parse_model(mj, "models." + name);
    }
  }

  if (j.contains("simulations")) {
    for (const auto& [name, sj] : j.at("simulations").items()) {
      std::string path = "simulations." + name;
      std::string source = member(sj, path, "source").get<std::string>();
      if (!doc.models.count(source)) {
        throw ParseError("at " + path + ": unresolved model '" + source + "'");
      }
      if (sj.contains("sets")) {
        PresheafSimulation sim;
        sim.source = doc.models.at(source);
        for (const auto& [t, elems] : sj.at("sets").items()) {
          sim.sets[t] = parse_element_list(elems, path + ".sets." + t);
        }
        sim.forcing = parse_forcing(member(sj, path, "forcing"),
                                    path + ".forcing");
        check_forcing_carriers(path, sim.source, sim.forcing, sim.sets);
        for (const auto& t : sim.source.type_names) {
          if (!sim.sets.count(t)) {
            throw ParseError("at " + path + ": no set declared for type '" +
                             t + "'");
          }
        }
        doc.presheaf_simulations[name] = std::move(sim);
      } else {
        std::string target = member(sj, path, "target").get<std::string>();
        if (!doc.models.count(target)) {
          throw ParseError("at " + path + ": unresolved model '" + target +
                           "'");
        }
        Simulation sim;
        sim.source = doc.models.at(source);
        sim.target = doc.models.at(target);
        sim.type_map = parse_type_map(member(sj, path, "type_map"),
                                      path + ".type_map");
        sim.forcing = parse_forcing(member(sj, path, "forcing"),
                                    path + ".forcing");
        for (const auto& t : sim.source.type_names) {
          if (!sim.type_map.count(t)) {
            throw ParseError("at " + path + ": type map undefined at '" + t +
                             "'");
          }
          if (!sim.target.has_type(sim.type_map.at(t))) {
            throw ParseError("at " + path + ": type map sends '" + t +
                             "' to unknown type '" + sim.type_map.at(t) + "'");
          }
        }
        std::map<TypeName, FiniteSet> carriers;
        for (const auto& t : sim.source.type_names) {
          carriers[t] = sim.target.data_at(sim.type_map.at(t));
        }
        check_forcing_carriers(path, sim.source, sim.forcing, carriers);
        doc.simulations[name] = std::move(sim);
      }
    }
  }

  if (j.contains("categories")) {
    for (const auto& [name, cj] : j.at("categories").items()) {
      std::string path = "categories." + name;
      CategoryEntry entry;
      entry.cat = parse_category(cj, path);
      entry.S = parse_presheaf(member(cj, path, "presheaf"),
                               path + ".presheaf", entry.cat);
      doc.categories[name] = std::move(entry);
    }
  }

  if (j.contains("tasks")) {
    std::size_t idx = 0;
    for (const auto& tj : j.at("tasks")) {
      std::string path = "tasks[" + std::to_string(idx) + "]";
      TaskSpec spec;
      spec.index = idx;
      spec.kind = member(tj, path, "task").get<std::string>();
      for (const auto& [k, v] : tj.items()) {
        if (k == "task") continue;
        if (k == "bound") {
          spec.bound = v.get<std::size_t>();
          continue;
        }
        if (!v.is_string()) {
          throw ParseError(type_mismatch(path + "." + k, "string"));
        }
        spec.args[k] = v.get<std::string>();
      }
      doc.tasks.push_back(std::move(spec));
      ++idx;
    }
  }
  return doc;
}

}  // namespace

std::string serialize_document(const Document& doc) {
  Json j = Json::object();
  j["version"] = doc.version;

  Json models = Json::object();
  for (const auto& [name, m] : doc.models) {
    Json mj = Json::object();
    mj["types"] = m.type_names;
    Json data = Json::object();
    for (const auto& t : m.type_names) data[t] = m.data_at(t).elements();
    mj["data"] = data;
    Json homs = Json::object();
    for (const auto& [key, fns] : m.homs) {
      if (fns.empty()) continue;
      Json arr = Json::array();
      for (const auto& f : fns) {
        Json fj = Json::object();
        fj["graph"] = graph_to_json(f);
        arr.push_back(fj);
      }
      homs[key.first + "->" + key.second] = arr;
    }
    mj["homs"] = homs;
    models[name] = mj;
  }
  j["models"] = models;

  Json sims = Json::object();
  auto forcing_to_json = [](const std::map<TypeName, ForcingRelation>& forcing) {
    Json out = Json::object();
    for (const auto& [t, rel] : forcing) {
      Json pairs = Json::array();
      for (const auto& [y, x] : rel) pairs.push_back(Json::array({y, x}));
      out[t] = pairs;
    }
    return out;
  };
  auto model_name = [&](const Model& m) -> std::string {
    for (const auto& [name, other] : doc.models) {
      if (other == m) return name;
    }
    throw Error("serialize_document: simulation endpoint is not a named model");
  };
  for (const auto& [name, sim] : doc.simulations) {
    Json sj = Json::object();
    sj["source"] = model_name(sim.source);
    sj["target"] = model_name(sim.target);
    Json tm = Json::object();
    for (const auto& [t, u] : sim.type_map) tm[t] = u;
    sj["type_map"] = tm;
    sj["forcing"] = forcing_to_json(sim.forcing);
    sims[name] = sj;
  }
  for (const auto& [name, sim] : doc.presheaf_simulations) {
    Json sj = Json::object();
    sj["source"] = model_name(sim.source);
    Json sets = Json::object();
    for (const auto& [t, s] : sim.sets) sets[t] = s.elements();
    sj["sets"] = sets;
    sj["forcing"] = forcing_to_json(sim.forcing);
    sims[name] = sj;
  }
  j["simulations"] = sims;

  Json cats = Json::object();
  for (const auto& [name, entry] : doc.categories) {
    Json cj = Json::object();
    cj["objects"] = entry.cat.objects;
    Json arrows = Json::array();
    for (const auto& a : entry.cat.arrows) {
      arrows.push_back(Json::array({a.name, a.src, a.tgt}));
    }
    cj["arrows"] = arrows;
    Json comp = Json::array();
    for (const auto& [pair, gf] : entry.cat.composition) {
      comp.push_back(Json::array({pair.first, pair.second, gf}));
    }
    cj["composition"] = comp;
    Json ids = Json::object();
    for (const auto& [c, id] : entry.cat.identities) ids[c] = id;
    cj["identities"] = ids;
    Json pj = Json::object();
    Json pobjs = Json::object();
    for (const auto& [c, s] : entry.S.on_objects) pobjs[c] = s.elements();
    pj["objects"] = pobjs;
    Json parrs = Json::object();
    for (const auto& [a, f] : entry.S.on_arrows) parrs[a] = graph_to_json(f);
    pj["arrows"] = parrs;
    cj["presheaf"] = pj;
    cats[name] = cj;
  }
  j["categories"] = cats;

  Json tasks = Json::array();
  for (const auto& t : doc.tasks) {
    Json tj = Json::object();
    tj["task"] = t.kind;
    for (const auto& [k, v] : t.args) tj[k] = v;
    if (t.bound != 0) tj["bound"] = t.bound;
    tasks.push_back(tj);
  }
  j["tasks"] = tasks;
  return j.dump(2) + "\n";
}

std::string render_reports_text(const std::vector<TaskReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    out += "task " + std::to_string(r.index) + " " + r.task + ": " + r.verdict;
    for (const auto& [k, v] : r.statistics) {
      out += " " + k + "=" + std::to_string(v);
    }
    out += "\n";
    for (const auto& w : r.witnesses) {
      out += "  witness: " + w + "\n";
    }
  }
  return out;
}

std::string render_reports_json(const std::vector<TaskReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) {
    Json j = Json::object();
    j["index"] = r.index;
    j["task"] = r.task;
    j["verdict"] = r.verdict;
    j["witnesses"] = r.witnesses;
    Json stats = Json::object();
    for (const auto& [k, v] : r.statistics) stats[k] = v;
    j["statistics"] = stats;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

}  // namespace compmod
