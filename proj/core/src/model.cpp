#include "compmod/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace compmod {

namespace {

const std::vector<PartialFunction> kEmptyHoms{};

bool contains_fn(const std::vector<PartialFunction>& fns,
                 const PartialFunction& f) {
  return std::find(fns.begin(), fns.end(), f) != fns.end();
}

ValidationReport structural_check(const Model& m) {
  ValidationReport report;
  std::set<TypeName> types(m.type_names.begin(), m.type_names.end());

  for (const auto& [t, s] : m.data) {
    (void)s;
    if (!types.count(t)) {
      report.add(ViolationKind::MalformedInput,
                 "data declared for unknown type '" + t + "'");
    }
  }
  for (const auto& t : m.type_names) {
    if (!m.data.count(t)) {
      report.add(ViolationKind::MalformedInput,
                 "type '" + t + "' has no data type");
    }
  }
  for (const auto& [key, fns] : m.homs) {
    const auto& [s, t] = key;
    if (!types.count(s) || !types.count(t)) {
      report.add(ViolationKind::MalformedInput,
                 "hom-class (" + s + "," + t + ") names an unknown type");
      continue;
    }
    if (!m.data.count(s) || !m.data.count(t)) continue;
    const FiniteSet& src = m.data.at(s);
    const FiniteSet& tgt = m.data.at(t);
    for (const auto& f : fns) {
      if (f.source_type() != s || f.target_type() != t) {
        report.add(ViolationKind::MalformedInput,
                   "function " + to_string(f) + " stored in hom-class (" + s +
                       "," + t + ") with mismatched declared types");
        continue;
      }
      for (const auto& [x, y] : f.graph()) {
        if (!src.contains(x)) {
          report.add(ViolationKind::MalformedInput,
                     "function " + to_string(f) + ": domain element '" + x +
                         "' outside data type of '" + s + "'");
        }
        if (!tgt.contains(y)) {
          report.add(ViolationKind::MalformedInput,
                     "function " + to_string(f) + ": value '" + y +
                         "' outside data type of '" + t + "'");
        }
      }
    }
  }
  return report;
}

}  // namespace

bool Model::has_type(const TypeName& t) const {
  return std::binary_search(type_names.begin(), type_names.end(), t);
}

const FiniteSet& Model::data_at(const TypeName& t) const {
  auto it = data.find(t);
  if (it == data.end()) {
    throw UnknownNameError("model has no data type for '" + t + "'");
  }
  return it->second;
}

const std::vector<PartialFunction>& Model::homs_at(const TypeName& s,
                                                   const TypeName& t) const {
  auto it = homs.find({s, t});
  return it == homs.end() ? kEmptyHoms : it->second;
}

Model make_model(std::vector<TypeName> type_names,
                 std::map<TypeName, FiniteSet> data,
                 std::map<HomKey, std::vector<PartialFunction>> homs) {
  std::sort(type_names.begin(), type_names.end());
  type_names.erase(std::unique(type_names.begin(), type_names.end()),
                   type_names.end());
  for (auto& [key, fns] : homs) {
    (void)key;
    std::sort(fns.begin(), fns.end());
  }
  return Model{std::move(type_names), std::move(data), std::move(homs)};
}

ValidationReport validate_model(const Model& m) {
  ValidationReport report = structural_check(m);
  if (!report.ok()) return report;

  for (const auto& [key, fns] : m.homs) {
    (void)key;
    for (std::size_t i = 0; i + 1 < fns.size(); ++i) {
      if (fns[i] == fns[i + 1]) {
        report.add(ViolationKind::DuplicateHom,
                   "duplicate hom entry " + to_string(fns[i]));
      }
    }
  }

  for (const auto& t : m.type_names) {
    PartialFunction id = identity_partial(m.data_at(t), t);
    if (!contains_fn(m.homs_at(t, t), id)) {
      report.add(ViolationKind::MissingIdentity,
                 "identity on '" + t + "' missing from homs(" + t + "," + t +
                     ")");
    }
  }

  for (const auto& [fkey, fs] : m.homs) {
    const auto& [r, s] = fkey;
    for (const auto& [gkey, gs] : m.homs) {
      const auto& [s2, t] = gkey;
      if (s2 != s) continue;
      for (const auto& f : fs) {
        for (const auto& g : gs) {
          PartialFunction gf = compose_partial(g, f);
          if (!contains_fn(m.homs_at(r, t), gf)) {
            report.add(ViolationKind::MissingComposite,
                       "composite of f=" + to_string(f) + " and g=" +
                           to_string(g) + " missing from homs(" + r + "," + t +
                           ")");
          }
        }
      }
    }
  }
  return report;
}

Model completion_close(const Model& m) {
  ValidationReport structure = structural_check(m);
  if (!structure.ok()) {
    throw MalformedInputError("completion_close: " + structure.summary());
  }

  std::map<HomKey, std::set<PartialFunction>> closed;
  for (const auto& [key, fns] : m.homs) {
    closed[key].insert(fns.begin(), fns.end());
  }
  for (const auto& t : m.type_names) {
    closed[{t, t}].insert(identity_partial(m.data_at(t), t));
  }

  bool changed = true;
  while (changed) {
    changed = false;
    // Snapshot so the iteration domain is stable while inserting.
    std::vector<std::pair<HomKey, std::vector<PartialFunction>>> snapshot;
    snapshot.reserve(closed.size());
    for (const auto& [key, fns] : closed) {
      snapshot.emplace_back(key,
                            std::vector<PartialFunction>(fns.begin(), fns.end()));
    }
    for (const auto& [fkey, fs] : snapshot) {
      for (const auto& [gkey, gs] : snapshot) {
        if (gkey.first != fkey.second) continue;
        HomKey target{fkey.first, gkey.second};
        for (const auto& f : fs) {
          for (const auto& g : gs) {
            PartialFunction gf = compose_partial(g, f);
            if (closed[target].insert(gf).second) changed = true;
          }
        }
      }
    }
  }

  std::map<HomKey, std::vector<PartialFunction>> homs;
  for (const auto& [key, fns] : closed) {
    homs.emplace(key, std::vector<PartialFunction>(fns.begin(), fns.end()));
  }
  return make_model(m.type_names, m.data, std::move(homs));
}

bool is_left_regular(const Model& m, const TypeName& t0) {
  if (!m.has_type(t0)) {
    throw UnknownNameError("is_left_regular: unknown type '" + t0 + "'");
  }
  for (const auto& t : m.type_names) {
    const auto& fns = m.homs_at(t0, t);
    for (const auto& x : m.data_at(t)) {
      bool reached = false;
      for (const auto& f : fns) {
        if (f.image().contains(x)) {
          reached = true;
          break;
        }
      }
      if (!reached) return false;
    }
  }
  return true;
}

Model full_model(std::vector<TypeName> type_names,
                 std::map<TypeName, FiniteSet> data) {
  std::map<HomKey, std::vector<PartialFunction>> homs;
  std::sort(type_names.begin(), type_names.end());
  type_names.erase(std::unique(type_names.begin(), type_names.end()),
                   type_names.end());
  for (const auto& s : type_names) {
    for (const auto& t : type_names) {
      homs[{s, t}] = all_partial_functions(data.at(s), data.at(t), s, t);
    }
  }
  return make_model(std::move(type_names), std::move(data), std::move(homs));
}

std::string to_string(const Model& m) {
  std::ostringstream out;
  out << "model(types=" << m.type_names.size() << ", homs=";
  std::size_t n = 0;
  for (const auto& [key, fns] : m.homs) {
    (void)key;
    n += fns.size();
  }
  out << n << ")";
  return out.str();
}

}  // namespace compmod
