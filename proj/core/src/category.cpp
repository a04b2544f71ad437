#include "compmod/category.hpp"

#include <algorithm>
#include <set>

namespace compmod {

namespace {

std::string escape_component(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == ',' || c == '(' || c == ')') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string encode_pair_name(const std::string& base,
                             const std::string& point) {
  return "(" + escape_component(base) + "," + escape_component(point) + ")";
}

bool FiniteCategory::has_object(const std::string& c) const {
  return std::find(objects.begin(), objects.end(), c) != objects.end();
}

const Arrow& FiniteCategory::arrow(const std::string& name) const {
  for (const auto& a : arrows) {
    if (a.name == name) return a;
  }
  throw UnknownNameError("unknown arrow '" + name + "'");
}

std::vector<std::string> FiniteCategory::arrows_from_to(
    const std::string& a, const std::string& b) const {
  std::vector<std::string> out;
  for (const auto& ar : arrows) {
    if (ar.src == a && ar.tgt == b) out.push_back(ar.name);
  }
  return out;
}

std::vector<std::string> FiniteCategory::arrows_into(
    const std::string& b) const {
  std::vector<std::string> out;
  for (const auto& ar : arrows) {
    if (ar.tgt == b) out.push_back(ar.name);
  }
  return out;
}

const std::string& FiniteCategory::compose(const std::string& g,
                                           const std::string& f) const {
  auto it = composition.find({g, f});
  if (it == composition.end()) {
    throw UnknownNameError("composition table has no entry for " + g + " . " +
                           f);
  }
  return it->second;
}

const std::string& FiniteCategory::id(const std::string& c) const {
  auto it = identities.find(c);
  if (it == identities.end()) {
    throw UnknownNameError("no identity arrow declared for '" + c + "'");
  }
  return it->second;
}

ValidationReport validate_category(const FiniteCategory& cat) {
  ValidationReport report;
  std::set<std::string> objs(cat.objects.begin(), cat.objects.end());
  std::set<std::string> names;

  for (const auto& a : cat.arrows) {
    if (!names.insert(a.name).second) {
      report.add(ViolationKind::MalformedInput,
                 "duplicate arrow name '" + a.name + "'");
    }
    if (!objs.count(a.src) || !objs.count(a.tgt)) {
      report.add(ViolationKind::MalformedInput,
                 "arrow '" + a.name + "' references unknown objects");
    }
  }
  if (!report.ok()) return report;

  for (const auto& c : cat.objects) {
    auto it = cat.identities.find(c);
    if (it == cat.identities.end() || !names.count(it->second)) {
      report.add(ViolationKind::MissingIdentity,
                 "object '" + c + "' has no identity arrow");
      continue;
    }
    const Arrow& id = cat.arrow(it->second);
    if (id.src != c || id.tgt != c) {
      report.add(ViolationKind::TypingFailure,
                 "identity of '" + c + "' is not an endo-arrow");
    }
  }
  if (!report.ok()) return report;

  // Composition table must be total on composable pairs and well-typed.
  for (const auto& f : cat.arrows) {
    for (const auto& g : cat.arrows) {
      bool composable = (f.tgt == g.src);
      auto it = cat.composition.find({g.name, f.name});
      if (composable && it == cat.composition.end()) {
        report.add(ViolationKind::MalformedInput,
                   "composition undefined for " + g.name + " . " + f.name);
        continue;
      }
      if (!composable && it != cat.composition.end()) {
        report.add(ViolationKind::TypingFailure,
                   "composition declared for non-composable " + g.name +
                       " . " + f.name);
        continue;
      }
      if (!composable) continue;
      if (!names.count(it->second)) {
        report.add(ViolationKind::MalformedInput,
                   "composite " + g.name + " . " + f.name +
                       " names unknown arrow '" + it->second + "'");
        continue;
      }
      const Arrow& gf = cat.arrow(it->second);
      if (gf.src != f.src || gf.tgt != g.tgt) {
        report.add(ViolationKind::TypingFailure,
                   "composite " + g.name + " . " + f.name + " = " + gf.name +
                       " has wrong endpoints");
      }
    }
  }
  if (!report.ok()) return report;

  for (const auto& f : cat.arrows) {
    const std::string& left = cat.compose(cat.id(f.tgt), f.name);
    const std::string& right = cat.compose(f.name, cat.id(f.src));
    if (left != f.name) {
      report.add(ViolationKind::IdentityLawFailure,
                 "1 . " + f.name + " = " + left + " != " + f.name);
    }
    if (right != f.name) {
      report.add(ViolationKind::IdentityLawFailure,
                 f.name + " . 1 = " + right + " != " + f.name);
    }
  }

  for (const auto& f : cat.arrows) {
    for (const auto& g : cat.arrows) {
      if (f.tgt != g.src) continue;
      for (const auto& h : cat.arrows) {
        if (g.tgt != h.src) continue;
        const std::string& hg_f =
            cat.compose(cat.compose(h.name, g.name), f.name);
        const std::string& h_gf =
            cat.compose(h.name, cat.compose(g.name, f.name));
        if (hg_f != h_gf) {
          report.add(ViolationKind::AssociativityFailure,
                     "(" + h.name + "." + g.name + ")." + f.name + " = " +
                         hg_f + " but " + h.name + ".(" + g.name + "." +
                         f.name + ") = " + h_gf);
        }
      }
    }
  }
  return report;
}

bool is_mono(const FiniteCategory& cat, const std::string& arrow_name) {
  const Arrow& i = cat.arrow(arrow_name);
  for (const auto& d : cat.objects) {
    auto parallel = cat.arrows_from_to(d, i.src);
    for (const auto& a : parallel) {
      for (const auto& b : parallel) {
        if (a == b) continue;
        if (cat.compose(arrow_name, a) == cat.compose(arrow_name, b)) {
          return false;
        }
      }
    }
  }
  return true;
}

const FiniteSet& Presheaf::at(const std::string& c) const {
  auto it = on_objects.find(c);
  if (it == on_objects.end()) {
    throw UnknownNameError("presheaf undefined on object '" + c + "'");
  }
  return it->second;
}

const PartialFunction& Presheaf::map(const std::string& arrow_name) const {
  auto it = on_arrows.find(arrow_name);
  if (it == on_arrows.end()) {
    throw UnknownNameError("presheaf undefined on arrow '" + arrow_name + "'");
  }
  return it->second;
}

ValidationReport validate_presheaf(const FiniteCategory& cat,
                                   const Presheaf& S) {
  ValidationReport report;
  for (const auto& c : cat.objects) {
    if (!S.on_objects.count(c)) {
      report.add(ViolationKind::MalformedInput,
                 "presheaf missing value at object '" + c + "'");
    }
  }
  for (const auto& a : cat.arrows) {
    if (!S.on_arrows.count(a.name)) {
      report.add(ViolationKind::MalformedInput,
                 "presheaf missing value at arrow '" + a.name + "'");
    }
  }
  if (!report.ok()) return report;

  for (const auto& a : cat.arrows) {
    const PartialFunction& m = S.map(a.name);
    if (m.source_type() != a.src || m.target_type() != a.tgt) {
      report.add(ViolationKind::TypingFailure,
                 "S(" + a.name + ") is typed " + m.source_type() + "->" +
                     m.target_type() + ", expected " + a.src + "->" + a.tgt);
      continue;
    }
    if (!m.total_on(S.at(a.src))) {
      report.add(ViolationKind::MalformedInput,
                 "S(" + a.name + ") is not total on S(" + a.src + ")");
    }
    for (const auto& [x, y] : m.graph()) {
      if (!S.at(a.src).contains(x) || !S.at(a.tgt).contains(y)) {
        report.add(ViolationKind::MalformedInput,
                   "S(" + a.name + ") maps outside the declared sets at '" +
                       x + "'");
      }
    }
  }
  if (!report.ok()) return report;

  for (const auto& c : cat.objects) {
    if (!(S.map(cat.id(c)) == identity_partial(S.at(c), c))) {
      report.add(ViolationKind::FunctorialityFailure,
                 "S(1_" + c + ") is not the identity on S(" + c + ")");
    }
  }
  for (const auto& f : cat.arrows) {
    for (const auto& g : cat.arrows) {
      if (f.tgt != g.src) continue;
      PartialFunction lhs = S.map(cat.compose(g.name, f.name));
      PartialFunction rhs = compose_partial(S.map(g.name), S.map(f.name));
      if (!(lhs == rhs)) {
        report.add(ViolationKind::FunctorialityFailure,
                   "S(" + g.name + "." + f.name + ") != S(" + g.name +
                       ").S(" + f.name + ")");
      }
    }
  }
  return report;
}

std::vector<PullbackSquare> pullbacks_of(const FiniteCategory& cat,
                                         const std::string& f,
                                         const std::string& g) {
  const Arrow& fa = cat.arrow(f);
  const Arrow& ga = cat.arrow(g);
  if (fa.tgt != ga.tgt) {
    throw TypeMismatchError("pullbacks_of: " + f + " and " + g +
                            " are not a cospan");
  }

  struct Cone {
    std::string apex, u, v;
  };
  std::vector<Cone> cones;
  for (const auto& p : cat.objects) {
    for (const auto& u : cat.arrows_from_to(p, fa.src)) {
      for (const auto& v : cat.arrows_from_to(p, ga.src)) {
        if (cat.compose(f, u) == cat.compose(g, v)) cones.push_back({p, u, v});
      }
    }
  }

  std::vector<PullbackSquare> out;
  for (const auto& cand : cones) {
    bool universal = true;
    for (const auto& cone : cones) {
      std::size_t mediators = 0;
      for (const auto& w : cat.arrows_from_to(cone.apex, cand.apex)) {
        if (cat.compose(cand.u, w) == cone.u &&
            cat.compose(cand.v, w) == cone.v) {
          ++mediators;
        }
      }
      if (mediators != 1) {
        universal = false;
        break;
      }
    }
    if (universal) out.push_back({cand.apex, cand.u, cand.v});
  }
  return out;
}

bool preserves_pullbacks(const FiniteCategory& cat, const Presheaf& S) {
  for (const auto& f : cat.arrows) {
    for (const auto& g : cat.arrows) {
      if (f.tgt != g.tgt) continue;
      for (const auto& pb : pullbacks_of(cat, f.name, g.name)) {
        // Canonical set pullback {(x, y) : S(f)(x) = S(g)(y)}.
        std::set<std::pair<Element, Element>> canonical;
        for (const auto& x : S.at(f.src)) {
          for (const auto& y : S.at(g.src)) {
            if (S.map(f.name).at(x) == S.map(g.name).at(y)) {
              canonical.insert({x, y});
            }
          }
        }
        // Comparison map S(apex) -> canonical must be a bijection.
        std::set<std::pair<Element, Element>> image;
        for (const auto& z : S.at(pb.apex)) {
          std::pair<Element, Element> w{S.map(pb.to_left).at(z),
                                        S.map(pb.to_right).at(z)};
          if (!canonical.count(w)) return false;  // not even into
          if (!image.insert(w).second) return false;  // not injective
        }
        if (image.size() != canonical.size()) return false;  // not surjective
      }
    }
  }
  return true;
}

std::vector<PartialArrow> enumerate_partial_arrows(const FiniteCategory& cat,
                                                   const std::string& c1,
                                                   const std::string& c2) {
  std::vector<PartialArrow> out;
  for (const auto& d : cat.objects) {
    for (const auto& i : cat.arrows_from_to(d, c1)) {
      if (!is_mono(cat, i)) continue;
      for (const auto& f : cat.arrows_from_to(d, c2)) {
        out.push_back({i, f});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ValidationReport validate_functor(const FiniteCategory& dom,
                                  const FiniteCategory& cod,
                                  const FunctorData& F) {
  ValidationReport report;
  for (const auto& c : dom.objects) {
    auto it = F.on_objects.find(c);
    if (it == F.on_objects.end() || !cod.has_object(it->second)) {
      report.add(ViolationKind::MalformedInput,
                 "functor undefined or out of range at object '" + c + "'");
    }
  }
  for (const auto& a : dom.arrows) {
    auto it = F.on_arrows.find(a.name);
    if (it == F.on_arrows.end()) {
      report.add(ViolationKind::MalformedInput,
                 "functor undefined at arrow '" + a.name + "'");
    }
  }
  if (!report.ok()) return report;

  for (const auto& a : dom.arrows) {
    const Arrow& fa = cod.arrow(F.on_arrows.at(a.name));
    if (fa.src != F.on_objects.at(a.src) || fa.tgt != F.on_objects.at(a.tgt)) {
      report.add(ViolationKind::TypingFailure,
                 "F(" + a.name + ") has wrong endpoints");
    }
  }
  if (!report.ok()) return report;

  for (const auto& c : dom.objects) {
    if (F.on_arrows.at(dom.id(c)) != cod.id(F.on_objects.at(c))) {
      report.add(ViolationKind::FunctorialityFailure,
                 "F(1_" + c + ") is not an identity");
    }
  }
  for (const auto& f : dom.arrows) {
    for (const auto& g : dom.arrows) {
      if (f.tgt != g.src) continue;
      const std::string& lhs = F.on_arrows.at(dom.compose(g.name, f.name));
      const std::string& rhs =
          cod.compose(F.on_arrows.at(g.name), F.on_arrows.at(f.name));
      if (lhs != rhs) {
        report.add(ViolationKind::FunctorialityFailure,
                   "F(" + g.name + "." + f.name + ") != F(" + g.name +
                       ").F(" + f.name + ")");
      }
    }
  }
  return report;
}

bool is_cat_cartesian(const FiniteCategory& catE, const FiniteCategory& catB,
                      const FunctorData& F, const std::string& g_name) {
  const Arrow& g = catE.arrow(g_name);
  const std::string& f_name = F.on_arrows.at(g_name);
  for (const auto& e2 : catE.objects) {
    for (const auto& g2 : catE.arrows_from_to(e2, g.tgt)) {
      for (const auto& h :
           catB.arrows_from_to(F.on_objects.at(e2), F.on_objects.at(g.src))) {
        if (catB.compose(f_name, h) != F.on_arrows.at(g2)) continue;
        std::size_t fillers = 0;
        for (const auto& k : catE.arrows_from_to(e2, g.src)) {
          if (catE.compose(g_name, k) == g2 && F.on_arrows.at(k) == h) {
            ++fillers;
          }
        }
        if (fillers != 1) return false;
      }
    }
  }
  return true;
}

bool is_cat_fibration(const FiniteCategory& catE, const FiniteCategory& catB,
                      const FunctorData& F) {
  for (const auto& e : catE.objects) {
    const std::string& be = F.on_objects.at(e);
    for (const auto& u : catB.objects) {
      for (const auto& f : catB.arrows_from_to(u, be)) {
        bool lifted = false;
        for (const auto& e2 : catE.objects) {
          if (F.on_objects.at(e2) != u) continue;
          for (const auto& g : catE.arrows_from_to(e2, e)) {
            if (F.on_arrows.at(g) != f) continue;
            if (is_cat_cartesian(catE, catB, F, g)) {
              lifted = true;
              break;
            }
          }
          if (lifted) break;
        }
        if (!lifted) return false;
      }
    }
  }
  return true;
}

ElementsCategory category_of_elements(const FiniteCategory& cat,
                                      const Presheaf& S) {
  ElementsCategory out;
  for (const auto& c : cat.objects) {
    for (const auto& x : S.at(c)) {
      std::string name = encode_pair_name(c, x);
      out.cat.objects.push_back(name);
      out.object_decode[name] = {c, x};
      out.pr2.on_objects[name] = FiniteSet{x};
    }
  }
  std::sort(out.cat.objects.begin(), out.cat.objects.end());

  // One arrow (f, x) per cat-arrow f and element x of S(src f).
  auto arrow_name = [](const std::string& f, const Element& x) {
    return encode_pair_name(f, x);
  };
  for (const auto& f : cat.arrows) {
    for (const auto& x : S.at(f.src)) {
      Element y = S.map(f.name).at(x);
      out.cat.arrows.push_back({arrow_name(f.name, x),
                                encode_pair_name(f.src, x),
                                encode_pair_name(f.tgt, y)});
      out.pr2.on_arrows[arrow_name(f.name, x)] =
          PartialFunction(encode_pair_name(f.src, x),
                          encode_pair_name(f.tgt, y), {{x, y}});
    }
  }
  std::sort(out.cat.arrows.begin(), out.cat.arrows.end());

  for (const auto& c : cat.objects) {
    for (const auto& x : S.at(c)) {
      out.cat.identities[encode_pair_name(c, x)] = arrow_name(cat.id(c), x);
    }
  }
  for (const auto& f : cat.arrows) {
    for (const auto& g : cat.arrows) {
      if (f.tgt != g.src) continue;
      for (const auto& x : S.at(f.src)) {
        Element y = S.map(f.name).at(x);
        out.cat.composition[{arrow_name(g.name, y), arrow_name(f.name, x)}] =
            arrow_name(cat.compose(g.name, f.name), x);
      }
    }
  }
  return out;
}

}  // namespace compmod
