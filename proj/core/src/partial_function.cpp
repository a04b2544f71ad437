#include "compmod/partial_function.hpp"

#include <sstream>

namespace compmod {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MalformedInput: return "malformed-input";
    case ViolationKind::MissingIdentity: return "missing-identity";
    case ViolationKind::MissingComposite: return "missing-composite";
    case ViolationKind::DuplicateHom: return "duplicate-hom";
    case ViolationKind::TotalityFailure: return "totality-failure";
    case ViolationKind::TrackabilityFailure: return "trackability-failure";
    case ViolationKind::AssociativityFailure: return "associativity-failure";
    case ViolationKind::IdentityLawFailure: return "identity-law-failure";
    case ViolationKind::TypingFailure: return "typing-failure";
    case ViolationKind::FunctorialityFailure: return "functoriality-failure";
    case ViolationKind::PullbackPreservation: return "pullback-preservation";
    case ViolationKind::SquareCommute: return "square-commute";
    case ViolationKind::FiberMembership: return "fiber-membership";
    case ViolationKind::Coverage: return "coverage";
    case ViolationKind::CartesianFailure: return "cartesian-failure";
    case ViolationKind::CompositionLawFailure: return "composition-law-failure";
    case ViolationKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream out;
  out << violations.size() << " violation(s):";
  for (const auto& v : violations) {
    out << "\n  [" << to_string(v.kind) << "] " << v.message;
  }
  return out.str();
}

const Element& PartialFunction::at(const Element& x) const {
  auto it = graph_.find(x);
  if (it == graph_.end()) {
    throw UnknownNameError("partial function " + to_string(*this) +
                           " undefined at '" + x + "'");
  }
  return it->second;
}

std::vector<Element> PartialFunction::domain() const {
  std::vector<Element> out;
  out.reserve(graph_.size());
  for (const auto& [x, y] : graph_) out.push_back(x);
  return out;
}

FiniteSet PartialFunction::image() const {
  std::vector<Element> out;
  out.reserve(graph_.size());
  for (const auto& [x, y] : graph_) out.push_back(y);
  return FiniteSet(std::move(out));
}

bool PartialFunction::total_on(const FiniteSet& carrier) const {
  for (const auto& x : carrier) {
    if (!defined_at(x)) return false;
  }
  return true;
}

PartialFunction identity_partial(const FiniteSet& s, const TypeName& t) {
  std::map<Element, Element> graph;
  for (const auto& x : s) graph.emplace(x, x);
  return PartialFunction(t, t, std::move(graph));
}

PartialFunction compose_partial(const PartialFunction& g,
                                const PartialFunction& f) {
  if (f.target_type() != g.source_type()) {
    throw TypeMismatchError("cannot compose " + to_string(g) + " after " +
                            to_string(f) + ": target '" + f.target_type() +
                            "' != source '" + g.source_type() + "'");
  }
  std::map<Element, Element> graph;
  for (const auto& [x, y] : f.graph()) {
    if (g.defined_at(y)) graph.emplace(x, g.at(y));
  }
  return PartialFunction(f.source_type(), g.target_type(), std::move(graph));
}

PartialFunction restrict_partial(const PartialFunction& f,
                                 const FiniteSet& sub_src,
                                 const FiniteSet& sub_tgt, TypeName new_src,
                                 TypeName new_tgt) {
  std::map<Element, Element> graph;
  for (const auto& [x, y] : f.graph()) {
    if (sub_src.contains(x) && sub_tgt.contains(y)) graph.emplace(x, y);
  }
  return PartialFunction(std::move(new_src), std::move(new_tgt),
                         std::move(graph));
}

bool partial_equal(const PartialFunction& f, const PartialFunction& g) {
  return f == g;
}

std::string to_string(const PartialFunction& f) {
  std::ostringstream out;
  out << f.source_type() << "->" << f.target_type() << "{";
  bool first = true;
  for (const auto& [x, y] : f.graph()) {
    if (!first) out << ",";
    out << x << ":" << y;
    first = false;
  }
  out << "}";
  return out.str();
}

std::vector<PartialFunction> all_partial_functions(const FiniteSet& src,
                                                   const FiniteSet& tgt,
                                                   const TypeName& s,
                                                   const TypeName& t) {
  const auto& xs = src.elements();
  const auto& ys = tgt.elements();
  const std::size_t base = ys.size() + 1;  // 0 = undefined
  std::vector<PartialFunction> out;

  std::vector<std::size_t> counter(xs.size(), 0);
  while (true) {
    std::map<Element, Element> graph;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (counter[i] > 0) graph.emplace(xs[i], ys[counter[i] - 1]);
    }
    out.emplace_back(s, t, std::move(graph));

    std::size_t pos = 0;
    while (pos < counter.size() && ++counter[pos] == base) {
      counter[pos] = 0;
      ++pos;
    }
    if (pos == counter.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace compmod
