#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace compmod {

using Element = std::string;
using TypeName = std::string;

/// Finite set of named elements, kept sorted and duplicate-free so every
/// enumeration over it is canonical.
class FiniteSet {
 public:
  FiniteSet() = default;
  FiniteSet(std::initializer_list<Element> elems)
      : FiniteSet(std::vector<Element>(elems)) {}
  explicit FiniteSet(std::vector<Element> elems) : elements_(std::move(elems)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()),
                    elements_.end());
  }

  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  bool contains(const Element& e) const {
    return std::binary_search(elements_.begin(), elements_.end(), e);
  }

  bool subset_of(const FiniteSet& other) const {
    return std::all_of(elements_.begin(), elements_.end(),
                       [&](const Element& e) { return other.contains(e); });
  }

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;
  friend auto operator<=>(const FiniteSet&, const FiniteSet&) = default;

 private:
  std::vector<Element> elements_;
};

}  // namespace compmod
