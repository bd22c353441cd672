#ifndef REPLAYGEN_ELEMENT_HPP
#define REPLAYGEN_ELEMENT_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace replaygen {

// Position of an element in the fixed enumeration of the domain, starting at 1.
// Marker n sits at 2n-1; the integers 0, +1, -1, +2, -2, ... fill 2, 4, 6, 8, 10, ...
using CanonicalIndex = std::int64_t;

// Domain element: either an integer point or a marker string *^n (n >= 1).
class Element {
 public:
  enum class Kind { kInt, kMarker };

  static Element integer(std::int64_t value);
  static Element marker(std::int64_t level);

  Kind kind() const { return kind_; }
  bool is_int() const { return kind_ == Kind::kInt; }
  bool is_marker() const { return kind_ == Kind::kMarker; }

  // Pre (checked): is_int().
  std::int64_t value() const;
  // Pre (checked): is_marker().
  std::int64_t level() const;

  CanonicalIndex index() const;

  bool operator==(const Element& o) const {
    return kind_ == o.kind_ && payload_ == o.payload_;
  }
  bool operator!=(const Element& o) const { return !(*this == o); }
  // Orders by canonical index, so sorted containers walk the domain enumeration.
  bool operator<(const Element& o) const { return index() < o.index(); }

  // "7", "-3" for integers, "*^4" for markers.
  std::string str() const;

 private:
  Element(Kind k, std::int64_t payload) : kind_(k), payload_(payload) {}
  Kind kind_;
  std::int64_t payload_;
};

CanonicalIndex canonical_index(const Element& e);
Element deindex(CanonicalIndex i);

// Inverse of Element::str. Throws std::invalid_argument on junk.
Element parse_element(const std::string& s);

// Magnitude bound that keeps the index bijection inside int64 arithmetic.
constexpr std::int64_t kMaxElementMagnitude = (INT64_MAX / 8);

struct ElementHash {
  std::size_t operator()(const Element& e) const {
    return std::hash<std::int64_t>()(e.index());
  }
};

}  // namespace replaygen

#endif
