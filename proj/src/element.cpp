#include "replaygen/element.hpp"

#include <cstdlib>

namespace replaygen {

Element Element::integer(std::int64_t value) {
  if (value > kMaxElementMagnitude || value < -kMaxElementMagnitude) {
    throw std::invalid_argument("integer element magnitude too large");
  }
  return Element(Kind::kInt, value);
}

Element Element::marker(std::int64_t level) {
  if (level < 1) throw std::invalid_argument("marker level must be >= 1");
  if (level > kMaxElementMagnitude) {
    throw std::invalid_argument("marker level too large");
  }
  return Element(Kind::kMarker, level);
}

std::int64_t Element::value() const {
  if (!is_int()) throw std::logic_error("value() on a marker element");
  return payload_;
}

std::int64_t Element::level() const {
  if (!is_marker()) throw std::logic_error("level() on an integer element");
  return payload_;
}

CanonicalIndex Element::index() const {
  if (kind_ == Kind::kMarker) return 2 * payload_ - 1;
  if (payload_ == 0) return 2;
  if (payload_ > 0) return 4 * payload_;
  return 4 * (-payload_) + 2;
}

std::string Element::str() const {
  if (is_marker()) return "*^" + std::to_string(payload_);
  return std::to_string(payload_);
}

CanonicalIndex canonical_index(const Element& e) { return e.index(); }

Element deindex(CanonicalIndex i) {
  if (i < 1) throw std::invalid_argument("canonical index must be >= 1");
  if (i % 2 == 1) return Element::marker((i + 1) / 2);
  std::int64_t k = i / 2;  // 1-based position in 0, +1, -1, +2, -2, ...
  if (k == 1) return Element::integer(0);
  if (k % 2 == 0) return Element::integer(k / 2);
  return Element::integer(-(k - 1) / 2);
}

Element parse_element(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty element string");
  if (s.size() > 2 && s[0] == '*' && s[1] == '^') {
    char* end = nullptr;
    long long lvl = std::strtoll(s.c_str() + 2, &end, 10);
    if (end == nullptr || *end != '\0') {
      throw std::invalid_argument("bad marker element: " + s);
    }
    return Element::marker(lvl);
  }
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') {
    throw std::invalid_argument("bad element string: " + s);
  }
  return Element::integer(v);
}

}  // namespace replaygen
