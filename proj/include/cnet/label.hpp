#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

#include "cnet/bitstring.hpp"

namespace cnet {

// One coordinate of a node label: either a binary word (Benes-family networks,
// where subnetwork and node numberings are bit strings) or a plain module index
// (Clos networks, whose module counts need not be powers of two). The empty
// binary word doubles as the "no subnetwork" marker phi.
class LabelPart {
 public:
  LabelPart() = default;  // phi
  static LabelPart phi() { return LabelPart(); }
  static LabelPart of(const BitString& b) {
    LabelPart p;
    p.bits_ = b;
    return p;
  }
  static LabelPart of_index(long i) {
    LabelPart p;
    p.is_index_ = true;
    p.index_ = i;
    return p;
  }

  bool is_index() const { return is_index_; }
  bool is_bits() const { return !is_index_; }
  bool is_phi() const { return !is_index_ && bits_.empty(); }
  const BitString& bits() const { return bits_; }
  long index() const { return index_; }

  std::string display() const {
    return is_index_ ? std::to_string(index_) : bits_.display();
  }

  friend bool operator==(const LabelPart&, const LabelPart&) = default;
  friend auto operator<=>(const LabelPart& a, const LabelPart& b) {
    if (auto c = a.is_index_ <=> b.is_index_; c != 0) return c;
    if (a.is_index_) return a.index_ <=> b.index_;
    return a.bits_ <=> b.bits_;
  }

 private:
  bool is_index_ = false;
  BitString bits_;
  long index_ = 0;
};

// Identity of a switching element: stage index plus the 2-tuple of subnetwork
// numbering (prefix) and node-within-subnetwork numbering (suffix).
struct NodeLabel {
  int stage = 0;
  LabelPart prefix;
  LabelPart suffix;

  std::string display() const {
    return "(" + prefix.display() + "," + suffix.display() + ")@" + std::to_string(stage);
  }

  friend bool operator==(const NodeLabel&, const NodeLabel&) = default;
  friend auto operator<=>(const NodeLabel&, const NodeLabel&) = default;
};

inline NodeLabel benes_label(int stage, const BitString& prefix, const BitString& suffix) {
  return NodeLabel{stage, LabelPart::of(prefix), LabelPart::of(suffix)};
}

struct NodeLabelHash {
  std::size_t operator()(const NodeLabel& l) const {
    auto mix = [](std::size_t h, std::size_t v) {
      return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
    };
    auto part = [](const LabelPart& p) -> std::size_t {
      if (p.is_index()) return 0x8000000000000000ull | static_cast<std::size_t>(p.index());
      return BitStringHash()(p.bits());
    };
    std::size_t h = std::hash<int>()(l.stage);
    h = mix(h, part(l.prefix));
    h = mix(h, part(l.suffix));
    return h;
  }
};

}  // namespace cnet
