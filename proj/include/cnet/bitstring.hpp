#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "cnet/errors.hpp"

namespace cnet {

// Fixed-length binary word. Leading zeros are significant: "001" and "1" are
// different values, and the empty word (length 0) is legal. Bits are indexed
// from the most significant end, so bit(0) of "10" is 1. Port numbers, node
// labels and address intervals are all built out of these.
class BitString {
 public:
  static constexpr int kMaxBits = 30;

  BitString() = default;

  BitString(std::uint32_t value, int length) : value_(value), length_(length) {
    if (length < 0 || length > kMaxBits)
      throw InvalidParameterError("BitString length out of range: " + std::to_string(length));
    if (length < kMaxBits && (value >> length) != 0)
      throw InvalidParameterError("BitString value does not fit in " + std::to_string(length) +
                                  " bits");
  }

  explicit BitString(std::string_view bits) {
    for (char c : bits) {
      if (c != '0' && c != '1') throw InvalidParameterError("BitString: bad character in literal");
      *this = append(c - '0');
    }
  }

  int size() const { return length_; }
  bool empty() const { return length_ == 0; }
  std::uint32_t value() const { return value_; }

  // 0-based from the most significant bit.
  int bit(int i) const {
    if (i < 0 || i >= length_) throw InvalidParameterError("BitString: bit index out of range");
    return (value_ >> (length_ - 1 - i)) & 1u;
  }

  BitString append(int bit) const {
    if (bit != 0 && bit != 1) throw InvalidParameterError("BitString: bit must be 0 or 1");
    return BitString((value_ << 1) | static_cast<std::uint32_t>(bit), length_ + 1);
  }

  BitString concat(const BitString& other) const {
    if (length_ + other.length_ > kMaxBits)
      throw InvalidParameterError("BitString: concat exceeds max length");
    return BitString((value_ << other.length_) | other.value_, length_ + other.length_);
  }

  // Leading len bits.
  BitString prefix(int len) const {
    if (len < 0 || len > length_) throw InvalidParameterError("BitString: bad prefix length");
    return BitString(value_ >> (length_ - len), len);
  }

  // Trailing len bits.
  BitString suffix(int len) const {
    if (len < 0 || len > length_) throw InvalidParameterError("BitString: bad suffix length");
    return BitString(value_ & ((len == kMaxBits ? ~0u : (1u << len) - 1u)), len);
  }

  BitString drop_last() const { return prefix(length_ - 1); }

  BitString reversed() const {
    BitString out;
    for (int i = length_ - 1; i >= 0; --i) out = out.append(bit(i));
    return out;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(length_);
    for (int i = 0; i < length_; ++i) s.push_back(static_cast<char>('0' + bit(i)));
    return s;
  }

  // Human-readable form; the empty word prints as phi like in network diagrams.
  std::string display() const { return length_ == 0 ? "φ" : to_string(); }

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.length_ == b.length_ && a.value_ == b.value_;
  }
  friend auto operator<=>(const BitString& a, const BitString& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.value_ <=> b.value_;
  }

 private:
  std::uint32_t value_ = 0;
  int length_ = 0;
};

struct BitStringHash {
  std::size_t operator()(const BitString& b) const {
    return std::hash<std::uint64_t>()((static_cast<std::uint64_t>(b.size()) << 32) | b.value());
  }
};

}  // namespace cnet
