#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aitlab {

/// A finite binary string. The empty string is the default value.
///
/// Ordering via operator<=> is lexicographic on the bit sequence; use
/// shortlex_less() for the length-then-lexicographic enumeration order.
class BitString {
 public:
  BitString() = default;
  /// Parses ASCII '0'/'1'. Throws InputError on any other character.
  explicit BitString(std::string_view text);
  BitString(std::initializer_list<int> bits);

  /// The string of given length whose bits spell `value` MSB first.
  static BitString from_index(std::size_t length, std::uint64_t value);
  static BitString repeat(int bit, std::size_t count);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  int back() const { return bits_.back(); }

  void push_back(int bit) { bits_.push_back(static_cast<std::uint8_t>(bit & 1)); }
  void pop_back() { bits_.pop_back(); }
  void reserve(std::size_t n) { bits_.reserve(n); }

  BitString prefix(std::size_t length) const;
  BitString suffix_from(std::size_t start) const;
  bool is_prefix_of(const BitString& other) const;

  BitString& operator+=(const BitString& tail);
  friend BitString operator+(BitString head, const BitString& tail) { return head += tail; }
  BitString with(int bit) const {
    BitString out = *this;
    out.push_back(bit);
    return out;
  }

  std::size_t count_ones() const;
  /// Value of the bits read as a binary number, MSB first. Requires size() <= 64.
  std::uint64_t index() const;

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::string str() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline std::ostream& operator<<(std::ostream& os, const BitString& x) {
  return os << '"' << x.str() << '"';
}

/// Length first, then lexicographic: ε, 0, 1, 00, 01, ...
bool shortlex_less(const BitString& a, const BitString& b);

/// Position of x in the complete binary tree laid out breadth first:
/// ε -> 0, 0 -> 1, 1 -> 2, 00 -> 3, ...
inline std::size_t tree_index(const BitString& x) {
  return (std::size_t{1} << x.size()) - 1 + static_cast<std::size_t>(x.index());
}

inline std::size_t tree_size(std::size_t depth) { return (std::size_t{2} << depth) - 1; }

/// Calls visit(x) for every string of length <= depth in shortlex order.
void for_each_string(std::size_t depth, const std::function<void(const BitString&)>& visit);

/// All strings of exactly the given length, in lexicographic order.
std::vector<BitString> strings_of_length(std::size_t length);

}  // namespace aitlab

template <>
struct std::hash<aitlab::BitString> {
  std::size_t operator()(const aitlab::BitString& x) const noexcept {
    std::size_t h = 1469598103934665603ull ^ x.size();
    for (auto b : x.bits()) h = (h ^ b) * 1099511628211ull;
    return h;
  }
};
