#include "aitlab/core/bitstring.hpp"

#include <algorithm>

#include "aitlab/core/error.hpp"

namespace aitlab {

BitString::BitString(std::string_view text) {
  bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw InputError("bit strings may only contain '0' and '1', got '" + std::string(text) + "'");
    }
    bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
}

BitString::BitString(std::initializer_list<int> bits) {
  for (int b : bits) push_back(b);
}

BitString BitString::from_index(std::size_t length, std::uint64_t value) {
  BitString out;
  out.bits_.resize(length);
  for (std::size_t i = 0; i < length; ++i) {
    out.bits_[length - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1u);
  }
  return out;
}

BitString BitString::repeat(int bit, std::size_t count) {
  BitString out;
  out.bits_.assign(count, static_cast<std::uint8_t>(bit & 1));
  return out;
}

BitString BitString::prefix(std::size_t length) const {
  BitString out;
  out.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(std::min(length, size())));
  return out;
}

BitString BitString::suffix_from(std::size_t start) const {
  BitString out;
  if (start < size()) out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(start), bits_.end());
  return out;
}

bool BitString::is_prefix_of(const BitString& other) const {
  return size() <= other.size() && std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

BitString& BitString::operator+=(const BitString& tail) {
  bits_.insert(bits_.end(), tail.bits_.begin(), tail.bits_.end());
  return *this;
}

std::size_t BitString::count_ones() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::uint64_t BitString::index() const {
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string BitString::str() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = static_cast<char>('0' + bits_[i]);
  return out;
}

bool shortlex_less(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void for_each_string(std::size_t depth, const std::function<void(const BitString&)>& visit) {
  for (std::size_t len = 0; len <= depth; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) visit(BitString::from_index(len, v));
  }
}

std::vector<BitString> strings_of_length(std::size_t length) {
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << length);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << length); ++v) out.push_back(BitString::from_index(length, v));
  return out;
}

}  // namespace aitlab
