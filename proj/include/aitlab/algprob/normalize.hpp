#pragma once

#include <optional>
#include <vector>

#include "aitlab/core/bitstring.hpp"
#include "aitlab/core/rational.hpp"
#include "aitlab/mtm/machine.hpp"

namespace aitlab::algprob {

/// Exact values on the complete binary tree to some depth; nodes may be
/// undefined.
class TreeValues {
 public:
  explicit TreeValues(std::size_t depth) : depth_(depth), values_(tree_size(depth)) {}

  std::size_t depth() const { return depth_; }
  bool contains(const BitString& x) const { return x.size() <= depth_; }
  const std::optional<Rational>& at(const BitString& x) const;
  void set(const BitString& x, std::optional<Rational> v);

 private:
  std::size_t depth_;
  std::vector<std::optional<Rational>> values_;
};

struct NormalizedMeasure {
  std::size_t max_length = 0;
  std::uint64_t step_budget = 0;
  TreeValues M_lower{0};
  TreeValues P{0};
  /// Nodes whose children both estimate to zero; everything below is undefined.
  std::vector<BitString> undefined_below;
};

/// P(ε) = 1, P(xa) = P(x) M(xa) / (M(x0) + M(x1)) with M the lower estimates.
NormalizedMeasure normalize(const mtm::MachineSpec& machine, std::size_t depth, std::size_t L, std::uint64_t S);

/// m(xy) / m(x). Throws DomainError if m(x) is zero or either node is undefined.
Rational conditional(const TreeValues& m, const BitString& y, const BitString& x);

}  // namespace aitlab::algprob
