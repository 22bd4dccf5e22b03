#include "aitlab/algprob/estimate.hpp"

#include <cstdlib>
#include <string>
#include <thread>

#include "aitlab/core/error.hpp"
#include "aitlab/mtm/execution.hpp"

namespace aitlab::algprob {

using mtm::Execution;

namespace {

constexpr std::size_t kMaxLength = 24;

ProgramTree::Pause convert(Execution::Pause p) {
  switch (p) {
    case Execution::Pause::needs_input: return ProgramTree::Pause::needs_input;
    case Execution::Pause::halted: return ProgramTree::Pause::halted;
    case Execution::Pause::budget_exhausted: return ProgramTree::Pause::budget_exhausted;
  }
  return ProgramTree::Pause::absent;
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

unsigned default_threads() {
  if (const char* env = std::getenv("AITLAB_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

ProgramTree::ProgramTree(const mtm::MachineSpec& machine, std::size_t max_length, std::uint64_t step_budget,
                         const std::optional<BitString>& focus, unsigned threads)
    : max_length_(max_length), step_budget_(step_budget), focus_(focus) {
  if (max_length > kMaxLength) throw InputError("program length bound above " + std::to_string(kMaxLength));
  if (threads == 0) threads = default_threads();
  nodes_.resize(tree_size(max_length));

  auto expand = [&](const BitString& out) {
    if (!focus_) return true;
    return out.size() < focus_->size() && out.is_prefix_of(*focus_);
  };

  struct Live {
    BitString program;
    Execution exec;
  };
  std::vector<Live> level;
  {
    Execution root(machine);
    Pause p = convert(root.advance(step_budget));
    nodes_[0] = {root.output(), p};
    if (p == Pause::needs_input && max_length > 0 && expand(root.output())) level.push_back({BitString(), root});
  }
  for (std::size_t depth = 1; depth <= max_length && !level.empty(); ++depth) {
    std::vector<Live> next(level.size() * 2, Live{BitString(), Execution(machine)});
    std::vector<char> keep(next.size(), 0);
    parallel_for(next.size(), threads, [&](std::size_t i) {
      Live child{level[i / 2].program.with(static_cast<int>(i % 2)), level[i / 2].exec};
      child.exec.supply(static_cast<int>(i % 2));
      Pause p = convert(child.exec.advance(step_budget));
      nodes_[tree_index(child.program)] = {child.exec.output(), p};
      keep[i] = p == Pause::needs_input && depth < max_length && expand(child.exec.output());
      next[i] = std::move(child);
    });
    level.clear();
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (keep[i]) level.push_back(std::move(next[i]));
    }
  }
}

EstimateReport ProgramTree::estimate(const BitString& x) const {
  EstimateReport r;
  r.x = x;
  r.max_length = max_length_;
  r.step_budget = step_budget_;
  if (x.empty()) {
    r.M_lower = 1;
    r.M_upper = Rational(1);
    r.Km_upper = 0;
    r.qualifying.push_back(BitString());
    return r;
  }
  Rational upper_extra = 0;
  static const BitString empty;
  for (std::size_t len = 0; len <= max_length_; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const std::size_t idx = (std::size_t{1} << len) - 1 + v;
      const Node& node = nodes_[idx];
      if (node.pause == Pause::absent) continue;
      const BitString& before = len == 0 ? empty : nodes_[(idx - 1) / 2].out;
      if (before.size() < x.size() && x.size() <= node.out.size() && x.is_prefix_of(node.out)) {
        r.M_lower += pow2(-static_cast<long>(len));
        if (!r.Km_upper) r.Km_upper = len;
        r.qualifying.push_back(BitString::from_index(len, v));
      } else if (node.out.size() < x.size() && node.out.is_prefix_of(x)) {
        if (node.pause == Pause::budget_exhausted) {
          r.inconclusive += (std::uint64_t{2} << (max_length_ - len)) - 1;
          upper_extra += pow2(-static_cast<long>(len));
        } else if (node.pause == Pause::needs_input && len == max_length_) {
          upper_extra += pow2(-static_cast<long>(len));
        }
      }
    }
  }
  r.M_upper = r.M_lower + upper_extra;
  if (*r.M_upper > 1) r.M_upper = Rational(1);
  return r;
}

namespace {

EstimateReport levin_estimate(const mtm::MachineSpec& machine, const BitString& x, std::size_t L, std::uint64_t S) {
  if (L > kMaxLength) throw InputError("program length bound above " + std::to_string(kMaxLength));
  EstimateReport r;
  r.x = x;
  r.max_length = L;
  r.step_budget = S;
  r.levin = true;
  for (std::size_t len = 0; len <= L; ++len) {
    const unsigned shift = static_cast<unsigned>(L - len);
    const std::uint64_t budget = (shift >= 64 || S > (UINT64_MAX >> shift)) ? UINT64_MAX : S << shift;
    for (const BitString& p : strings_of_length(len)) {
      bool covered = false;
      for (const BitString& q : r.qualifying) covered = covered || q.is_prefix_of(p);
      if (covered) continue;
      switch (mtm::outputs_prefix(machine, p, x, budget)) {
        case mtm::Verdict::yes:
          r.M_lower += pow2(-static_cast<long>(len));
          if (!r.Km_upper) r.Km_upper = len;
          r.qualifying.push_back(p);
          break;
        case mtm::Verdict::inconclusive: ++r.inconclusive; break;
        case mtm::Verdict::no: break;
      }
    }
  }
  return r;
}

}  // namespace

EstimateReport estimate_M(const mtm::MachineSpec& machine, const BitString& x, std::size_t L, std::uint64_t S,
                          const EstimateOptions& options) {
  if (options.levin) return levin_estimate(machine, x, L, S);
  return ProgramTree(machine, L, S, x, options.threads).estimate(x);
}

std::optional<std::size_t> estimate_Km(const mtm::MachineSpec& machine, const BitString& x, std::size_t L,
                                       std::uint64_t S, const EstimateOptions& options) {
  return estimate_M(machine, x, L, S, options).Km_upper;
}

std::vector<EstimateReport> estimate_all(const mtm::MachineSpec& machine, std::size_t depth, std::size_t L,
                                         std::uint64_t S, const EstimateOptions& options) {
  std::vector<EstimateReport> out(tree_size(depth));
  if (options.levin) {
    for_each_string(depth, [&](const BitString& x) { out[tree_index(x)] = levin_estimate(machine, x, L, S); });
    return out;
  }
  ProgramTree tree(machine, L, S, std::nullopt, options.threads);
  for_each_string(depth, [&](const BitString& x) { out[tree_index(x)] = tree.estimate(x); });
  return out;
}

}  // namespace aitlab::algprob
