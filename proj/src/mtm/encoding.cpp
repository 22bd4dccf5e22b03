#include "aitlab/mtm/encoding.hpp"

#include "aitlab/core/error.hpp"

namespace aitlab::mtm {

namespace {

void put_unary(BitString& out, std::uint64_t v) {
  for (std::uint64_t i = 0; i < v; ++i) out.push_back(1);
  out.push_back(0);
}

void put_action(BitString& out, const Action& a, int k) {
  put_unary(out, a.next);
  for (int t = 0; t < k; ++t) out.push_back(a.written(t));
  for (int t = 0; t < k; ++t) {
    switch (a.move(t)) {
      case Move::stay: out += BitString{0, 0}; break;
      case Move::left: out += BitString{0, 1}; break;
      case Move::right: out += BitString{1, 0}; break;
    }
  }
  if (a.emit < 0) {
    out += BitString{0, 0};
  } else {
    out += BitString{1, a.emit};
  }
  out.push_back(a.halt ? 1 : 0);
}

struct Invalid {
  std::string reason;
};
struct Incomplete {};

class Reader {
 public:
  explicit Reader(const BitString& bits) : bits_(bits) {}

  int next() {
    if (pos_ == bits_.size()) throw Incomplete{};
    return bits_[pos_++];
  }
  std::size_t pos() const { return pos_; }

  // Unary value, failing on the one that would make it reach `limit`.
  std::uint64_t unary_below(std::uint64_t limit, const char* what) {
    std::uint64_t v = 0;
    while (next() == 1) {
      if (++v >= limit) throw Invalid{std::string(what) + " out of range"};
    }
    return v;
  }

 private:
  const BitString& bits_;
  std::size_t pos_ = 0;
};

Action read_action(Reader& in, int k, StateId n) {
  Action a;
  a.next = static_cast<StateId>(in.unary_below(n, "next state"));
  for (int t = 0; t < k; ++t) a.write |= static_cast<std::uint8_t>(in.next() << t);
  for (int t = 0; t < k; ++t) {
    int b1 = in.next();
    int b2 = in.next();
    if (b1 && b2) throw Invalid{"move code 11"};
    a.set_move(t, b1 ? Move::right : (b2 ? Move::left : Move::stay));
  }
  int e1 = in.next();
  int e2 = in.next();
  if (!e1 && e2) throw Invalid{"emit code 01"};
  a.emit = static_cast<std::int8_t>(e1 ? e2 : -1);
  a.halt = in.next() == 1;
  return a;
}

}  // namespace

BitString encode_machine(const MachineSpec& machine) {
  const int k = machine.work_tapes();
  if (k > kMaxEncodedTapes) {
    throw EncodingOverflow("machine has " + std::to_string(k) + " work tapes, encoding supports at most " +
                           std::to_string(kMaxEncodedTapes));
  }
  BitString out;
  put_unary(out, static_cast<std::uint64_t>(k));
  put_unary(out, machine.state_count());
  put_unary(out, machine.start());
  for (const Entry& e : machine.table()) {
    out.push_back(e.reads_input ? 1 : 0);
    put_action(out, e.on[0], k);
    if (e.reads_input) put_action(out, e.on[1], k);
  }
  return out;
}

DecodeResult decode_machine(const BitString& bits) {
  Reader in(bits);
  DecodeResult result;
  try {
    std::uint64_t k = in.unary_below(kMaxEncodedTapes + 1, "work tape count");
    if (k == 0) throw Invalid{"zero work tapes"};
    std::uint64_t n = 0;
    while (in.next() == 1) ++n;
    if (n == 0) throw Invalid{"zero states"};
    if (n > 0xffffffffu) throw Invalid{"too many states"};
    const StateId states = static_cast<StateId>(n);
    const StateId start = static_cast<StateId>(in.unary_below(n, "start state"));
    const int tapes = static_cast<int>(k);
    std::vector<Entry> table(static_cast<std::size_t>(states) << tapes);
    for (Entry& e : table) {
      e.reads_input = in.next() == 1;
      e.on[0] = read_action(in, tapes, states);
      if (e.reads_input) e.on[1] = read_action(in, tapes, states);
    }
    result.machine.emplace(tapes, states, start, std::move(table));
    result.status = DecodeStatus::ok;
  } catch (const Invalid& bad) {
    result.status = DecodeStatus::invalid;
    result.reason = bad.reason;
  } catch (const Incomplete&) {
    result.status = DecodeStatus::incomplete;
    result.reason = "input ended inside the encoding";
  }
  result.consumed = in.pos();
  return result;
}

}  // namespace aitlab::mtm
