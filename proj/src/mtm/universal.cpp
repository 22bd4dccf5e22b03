#include "aitlab/mtm/universal.hpp"

#include <string>

#include "aitlab/mtm/builder.hpp"
#include "aitlab/mtm/encoding.hpp"

namespace aitlab::mtm {

namespace {

// Tapes 0..3 carry the simulated machine's work tapes. During decoding tape 3
// is the entry counter C; it is wiped before simulation starts.
constexpr int C = 3;
constexpr int D = 4;  // table data
constexpr int M = 5;  // 1 on the sentinel and on entry separators
constexpr int R = 6;  // unary register
constexpr int kTapes = 7;

const Pattern any = Pattern::any();

class Generator {
 public:
  Generator() : b_(kTapes) {}

  StateId st(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    StateId id = b_.add_state(name);
    ids_.emplace(name, id);
    return id;
  }

  static Step go(StateId to) { return Step(to); }
  static Step dm(StateId to, Move m) { return Step(to).move(D, m).move(M, m); }
  static Step fail(StateId self) { return Step(self).halt(); }

  // R: left once, then left over ones, then `rights` steps right.
  void rewind(const std::string& tag, int tape, int rights, StateId then) {
    StateId a = st(tag + ".a"), b = st(tag + ".b");
    b_.on(a, any, go(b).move(tape, Move::left));
    b_.on(b, any.is(tape, 1), go(b).move(tape, Move::left));
    if (rights == 1) {
      b_.on(b, any, go(then).move(tape, Move::right));
    } else {
      StateId c = st(tag + ".c");
      b_.on(b, any, go(c).move(tape, Move::right));
      b_.on(c, any, go(then).move(tape, Move::right));
    }
  }

  void start() {
    for (int i = 0; i <= kMaxEncodedTapes; ++i) {
      StateId ki = st("k" + std::to_string(i));
      Step on0 = i == 0 ? fail(ki) : go(st("n.first/" + std::to_string(i)));
      Step on1 = i == kMaxEncodedTapes ? fail(ki) : go(st("k" + std::to_string(i + 1)));
      b_.on_input(ki, any, on0, on1);
    }
  }

  void decode(int k) {
    const std::string K = "/" + std::to_string(k);
    const int block = 1 << k;
    StateId first = st("n.first" + K), more = st("n.more" + K);

    // n: one R cell per state, 2^k C cells per state.
    StateId after_one = block == 1 ? more : st("fill1" + K);
    Step one = go(after_one).write(R, 1).move(R, Move::right).write(C, 1).move(C, Move::right);
    b_.on_input(first, any, fail(first), one);
    b_.on_input(more, any, go(st("n.rw" + K + ".a")), one);
    for (int m = 1; m < block; ++m) {
      StateId f = st("fill" + std::to_string(m) + K);
      StateId nx = m + 1 == block ? more : st("fill" + std::to_string(m + 1) + K);
      b_.on(f, any, go(nx).write(C, 1).move(C, Move::right));
    }
    rewind("n.rw" + K, R, 2, st("c.rw" + K + ".a"));
    rewind("c.rw" + K, C, 1, st("sentinel" + K));
    StateId s0 = st("s0" + K);
    b_.on(st("sentinel" + K), any, dm(s0, Move::right).write(D, 1).write(M, 1));

    // s0, checked against the register
    StateId entry = st("entry" + K);
    rewind("s0.rw" + K, R, 2, entry);
    b_.on_input(s0, any.is(R, 1), go(st("s0.rw" + K + ".a")),
                dm(s0, Move::right).write(D, 1).move(R, Move::right));
    b_.on_input(s0, any, go(st("s0.rw" + K + ".a")), fail(s0));

    // table entries, counted down on C
    StateId flag = st("flag" + K);
    b_.on(entry, any.is(C, 1), dm(flag, Move::right).write(D, 0).write(M, 1).move(C, Move::right));
    b_.on(entry, any, go(st("setup" + K)));
    StateId last = st("act.last" + K), first_of_two = st("act.first" + K);
    b_.on_input(flag, any, dm(last, Move::right).write(D, 0), dm(first_of_two, Move::right).write(D, 1));
    action_reader(k, "act.first" + K, st("act.last" + K));
    action_reader(k, "act.last" + K, entry);
  }

  void action_reader(int k, const std::string& tag, StateId then) {
    StateId next = st(tag);
    StateId tail0 = st(tag + ".t0");
    rewind(tag + ".rw", R, 2, tail0);
    b_.on_input(next, any.is(R, 1), dm(st(tag + ".rw.a"), Move::right).write(D, 0),
                dm(next, Move::right).write(D, 1).move(R, Move::right));
    b_.on_input(next, any, dm(st(tag + ".rw.a"), Move::right).write(D, 0), fail(next));

    // 3k+3 tail bits: writes, move pairs, emit pair, halt
    int t = 0;
    auto name = [&](int i) { return tag + ".t" + std::to_string(i); };
    auto copy_to = [&](StateId from, StateId to) {
      b_.on_input(from, any, dm(to, Move::right).write(D, 0), dm(to, Move::right).write(D, 1));
    };
    for (int i = 0; i < k; ++i, ++t) copy_to(st(name(t)), st(name(t + 1)));
    for (int i = 0; i < k + 1; ++i) {
      StateId p1 = st(name(t));
      StateId p2a = st(name(t) + ".0"), p2b = st(name(t) + ".1");
      StateId nx = i < k ? st(name(t + 1)) : st(tag + ".halt");
      b_.on_input(p1, any, dm(p2a, Move::right).write(D, 0), dm(p2b, Move::right).write(D, 1));
      if (i < k) {
        // move: 11 is invalid
        copy_to(p2a, nx);
        b_.on_input(p2b, any, dm(nx, Move::right).write(D, 0), fail(p2b));
      } else {
        // emit: 01 is invalid
        b_.on_input(p2a, any, dm(nx, Move::right).write(D, 0), fail(p2a));
        copy_to(p2b, nx);
      }
      ++t;
    }
    copy_to(st(tag + ".halt"), then);
  }

  void setup(int k) {
    const std::string K = "/" + std::to_string(k);
    StateId s = st("setup" + K), c2 = st("setup.c" + K);
    b_.on(s, any, go(c2).move(C, Move::left));
    b_.on(c2, any.is(C, 1), go(c2).write(C, 0).move(C, Move::left));
    StateId r1 = st("setup.r1" + K), r2 = st("setup.r2" + K);
    b_.on(c2, any, go(r1));
    b_.on(r1, any.is(R, 1), go(r1).move(R, Move::right));
    b_.on(r1, any, go(r2).move(R, Move::left));
    b_.on(r2, any.is(R, 1), go(r2).write(R, 0).move(R, Move::left));
    StateId home = st("setup.home" + K);
    b_.on(r2, any, go(home).move(R, Move::right));
    StateId copy = st("setup.copy" + K);
    b_.on(home, any.is(D, 1).is(M, 1), dm(copy, Move::right));
    b_.on(home, any, dm(home, Move::left));
    b_.on(copy, any.is(M, 1), go(st("setup.rw" + K + ".a")));
    b_.on(copy, any, dm(copy, Move::right).write(R, 1).move(R, Move::right));
    rewind("setup.rw" + K, R, 1, st("block" + K));
  }

  void simulate(int k) {
    const std::string K = "/" + std::to_string(k);
    const int block = 1 << k;
    const std::uint32_t tmask = (1u << k) - 1;

    // R holds s; skip s blocks of 2^k entries. D sits on a separator.
    StateId blk = st("block" + K);
    b_.on(blk, any.is(R, 1), dm(st("skip" + std::to_string(block) + K), Move::right).move(R, Move::right));
    b_.on(blk, any, go(st("es0" + K)));
    for (int m = block; m >= 1; --m) {
      StateId sk = st("skip" + std::to_string(m) + K);
      b_.on(sk, any.is(M, 0), dm(sk, Move::right));
      b_.on(sk, any, m == 1 ? go(blk) : dm(st("skip" + std::to_string(m - 1) + K), Move::right));
    }

    // find the entry whose index equals the bits under the simulated heads
    StateId fl = st("sim.flag" + K);
    for (int j = 0; j < block; ++j) {
      StateId es = st("es" + std::to_string(j) + K);
      Pattern hit{tmask, static_cast<std::uint32_t>(j)};
      b_.on(es, hit, dm(fl, Move::right));
      if (j + 1 < block) {
        StateId walk = st("es" + std::to_string(j) + ".walk" + K);
        b_.on(es, any, dm(walk, Move::right));
        b_.on(walk, any.is(M, 0), dm(walk, Move::right));
        b_.on(walk, any, go(st("es" + std::to_string(j + 1) + K)));
      } else {
        b_.on(es, any, fail(es));  // unreachable
      }
    }

    // reading entries consume a program bit here
    StateId apply = st("apply" + K), skipnext = st("sim.skipnext" + K);
    b_.on(fl, any.is(D, 0), dm(apply, Move::right));
    b_.on_input(fl, any, dm(apply, Move::right), dm(skipnext, Move::right));
    const int fixed = 3 * k + 3;
    b_.on(skipnext, any.is(D, 1), dm(skipnext, Move::right));
    b_.on(skipnext, any, dm(st("sim.skipf" + std::to_string(fixed) + K), Move::right));
    for (int m = fixed; m >= 1; --m) {
      StateId f = st("sim.skipf" + std::to_string(m) + K);
      b_.on(f, any, dm(m == 1 ? apply : st("sim.skipf" + std::to_string(m - 1) + K), Move::right));
    }

    // new state into R
    StateId clr = st("apply.clr" + K), copy = st("apply.copy" + K);
    b_.on(apply, any, go(clr).move(R, Move::left));
    b_.on(clr, any.is(R, 1), go(clr).write(R, 0).move(R, Move::left));
    b_.on(clr, any, go(copy).move(R, Move::right));
    b_.on(copy, any.is(D, 1), dm(copy, Move::right).write(R, 1).move(R, Move::right));
    b_.on(copy, any, dm(st("apply.rw" + K + ".a"), Move::right));
    rewind("apply.rw" + K, R, 1, st("apply.w0" + K));

    for (int i = 0; i < k; ++i) {
      StateId w = st("apply.w" + std::to_string(i) + K);
      StateId nx = i + 1 < k ? st("apply.w" + std::to_string(i + 1) + K) : st("apply.m0" + K);
      b_.on(w, any.is(D, 1), dm(nx, Move::right).write(i, 1));
      b_.on(w, any, dm(nx, Move::right).write(i, 0));
    }
    for (int i = 0; i < k; ++i) {
      StateId m1 = st("apply.m" + std::to_string(i) + K);
      StateId m2a = st("apply.m" + std::to_string(i) + ".0" + K);
      StateId m2b = st("apply.m" + std::to_string(i) + ".1" + K);
      StateId nx = i + 1 < k ? st("apply.m" + std::to_string(i + 1) + K) : st("apply.e" + K);
      b_.on(m1, any.is(D, 1), dm(m2b, Move::right));
      b_.on(m1, any, dm(m2a, Move::right));
      b_.on(m2a, any.is(D, 1), dm(nx, Move::right).move(i, Move::left));
      b_.on(m2a, any, dm(nx, Move::right));
      b_.on(m2b, any, dm(nx, Move::right).move(i, Move::right));
    }
    StateId e1 = st("apply.e" + K), e2 = st("apply.e.1" + K), hb = st("apply.h" + K);
    b_.on(e1, any.is(D, 1), dm(e2, Move::right));
    b_.on(e1, any, dm(st("apply.e.0" + K), Move::right));
    b_.on(st("apply.e.0" + K), any, dm(hb, Move::right));
    b_.on(e2, any.is(D, 1), dm(hb, Move::right).emit(1));
    b_.on(e2, any, dm(hb, Move::right).emit(0));

    StateId home = st("home" + K), find = st("home.find" + K);
    b_.on(hb, any.is(D, 1), go(hb).halt());
    b_.on(hb, any, dm(home, Move::left));
    b_.on(home, any.is(D, 1).is(M, 1), dm(find, Move::right));
    b_.on(home, any, dm(home, Move::left));
    b_.on(find, any.is(M, 0), dm(find, Move::right));
    b_.on(find, any, go(blk));
  }

  MachineSpec build() {
    start();
    for (int k = 1; k <= kMaxEncodedTapes; ++k) {
      decode(k);
      setup(k);
      simulate(k);
    }
    return b_.build(st("k0"));
  }

 private:
  MachineBuilder b_;
  std::unordered_map<std::string, StateId> ids_;
};

}  // namespace

const MachineSpec& reference_universal() {
  static const MachineSpec u = Generator().build();
  return u;
}

}  // namespace aitlab::mtm
