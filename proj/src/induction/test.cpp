#include "aitlab/induction/test.hpp"

#include <cctype>

#include "aitlab/core/error.hpp"
#include "aitlab/mtm/execution.hpp"
#include "aitlab/mtm/machine_json.hpp"

namespace aitlab::induction {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ComputableTest test() {
    std::string id = word();
    if (id == "always") return ComputableTest::always();
    if (id == "only_empty") return ComputableTest::only_empty();
    if (id == "last_bit") return ComputableTest::last_bit();
    if (id == "ones_fraction") {
      expect('(');
      Rational theta = parse_rational(token());
      expect(',');
      std::size_t min_len = count();
      expect(')');
      return ComputableTest::ones_fraction(theta, min_len);
    }
    if (id == "goodman") {
      expect('(');
      ComputableTest inner = test();
      expect(',');
      std::size_t n = count();
      expect(')');
      return ComputableTest::goodman(inner, n);
    }
    fail("unknown test '" + id + "'");
  }

  void finish() {
    skip();
    if (pos_ != text_.size()) fail("trailing characters");
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("test '" + std::string(text_) + "': " + what);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a test name");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string token() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }
  std::size_t count() {
    std::string t = token();
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) fail("expected a count, got '" + t + "'");
    return std::stoul(t);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ComputableTest ComputableTest::always() {
  return {Kind::always, "always", [](const BitString&) { return 1; }, [](const BitString&) { return 0; }};
}

ComputableTest ComputableTest::only_empty() {
  return {Kind::only_empty, "only_empty", [](const BitString& x) { return x.empty() ? 1 : 0; }, nullptr};
}

ComputableTest ComputableTest::ones_fraction(Rational theta, std::size_t min_len) {
  if (theta < 0 || theta > 1) throw InputError("ones_fraction: theta must lie in [0, 1]");
  auto f = [theta, min_len](const BitString& x) {
    const std::size_t ones = x.count_ones();
    if (x.size() >= min_len) return Rational(ones) >= theta * Rational(x.size()) ? 1 : 0;
    return Rational(ones + (min_len - x.size())) >= theta * Rational(min_len) ? 1 : 0;
  };
  return {Kind::ones_fraction, "ones_fraction(" + to_string(theta) + ", " + std::to_string(min_len) + ")", f,
          [](const BitString&) { return 1; }};
}

ComputableTest ComputableTest::last_bit() {
  return {Kind::last_bit, "last_bit", [](const BitString& x) { return x.empty() ? 1 : x.back(); },
          [](const BitString&) { return 1; }};
}

ComputableTest ComputableTest::goodman(const ComputableTest& inner, std::size_t N) {
  auto g = inner.f_;
  auto f = [g, N](const BitString& x) { return x.size() <= N ? g(x) : 1 - g(x); };
  std::function<int(const BitString&)> w;
  if (inner.kind_ == Kind::last_bit) {
    w = [N](const BitString& x) { return x.size() + 1 <= N ? 1 : 0; };
  }
  return {Kind::goodman, "goodman(" + inner.name_ + ", " + std::to_string(N) + ")", f, w};
}

ComputableTest ComputableTest::machine(mtm::MachineSpec machine, std::uint64_t step_bound) {
  auto f = [machine = std::move(machine), step_bound](const BitString& x) {
    mtm::RunOutcome out = mtm::run(machine, x, step_bound);
    if (out.status == mtm::RunStatus::budget_exhausted) {
      throw EvaluationError("test did not finish within " + std::to_string(step_bound) + " steps on " +
                            (x.empty() ? std::string("ε") : x.str()));
    }
    return out.output.empty() ? 0 : out.output.back();
  };
  return {Kind::machine, "machine(" + std::to_string(step_bound) + ")", f, nullptr};
}

ComputableTest ComputableTest::parse(std::string_view text) {
  Parser p(text);
  ComputableTest t = p.test();
  p.finish();
  return t;
}

ComputableTest ComputableTest::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("test: expected a JSON object");
  if (doc.contains("builtin")) {
    if (doc.size() != 1) throw InputError("test: unexpected fields next to 'builtin'");
    return parse(doc["builtin"].get<std::string>());
  }
  if (doc.contains("machine")) {
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (it.key() != "machine" && it.key() != "step_bound") throw InputError("test: unknown field '" + it.key() + "'");
    }
    if (!doc.contains("step_bound") || !doc["step_bound"].is_number_unsigned()) {
      throw InputError("test: machine tests need a non-negative 'step_bound'");
    }
    return machine(mtm::machine_from_json(doc["machine"]), doc["step_bound"].get<std::uint64_t>());
  }
  throw InputError("test: expected 'builtin' or 'machine'");
}

int ComputableTest::evaluate(const BitString& x) const { return f_(x); }

int ComputableTest::witness(const BitString& x) const {
  if (!witness_) throw InputError("test " + name_ + " has no witness");
  return witness_(x);
}

SustainabilityReport check_sustainable(const ComputableTest& test, std::size_t depth) {
  if (depth > 24) throw InputError("sustainability depth is capped at 24");
  SustainabilityReport r;
  r.depth = depth;
  if (test.evaluate(BitString()) != 1) r.counterexamples.push_back(BitString());
  for_each_string(depth, [&](const BitString& x) {
    if (test.evaluate(x) != 1) return;
    const int a0 = test.evaluate(x.with(0));
    const int a1 = test.evaluate(x.with(1));
    if (test.has_witness()) {
      const int w = test.witness(x);
      if ((w ? a1 : a0) != 1) r.witness_failures.push_back(x);
    }
    if (a0 != 1 && a1 != 1) {
      if (!(x.empty() && !r.counterexamples.empty())) r.counterexamples.push_back(x);
    }
  });
  r.sustainable_to_depth = r.counterexamples.empty();
  return r;
}

}  // namespace aitlab::induction
