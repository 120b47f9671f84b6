#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "aswb/bool_synth.hpp"

using namespace aswb;

namespace {

CareFunction care(std::vector<std::string> vars, const char* cells) {
  CareFunction f;
  f.vars = std::move(vars);
  for (const char* p = cells; *p; ++p) {
    switch (*p) {
      case '0': f.values.push_back(TruthValue::F); break;
      case '1': f.values.push_back(TruthValue::T); break;
      case '-': f.values.push_back(TruthValue::DC); break;
      default: break;
    }
  }
  REQUIRE(f.values.size() == (std::size_t{1} << f.vars.size()));
  return f;
}

bool agrees_on_care(const SopFunction& f, const CareFunction& c) {
  for (std::uint32_t a = 0; a < c.values.size(); ++a) {
    if (c.values[a] == TruthValue::DC) continue;
    if (evaluate_at(f, a) != (c.values[a] == TruthValue::T ? 1 : 0)) return false;
  }
  return true;
}

bool is_implicant(const SopTerm& t, const CareFunction& c) {
  bool hits_on = false;
  for (std::uint32_t a = 0; a < c.values.size(); ++a) {
    if (!t.covers(a)) continue;
    if (c.values[a] == TruthValue::F) return false;
    if (c.values[a] == TruthValue::T) hits_on = true;
  }
  return hits_on;
}

bool is_prime(const SopTerm& t, const CareFunction& c) {
  if (!is_implicant(t, c)) return false;
  std::uint32_t n = static_cast<std::uint32_t>(c.vars.size());
  for (std::uint32_t b = 0; b < n; ++b) {
    std::uint32_t bit = std::uint32_t{1} << b;
    if (!(t.mask & bit)) continue;
    SopTerm wider{t.mask & ~bit, t.value & ~bit};
    if (is_implicant(wider, c)) return false;
  }
  return true;
}

std::vector<SopTerm> brute_primes(const CareFunction& c) {
  std::uint32_t n = static_cast<std::uint32_t>(c.vars.size());
  std::vector<SopTerm> primes;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    std::uint32_t value = 0;
    do {
      SopTerm t{mask, value};
      if (is_prime(t, c)) primes.push_back(t);
      value = (value - mask) & mask;  // next subset of mask
    } while (value != 0);
  }
  return primes;
}

int total_literals(const SopFunction& f) {
  int total = 0;
  for (const auto& t : f.terms) total += t.literal_count();
  return total;
}

// Refutation search over prime subsets: is there a cover with fewer terms,
// or equally many terms and fewer literals? A minimum-cost cover can always
// be assembled from primes, so searching primes is enough.
bool exists_cheaper_cover(const CareFunction& c, int terms_bound, int literals_bound) {
  auto primes = brute_primes(c);
  REQUIRE(primes.size() <= 20);
  std::uint32_t cells = std::uint32_t{1} << c.vars.size();
  for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << primes.size()); ++pick) {
    int terms = std::popcount(pick);
    if (terms > terms_bound) continue;
    int literals = 0;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (pick >> i & 1) literals += primes[i].literal_count();
    if (terms == terms_bound && literals >= literals_bound) continue;
    bool ok = true;
    for (std::uint32_t a = 0; a < cells && ok; ++a) {
      if (c.values[a] != TruthValue::T) continue;
      bool covered = false;
      for (std::size_t i = 0; i < primes.size() && !covered; ++i)
        covered = (pick >> i & 1) && primes[i].covers(a);
      ok = covered;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("a two-variable excitation column minimizes to a single literal") {
  // vars y H, on where H=0 regardless of y
  auto f = minimize(care({"y", "H"}, "10 10"));
  CHECK(render_function(f) == "!H");
  REQUIRE(f.terms.size() == 1);
  CHECK(f.terms[0] == SopTerm{0b01, 0b00});
}

TEST_CASE("a two-variable output column keeps both literals") {
  auto f = minimize(care({"y", "H"}, "10 00"));
  CHECK(render_function(f) == "!y & !H");
  REQUIRE(f.terms.size() == 1);
  CHECK(f.terms[0] == SopTerm{0b11, 0b00});
}

TEST_CASE("all don't-care minimizes to constant 0") {
  auto f = minimize(CareFunction::all_dc({"a", "b", "c"}));
  CHECK(f.is_const_zero());
  CHECK(render_function(f) == "0");
}

TEST_CASE("no off-cells minimizes to constant 1") {
  auto f = minimize(care({"a", "b"}, "1- -1"));
  CHECK(f.is_const_one());
  CHECK(render_function(f) == "1");
}

TEST_CASE("zero-variable functions") {
  CHECK(minimize(care({}, "1")).is_const_one());
  CHECK(minimize(care({}, "0")).is_const_zero());
  CHECK(minimize(care({}, "-")).is_const_zero());
}

TEST_CASE("don't-cares are spent to shorten terms") {
  // vars y1 y0 H M; care layout matches the four-state stretcher's first
  // excitation: on at M=1 cells and at the held !H cells of y1=1 rows.
  auto c = care({"y1", "y0", "H", "M"}, "0-0- 01-- 1-0- 11--");
  auto f = minimize(c);
  CHECK(render_function(f) == "y1 & !H + M");
  CHECK(agrees_on_care(f, c));
}

TEST_CASE("minimization is deterministic") {
  auto c = care({"a", "b", "c", "d"}, "1--0 -01- 1--- 0-1-");
  auto first = minimize(c);
  auto second = minimize(c);
  CHECK(first == second);
}

TEST_CASE("xor needs both product terms") {
  auto f = minimize(care({"a", "b"}, "0110"));
  CHECK(f.terms.size() == 2);
  CHECK(render_function(f) == "!a & b + a & !b");
}

TEST_CASE("variable count is capped") {
  std::vector<std::string> vars;
  for (int i = 0; i < 17; ++i) vars.push_back("v" + std::to_string(i));
  CHECK_THROWS_AS(minimize(CareFunction::all_dc(vars)), std::invalid_argument);
}

TEST_CASE("a mismatched truth table size is rejected") {
  CareFunction c;
  c.vars = {"a", "b"};
  c.values = {TruthValue::T, TruthValue::F};
  CHECK_THROWS_AS(minimize(c), std::invalid_argument);
}

TEST_CASE("evaluation reads assignments by name and rejects gaps") {
  auto f = minimize(care({"y", "H"}, "10 00"));
  CHECK(evaluate(f, {{"y", 0}, {"H", 0}}) == 1);
  CHECK(evaluate(f, {{"y", 0}, {"H", 1}}) == 0);
  CHECK(evaluate(f, {{"y", 1}, {"H", 0}, {"extra", 1}}) == 0);
  CHECK_THROWS_AS(evaluate(f, {{"y", 1}}), std::invalid_argument);
}

TEST_CASE("equivalence over a care set finds the first disagreement in assignment order") {
  // First excitation of the four-state stretcher vs the factored candidate
  // that drops the hold term.
  auto column = care({"y1", "y0", "H", "M"}, "0-0- 01-- 1-0- 11--");
  SopFunction good = minimize(column);
  SopFunction candidate;  // M & !H + M & y1
  candidate.vars = {"y1", "y0", "H", "M"};
  candidate.terms = {SopTerm{0b0011, 0b0001}, SopTerm{0b1001, 0b1001}};

  auto first = equivalent_on(candidate, good, column);
  REQUIRE(first.has_value());
  CHECK(*first == Assignment{{"y1", 1}, {"y0", 0}, {"H", 0}, {"M", 0}});

  auto all = counterexamples(candidate, good, column);
  REQUIRE(all.size() == 2);
  CHECK(all[0] == Assignment{{"y1", 1}, {"y0", 0}, {"H", 0}, {"M", 0}});
  CHECK(all[1] == Assignment{{"y1", 1}, {"y0", 1}, {"H", 0}, {"M", 0}});

  CHECK(equivalent_on(good, good, column) == std::nullopt);
  CHECK(counterexamples(good, good, column).empty());
}

TEST_CASE("disagreements outside the care set do not count") {
  auto c = care({"a"}, "1-");
  SopFunction one;  // constant 1, differs from !a only at a=1, a don't-care
  one.vars = {"a"};
  one.terms = {SopTerm{0, 0}};
  SopFunction nota;
  nota.vars = {"a"};
  nota.terms = {SopTerm{1, 0}};
  CHECK(equivalent_on(one, nota, c) == std::nullopt);
}

TEST_CASE("equivalence requires an aligned variable order") {
  auto c = care({"a", "b"}, "0110");
  SopFunction f = minimize(c);
  SopFunction g = f;
  g.vars = {"b", "a"};
  CHECK_THROWS_AS(equivalent_on(f, g, c), std::invalid_argument);
}

TEST_CASE("rendering uses the shared variable order inside every term") {
  SopFunction f;
  f.vars = {"y1", "y0", "H", "M"};
  f.terms = {SopTerm{0b1010, 0b0010}, SopTerm{0b0101, 0b0001}};
  CHECK(render_function(f) == "!y1 & H + !y0 & M");
}

TEST_CASE("random functions: minimize is sound, prime, and cost-minimal") {
  std::mt19937 rng(987654321);
  std::uniform_int_distribution<int> var_count(0, 4);
  std::uniform_int_distribution<int> cell(0, 5);
  const std::vector<std::string> names = {"a", "b", "c", "d"};
  int minimality_checked = 0;
  for (int round = 0; round < 300; ++round) {
    int n = var_count(rng);
    CareFunction c;
    c.vars.assign(names.begin(), names.begin() + n);
    c.values.resize(std::size_t{1} << n);
    for (auto& v : c.values) {
      int r = cell(rng);
      v = r < 2 ? TruthValue::F : r < 4 ? TruthValue::T : TruthValue::DC;
    }
    auto f = minimize(c);
    CAPTURE(round);
    CAPTURE(n);
    REQUIRE(f.vars == c.vars);
    CHECK(agrees_on_care(f, c));
    for (const auto& t : f.terms) {
      if (f.is_const_one()) {
        // the empty product is prime iff nothing is an off-cell
        bool any_off = false;
        for (auto v : c.values) any_off |= (v == TruthValue::F);
        CHECK_FALSE(any_off);
      } else {
        CHECK(is_prime(t, c));
      }
    }
    if (n <= 3) {
      bool any_on = false;
      for (auto v : c.values) any_on |= (v == TruthValue::T);
      if (!any_on)
        CHECK(f.is_const_zero());
      else
        CHECK_FALSE(exists_cheaper_cover(c, static_cast<int>(f.terms.size()), total_literals(f)));
      ++minimality_checked;
    }
  }
  CHECK(minimality_checked > 100);
}
