#include "aswb/bool_synth.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "aswb/flow_table.hpp"

namespace aswb {

CareFunction CareFunction::all_dc(std::vector<std::string> vars) {
  CareFunction f;
  f.values.assign(std::size_t{1} << vars.size(), TruthValue::DC);
  f.vars = std::move(vars);
  return f;
}

int SopTerm::literal_count() const { return std::popcount(mask); }

namespace {

// Term order used for determinism: walk variables most significant first,
// negative literal < positive literal < absent.
int literal_code(const SopTerm& t, std::uint32_t bit) {
  if (!(t.mask & bit)) return 2;
  return (t.value & bit) ? 1 : 0;
}

struct TermLess {
  std::size_t n;
  bool operator()(const SopTerm& a, const SopTerm& b) const {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t bit = std::uint32_t{1} << (n - 1 - i);
      int ca = literal_code(a, bit), cb = literal_code(b, bit);
      if (ca != cb) return ca < cb;
    }
    return false;
  }
};

std::vector<SopTerm> sorted_terms(std::vector<SopTerm> terms, std::size_t n) {
  std::sort(terms.begin(), terms.end(), TermLess{n});
  return terms;
}

bool cover_less(const std::vector<SopTerm>& a, const std::vector<SopTerm>& b, std::size_t n) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), TermLess{n});
}

int total_literals(const std::vector<SopTerm>& terms) {
  int sum = 0;
  for (const SopTerm& t : terms) sum += t.literal_count();
  return sum;
}

// Quine-McCluskey: repeatedly merge cube pairs differing in one cared bit.
// Cubes that never merge are the prime implicants.
std::vector<SopTerm> prime_implicants(const std::vector<std::uint32_t>& minterms, std::size_t n) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> current;
  std::uint32_t full = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  for (std::uint32_t m : minterms) current.insert({full, m});

  std::vector<SopTerm> primes;
  while (!current.empty()) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> next;
    std::set<std::pair<std::uint32_t, std::uint32_t>> merged;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cubes(current.begin(), current.end());
    for (std::size_t i = 0; i < cubes.size(); ++i) {
      for (std::size_t j = i + 1; j < cubes.size(); ++j) {
        if (cubes[i].first != cubes[j].first) continue;
        std::uint32_t diff = cubes[i].second ^ cubes[j].second;
        if (std::popcount(diff) != 1) continue;
        next.insert({cubes[i].first & ~diff, cubes[i].second & ~diff});
        merged.insert(cubes[i]);
        merged.insert(cubes[j]);
      }
    }
    for (const auto& c : cubes)
      if (!merged.count(c)) primes.push_back({c.first, c.second});
    current = std::move(next);
  }
  return primes;
}

// Petrick's method with absorption. Each product is a sorted set of prime
// indices; X + XY = X keeps the expansion tame at the sizes we handle.
std::vector<std::vector<int>> petrick(const std::vector<std::vector<int>>& columns) {
  std::vector<std::vector<int>> sum{{}};
  for (const std::vector<int>& col : columns) {
    std::vector<std::vector<int>> expanded;
    for (const std::vector<int>& prod : sum) {
      for (int p : col) {
        std::vector<int> item = prod;
        if (!std::binary_search(item.begin(), item.end(), p))
          item.insert(std::upper_bound(item.begin(), item.end(), p), p);
        expanded.push_back(std::move(item));
      }
    }
    std::sort(expanded.begin(), expanded.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size() || (a.size() == b.size() && a < b); });
    std::vector<std::vector<int>> absorbed;
    for (const auto& cand : expanded) {
      bool redundant = false;
      for (const auto& kept : absorbed) {
        if (std::includes(cand.begin(), cand.end(), kept.begin(), kept.end())) {
          redundant = true;
          break;
        }
      }
      if (!redundant) absorbed.push_back(cand);
    }
    sum = std::move(absorbed);
  }
  return sum;
}

}  // namespace

SopFunction minimize(const CareFunction& f) {
  std::size_t n = f.var_count();
  if (n > 16) throw std::invalid_argument("minimize: more than 16 variables");
  std::size_t size = std::size_t{1} << n;
  if (f.values.size() != size)
    throw std::invalid_argument("minimize: truth table size does not match variable count");

  std::vector<std::uint32_t> on, dc;
  for (std::uint32_t i = 0; i < size; ++i) {
    if (f.values[i] == TruthValue::T) on.push_back(i);
    else if (f.values[i] == TruthValue::DC) dc.push_back(i);
  }

  SopFunction out;
  out.vars = f.vars;
  if (on.empty()) return out;  // constant 0; an all-dc table lands here too
  if (on.size() + dc.size() == size) {
    out.terms.push_back({0, 0});  // no off-cell at all: constant 1
    return out;
  }

  std::vector<std::uint32_t> cover_seed = on;
  cover_seed.insert(cover_seed.end(), dc.begin(), dc.end());
  std::vector<SopTerm> primes = sorted_terms(prime_implicants(cover_seed, n), n);

  // Chart: which primes cover each on-minterm. Essential primes are part of
  // every cover, so extracting them first keeps Petrick small without
  // giving up exactness.
  std::vector<bool> chosen(primes.size(), false);
  std::vector<std::uint32_t> remaining = on;
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (std::uint32_t m : remaining) {
      int only = -1;
      int count = 0;
      for (std::size_t p = 0; p < primes.size(); ++p) {
        if (primes[p].covers(m)) {
          ++count;
          only = static_cast<int>(p);
        }
      }
      if (count == 1 && !chosen[only]) {
        chosen[only] = true;
        progressed = true;
      }
    }
    if (progressed) {
      std::vector<std::uint32_t> still;
      for (std::uint32_t m : remaining) {
        bool covered = false;
        for (std::size_t p = 0; p < primes.size() && !covered; ++p)
          if (chosen[p] && primes[p].covers(m)) covered = true;
        if (!covered) still.push_back(m);
      }
      remaining = std::move(still);
    }
  }

  std::vector<SopTerm> essentials;
  for (std::size_t p = 0; p < primes.size(); ++p)
    if (chosen[p]) essentials.push_back(primes[p]);

  std::vector<std::vector<int>> columns;
  for (std::uint32_t m : remaining) {
    std::vector<int> col;
    for (std::size_t p = 0; p < primes.size(); ++p)
      if (!chosen[p] && primes[p].covers(m)) col.push_back(static_cast<int>(p));
    columns.push_back(std::move(col));
  }

  std::vector<SopTerm> best;
  bool have_best = false;
  for (const std::vector<int>& prod : petrick(columns)) {
    std::vector<SopTerm> cand = essentials;
    for (int p : prod) cand.push_back(primes[p]);
    cand = sorted_terms(std::move(cand), n);
    if (!have_best) {
      best = std::move(cand);
      have_best = true;
      continue;
    }
    if (cand.size() != best.size()) {
      if (cand.size() < best.size()) best = std::move(cand);
      continue;
    }
    int cl = total_literals(cand), bl = total_literals(best);
    if (cl != bl) {
      if (cl < bl) best = std::move(cand);
      continue;
    }
    if (cover_less(cand, best, n)) best = std::move(cand);
  }

  out.terms = std::move(best);
  return out;
}

int evaluate_at(const SopFunction& f, std::uint32_t assignment) {
  for (const SopTerm& t : f.terms)
    if (t.covers(assignment)) return 1;
  return 0;
}

int evaluate(const SopFunction& f, const Assignment& a) {
  std::uint32_t idx = 0;
  std::size_t n = f.vars.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto it = a.find(f.vars[i]);
    if (it == a.end())
      throw std::invalid_argument("evaluate: missing variable " + f.vars[i]);
    if (it->second) idx |= std::uint32_t{1} << (n - 1 - i);
  }
  return evaluate_at(f, idx);
}

namespace {

Assignment unpack(std::uint32_t idx, const std::vector<std::string>& vars) {
  Assignment a;
  std::size_t n = vars.size();
  for (std::size_t i = 0; i < n; ++i)
    a[vars[i]] = (idx >> (n - 1 - i)) & 1u;
  return a;
}

void require_same_vars(const SopFunction& f, const SopFunction& g, const CareFunction& care) {
  if (f.vars != g.vars || f.vars != care.vars)
    throw std::invalid_argument("equivalence check: variable order mismatch");
}

}  // namespace

std::optional<Assignment> equivalent_on(const SopFunction& f, const SopFunction& g,
                                        const CareFunction& care) {
  require_same_vars(f, g, care);
  std::size_t size = std::size_t{1} << care.var_count();
  for (std::uint32_t i = 0; i < size; ++i) {
    if (care.values[i] == TruthValue::DC) continue;
    if (evaluate_at(f, i) != evaluate_at(g, i)) return unpack(i, care.vars);
  }
  return std::nullopt;
}

std::vector<Assignment> counterexamples(const SopFunction& f, const SopFunction& g,
                                        const CareFunction& care) {
  require_same_vars(f, g, care);
  std::vector<Assignment> out;
  std::size_t size = std::size_t{1} << care.var_count();
  for (std::uint32_t i = 0; i < size; ++i) {
    if (care.values[i] == TruthValue::DC) continue;
    if (evaluate_at(f, i) != evaluate_at(g, i)) out.push_back(unpack(i, care.vars));
  }
  return out;
}

EquationSet synthesize(const ExcitationMatrix& m) {
  EquationSet eqs;
  eqs.vars = m.variables;

  auto minimize_checked = [](const std::string& name, const CareFunction& column) {
    SopFunction fn = minimize(column);
    SopFunction table;  // the raw column as one term per on-cell
    table.vars = column.vars;
    std::size_t size = std::size_t{1} << column.var_count();
    std::uint32_t full = (std::uint32_t{1} << column.var_count()) - 1;
    for (std::uint32_t i = 0; i < size; ++i)
      if (column.values[i] == TruthValue::T) table.terms.push_back({full, i});
    if (equivalent_on(fn, table, column))
      throw std::logic_error("synthesize: minimized " + name + " diverges from its column");
    return fn;
  };

  for (std::size_t i = 0; i < m.excitations.size(); ++i)
    eqs.excitations.push_back({m.excitation_names[i], m.state_bits[i],
                               minimize_checked(m.excitation_names[i], m.excitations[i])});
  for (std::size_t j = 0; j < m.outputs.size(); ++j)
    eqs.outputs.push_back({m.output_names[j], m.output_names[j],
                           minimize_checked(m.output_names[j], m.outputs[j])});
  return eqs;
}

std::string render_term(const SopTerm& t, const std::vector<std::string>& vars) {
  if (t.mask == 0) return "1";
  std::string out;
  std::size_t n = vars.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t bit = std::uint32_t{1} << (n - 1 - i);
    if (!(t.mask & bit)) continue;
    if (!out.empty()) out += " & ";
    if (!(t.value & bit)) out += "!";
    out += vars[i];
  }
  return out;
}

std::string render_function(const SopFunction& f) {
  if (f.is_const_zero()) return "0";
  if (f.is_const_one()) return "1";
  std::string out;
  for (const SopTerm& t : f.terms) {
    if (!out.empty()) out += " + ";
    out += render_term(t, f.vars);
  }
  return out;
}

}  // namespace aswb
