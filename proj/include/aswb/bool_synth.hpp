#pragma once
// Incompletely specified boolean functions and exact two-level minimization:
// Quine-McCluskey prime generation followed by Petrick cover selection.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aswb {

enum class TruthValue : std::uint8_t { F = 0, T = 1, DC = 2 };

// Total truth table over 2^n assignments with don't-care entries.
// Assignment index bit layout: vars[0] is the most significant bit, so
// ascending index order is ascending lexicographic order over the
// variable values.
struct CareFunction {
  std::vector<std::string> vars;
  std::vector<TruthValue> values;  // size 1 << vars.size()

  static CareFunction all_dc(std::vector<std::string> vars);
  std::size_t var_count() const { return vars.size(); }
};

// One product term. Variable i participates iff bit (n-1-i) of mask is set;
// value holds the required polarity on exactly those bits. mask == 0 is the
// empty product, i.e. constant 1.
struct SopTerm {
  std::uint32_t mask = 0;
  std::uint32_t value = 0;

  bool covers(std::uint32_t assignment) const { return (assignment & mask) == value; }
  int literal_count() const;
  bool operator==(const SopTerm&) const = default;
};

// Sum of products over a shared variable order. No terms means constant 0;
// a single empty term means constant 1.
struct SopFunction {
  std::vector<std::string> vars;
  std::vector<SopTerm> terms;

  bool is_const_zero() const { return terms.empty(); }
  bool is_const_one() const { return terms.size() == 1 && terms[0].mask == 0; }
  bool operator==(const SopFunction&) const = default;
};

using Assignment = std::map<std::string, int>;

// Exact minimal cover: fewest terms, then fewest literals, among covers
// built from prime implicants; remaining ties broken by a fixed term order
// so the result is deterministic. An all-dc input minimizes to constant 0.
// At most 16 variables.
SopFunction minimize(const CareFunction& f);

// Binary evaluation. Throws std::invalid_argument when the assignment
// misses a variable of f.
int evaluate(const SopFunction& f, const Assignment& a);

int evaluate_at(const SopFunction& f, std::uint32_t assignment);

// First assignment (ascending index order) inside the care set where f and
// g disagree, or nullopt when they agree everywhere the care set is
// specified. All three must share the variable order.
std::optional<Assignment> equivalent_on(const SopFunction& f, const SopFunction& g,
                                        const CareFunction& care);

// Every disagreeing care assignment, in ascending index order.
std::vector<Assignment> counterexamples(const SopFunction& f, const SopFunction& g,
                                        const CareFunction& care);

// One synthesized equation: `name` is the printable function name, `target`
// the net it drives once compiled.
struct NamedFunction {
  std::string name;
  std::string target;
  SopFunction fn;
};

struct EquationSet {
  std::vector<std::string> vars;
  std::vector<NamedFunction> excitations;
  std::vector<NamedFunction> outputs;
};

struct ExcitationMatrix;  // flow_table.hpp

// Minimizes every excitation and output column of the matrix. Each result
// is re-checked against its source column before being returned.
EquationSet synthesize(const ExcitationMatrix& m);

// Rendering used by the equation file format: literals in variable order,
// "!" for negation, " & " inside a term, " + " between terms, bare "0"/"1"
// for constants.
std::string render_term(const SopTerm& t, const std::vector<std::string>& vars);
std::string render_function(const SopFunction& f);

}  // namespace aswb
