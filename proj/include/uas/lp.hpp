#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uas/access_structure.hpp"
#include "uas/rational.hpp"

namespace uas {

// Caps: unreduced models up to 14 participants; the exact solver
// refuses models beyond 5000 variables after reduction.
inline constexpr int kLpParticipantCap = 14;
inline constexpr int kLpExactVarCap = 5000;

enum class RowFamily : std::uint8_t {
  kObjectiveLink,  // t - f({p}) >= 0
  kTopMonotone,    // f(P) - f(P\{p}) >= [P\{p} independent]
  kSubmodular,     // f(Ax) + f(Ay) - f(Axy) - f(A) >= strictness
};

struct LPRow {
  std::vector<std::pair<std::int32_t, Rational>> terms;  // (variable id, coefficient)
  Rational rhs;  // every row reads  terms >= rhs
  RowFamily family = RowFamily::kSubmodular;
};

// Entropy-method LP in substituted form: the secret element is
// eliminated through f(As) = f(A) + [A independent], which moves the
// qualified/independent equalities into the right-hand sides of the
// elemental rows. Variable 0 is the bound t; variable i >= 1 is f of
// the i-th nonempty subset (or subset orbit once reduced); f(empty)
// is pinned to zero and never appears.
struct LPModel {
  std::string name;
  int participants = 0;
  bool reduced = false;
  bool structure_rows = true;
  std::vector<std::uint32_t> var_subset;  // var id-1 -> subset mask (orbit rep if reduced)
  std::vector<std::uint32_t> orbit_size;  // parallel to var_subset; all 1 when unreduced
  std::vector<LPRow> rows;
  std::vector<bool> independent;  // per subset mask over the unreduced domain

  int var_count() const { return 1 + static_cast<int>(var_subset.size()); }
};

// Qualification of every subset by a monotone closure sweep (2^m bits).
std::vector<bool> qualification_table(const AccessStructure& structure);

// structure_rows=false builds the bare polymatroid cone (no
// qualification data), whose optimum is zero.
LPModel entropy_lp(const AccessStructure& structure, bool structure_rows = true);

// Participant permutations preserving the structure: the full
// coordinate-permutation action for normalized universal structures,
// otherwise just the identity.
std::vector<std::vector<int>> structure_symmetries(const AccessStructure& structure);

// Collapses variables to orbit representatives under the structure
// symmetries and deduplicates rows; the optimum is unchanged.
LPModel symmetry_reduce(const LPModel& model, const AccessStructure& structure);

struct LPSolution {
  Rational optimum;
  std::vector<Rational> x;  // per variable, x[0] = t
  std::vector<Rational> y;  // per row, nonnegative dual certificate
};

// Exact optimum with a dual certificate. Large models go through a
// float cut-generation pass to find the active rows, then an exact
// simplex on that master plus a full exact feasibility sweep.
LPSolution solve_exact(const LPModel& model);

// Independent certificate check: primal feasibility of x on every row,
// y >= 0, sum of y-weighted rows equal to the objective row, and both
// objective values equal to `optimum`. Throws ValidationError.
void validate_lp_solution(const LPModel& model, const LPSolution& solution);

// Writes an LP-format interchange file. Unreduced models are rendered
// in full over variables f_A for every subset A of participants plus
// secret, with the elemental and secret-element equality families
// spelled out; reduced models are written in substituted orbit form.
void export_lp(const LPModel& model, const std::string& path);

// Loader for externally solved models.
struct ParsedRow {
  std::string name;
  std::map<std::string, double> terms;
  int sense = 1;  // 1: >=, 0: =, -1: <=
  double rhs = 0.0;
};
struct ParsedLP {
  bool minimize = true;
  std::map<std::string, double> objective;
  std::vector<ParsedRow> rows;
  std::vector<std::string> variables;  // declared or referenced
};

ParsedLP parse_lp_file(const std::string& path);

// Checks an externally produced point against every parsed constraint
// at the given tolerance and returns its objective value.
double validate_external_solution(const ParsedLP& lp,
                                  const std::map<std::string, double>& values,
                                  double tolerance = 1e-6);

}  // namespace uas
