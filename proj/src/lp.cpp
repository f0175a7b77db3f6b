#include "uas/lp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "uas/errors.hpp"
#include "uas/simplex.hpp"

namespace uas {

std::vector<bool> qualification_table(const AccessStructure& structure) {
  int m = structure.participant_count();
  if (m > kLpParticipantCap + 10) throw CapError("qualification_table: too many participants");
  std::size_t total = std::size_t{1} << m;
  std::vector<bool> qual(total, false);
  for (Subset s : structure.minimal_sets()) qual[static_cast<std::size_t>(s)] = true;
  // Monotone closure: a set is qualified when any one-element-removed
  // subset already is, or it is itself minimal.
  for (std::size_t mask = 1; mask < total; ++mask) {
    if (qual[mask]) continue;
    for (int b = 0; b < m; ++b)
      if ((mask >> b) & 1) {
        if (qual[mask ^ (std::size_t{1} << b)]) {
          qual[mask] = true;
          break;
        }
      }
  }
  return qual;
}

LPModel entropy_lp(const AccessStructure& structure, bool structure_rows) {
  int m = structure.participant_count();
  if (m > kLpParticipantCap)
    throw CapError("entropy_lp: participant count " + std::to_string(m) + " exceeds cap " +
                   std::to_string(kLpParticipantCap));
  std::uint32_t total = std::uint32_t{1} << m;
  std::uint32_t full = total - 1;

  LPModel model;
  model.participants = m;
  model.structure_rows = structure_rows;
  model.var_subset.resize(full);
  model.orbit_size.assign(full, 1);
  for (std::uint32_t a = 1; a <= full; ++a) model.var_subset[a - 1] = a;

  std::vector<bool> qual = qualification_table(structure);
  model.independent.resize(total);
  for (std::uint32_t a = 0; a < total; ++a) model.independent[a] = !qual[a];
  auto indep = [&](std::uint32_t a) -> bool { return structure_rows && model.independent[a]; };

  // t - f({p}) >= 0
  for (int p = 0; p < m; ++p) {
    LPRow row;
    row.family = RowFamily::kObjectiveLink;
    row.terms = {{0, Rational(1)}, {static_cast<std::int32_t>(1u << p), Rational(-1)}};
    row.rhs = Rational(0);
    model.rows.push_back(std::move(row));
  }
  // f(P) - f(P \ p) >= [P \ p independent]
  for (int p = 0; p < m; ++p) {
    LPRow row;
    row.family = RowFamily::kTopMonotone;
    std::uint32_t rest = full ^ (1u << p);
    row.terms.emplace_back(static_cast<std::int32_t>(full), Rational(1));
    if (rest != 0) row.terms.emplace_back(static_cast<std::int32_t>(rest), Rational(-1));
    row.rhs = Rational(indep(rest) ? 1 : 0);
    model.rows.push_back(std::move(row));
  }
  // f(Ax) + f(Ay) - f(Axy) - f(A) >= strictness, where the right side
  // is 1 exactly when A is independent and both Ax and Ay qualified
  // (the secret-element equalities folded through the substitution).
  for (std::uint32_t a = 0; a < total; ++a) {
    for (int x = 0; x < m; ++x) {
      if ((a >> x) & 1) continue;
      for (int y = x + 1; y < m; ++y) {
        if ((a >> y) & 1) continue;
        std::uint32_t ax = a | (1u << x);
        std::uint32_t ay = a | (1u << y);
        std::uint32_t axy = ax | (1u << y);
        LPRow row;
        row.family = RowFamily::kSubmodular;
        row.terms.emplace_back(static_cast<std::int32_t>(ax), Rational(1));
        row.terms.emplace_back(static_cast<std::int32_t>(ay), Rational(1));
        row.terms.emplace_back(static_cast<std::int32_t>(axy), Rational(-1));
        if (a != 0) row.terms.emplace_back(static_cast<std::int32_t>(a), Rational(-1));
        bool strict = indep(a) && !indep(ax) && !indep(ay);
        row.rhs = Rational(strict ? 1 : 0);
        model.rows.push_back(std::move(row));
      }
    }
  }
  return model;
}

std::vector<std::vector<int>> structure_symmetries(const AccessStructure& structure) {
  std::vector<std::vector<int>> perms;
  int m = structure.participant_count();
  std::vector<int> identity(m);
  for (int p = 0; p < m; ++p) identity[p] = p;

  int n = structure.minimal_set_count();
  CellCensus census = cell_census(structure);
  if (!census.is_normalized() || n > 8) {
    perms.push_back(identity);
    return perms;
  }
  // Normalized universal structure: every coordinate permutation of the
  // patterns is an automorphism.
  std::vector<int> pattern_of(m);
  std::vector<int> participant_of(std::size_t{1} << n, -1);
  for (int p = 0; p < m; ++p) {
    Pattern eps = participant_pattern(structure, p);
    pattern_of[p] = static_cast<int>(eps);
    participant_of[eps] = p;
  }
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = i;
  do {
    std::vector<int> perm(m);
    for (int p = 0; p < m; ++p) {
      int eps = pattern_of[p];
      int image = 0;
      for (int i = 0; i < n; ++i)
        if ((eps >> i) & 1) image |= 1 << sigma[i];
      perm[p] = participant_of[image];
    }
    perms.push_back(std::move(perm));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return perms;
}

namespace {

std::uint32_t permute_mask(std::uint32_t mask, const std::vector<int>& perm) {
  std::uint32_t out = 0;
  while (mask != 0) {
    int b = __builtin_ctz(mask);
    mask &= mask - 1;
    out |= 1u << perm[static_cast<std::size_t>(b)];
  }
  return out;
}

bool mask_canonical_less(std::uint32_t a, std::uint32_t b) {
  int ca = __builtin_popcount(a), cb = __builtin_popcount(b);
  if (ca != cb) return ca < cb;
  return a < b;
}

std::string row_key(const std::vector<std::pair<std::int32_t, Rational>>& terms) {
  std::string key;
  for (const auto& [v, c] : terms) {
    key += std::to_string(v);
    key += ':';
    key += c.get_str();
    key += ';';
  }
  return key;
}

}  // namespace

LPModel symmetry_reduce(const LPModel& model, const AccessStructure& structure) {
  if (model.reduced) throw ValidationError("symmetry_reduce: model already reduced");
  std::vector<std::vector<int>> perms = structure_symmetries(structure);
  if (perms.size() <= 1) return model;

  int m = model.participants;
  std::uint32_t total = std::uint32_t{1} << m;
  std::vector<std::uint32_t> rep(total, 0);
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    std::uint32_t best = mask;
    for (const auto& perm : perms) best = std::min(best, permute_mask(mask, perm));
    rep[mask] = best;
  }

  std::vector<std::uint32_t> reps;
  std::vector<std::uint32_t> orbit_size_by_rep(total, 0);
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    ++orbit_size_by_rep[rep[mask]];
    if (rep[mask] == mask) reps.push_back(mask);
  }
  std::sort(reps.begin(), reps.end(), mask_canonical_less);
  std::vector<std::int32_t> var_of_rep(total, -1);
  LPModel out;
  out.name = model.name;
  out.participants = m;
  out.reduced = true;
  out.structure_rows = model.structure_rows;
  out.independent = model.independent;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    var_of_rep[reps[i]] = static_cast<std::int32_t>(i) + 1;
    out.var_subset.push_back(reps[i]);
    out.orbit_size.push_back(orbit_size_by_rep[reps[i]]);
  }

  std::unordered_map<std::string, std::size_t> seen;
  for (const LPRow& row : model.rows) {
    std::unordered_map<std::int32_t, Rational> acc;
    for (const auto& [v, c] : row.terms) {
      std::int32_t nv = v == 0 ? 0
                               : var_of_rep[rep[model.var_subset[static_cast<std::size_t>(v) - 1]]];
      auto [it, inserted] = acc.emplace(nv, c);
      if (!inserted) it->second += c;
    }
    LPRow nrow;
    nrow.family = row.family;
    nrow.rhs = row.rhs;
    for (const auto& [v, c] : acc)
      if (sgn(c) != 0) nrow.terms.emplace_back(v, c);
    std::sort(nrow.terms.begin(), nrow.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string key = row_key(nrow.terms);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), out.rows.size());
      out.rows.push_back(std::move(nrow));
    } else if (nrow.rhs > out.rows[it->second].rhs) {
      // identical left side: only the largest right side binds
      out.rows[it->second].rhs = nrow.rhs;
    }
  }
  return out;
}

namespace {

constexpr std::size_t kDirectRowThreshold = 4000;

// Dual encoding of  min c.x  s.t. rows.x >= rhs, x >= 0  over a subset
// of rows:  max rhs.y  s.t.  A^T y + s = c,  y, s >= 0.
template <typename T>
StandardLP<T> dual_encode(const LPModel& model, const std::vector<std::size_t>& master) {
  int nvars = model.var_count();
  StandardLP<T> lp;
  lp.rows = nvars;
  lp.cols = static_cast<int>(master.size()) + nvars;
  lp.coeff.assign(lp.rows, std::vector<T>(lp.cols, T(0)));
  lp.rhs.assign(lp.rows, T(0));
  lp.objective.assign(lp.cols, T(0));
  lp.rhs[0] = T(1);  // objective of the original: minimize t (variable 0)
  for (std::size_t k = 0; k < master.size(); ++k) {
    const LPRow& row = model.rows[master[k]];
    for (const auto& [v, c] : row.terms) {
      if constexpr (std::is_same_v<T, double>)
        lp.coeff[v][k] = c.get_d();
      else
        lp.coeff[v][k] = c;
    }
    if constexpr (std::is_same_v<T, double>)
      lp.objective[k] = row.rhs.get_d();
    else
      lp.objective[k] = row.rhs;
  }
  for (int v = 0; v < nvars; ++v) lp.coeff[v][master.size() + v] = T(1);  // slack s_v
  return lp;
}

struct MasterSolve {
  std::vector<Rational> x;
  std::vector<Rational> y;  // per master row
  Rational optimum;
};

MasterSolve solve_master_exact(const LPModel& model, const std::vector<std::size_t>& master) {
  StandardLP<mpq_class> lp = dual_encode<mpq_class>(model, master);
  StandardSolution<mpq_class> sol = solve_standard(lp);
  if (sol.status == SolveStatus::kInfeasible)
    throw ValidationError("solve_exact: dual infeasible (modeling bug)");
  if (sol.status == SolveStatus::kUnbounded)
    throw ValidationError("solve_exact: primal infeasible (modeling bug)");
  if (sol.status != SolveStatus::kOptimal)
    throw ValidationError("solve_exact: iteration limit reached");
  MasterSolve out;
  out.x.assign(sol.row_duals.begin(), sol.row_duals.end());
  out.y.assign(sol.z.begin(), sol.z.begin() + static_cast<std::ptrdiff_t>(master.size()));
  out.optimum = sol.objective;
  return out;
}

struct FloatSolve {
  std::vector<double> x;   // primal point of the original model
  std::vector<int> basis;  // basic column per encoding row
};

bool lp_verbose();

std::optional<FloatSolve> solve_master_float(const LPModel& model,
                                             const std::vector<std::size_t>& master) {
  StandardLP<double> lp = dual_encode<double>(model, master);
  // The right-hand side is one unit vector, which makes the float
  // simplex crawl through degenerate pivots. A deterministic tiny
  // perturbation breaks the ties; the basis is certified exactly
  // against the unperturbed model afterwards.
  for (int v = 1; v < lp.rows; ++v)
    lp.rhs[v] += 1e-8 * (1.0 + static_cast<double>((v * 2654435761u) & 63u));
  StandardSolution<double> sol = solve_standard(lp, 500'000);
  if (sol.status != SolveStatus::kOptimal) {
    if (lp_verbose())
      std::fprintf(stderr, "lp: float solve status=%d on %zu rows\n",
                   static_cast<int>(sol.status), master.size());
    return std::nullopt;
  }
  return FloatSolve{std::move(sol.row_duals), std::move(sol.basis)};
}

Rational row_value(const LPRow& row, const std::vector<Rational>& x) {
  Rational v(0);
  for (const auto& [var, c] : row.terms) v += c * x[static_cast<std::size_t>(var)];
  return v;
}

bool lp_verbose() {
  static const bool v = std::getenv("UAS_LP_VERBOSE") != nullptr;
  return v;
}

// Exact Gauss-Jordan solve of a square sparse-column system; columns
// are processed sparsest-first to limit fill-in. Returns the solution
// indexed by column position, or nullopt on a singular basis.
std::optional<std::vector<Rational>> solve_square(
    int n, const std::vector<std::vector<std::pair<int, Rational>>>& cols,
    const std::vector<Rational>& rhs_in) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = k;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return cols[static_cast<std::size_t>(a)].size() < cols[static_cast<std::size_t>(b)].size();
  });

  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n),
                                       std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int k = 0; k < n; ++k)
    for (const auto& [r, v] : cols[static_cast<std::size_t>(k)])
      m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = v;
  std::vector<Rational> rhs = rhs_in;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<int> row_of_col(static_cast<std::size_t>(n), -1);
  std::vector<int> nz;

  for (int k : order) {
    int pivot_row = -1;
    for (int r = 0; r < n; ++r)
      if (!used[static_cast<std::size_t>(r)] &&
          sgn(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)]) != 0) {
        pivot_row = r;
        break;
      }
    if (pivot_row < 0) return std::nullopt;
    auto& prow = m[static_cast<std::size_t>(pivot_row)];
    const Rational& piv = prow[static_cast<std::size_t>(k)];
    if (!(piv == 1)) {
      Rational inv = 1 / piv;
      for (int c = 0; c < n; ++c)
        if (sgn(prow[static_cast<std::size_t>(c)]) != 0) prow[static_cast<std::size_t>(c)] *= inv;
      rhs[static_cast<std::size_t>(pivot_row)] *= inv;
      prow[static_cast<std::size_t>(k)] = 1;
    }
    nz.clear();
    for (int c = 0; c < n; ++c)
      if (sgn(prow[static_cast<std::size_t>(c)]) != 0) nz.push_back(c);
    bool rhs_nz = sgn(rhs[static_cast<std::size_t>(pivot_row)]) != 0;
    for (int r = 0; r < n; ++r) {
      if (r == pivot_row) continue;
      Rational factor = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
      if (sgn(factor) == 0) continue;
      auto& row = m[static_cast<std::size_t>(r)];
      for (int c : nz) row[static_cast<std::size_t>(c)] -= factor * prow[static_cast<std::size_t>(c)];
      row[static_cast<std::size_t>(k)] = 0;
      if (rhs_nz) rhs[static_cast<std::size_t>(r)] -= factor * rhs[static_cast<std::size_t>(pivot_row)];
    }
    used[static_cast<std::size_t>(pivot_row)] = true;
    row_of_col[static_cast<std::size_t>(k)] = pivot_row;
  }
  std::vector<Rational> x(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = rhs[static_cast<std::size_t>(row_of_col[static_cast<std::size_t>(k)])];
  return x;
}

// Exact certification of a float-optimal basis: one sparse solve for
// the certificate values, one for the primal point, then the full
// validator. No exact pivoting involved.
std::optional<LPSolution> certify_from_basis(const LPModel& model,
                                             const std::vector<std::size_t>& master,
                                             const std::vector<int>& basis) {
  const int nvars = model.var_count();
  if (static_cast<int>(basis.size()) != nvars) return std::nullopt;
  const int width = static_cast<int>(master.size()) + nvars;
  for (int col : basis)
    if (col >= width) return std::nullopt;  // artificial stayed basic

  // Basis columns of the encoding  [A^T | I].
  std::vector<std::vector<std::pair<int, Rational>>> cols(static_cast<std::size_t>(nvars));
  std::vector<Rational> g_basis(static_cast<std::size_t>(nvars), Rational(0));
  for (int i = 0; i < nvars; ++i) {
    int col = basis[static_cast<std::size_t>(i)];
    if (col < static_cast<int>(master.size())) {
      const LPRow& row = model.rows[master[static_cast<std::size_t>(col)]];
      for (const auto& [v, c] : row.terms) cols[static_cast<std::size_t>(i)].emplace_back(v, c);
      g_basis[static_cast<std::size_t>(i)] = row.rhs;
    } else {
      cols[static_cast<std::size_t>(i)].emplace_back(col - static_cast<int>(master.size()),
                                                     Rational(1));
    }
  }

  std::vector<Rational> d(static_cast<std::size_t>(nvars), Rational(0));
  d[0] = 1;  // objective of the original model: minimize t
  auto z_basic = solve_square(nvars, cols, d);
  if (!z_basic) return std::nullopt;

  // pi solves B^T pi = g_B: transpose the basis columns.
  std::vector<std::vector<std::pair<int, Rational>>> tcols(static_cast<std::size_t>(nvars));
  for (int i = 0; i < nvars; ++i)
    for (const auto& [r, v] : cols[static_cast<std::size_t>(i)])
      tcols[static_cast<std::size_t>(r)].emplace_back(i, v);
  auto pi = solve_square(nvars, tcols, g_basis);
  if (!pi) return std::nullopt;

  LPSolution sol;
  sol.x = std::move(*pi);
  sol.optimum = sol.x[0];
  sol.y.assign(model.rows.size(), Rational(0));
  for (int i = 0; i < nvars; ++i) {
    int col = basis[static_cast<std::size_t>(i)];
    if (col < static_cast<int>(master.size()))
      sol.y[master[static_cast<std::size_t>(col)]] = (*z_basic)[static_cast<std::size_t>(i)];
  }
  try {
    validate_lp_solution(model, sol);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
  return sol;
}

}  // namespace

LPSolution solve_exact(const LPModel& model) {
  if (model.var_count() > kLpExactVarCap)
    throw CapError("solve_exact: variable count " + std::to_string(model.var_count()) +
                   " exceeds cap " + std::to_string(kLpExactVarCap));

  std::vector<std::size_t> master;
  std::vector<bool> in_master(model.rows.size(), false);
  auto add_row = [&](std::size_t r) {
    if (!in_master[r]) {
      in_master[r] = true;
      master.push_back(r);
    }
  };

  if (model.rows.size() <= kDirectRowThreshold) {
    for (std::size_t r = 0; r < model.rows.size(); ++r) add_row(r);
  } else {
    // Seed: linking and monotonicity rows, the strict submodular rows,
    // and the small-support submodular rows.
    for (std::size_t r = 0; r < model.rows.size(); ++r) {
      const LPRow& row = model.rows[r];
      if (row.family != RowFamily::kSubmodular || sgn(row.rhs) != 0) {
        add_row(r);
        continue;
      }
      int max_pop = 0;
      for (const auto& [v, c] : row.terms)
        if (v > 0)
          max_pop = std::max(
              max_pop, __builtin_popcount(model.var_subset[static_cast<std::size_t>(v) - 1]));
      if (max_pop <= 3) add_row(r);
    }
    // Float cut loop to locate the active set, then certify the float
    // basis exactly: two sparse linear solves plus the validator.
    std::vector<std::size_t> seed = master;
    std::optional<FloatSolve> last;
    std::vector<std::size_t> last_master;
    for (int round = 0; round < 80; ++round) {
      std::optional<FloatSolve> fs = solve_master_float(model, master);
      if (!fs) {
        if (lp_verbose()) std::fprintf(stderr, "lp: float round %d failed\n", round);
        break;
      }
      std::vector<std::pair<double, std::size_t>> violated;
      for (std::size_t r = 0; r < model.rows.size(); ++r) {
        if (in_master[r]) continue;
        const LPRow& row = model.rows[r];
        double v = -row.rhs.get_d();
        for (const auto& [var, c] : row.terms)
          v += c.get_d() * fs->x[static_cast<std::size_t>(var)];
        if (v < -1e-6) violated.emplace_back(v, r);  // below perturbation noise
      }
      last = std::move(fs);
      last_master = master;
      if (lp_verbose())
        std::fprintf(stderr, "lp: float round %d master=%zu violations=%zu\n", round,
                     master.size(), violated.size());
      if (violated.empty()) break;
      std::sort(violated.begin(), violated.end());
      std::size_t take = std::min<std::size_t>(violated.size(), 1500);
      for (std::size_t i = 0; i < take; ++i) add_row(violated[i].second);
    }
    if (last) {
      std::optional<LPSolution> certified = certify_from_basis(model, last_master, last->basis);
      if (certified) {
        if (lp_verbose()) std::fprintf(stderr, "lp: float basis certified exactly\n");
        return *certified;
      }
      if (lp_verbose()) std::fprintf(stderr, "lp: float basis rejected, exact fallback\n");
    }
    // Exact fallback restarts from the seed plus the rows closest to
    // tight at the float point, keeping the exact tableau small.
    if (last) {
      master.clear();
      in_master.assign(model.rows.size(), false);
      for (std::size_t r : seed) add_row(r);
      std::vector<std::pair<double, std::size_t>> slack;
      for (std::size_t r = 0; r < model.rows.size(); ++r) {
        if (in_master[r]) continue;
        const LPRow& row = model.rows[r];
        double v = -row.rhs.get_d();
        for (const auto& [var, c] : row.terms)
          v += c.get_d() * last->x[static_cast<std::size_t>(var)];
        slack.emplace_back(v, r);
      }
      std::sort(slack.begin(), slack.end());
      std::size_t cap = master.size() + 2500;
      for (const auto& [v, r] : slack) {
        if (master.size() >= cap || v > 1e-6) break;
        add_row(r);
      }
    }
  }

  // Exact master solves with a full exact separation sweep.
  LPSolution solution;
  for (int round = 0;; ++round) {
    if (round > 200) throw ValidationError("solve_exact: separation did not converge");
    if (lp_verbose())
      std::fprintf(stderr, "lp: exact round %d master=%zu\n", round, master.size());
    MasterSolve ms = solve_master_exact(model, master);
    std::vector<std::size_t> violated;
    for (std::size_t r = 0; r < model.rows.size(); ++r) {
      if (in_master[r]) continue;
      if (row_value(model.rows[r], ms.x) < model.rows[r].rhs) violated.push_back(r);
    }
    if (violated.empty()) {
      solution.optimum = ms.optimum;
      solution.x = std::move(ms.x);
      solution.y.assign(model.rows.size(), Rational(0));
      for (std::size_t k = 0; k < master.size(); ++k) solution.y[master[k]] = ms.y[k];
      break;
    }
    std::size_t take = std::min<std::size_t>(violated.size(), 500);
    for (std::size_t i = 0; i < take; ++i) add_row(violated[i]);
  }
  validate_lp_solution(model, solution);
  return solution;
}

void validate_lp_solution(const LPModel& model, const LPSolution& solution) {
  int nvars = model.var_count();
  if (static_cast<int>(solution.x.size()) != nvars)
    throw ValidationError("lp certificate: wrong primal size");
  if (solution.y.size() != model.rows.size())
    throw ValidationError("lp certificate: wrong dual size");
  for (const Rational& xv : solution.x)
    if (sgn(xv) < 0) throw ValidationError("lp certificate: negative primal value");
  if (solution.x[0] != solution.optimum)
    throw ValidationError("lp certificate: objective mismatch with primal");

  // Primal feasibility on every row.
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    Rational v(0);
    for (const auto& [var, c] : model.rows[r].terms)
      v += c * solution.x[static_cast<std::size_t>(var)];
    if (v < model.rows[r].rhs)
      throw ValidationError("lp certificate: row " + std::to_string(r) + " violated");
  }
  // Dual feasibility: y >= 0 and sum of weighted rows below the
  // objective vector (reduced costs nonnegative), with matching value.
  std::vector<Rational> combo(static_cast<std::size_t>(nvars), Rational(0));
  Rational dual_value(0);
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    const Rational& yr = solution.y[r];
    if (sgn(yr) < 0) throw ValidationError("lp certificate: negative dual value");
    if (sgn(yr) == 0) continue;
    for (const auto& [var, c] : model.rows[r].terms)
      combo[static_cast<std::size_t>(var)] += yr * c;
    dual_value += yr * model.rows[r].rhs;
  }
  for (int v = 0; v < nvars; ++v) {
    Rational cv = v == 0 ? Rational(1) : Rational(0);
    if (combo[static_cast<std::size_t>(v)] > cv)
      throw ValidationError("lp certificate: dual combination exceeds objective on variable " +
                            std::to_string(v));
  }
  if (dual_value != solution.optimum)
    throw ValidationError("lp certificate: dual value does not reach the optimum");
}

namespace {

std::string mask_name(std::uint32_t mask) {
  std::ostringstream os;
  os << "f" << std::hex << mask;
  return os.str();
}

void write_terms(std::string& out, const std::vector<std::pair<std::string, long>>& terms) {
  bool first = true;
  for (const auto& [name, coeff] : terms) {
    if (coeff == 0) continue;
    if (coeff > 0 && !first) out += " +";
    if (coeff < 0) out += " -";
    long a = coeff < 0 ? -coeff : coeff;
    if (!first || coeff < 0) out += ' ';
    if (a != 1) {
      out += std::to_string(a);
      out += ' ';
    }
    out += name;
    first = false;
  }
}

}  // namespace

void export_lp(const LPModel& model, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open LP file for writing: " + path);
  std::string buf;
  buf.reserve(1 << 20);
  buf += "\\ entropy method LP";
  if (!model.name.empty()) {
    buf += " for ";
    buf += model.name;
  }
  buf += "\nMinimize\n obj: t\nSubject To\n";
  std::size_t cname = 0;
  auto flush = [&]() {
    file << buf;
    buf.clear();
  };

  if (!model.reduced) {
    // Full rendering over subsets of participants plus the secret
    // element s (bit m), with the secret equalities explicit.
    int m = model.participants;
    std::uint32_t s_bit = 1u << m;
    std::uint32_t total = 1u << (m + 1);
    // t links
    for (int p = 0; p < m; ++p) {
      buf += " c" + std::to_string(cname++) + ": t - " + mask_name(1u << p) + " >= 0\n";
      if (buf.size() > (1u << 20)) flush();
    }
    // pinned values
    buf += " c" + std::to_string(cname++) + ": " + mask_name(0) + " = 0\n";
    buf += " c" + std::to_string(cname++) + ": " + mask_name(s_bit) + " = 1\n";
    // elemental monotonicity at the top
    std::uint32_t full = total - 1;
    for (int x = 0; x <= m; ++x) {
      buf += " c" + std::to_string(cname++) + ": " + mask_name(full) + " - " +
             mask_name(full ^ (1u << x)) + " >= 0\n";
    }
    // elemental submodularity over the extended ground set
    for (std::uint32_t a = 0; a < total; ++a) {
      for (int x = 0; x <= m; ++x) {
        if ((a >> x) & 1) continue;
        for (int y = x + 1; y <= m; ++y) {
          if ((a >> y) & 1) continue;
          std::uint32_t ax = a | (1u << x), ay = a | (1u << y), axy = a | (1u << x) | (1u << y);
          buf += " c" + std::to_string(cname++) + ": " + mask_name(ax) + " + " + mask_name(ay) +
                 " - " + mask_name(axy);
          if (a != 0) {
            buf += " - ";
            buf += mask_name(a);
          }
          buf += " >= 0\n";
          if (buf.size() > (1u << 20)) flush();
        }
      }
    }
    // secret-element equalities per participant subset
    if (model.structure_rows) {
      for (std::uint32_t a = 0; a < s_bit; ++a) {
        buf += " c" + std::to_string(cname++) + ": " + mask_name(a | s_bit);
        if (a != 0) {
          buf += " - ";
          buf += mask_name(a);
        }
        buf += model.independent[a] ? " = 1\n" : " = 0\n";
        if (buf.size() > (1u << 20)) flush();
      }
    }
  } else {
    for (const LPRow& row : model.rows) {
      std::vector<std::pair<std::string, long>> terms;
      for (const auto& [v, c] : row.terms) {
        std::string nm = v == 0 ? "t" : mask_name(model.var_subset[static_cast<std::size_t>(v) - 1]);
        terms.emplace_back(std::move(nm), static_cast<long>(c.get_num().get_si()));
      }
      buf += " c" + std::to_string(cname++) + ":";
      write_terms(buf, terms);
      buf += " >= ";
      buf += row.rhs.get_str();
      buf += '\n';
      if (buf.size() > (1u << 20)) flush();
    }
  }
  buf += "End\n";
  flush();
  if (!file) throw IoError("failed writing LP file: " + path);
}

namespace {

struct Tokenizer {
  std::string text;
  std::size_t at = 0;

  void skip_space() {
    while (at < text.size()) {
      char c = text[at];
      if (c == '\\') {  // comment to end of line
        while (at < text.size() && text[at] != '\n') ++at;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++at;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_space();
    return at >= text.size();
  }

  std::string peek_word() {
    skip_space();
    std::size_t p = at;
    std::string w;
    while (p < text.size() && (std::isalnum(static_cast<unsigned char>(text[p])) ||
                               text[p] == '_' || text[p] == '.'))
      w += text[p++];
    return w;
  }

  std::string take_word() {
    std::string w = peek_word();
    at += w.size();
    return w;
  }

  char peek_char() {
    skip_space();
    return at < text.size() ? text[at] : '\0';
  }

  char take_char() {
    char c = peek_char();
    if (at < text.size()) ++at;
    return c;
  }
};

bool is_number_start(const std::string& w) {
  return !w.empty() && (std::isdigit(static_cast<unsigned char>(w[0])) || w[0] == '.');
}

bool is_section_keyword(const std::string& word) {
  std::string lower = word;
  for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return lower == "minimize" || lower == "maximize" || lower == "subject" || lower == "st" ||
         lower == "st." || lower == "bounds" || lower == "end" || lower == "free" ||
         lower == "general" || lower == "binary";
}

}  // namespace

ParsedLP parse_lp_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open LP file: " + path);
  std::stringstream ss;
  ss << file.rdbuf();
  Tokenizer tok{ss.str()};

  ParsedLP out;
  enum class Section { kNone, kObjective, kRows, kBounds };
  Section section = Section::kNone;
  std::map<std::string, bool> var_seen;

  auto parse_expr = [&](std::map<std::string, double>& terms) {
    // sequence of [+|-] [number] [var], ending at a relation sign or a
    // section keyword
    while (true) {
      char c = tok.peek_char();
      double sign = 1.0;
      if (c == '+' || c == '-') {
        tok.take_char();
        sign = c == '-' ? -1.0 : 1.0;
      } else if (c == '\0' || c == '>' || c == '<' || c == '=') {
        break;
      } else if (is_section_keyword(tok.peek_word())) {
        break;
      }
      std::string w = tok.peek_word();
      if (w.empty()) break;
      double coeff = 1.0;
      if (is_number_start(w)) {
        tok.take_word();
        coeff = std::stod(w);
        w = tok.peek_word();
        if (is_section_keyword(w)) w.clear();
      }
      if (!w.empty() && !is_number_start(w)) {
        tok.take_word();
        terms[w] += sign * coeff;
        var_seen[w] = true;
      } else {
        // bare constant folded into rhs by caller; not produced by our writer
        terms["__const__"] += sign * coeff;
      }
    }
  };

  std::size_t last_at = static_cast<std::size_t>(-1);
  while (!tok.done()) {
    if (tok.at == last_at)
      throw ValidationError("LP parse: stuck at offset " + std::to_string(tok.at));
    last_at = tok.at;
    std::string word = tok.peek_word();
    std::string lower = word;
    for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower == "minimize" || lower == "maximize") {
      tok.take_word();
      out.minimize = lower == "minimize";
      section = Section::kObjective;
      continue;
    }
    if (lower == "subject") {
      tok.take_word();
      std::string to = tok.take_word();
      (void)to;
      section = Section::kRows;
      continue;
    }
    if (lower == "st" || lower == "st.") {
      tok.take_word();
      section = Section::kRows;
      continue;
    }
    if (lower == "bounds") {
      tok.take_word();
      section = Section::kBounds;
      continue;
    }
    if (lower == "end") {
      tok.take_word();
      break;
    }
    if (section == Section::kObjective) {
      // optional label
      std::string label = tok.peek_word();
      if (!label.empty() && !is_number_start(label)) {
        std::size_t save = tok.at;
        tok.take_word();
        if (tok.peek_char() == ':') {
          tok.take_char();
        } else {
          tok.at = save;
        }
      }
      parse_expr(out.objective);
      continue;
    }
    if (section == Section::kRows) {
      ParsedRow row;
      std::string label = tok.peek_word();
      if (!label.empty() && !is_number_start(label)) {
        std::size_t save = tok.at;
        tok.take_word();
        if (tok.peek_char() == ':') {
          tok.take_char();
          row.name = label;
        } else {
          tok.at = save;
        }
      }
      parse_expr(row.terms);
      char rel = tok.take_char();
      if (rel == '>' || rel == '<') {
        if (tok.peek_char() == '=') tok.take_char();
        row.sense = rel == '>' ? 1 : -1;
      } else if (rel == '=') {
        row.sense = 0;
      } else {
        throw ValidationError("LP parse: expected relation in row " + row.name);
      }
      std::string num = tok.take_word();
      char sign_c = '\0';
      if (num.empty()) {
        sign_c = tok.take_char();
        num = tok.take_word();
      }
      if (num.empty()) throw ValidationError("LP parse: missing right-hand side");
      row.rhs = std::stod(num) * (sign_c == '-' ? -1.0 : 1.0);
      auto cit = row.terms.find("__const__");
      if (cit != row.terms.end()) {
        row.rhs -= cit->second;
        row.terms.erase(cit);
      }
      out.rows.push_back(std::move(row));
      continue;
    }
    if (section == Section::kBounds) {
      // bounds are not used by our models; swallow the token
      if (tok.take_word().empty()) tok.take_char();
      continue;
    }
    throw ValidationError("LP parse: unexpected token '" + word + "'");
  }
  for (const auto& [name, seen] : var_seen)
    if (seen) out.variables.push_back(name);
  return out;
}

double validate_external_solution(const ParsedLP& lp,
                                  const std::map<std::string, double>& values,
                                  double tolerance) {
  auto value_of = [&](const std::string& name) {
    auto it = values.find(name);
    return it == values.end() ? 0.0 : it->second;  // omitted variables read as zero
  };
  for (const ParsedRow& row : lp.rows) {
    double v = 0.0;
    for (const auto& [name, coeff] : row.terms) v += coeff * value_of(name);
    bool ok = row.sense > 0   ? v >= row.rhs - tolerance
              : row.sense < 0 ? v <= row.rhs + tolerance
                              : std::abs(v - row.rhs) <= tolerance;
    if (!ok)
      throw ValidationError("external solution violates row '" + row.name + "' (value " +
                            std::to_string(v) + ", rhs " + std::to_string(row.rhs) + ")");
  }
  double obj = 0.0;
  for (const auto& [name, coeff] : lp.objective) obj += coeff * value_of(name);
  return obj;
}

}  // namespace uas
