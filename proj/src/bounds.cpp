#include "uas/bounds.hpp"

#include <algorithm>

#include "uas/errors.hpp"

namespace uas {

Rational BoundReport::best() const {
  Rational b(0);
  if (certificate_bound && *certificate_bound > b) b = *certificate_bound;
  if (lp_bound && *lp_bound > b) b = *lp_bound;
  if (lp_bound_float) {
    Rational f(*lp_bound_float);
    f.canonicalize();
    if (f > b) b = f;
  }
  return b;
}

int check_certificate(const AccessStructure& structure, const Certificate& cert) {
  using Cond = InvalidCertificate::Condition;
  int n = static_cast<int>(cert.b_sequence.size());
  if (static_cast<int>(cert.c_sequence.size()) != n)
    throw InvalidCertificate(Cond::Containment, -1, "certificate: |C| != |b|");
  if (cert.a0 == 0)
    throw InvalidCertificate(Cond::Containment, -1, "certificate: A0 is empty");

  Subset seen = 0;
  for (int i = 0; i < n; ++i) {
    int b = cert.b_sequence[static_cast<std::size_t>(i)];
    if (b < 0 || b >= structure.participant_count())
      throw InvalidCertificate(Cond::BSequence, i, "certificate: b out of range at step " +
                                                       std::to_string(i));
    Subset bit = subset_bit(b);
    if ((cert.a0 & bit) != 0)
      throw InvalidCertificate(Cond::BSequence, i,
                               "certificate: b inside A0 at step " + std::to_string(i));
    if ((seen & bit) != 0)
      throw InvalidCertificate(Cond::BSequence, i,
                               "certificate: repeated b at step " + std::to_string(i));
    seen |= bit;
  }
  for (int i = 0; i < n; ++i) {
    if (!subset_contains(cert.a0, cert.c_sequence[static_cast<std::size_t>(i)]))
      throw InvalidCertificate(Cond::Containment, i,
                               "certificate: C not inside A0 at step " + std::to_string(i));
  }
  Subset b_prefix = 0;
  for (int i = 0; i < n; ++i) {
    Subset c_i = cert.c_sequence[static_cast<std::size_t>(i)];
    if (structure.is_qualified(b_prefix | c_i))
      throw InvalidCertificate(Cond::Independence, i,
                               "certificate: B_i C_i qualified at step " + std::to_string(i));
    Subset next = b_prefix | subset_bit(cert.b_sequence[static_cast<std::size_t>(i)]);
    if (!structure.is_qualified(next | c_i))
      throw InvalidCertificate(Cond::Qualification, i,
                               "certificate: B_{i+1} C_i not qualified at step " +
                                   std::to_string(i));
    b_prefix = next;
  }
  return n;
}

Rational certificate_bound(const AccessStructure& structure, const Certificate& cert) {
  int n = check_certificate(structure, cert);
  Rational bound(n, subset_size(cert.a0));
  bound.canonicalize();
  return bound;
}

bool meets_log_bound(const Rational& bound, int n) {
  if (n < 2) throw ValidationError("meets_log_bound: n >= 2 required");
  if (sgn(bound) <= 0) return false;
  // bound >= n/(1+log2 n)  <=>  p(1+log2 n) >= qn  <=>  2^(qn-p) <= n^p
  mpz_class p = bound.get_num(), q = bound.get_den();
  mpz_class e = q * n - p;
  if (e <= 0) return true;
  if (!e.fits_ulong_p() || !p.fits_ulong_p()) return false;
  mpz_class lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), 2, e.get_ui());
  mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(n), p.get_ui());
  return lhs <= rhs;
}

BoundReport universal_lower_bound(int n, bool use_lp) {
  if (n < 2) throw ValidationError("universal_lower_bound: n >= 2 required");
  BoundReport report;
  report.structure_id = "universal(" + std::to_string(n) + ")";

  Theorem7Result t7 = theorem7_structure(n);
  report.certificate_bound = certificate_bound(t7.structure, t7.certificate);
  report.notes.push_back("certificate: independent sequence on k=" + std::to_string(t7.k) +
                         " base participants, bound " +
                         to_fraction_string(*report.certificate_bound));

  // The LP on the normalized structure needs 2^n - 2 <= 14 participants.
  if (use_lp && n <= 4) {
    AccessStructure star = universal_normalized(n);
    LPModel model = entropy_lp(star);
    model.name = "universal-" + std::to_string(n);
    LPModel reduced = symmetry_reduce(model, star);
    LPSolution sol = solve_exact(reduced);
    report.lp_bound = sol.optimum;
    report.notes.push_back("entropy LP optimum " + to_fraction_string(sol.optimum) + " (" +
                           std::to_string(reduced.var_count()) + " orbit variables)");
  }

  if (!meets_log_bound(report.best(), n))
    throw ValidationError("universal_lower_bound: result below n/(1+log2 n)");
  return report;
}

}  // namespace uas
