#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfe/poly.hpp"
#include "pfe/valuation.hpp"

namespace pfe {

enum class WeightCase { NaturalOrZp, DiskNotZp, OutsideDisk };

const char* weight_case_name(WeightCase c) noexcept;

/// The Cesaro limit of ord_p(alpha - i) over natural i, with its case data.
///
/// In the DiskNotZp case the fractional correction enters with POSITIVE sign:
///   w = (1 - p^(-[r])) / (p-1) + <r> * p^(-[r]-1).
/// The partial-sum scans decide this sign unambiguously (weight_empirical
/// converges to this value and stays bounded away from the subtracted
/// variant); `subtracted_variant` carries the other value for comparison and
/// `note` flags the discrepancy.
struct WeightReport {
  PAdicElement alpha;
  WeightCase kind = WeightCase::NaturalOrZp;
  ExtRat r_alpha;  // +inf in the Zp case
  long r_floor = 0;
  Rat r_frac;  // r_floor, r_frac meaningful only for DiskNotZp
  Rat weight;
  Int m_start;  // smallest m from which the limit statement holds
  std::optional<Rat> subtracted_variant;
  std::string note;
};

/// Exact partial-sum average against its limit.
struct ScanReport {
  Int N;        // number of summands
  Rat mean;     // exact
  Rat target;   // the limit the scan approaches
  Rat abs_gap;  // |mean - target|, exact
};

/// (1 - p^(-s))/(p-1) - s/p^(s+1): the limit mean of ord_p(j) over j with
/// ord_p(j) <= s.
Rat bounded_ord_mean_closed(const Prime& p, unsigned s);

/// Exhaustive partial sum of ord_p(j) over 1 <= j <= N with ord_p(j) <= s,
/// divided by N. The gap to the closed form is O(s^2 / N).
ScanReport bounded_ord_mean_scan(const Prime& p, unsigned s, const Int& N);

/// r(alpha) = sup over natural i of ord_p(alpha - i). Finite exactly when
/// alpha lies in d(0,1) \ Z_p or outside d(0,1); +inf on Z_p by density.
/// TruncatedZp elements are rejected (they live in Z_p; the sup is not
/// computable from finitely many digits).
ExtRat r_alpha(const Prime& p, const PAdicElement& alpha);

/// DiskNotZp weight as a function of r = r(alpha) >= 0.
Rat weight_from_sup(const Prime& p, const Rat& r);
Rat weight_from_sup_subtracted(const Prime& p, const Rat& r);

WeightReport weight(const Prime& p, const PAdicElement& alpha);

/// Exact mean of ord_p(alpha - i) over i = m..N (divided by the summand
/// count). Target is weight(alpha). Throws Errc::PoleHit if alpha equals some
/// i in range, Errc::AmbiguousPrecision if a TruncatedZp summand reaches the
/// precision horizon.
ScanReport weight_empirical(const Prime& p, const PAdicElement& alpha, const Int& m, const Int& N);

/// Certified rational bracket lo <= log_p(n) < hi with hi - lo = 1/den.
struct LogBracket {
  Rat lo;
  Rat hi;
};
LogBracket log_p_bracket(const Prime& p, const Int& n, unsigned den);

/// Max over 2 <= n <= N of ord_p(alpha - n) - k*log_p(n), reported as a
/// certified rational upper bound (the logarithm is replaced by its rational
/// lower bracket). alpha must be a rational element of d(0,1) \ N; k is its
/// degree over Q, i.e. 1.
Rat liouville_scan(const Prime& p, const PAdicElement& alpha, unsigned k, const Int& N);

/// Weight limit of a nonzero polynomial:
///   L = ord_p(leading coefficient) + sum of weight(root_j)
/// where the supplied roots are exactly the roots of P with multiplicity.
/// The factorization is re-verified: exactly for rational roots and
/// RamifiedShift conjugate pairs (exponent denominator 2), modulo p^K for
/// TruncatedZp roots. A failed check throws Errc::RootMismatch.
Rat poly_weight(const Prime& p, const Poly& P, const std::vector<PAdicElement>& roots);

/// Exact mean of ord_p(P(n)) over n = m..N against a caller-supplied target.
/// Throws Errc::PoleHit when P vanishes at some n in range.
ScanReport poly_weight_scan(const Prime& p, const Poly& P, const Int& m, const Int& N,
                            const Rat& target);

/// Checks, in exact rational arithmetic, the partial-fraction identity
///   (-1)^(n+1) / (alpha (alpha-1) ... (alpha-n))
///     = sum over i+j=n of (-1)^(j+1) / (i! j! (alpha-j)).
/// alpha must avoid the poles 0..n (Errc::PoleHit).
bool partial_fraction_identity(const Rat& alpha, unsigned n);

}  // namespace pfe
