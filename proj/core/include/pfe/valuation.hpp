#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "pfe/error.hpp"
#include "pfe/extrat.hpp"
#include "pfe/rational.hpp"

namespace pfe {

/// A validated prime. Construction runs a deterministic Miller-Rabin test
/// (fixed base set, exact for the 64-bit range).
class Prime {
public:
  explicit Prime(long p);
  long value() const { return p_; }
  bool odd() const { return p_ != 2; }
  Int as_int() const { return Int(p_); }

private:
  long p_;
};

/// A rational point of C_p.
struct RationalElt {
  Rat q;
};

/// q + unit * p^exponent with exponent = s/t in lowest terms, t >= 2
/// (a genuinely ramified shift: the exponent is not an integer) and
/// ord_p(unit) = 0. The ramified part then has valuation exactly `exponent`,
/// which can never tie an integer valuation.
struct RamifiedShift {
  Rat q;
  Rat exponent;
  Rat unit;
};

/// A p-adic integer known through its first K base-p digits d_0..d_{K-1}.
struct TruncatedZp {
  std::vector<long> digits;
  std::size_t precision() const { return digits.size(); }
};

using PAdicElement = std::variant<RationalElt, RamifiedShift, TruncatedZp>;

// Validating factories. Invariants that depend on p (digit range, unit
// valuation) are checked here; violations throw Errc::UnsupportedElement.
PAdicElement rational_elt(Rat q);
PAdicElement ramified_shift(const Prime& p, Rat q, Rat exponent, Rat unit);
PAdicElement truncated_zp(const Prime& p, std::vector<long> digits);
/// Digits of x mod p^precision (x may be any integer, including negative).
PAdicElement truncated_zp_of(const Prime& p, const Int& x, std::size_t precision);

/// Integer value d_0 + d_1 p + ... of a digit vector.
Int zp_value(const Prime& p, const TruncatedZp& z);

/// A finite run of power-series coefficients c_0..c_M. Trailing zeros are
/// data, not padding.
struct SeriesPrefix {
  std::vector<Rat> coeffs;
  Prime prime;
};

ExtRat ord_int(const Prime& p, const Int& n);
ExtRat ord_rat(const Prime& p, const Rat& q);

/// Sum of the base-p digits of n >= 0.
long digit_sum(const Prime& p, const Int& n);

/// ord_p(n!) = (n - digit_sum(p, n)) / (p - 1). Always a non-negative integer,
/// equal to the Legendre sum over floor(n / p^i).
ExtRat ord_factorial(const Prime& p, const Int& n);

/// ord_p(alpha - i), possibly only a lower bound for TruncatedZp elements.
struct OrdBound {
  ExtRat value;
  bool exact;  // false: the true valuation is >= value (precision horizon)
};
OrdBound ord_shifted_bound(const Prime& p, const PAdicElement& alpha, const Int& i);

/// Exact ord_p(alpha - i). Throws Errc::AmbiguousPrecision when a TruncatedZp
/// element agrees with i through its whole digit vector: the result would be
/// "at least K", which must not be mistaken for a value.
ExtRat ord_shifted(const Prime& p, const PAdicElement& alpha, const Int& i);

/// Square root of d modulo p^k (p odd, ord_p(d) = 0, d a residue mod p).
/// Returns the smaller of the two roots; its digit vector feeds TruncatedZp.
Int hensel_sqrt(const Prime& p, const Int& d, unsigned k);

/// log_p ||f||(p^rho) = max_i (i*rho - ord_p(c_i)) over nonzero coefficients.
Rat lognorm(const SeriesPrefix& f, const Rat& rho);

}  // namespace pfe
