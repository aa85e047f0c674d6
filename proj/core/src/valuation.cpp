#include "pfe/valuation.hpp"

#include <algorithm>
#include <stdexcept>

namespace pfe {

namespace {

// Deterministic Miller-Rabin: this base set is exact for all 64-bit inputs.
bool miller_rabin(const Int& n) {
  if (n < 2) return false;
  for (long q : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  Int d = n - 1;
  unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
  Int nm1 = n - 1;
  for (long a : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    Int x;
    Int base(a);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) continue;
    bool witness = true;
    for (unsigned long i = 1; i < r; ++i) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
      if (x == nm1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

Prime::Prime(long p) : p_(p) {
  if (p < 2 || !miller_rabin(Int(p))) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
}

ExtRat ord_int(const Prime& p, const Int& n) {
  if (n == 0) return ExtRat::infinity();
  Int rest;
  Int pz = p.as_int();
  unsigned long v = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
  return ExtRat(static_cast<long>(v));
}

ExtRat ord_rat(const Prime& p, const Rat& q) {
  if (q == 0) return ExtRat::infinity();
  // canonical form: at most one of num, den is divisible by p
  ExtRat vn = ord_int(p, q.get_num());
  ExtRat vd = ord_int(p, q.get_den());
  return ExtRat(Rat(vn.value() - vd.value()));
}

long digit_sum(const Prime& p, const Int& n) {
  if (n < 0) throw std::invalid_argument("digit_sum: n must be >= 0");
  Int rest = n, digit;
  Int pz = p.as_int();
  long sum = 0;
  while (rest > 0) {
    mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), pz.get_mpz_t());
    sum += digit.get_si();
  }
  return sum;
}

ExtRat ord_factorial(const Prime& p, const Int& n) {
  if (n < 0) throw std::invalid_argument("ord_factorial: n must be >= 0");
  Rat v(n - digit_sum(p, n), Int(p.value() - 1));
  v.canonicalize();
  return ExtRat(v);
}

PAdicElement rational_elt(Rat q) { return RationalElt{std::move(q)}; }

PAdicElement ramified_shift(const Prime& p, Rat q, Rat exponent, Rat unit) {
  if (is_integer(exponent))
    fail(Errc::UnsupportedElement, "ramified exponent must not be an integer");
  ExtRat uo = ord_rat(p, unit);
  if (!(uo == ExtRat(0L)))
    fail(Errc::UnsupportedElement, "ramified unit must have ord_p = 0, got ord = " + uo.str());
  return RamifiedShift{std::move(q), std::move(exponent), std::move(unit)};
}

PAdicElement truncated_zp(const Prime& p, std::vector<long> digits) {
  if (digits.empty()) fail(Errc::UnsupportedElement, "TruncatedZp needs precision K >= 1");
  for (long d : digits)
    if (d < 0 || d >= p.value())
      fail(Errc::UnsupportedElement, "digit " + std::to_string(d) + " out of range for p = " +
                                         std::to_string(p.value()));
  return TruncatedZp{std::move(digits)};
}

PAdicElement truncated_zp_of(const Prime& p, const Int& x, std::size_t precision) {
  if (precision == 0) fail(Errc::UnsupportedElement, "TruncatedZp needs precision K >= 1");
  Int pk = pow_int(p.as_int(), precision);
  Int rest;
  mpz_mod(rest.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());  // non-negative representative
  std::vector<long> digits(precision);
  Int digit;
  Int pz = p.as_int();
  for (std::size_t j = 0; j < precision; ++j) {
    mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), pz.get_mpz_t());
    digits[j] = digit.get_si();
  }
  return TruncatedZp{std::move(digits)};
}

Int zp_value(const Prime& p, const TruncatedZp& z) {
  Int v = 0;
  for (std::size_t j = z.digits.size(); j-- > 0;) v = v * p.value() + z.digits[j];
  return v;
}

OrdBound ord_shifted_bound(const Prime& p, const PAdicElement& alpha, const Int& i) {
  if (const auto* r = std::get_if<RationalElt>(&alpha)) {
    return {ord_rat(p, Rat(r->q - i)), true};
  }
  if (const auto* r = std::get_if<RamifiedShift>(&alpha)) {
    // ord(q - i) is an integer or +inf, the exponent is not an integer:
    // the min below can never tie.
    ExtRat base = ord_rat(p, Rat(r->q - i));
    return {min(base, ExtRat(r->exponent)), true};
  }
  const auto& z = std::get<TruncatedZp>(alpha);
  const std::size_t K = z.digits.size();
  Int diff = zp_value(p, z) - i;
  Int pk = pow_int(p.as_int(), K);
  mpz_mod(diff.get_mpz_t(), diff.get_mpz_t(), pk.get_mpz_t());
  if (diff == 0) return {ExtRat(static_cast<long>(K)), false};
  return {ord_int(p, diff), true};
}

ExtRat ord_shifted(const Prime& p, const PAdicElement& alpha, const Int& i) {
  OrdBound b = ord_shifted_bound(p, alpha, i);
  if (!b.exact)
    fail(Errc::AmbiguousPrecision,
         "digit agreement reaches the precision horizon; ord_p(alpha - " + int_str(i) +
             ") is only known to be >= " + b.value.str());
  return b.value;
}

namespace {

// Square root mod an odd prime via Tonelli-Shanks. a must be a unit residue.
Int sqrt_mod_p(const Int& a, const Int& p) {
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1)
    fail(Errc::NonResidue, int_str(a) + " has no square root mod " + int_str(p));
  if (p % 4 == 3) {
    Int e = (p + 1) / 4, x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return x;
  }
  // write p - 1 = q * 2^s with q odd
  Int q = p - 1;
  unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
  // any non-residue will do as the twiddle base
  Int z(2);
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Int c, x, t, e = (q + 1) / 2;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    Int tt = t;
    unsigned long i = 0;
    while (tt != 1) {
      mpz_powm_ui(tt.get_mpz_t(), tt.get_mpz_t(), 2, p.get_mpz_t());
      ++i;
    }
    Int b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j)
      mpz_powm_ui(b.get_mpz_t(), b.get_mpz_t(), 2, p.get_mpz_t());
    x = (x * b) % p;
    c = (b * b) % p;
    t = (t * c) % p;
    m = i;
  }
  return x;
}

}  // namespace

Int hensel_sqrt(const Prime& p, const Int& d, unsigned k) {
  if (!p.odd()) fail(Errc::EvenPrimeUnsupported, "p = 2 has a different lifting theory");
  if (k == 0) throw std::invalid_argument("hensel_sqrt: k must be >= 1");
  Int pz = p.as_int();
  Int a = d % pz;
  if (a < 0) a += pz;
  if (a == 0) fail(Errc::NonResidue, "ord_p(d) must be 0");
  Int x = sqrt_mod_p(a, pz);
  // Newton lifting x <- x - (x^2 - d) / (2x), doubling the precision each step.
  unsigned prec = 1;
  Int mod = pz;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    mod = pow_int(pz, prec);
    Int twox = (2 * x) % mod;
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), twox.get_mpz_t(), mod.get_mpz_t()) == 0)
      fail(Errc::NonResidue, "lifting step lost invertibility");  // cannot happen for units
    Int t = (x * x - d) % mod;
    x = (x - t * inv) % mod;
    if (x < 0) x += mod;
  }
  Int other = mod - x;
  return x <= other ? x : other;
}

Rat lognorm(const SeriesPrefix& f, const Rat& rho) {
  bool any = false;
  Rat best;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i] == 0) continue;
    Rat v = Rat(static_cast<long>(i)) * rho - ord_rat(f.prime, f.coeffs[i]).value();
    if (!any || v > best) best = v;
    any = true;
  }
  if (!any) fail(Errc::ZeroSeries, "lognorm of the zero series");
  return best;
}

}  // namespace pfe
