#include "pfe/weights.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

namespace pfe {

const char* weight_case_name(WeightCase c) noexcept {
  switch (c) {
    case WeightCase::NaturalOrZp: return "NaturalOrZp";
    case WeightCase::DiskNotZp: return "DiskNotZp";
    case WeightCase::OutsideDisk: return "OutsideDisk";
  }
  return "?";
}

Rat bounded_ord_mean_closed(const Prime& p, unsigned s) {
  Int ps = pow_int(p.as_int(), s);
  Rat a = make_rat(ps - 1, ps * (p.value() - 1));  // (1 - p^-s) / (p-1)
  Rat b = make_rat(Int(s), ps * p.value());        // s / p^(s+1)
  return Rat(a - b);
}

namespace {

// int64 fast path guard: everything the loop touches stays below 2^62
bool fits_fast(const Int& reach) { return mpz_sizeinbase(reach.get_mpz_t(), 2) <= 62; }

long ord_ll(long long v, long p) {
  long o = 0;
  while (v % p == 0) {
    v /= p;
    ++o;
  }
  return o;
}

// Visits ord_p(a - i*b) for i = m..N in order. `visit(o)` gets the integer
// valuation; `pole(i)` is called when a - i*b == 0. Uses a plain int64 loop
// whenever the whole orbit fits.
template <class Visit, class Pole>
void scan_linear_orbit(const Prime& p, const Int& a, const Int& b, const Int& m, const Int& N,
                       Visit&& visit, Pole&& pole) {
  if (m > N) throw std::invalid_argument("scan: m > N");
  Int reach = abs(a) + (abs(N) + 1) * abs(b) + abs(m) * abs(b);
  if (fits_fast(reach) && m.fits_slong_p() && N.fits_slong_p()) {
    long long av = mpz_get_si(a.get_mpz_t());
    long long bv = mpz_get_si(b.get_mpz_t());
    long long v = av - mpz_get_si(m.get_mpz_t()) * bv;
    long pp = p.value();
    long hi = mpz_get_si(N.get_mpz_t());
    for (long i = mpz_get_si(m.get_mpz_t()); i <= hi; ++i, v -= bv) {
      if (v == 0) {
        pole(Int(i));
        continue;
      }
      visit(ord_ll(v, pp));
    }
    return;
  }
  Int v = a - m * b;
  Int rest;
  Int pz = p.as_int();
  for (Int i = m; i <= N; ++i, v -= b) {
    if (v == 0) {
      pole(i);
      continue;
    }
    visit(static_cast<long>(mpz_remove(rest.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t())));
  }
}

Rat mean_of(const Int& weighted_sum_num, const Int& weighted_sum_den, const Int& count) {
  return make_rat(weighted_sum_num, weighted_sum_den * count);
}

}  // namespace

ScanReport bounded_ord_mean_scan(const Prime& p, unsigned s, const Int& N) {
  if (N < 1) throw std::invalid_argument("bounded_ord_mean_scan: N >= 1 required");
  // tally the classes L_i = { j <= N : ord_p(j) = i }, i <= s
  Int sum = 0;
  long smax = static_cast<long>(s);
  scan_linear_orbit(
      p, Int(0), Int(-1), Int(1), N,
      [&](long o) {
        if (o <= smax) sum += o;
      },
      [&](const Int&) {});
  Rat mean = make_rat(sum, N);
  Rat target = bounded_ord_mean_closed(p, s);
  Rat gap = abs(mean - target);
  return {N, mean, target, gap};
}

ExtRat r_alpha(const Prime& p, const PAdicElement& alpha) {
  if (std::holds_alternative<TruncatedZp>(alpha))
    fail(Errc::UnsupportedElement,
         "r(alpha) of a digit-truncated Z_p element is +inf by density; not computable from digits");
  if (const auto* r = std::get_if<RationalElt>(&alpha)) {
    ExtRat o = ord_rat(p, r->q);
    if (o < ExtRat(0L)) return o;  // outside d(0,1): every summand equals ord(alpha)
    return ExtRat::infinity();     // rational in Z_p: naturals approximate arbitrarily well
  }
  const auto& rs = std::get<RamifiedShift>(alpha);
  ExtRat oq = ord_rat(p, rs.q);
  ExtRat oa = min(oq, ExtRat(rs.exponent));
  if (oa < ExtRat(0L)) return oa;
  // q in Z_p: integers reach q to arbitrary depth, the ramified part caps the sup
  return ExtRat(rs.exponent);
}

Rat weight_from_sup(const Prime& p, const Rat& r) {
  if (r < 0) throw std::invalid_argument("weight_from_sup: r >= 0 required");
  Int rf = rat_floor(r);
  long rfl = static_cast<long>(rf.get_si());
  Rat frac = r - Rat(rf);
  Int prf = pow_int(p.as_int(), rfl);
  Rat lead = make_rat(prf - 1, prf * (p.value() - 1));  // (1 - p^-[r]) / (p-1)
  Rat corr = frac * make_rat(Int(1), prf * p.value());  // <r> * p^(-[r]-1)
  return Rat(lead + corr);
}

Rat weight_from_sup_subtracted(const Prime& p, const Rat& r) {
  Int rf = rat_floor(r);
  Rat frac = r - Rat(rf);
  Rat plus = weight_from_sup(p, r);
  Int prf = pow_int(p.as_int(), static_cast<long>(rf.get_si()));
  return Rat(plus - 2 * frac * make_rat(Int(1), prf * p.value()));
}

WeightReport weight(const Prime& p, const PAdicElement& alpha) {
  WeightReport rep;
  rep.alpha = alpha;
  rep.m_start = 0;
  if (const auto* r = std::get_if<RationalElt>(&alpha)) {
    ExtRat o = ord_rat(p, r->q);
    if (o < ExtRat(0L)) {
      rep.kind = WeightCase::OutsideDisk;
      rep.r_alpha = o;
      rep.weight = o.value();
      return rep;
    }
    rep.kind = WeightCase::NaturalOrZp;
    rep.r_alpha = ExtRat::infinity();
    rep.weight = make_rat(1, p.value() - 1);
    if (is_integer(r->q) && r->q >= 0) rep.m_start = Int(r->q.get_num()) + 1;  // skip the pole at i = q
    return rep;
  }
  if (const auto* rs = std::get_if<RamifiedShift>(&alpha)) {
    ExtRat oa = min(ord_rat(p, rs->q), ExtRat(rs->exponent));
    if (oa < ExtRat(0L)) {
      rep.kind = WeightCase::OutsideDisk;
      rep.r_alpha = oa;
      rep.weight = oa.value();
      return rep;
    }
    rep.kind = WeightCase::DiskNotZp;
    rep.r_alpha = ExtRat(rs->exponent);
    Int rf = rat_floor(rs->exponent);
    rep.r_floor = static_cast<long>(rf.get_si());
    rep.r_frac = rs->exponent - Rat(rf);
    rep.weight = weight_from_sup(p, rs->exponent);
    rep.subtracted_variant = weight_from_sup_subtracted(p, rs->exponent);
    rep.note =
        "fractional correction enters with positive sign (decided by partial-sum scans); "
        "the subtracted variant is reported for comparison";
    return rep;
  }
  // digit-truncated elements live in Z_p
  rep.kind = WeightCase::NaturalOrZp;
  rep.r_alpha = ExtRat::infinity();
  rep.weight = make_rat(1, p.value() - 1);
  return rep;
}

ScanReport weight_empirical(const Prime& p, const PAdicElement& alpha, const Int& m, const Int& N) {
  if (m > N) throw std::invalid_argument("weight_empirical: m > N");
  Int count = N - m + 1;
  Rat target = weight(p, alpha).weight;
  Rat mean;

  if (const auto* r = std::get_if<RationalElt>(&alpha)) {
    const Int& a = r->q.get_num();
    const Int& b = r->q.get_den();
    long dshift = static_cast<long>(ord_int(p, b) == ExtRat::infinity()
                                        ? 0
                                        : ord_int(p, b).value().get_num().get_si());
    Int sum = 0;
    scan_linear_orbit(
        p, a, b, m, N, [&](long o) { sum += o; },
        [&](const Int& i) {
          fail(Errc::PoleHit, "alpha equals the natural number " + int_str(i) +
                                  "; start the scan at m = " + int_str(i + 1));
        });
    mean = make_rat(sum - dshift * count, count);
  } else if (const auto* rs = std::get_if<RamifiedShift>(&alpha)) {
    const Int& a = rs->q.get_num();
    const Int& b = rs->q.get_den();
    long dshift = static_cast<long>(ord_int(p, b) == ExtRat::infinity()
                                        ? 0
                                        : ord_int(p, b).value().get_num().get_si());
    // summand = min(ord(q - i), e); never a tie (e is not an integer).
    // Accumulate the integer-valued part and the count of e-hits separately.
    const Int& es = rs->exponent.get_num();
    const Int& et = rs->exponent.get_den();
    Int int_sum = 0;
    Int e_hits = 0;
    scan_linear_orbit(
        p, a, b, m, N,
        [&](long o) {
          Int scaled = Int(o - dshift) * et;
          if (scaled < es)
            int_sum += (o - dshift);
          else
            ++e_hits;
        },
        [&](const Int&) { ++e_hits; });  // ord(q - i) = +inf: the ramified part wins
    Rat total = Rat(int_sum) + Rat(e_hits) * rs->exponent;
    mean = Rat(total / Rat(count));
  } else {
    const auto& z = std::get<TruncatedZp>(alpha);
    const long K = static_cast<long>(z.digits.size());
    Int X = zp_value(p, z);
    Int sum = 0;
    scan_linear_orbit(
        p, X, Int(1), m, N,
        [&](long o) {
          if (o >= K)
            fail(Errc::AmbiguousPrecision,
                 "a summand reaches the precision horizon K = " + std::to_string(K) +
                     "; shrink N or supply more digits");
          sum += o;
        },
        [&](const Int& i) {
          fail(Errc::AmbiguousPrecision, "alpha agrees with " + int_str(i) +
                                             " through all known digits; valuation >= K");
        });
    mean = make_rat(sum, count);
  }

  Rat gap = abs(mean - target);
  return {count, mean, target, gap};
}

LogBracket log_p_bracket(const Prime& p, const Int& n, unsigned den) {
  if (n < 1 || den == 0) throw std::invalid_argument("log_p_bracket: n >= 1, den >= 1");
  Int pz = p.as_int();
  Int nm = pow_int(n, den);
  // a = floor(log_p(n^den)); sizeinbase may overestimate by one digit
  long a = static_cast<long>(mpz_sizeinbase(nm.get_mpz_t(), static_cast<int>(p.value()))) - 1;
  while (a > 0 && pow_int(pz, a) > nm) --a;
  while (pow_int(pz, a + 1) <= nm) ++a;
  return {make_rat(Int(a), Int(den)), make_rat(Int(a + 1), Int(den))};
}

Rat liouville_scan(const Prime& p, const PAdicElement& alpha, unsigned k, const Int& N) {
  const auto* r = std::get_if<RationalElt>(&alpha);
  if (!r)
    fail(Errc::UnsupportedElement, "liouville_scan handles rational elements (degree 1) only");
  if (is_integer(r->q) && r->q >= 0)
    fail(Errc::UnsupportedElement, "natural numbers are excluded (the defect is unbounded)");
  if (ord_rat(p, r->q) < ExtRat(0L))
    fail(Errc::UnsupportedElement, "alpha must lie in d(0,1)");
  if (k == 0) throw std::invalid_argument("liouville_scan: k >= 1");
  if (N < 2) throw std::invalid_argument("liouville_scan: N >= 2");

  constexpr unsigned kLogDen = 16;  // certified bracket width 1/16
  long dshift =
      static_cast<long>(ord_int(p, r->q.get_den()).value().get_num().get_si());
  bool any = false;
  Rat best;
  Int n(1);
  scan_linear_orbit(
      p, r->q.get_num(), r->q.get_den(), Int(2), N,
      [&](long o) {
        ++n;
        LogBracket lb = log_p_bracket(p, n, kLogDen);
        Rat ub = Rat(o - dshift) - Rat(static_cast<long>(k)) * lb.lo;
        if (!any || ub > best) best = ub;
        any = true;
      },
      [&](const Int&) { fail(Errc::PoleHit, "alpha is a natural number"); });
  return best;
}

namespace {

// Reduces a p-integral rational mod p^K. Requires ord_p(c) >= 0.
Int rat_mod_pk(const Rat& c, const Int& pk) {
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), c.get_den().get_mpz_t(), pk.get_mpz_t()) == 0)
    fail(Errc::RootMismatch, "coefficient " + rat_str(c) + " is not p-integral");
  Int v = (c.get_num() * inv) % pk;
  if (v < 0) v += pk;
  return v;
}

}  // namespace

Rat poly_weight(const Prime& p, const Poly& P, const std::vector<PAdicElement>& roots) {
  if (P.is_zero()) fail(Errc::ZeroInput, "poly_weight of the zero polynomial");
  long deg = *P.degree();
  if (static_cast<long>(roots.size()) != deg)
    fail(Errc::RootMismatch, "expected " + std::to_string(deg) + " roots with multiplicity, got " +
                                 std::to_string(roots.size()));

  // Reassemble the rationally-expressible part of the factorization.
  Poly rational_part = Poly::constant(P.leading());
  std::vector<const TruncatedZp*> zp_roots;
  std::vector<const RamifiedShift*> ram_roots;
  for (const auto& root : roots) {
    if (const auto* q = std::get_if<RationalElt>(&root)) {
      rational_part = rational_part * (Poly::from_longs({0, 1}) - Poly::constant(q->q));
    } else if (const auto* z = std::get_if<TruncatedZp>(&root)) {
      zp_roots.push_back(z);
    } else {
      ram_roots.push_back(&std::get<RamifiedShift>(root));
    }
  }
  // Ramified roots must pair into conjugates q +- u p^(s/2); the pair's
  // quadratic (x - q)^2 - u^2 p^s is rational and checked exactly.
  std::vector<bool> used(ram_roots.size(), false);
  for (std::size_t i = 0; i < ram_roots.size(); ++i) {
    if (used[i]) continue;
    const auto* a = ram_roots[i];
    if (a->exponent.get_den() != 2)
      fail(Errc::RootMismatch,
           "cannot verify a ramified root with exponent denominator != 2 against a rational "
           "polynomial");
    bool paired = false;
    for (std::size_t j = i + 1; j < ram_roots.size() && !paired; ++j) {
      if (used[j]) continue;
      const auto* b = ram_roots[j];
      if (a->q == b->q && a->exponent == b->exponent && a->unit == Rat(-b->unit)) {
        used[i] = used[j] = true;
        paired = true;
        Rat ps = pow_rat(p.as_int(), static_cast<long>(a->exponent.get_num().get_si()));
        Poly quad = (Poly::from_longs({0, 1}) - Poly::constant(a->q)) *
                        (Poly::from_longs({0, 1}) - Poly::constant(a->q)) -
                    Poly::constant(Rat(a->unit * a->unit * ps));
        rational_part = rational_part * quad;
      }
    }
    if (!paired) fail(Errc::RootMismatch, "ramified root without its conjugate partner");
  }

  PolyDivMod dm = poly_divmod(P, rational_part);
  if (!dm.remainder.is_zero())
    fail(Errc::RootMismatch, "rational factors do not divide the polynomial");
  const Poly& rest = dm.quotient;
  if (zp_roots.empty()) {
    if (!(rest == Poly::constant(Rat(1))))
      fail(Errc::RootMismatch, "supplied roots do not reproduce the polynomial");
  } else {
    if (!rest.degree() || *rest.degree() != static_cast<long>(zp_roots.size()))
      fail(Errc::RootMismatch, "digit-vector roots do not account for the remaining degree");
    std::size_t Kmin = zp_roots.front()->digits.size();
    for (const auto* z : zp_roots) Kmin = std::min(Kmin, z->digits.size());
    Int pk = pow_int(p.as_int(), Kmin);
    // monic product of (x - X_j) mod p^K
    std::vector<Int> prod{Int(1)};
    for (const auto* z : zp_roots) {
      Int x = zp_value(p, *z) % pk;
      std::vector<Int> next(prod.size() + 1, Int(0));
      for (std::size_t d = 0; d < prod.size(); ++d) {
        next[d + 1] = (next[d + 1] + prod[d]) % pk;
        next[d] = (next[d] - x * prod[d]) % pk;
      }
      prod = std::move(next);
    }
    for (std::size_t d = 0; d < prod.size(); ++d) {
      Int want = prod[d] % pk;
      if (want < 0) want += pk;
      Int have = rat_mod_pk(rest.coeff(d), pk);
      if (want != have)
        fail(Errc::RootMismatch, "digit-vector roots disagree with the polynomial mod p^" +
                                     std::to_string(Kmin));
    }
  }

  Rat sum = ord_rat(p, P.leading()).value();
  for (const auto& root : roots) sum += weight(p, root).weight;
  return sum;
}

ScanReport poly_weight_scan(const Prime& p, const Poly& P, const Int& m, const Int& N,
                            const Rat& target) {
  if (P.is_zero()) fail(Errc::ZeroInput, "scan of the zero polynomial");
  if (m > N) throw std::invalid_argument("poly_weight_scan: m > N");
  Int den;
  // integer Horner when the values fit; exact either way
  std::vector<Rat> cs = P.coeffs();
  Int lcm(1);
  for (const Rat& c : cs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Int> ic(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) ic[i] = cs[i].get_num() * (lcm / cs[i].get_den());
  long dshift = static_cast<long>(ord_int(p, lcm) == ExtRat::infinity()
                                      ? 0
                                      : ord_int(p, lcm).value().get_num().get_si());

  Int count = N - m + 1;
  Int sum = 0;

  Int maxabs = 0;
  for (const Int& c : ic) {
    Int a(abs(c));
    if (a > maxabs) maxabs = a;
  }
  Int span(std::max(Int(abs(N)), Int(abs(m))) + 1);
  Int reach = 2 * maxabs * pow_int(span, cs.empty() ? 0 : cs.size() - 1);
  bool fast = fits_fast(reach) && m.fits_slong_p() && N.fits_slong_p();

  if (fast) {
    std::vector<long long> cc(ic.size());
    for (std::size_t i = 0; i < ic.size(); ++i) cc[i] = mpz_get_si(ic[i].get_mpz_t());
    long pp = p.value();
    long long lo = mpz_get_si(m.get_mpz_t()), hi = mpz_get_si(N.get_mpz_t());
    long long total = 0;
    for (long long n = lo; n <= hi; ++n) {
      long long acc = 0;
      for (std::size_t i = cc.size(); i-- > 0;) acc = acc * n + cc[i];
      if (acc == 0)
        fail(Errc::PoleHit, "P vanishes at n = " + std::to_string(n) + "; raise m past the root");
      total += ord_ll(acc, pp);
    }
    sum = Int(static_cast<long>(total));
  } else {
    Int pz = p.as_int();
    Int rest;
    for (Int n = m; n <= N; ++n) {
      Int acc(0);
      for (std::size_t i = ic.size(); i-- > 0;) acc = acc * n + ic[i];
      if (acc == 0) fail(Errc::PoleHit, "P vanishes at n = " + int_str(n));
      sum += static_cast<long>(mpz_remove(rest.get_mpz_t(), acc.get_mpz_t(), pz.get_mpz_t()));
    }
  }
  Rat mean = make_rat(sum - Int(dshift) * count, count);
  return {count, mean, target, Rat(abs(mean - target))};
}

bool partial_fraction_identity(const Rat& alpha, unsigned n) {
  if (is_integer(alpha) && alpha >= 0 && alpha <= Rat(static_cast<long>(n)))
    fail(Errc::PoleHit, "alpha = " + rat_str(alpha) + " is a pole of the identity");
  Rat prod(1);
  for (unsigned j = 0; j <= n; ++j) prod *= alpha - Rat(static_cast<long>(j));
  Rat lhs = Rat((n + 1) % 2 == 0 ? 1 : -1) / prod;  // (-1)^(n+1) / (alpha)_(n+1)

  std::vector<Int> fact(n + 1);
  fact[0] = 1;
  for (unsigned i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  Rat rhs(0);
  for (unsigned j = 0; j <= n; ++j) {
    unsigned i = n - j;
    Rat term = Rat(1) / (Rat(fact[i] * fact[j]) * (alpha - Rat(static_cast<long>(j))));
    rhs += (j % 2 == 0) ? Rat(-term) : term;
  }
  return lhs == rhs;
}

}  // namespace pfe
