#include "pfe/analyzer.hpp"

#include <sstream>

namespace pfe {

namespace {

constexpr unsigned kRootDigits = 18;  // precision K for embedded quadratic roots

const std::vector<Rat>& default_lambda_grid() {
  static const std::vector<Rat> grid = [] {
    std::vector<Rat> g;
    for (long num : {-8, -6, -4, -3, -2, -1, 0, 1, 2, 4}) g.push_back(make_rat(num, 4));
    return g;
  }();
  return grid;
}

long ord_long(const Prime& p, const Rat& q) {
  // finite rational valuations are integers
  return static_cast<long>(ord_rat(p, q).value().get_num().get_si());
}

}  // namespace

void validate_instance(const ProblemInstance& inst) {
  if (inst.A.is_zero() || inst.B.is_zero())
    fail(Errc::ZeroInput, "A and B must both be nonzero");
  if (inst.f_jet.has_value() != inst.g_jet.has_value())
    fail(Errc::JetMismatch, "supply both jets or neither");
  if (inst.f_jet) {
    if (inst.f_jet->size() == 0 || inst.g_jet->size() == 0)
      fail(Errc::JetMismatch, "jets must carry at least the order-0 coefficient");
    if (inst.g_jet->coeffs[0] == 0) fail(Errc::GZeroAtOrigin, "g(0) must be nonzero");
    Rat f0 = inst.f_jet->coeffs[0], g0 = inst.g_jet->coeffs[0];
    Rat lhs = inst.A.coeff(0) * f0 * f0 + inst.B.coeff(0) * g0 * g0;
    if (lhs != 1)
      fail(Errc::JetMismatch,
           "order-0 identity A(0) f(0)^2 + B(0) g(0)^2 = 1 fails: got " + rat_str(lhs));
  }
}

bool parity_check(const Poly& A, const Poly& B) {
  if (A.is_zero() || B.is_zero()) fail(Errc::ZeroInput, "parity check needs nonzero A and B");
  return ((*A.degree() - *B.degree()) % 2) != 0;
}

const char* verdict_name(const Verdict& v) noexcept {
  switch (v.index()) {
    case 0: return "ParityObstruction";
    case 1: return "HZeroPolynomialOnly";
    case 2: return "GrowthContradiction";
    default: return "Inconclusive";
  }
}

RootAnalysis analyze_char_roots(const Prime& p, const Poly& P) {
  if (P.is_zero()) fail(Errc::ZeroInput, "cannot analyze roots of the zero polynomial");
  RootAnalysis ra;
  long deg = *P.degree();
  if (deg == 0) {
    ra.notes.push_back("constant characteristic polynomial: no roots");
    return ra;
  }
  if (deg == 1) {
    ra.representable.push_back(rational_elt(Rat(-P.coeff(0) / P.coeff(1))));
    ra.notes.push_back("one rational root");
    return ra;
  }
  if (deg != 2)
    fail(Errc::UnsupportedElement, "root analysis handles degree <= 2, got " + std::to_string(deg));

  Rat a = P.coeff(2), b = P.coeff(1), c = P.coeff(0);
  Rat disc = b * b - 4 * a * c;
  Rat q = -b / (2 * a);

  if (disc == 0) {
    ra.representable.push_back(rational_elt(q));
    ra.representable.push_back(rational_elt(q));
    ra.notes.push_back("double rational root");
    return ra;
  }
  if (disc > 0 && mpz_perfect_square_p(disc.get_num().get_mpz_t()) &&
      mpz_perfect_square_p(disc.get_den().get_mpz_t())) {
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), disc.get_num().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), disc.get_den().get_mpz_t());
    Rat s = make_rat(sn, sd);
    ra.representable.push_back(rational_elt(Rat((-b + s) / (2 * a))));
    ra.representable.push_back(rational_elt(Rat((-b - s) / (2 * a))));
    ra.notes.push_back("two rational roots (square discriminant)");
    return ra;
  }

  long v = ord_long(p, disc);
  Rat unit = disc / pow_rat(p.as_int(), v);  // ord_p(unit) = 0
  long ord2a = ord_long(p, Rat(2 * a));
  Rat e = make_rat(v, 2) - Rat(ord2a);  // ord of the square-root part of the roots

  if (v % 2 == 0) {
    if (!p.odd()) {
      // Q_2(sqrt(unit)) may be ramified with a unit uniformizer; the tie-free
      // min rule the pair weight relies on breaks down there.
      fail(Errc::EvenPrimeUnsupported,
           "2-adic quadratic root fields with even-valuation discriminant are not handled");
    }
    Int ud_inv;
    Int pz = p.as_int();
    if (mpz_invert(ud_inv.get_mpz_t(), unit.get_den().get_mpz_t(), pz.get_mpz_t()) == 0)
      fail(Errc::UnsupportedElement, "discriminant unit not reducible mod p");
    Int res = (unit.get_num() * ud_inv) % pz;
    if (res < 0) res += pz;
    if (mpz_legendre(res.get_mpz_t(), pz.get_mpz_t()) == 1) {
      // square in Q_p: embed both roots as digit vectors
      if (ord_long(p, a) != 0 || ord_rat(p, b) < ExtRat(0L) || ord_rat(p, c) < ExtRat(0L) || v < 0)
        fail(Errc::UnsupportedElement,
             "root embedding needs a unit leading coefficient and p-integral data");
      Int pk = pow_int(pz, kRootDigits);
      Int uden_inv, a2_inv;
      if (mpz_invert(uden_inv.get_mpz_t(), unit.get_den().get_mpz_t(), pk.get_mpz_t()) == 0)
        fail(Errc::UnsupportedElement, "unit denominator not invertible mod p^K");
      Int d = (unit.get_num() * uden_inv) % pk;
      if (d < 0) d += pk;
      Int s = hensel_sqrt(p, d, kRootDigits);
      Int sqrt_disc = (pow_int(pz, v / 2) * s) % pk;
      Rat twoa = 2 * a;
      Int tn = twoa.get_num() % pk, td = twoa.get_den();
      if (tn < 0) tn += pk;
      Int td_inv;
      mpz_invert(td_inv.get_mpz_t(), td.get_mpz_t(), pk.get_mpz_t());
      mpz_invert(a2_inv.get_mpz_t(), Int((tn * td_inv) % pk).get_mpz_t(), pk.get_mpz_t());
      Int bn_reduced;
      {
        Int bd_inv;
        mpz_invert(bd_inv.get_mpz_t(), b.get_den().get_mpz_t(), pk.get_mpz_t());
        bn_reduced = (b.get_num() * bd_inv) % pk;
        if (bn_reduced < 0) bn_reduced += pk;
      }
      Int r1 = ((-bn_reduced + sqrt_disc) * a2_inv) % pk;
      Int r2 = ((-bn_reduced - sqrt_disc) * a2_inv) % pk;
      ra.representable.push_back(truncated_zp_of(p, r1, kRootDigits));
      ra.representable.push_back(truncated_zp_of(p, r2, kRootDigits));
      ra.notes.push_back("two Z_p roots embedded as " + std::to_string(kRootDigits) +
                         "-digit vectors (discriminant a unit square in Q_p)");
      return ra;
    }
    // inert conjugate pair: r = e is an integer, read off the norm form
    ra.conjugate_pair = true;
    ra.pair_q = q;
    ra.pair_e = e;
    ra.notes.push_back("conjugate roots in the unramified quadratic extension; r = " + rat_str(e) +
                       " from the norm form");
  } else {
    // odd valuation: ramified square root, ord = v/2 - ord(2a), never an integer.
    // The roots are q +- u p^e with u^2 = disc / (4 a^2 p^(2e)); representable
    // exactly when that unit square has a rational square root.
    long s_num = static_cast<long>(e.get_num().get_si());  // e = s_num / 2, s_num odd
    Rat unit_sq = disc / (4 * a * a) / pow_rat(p.as_int(), s_num);
    if (unit_sq > 0 && mpz_perfect_square_p(unit_sq.get_num().get_mpz_t()) &&
        mpz_perfect_square_p(unit_sq.get_den().get_mpz_t())) {
      Int un, ud;
      mpz_sqrt(un.get_mpz_t(), unit_sq.get_num().get_mpz_t());
      mpz_sqrt(ud.get_mpz_t(), unit_sq.get_den().get_mpz_t());
      Rat u = make_rat(un, ud);
      ra.representable.push_back(ramified_shift(p, q, e, u));
      ra.representable.push_back(ramified_shift(p, q, e, Rat(-u)));
      ra.notes.push_back("ramified conjugate roots q +- u p^(" + rat_str(e) +
                         ") with rational unit");
      return ra;
    }
    ra.conjugate_pair = true;
    ra.pair_q = q;
    ra.pair_e = e;
    ra.notes.push_back("ramified conjugate roots; r = " + rat_str(e) + " from the norm form");
  }

  // combined weight of the conjugate pair
  ExtRat ord_alpha = min(ord_rat(p, ra.pair_q), ExtRat(ra.pair_e));
  Rat each;
  if (ord_alpha < ExtRat(0L))
    each = ord_alpha.value();
  else
    each = weight_from_sup(p, ra.pair_e);
  ra.pair_weight = 2 * each;

  // the monic norm form must reproduce P / lead exactly
  Poly monic = make_rat(1, 1) / a * P;
  Poly norm_form = (Poly::from_longs({0, 1}) - Poly::constant(q)) *
                       (Poly::from_longs({0, 1}) - Poly::constant(q)) -
                   Poly::constant(Rat(disc / (4 * a * a)));
  if (!(monic == norm_form)) fail(Errc::RootMismatch, "norm form does not reproduce P");
  return ra;
}

Rat weight_limit_from_roots(const Prime& p, const Poly& P, const RootAnalysis& ra) {
  if (!ra.conjugate_pair) return poly_weight(p, P, ra.representable);
  return Rat(ord_rat(p, P.leading()).value() + ra.pair_weight);
}

Verdict analyze(const ProblemInstance& inst) {
  try {
    validate_instance(inst);
    if (parity_check(inst.A, inst.B)) return ParityObstruction{};

    Rat bound = h_degree_bound(inst.A, inst.B);
    Poly h;
    if (bound < 0) {
      return HZeroPolynomialOnly{
          "degree bound " + rat_str(bound) +
          " forces h = 0; every solution of the first-order system is polynomial"};
    }
    if (inst.h_override) {
      h = *inst.h_override;
    } else {
      if (!inst.f_jet) return Inconclusive{"jets are required to compute h"};
      h = h_from_jets(inst.A, inst.B, *inst.f_jet, *inst.g_jet);
    }
    if (h.is_zero())
      return HZeroPolynomialOnly{
          "h vanishes up to the degree bound; every solution of the first-order system is "
          "polynomial"};

    OdeE E = build_ode(inst.A, inst.B, h);
    CharData cd = char_data(E);
    Recurrence R = derive_recurrence(inst.p, E);
    RootAnalysis ra = analyze_char_roots(inst.p, R.P[0]);
    Rat L = weight_limit_from_roots(inst.p, R.P[0], ra);

    if (!inst.f_jet) return Inconclusive{"jets are required to forward-solve the recurrence"};
    std::size_t M = std::max(inst.prefix_len, inst.f_jet->size());
    SeriesPrefix prefix = forward_solve(R, *inst.f_jet, M);
    const std::vector<Rat>& grid =
        inst.lambda_grid.empty() ? default_lambda_grid() : inst.lambda_grid;
    GrowthReport rep = growth_report(inst.p, R, prefix, L, grid);
    if (rep.violations > 0)
      return Inconclusive{"product inequality violated on sampled (n, k); internal inconsistency"};
    return GrowthContradiction{L, cd, R, rep, ra.notes};
  } catch (const Error& e) {
    return Inconclusive{e.what()};
  }
}

namespace {

std::string jet_str(const Jet& j) {
  std::string s = "[";
  for (std::size_t i = 0; i < j.coeffs.size(); ++i) {
    if (i) s += ", ";
    s += rat_str(j.coeffs[i]);
  }
  return s + "]";
}

}  // namespace

std::string render_verdict(const ProblemInstance& inst, const Verdict& v) {
  std::ostringstream os;
  os << "p = " << inst.p.value() << "\n";
  os << "A = " << inst.A.str() << "   (deg " << *inst.A.degree() << ")\n";
  os << "B = " << inst.B.str() << "   (deg " << *inst.B.degree() << ")\n";
  if (inst.f_jet) {
    os << "f-jet = " << jet_str(*inst.f_jet) << "\n";
    os << "g-jet = " << jet_str(*inst.g_jet) << "\n";
  }

  if (std::holds_alternative<ParityObstruction>(v)) {
    os << "deg A and deg B differ mod 2: the norm functions of A f^2 and B g^2 would have to "
          "agree on large circles with slopes of different parity.\n";
    os << "verdict: ParityObstruction - no entire solutions beyond constants\n";
    return os.str();
  }
  if (const auto* hz = std::get_if<HZeroPolynomialOnly>(&v)) {
    os << hz->reason << "\n";
    os << "verdict: HZeroPolynomialOnly - entire solutions are polynomial\n";
    return os.str();
  }
  if (const auto* in = std::get_if<Inconclusive>(&v)) {
    os << "reason: " << in->reason << "\n";
    os << "verdict: Inconclusive\n";
    return os.str();
  }

  const auto& gc = std::get<GrowthContradiction>(v);
  os << "characteristic number N(E) = " << gc.char_data.char_number << "\n";
  os << "characteristic polynomial = " << gc.char_data.char_poly.str("xi") << "\n";
  os << "gamma = " << rat_str(gc.recurrence.gamma) << ", recurrence span t = "
     << gc.recurrence.span << "\n";
  for (long s = 0; s <= gc.recurrence.span; ++s)
    os << "  P_" << s << "(n) = " << gc.recurrence.P[s].str("n") << "\n";
  for (const auto& note : gc.root_notes) os << "roots: " << note << "\n";
  os << "weight limit L = " << rat_str(gc.weight_limit) << "\n";
  os << "prefix window M = " << gc.report.window << "\n";
  os << "product-inequality samples: " << gc.report.witnesses.size()
     << " checked, " << gc.report.violations << " violations\n";
  os << "lambda grid:";
  for (const Rat& l : gc.report.lambda_grid) os << " " << rat_str(l);
  os << "\n";
  os << "lambda_star = "
     << (gc.report.lambda_star ? rat_str(*gc.report.lambda_star) : std::string("(none)"))
     << ", entire_consistent = " << (gc.report.entire_consistent ? "true" : "false") << "\n";
  os << "verdict: GrowthContradiction - no transcendental entire solution with these data\n";
  os << "  (assumes the series terms of h beyond the degree bound vanish, as finite jets cannot "
        "show it; jets here are exact rationals, so the algebraicity hypothesis on the initial "
        "coefficients holds)\n";
  return os.str();
}

}  // namespace pfe
