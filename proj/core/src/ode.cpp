#include "pfe/ode.hpp"

#include <algorithm>
#include <limits>

namespace pfe {

Rat h_degree_bound(const Poly& A, const Poly& B) {
  if (A.is_zero() || B.is_zero()) fail(Errc::ZeroInput, "h_degree_bound needs nonzero A and B");
  return make_rat(*A.degree() + *B.degree() - 2, 2);
}

namespace {

// Highest series order of (A' f + 2 A f') that the jet determines. The
// x-valuation of a polynomial factor shifts the horizon up.
long product_horizon(const Poly& A, long jet_top) {
  long horizon = std::numeric_limits<long>::max();
  Poly Ad = A.derivative();
  if (!Ad.is_zero())
    horizon = static_cast<long>(Ad.valuation_at_zero()) + jet_top;
  long from_fprime = static_cast<long>(A.valuation_at_zero()) + jet_top - 1;
  return std::min(horizon, from_fprime);
}

// Coefficient of x^m in A * s where s is a series given by its coefficients.
Rat conv_coeff(const Poly& A, const std::vector<Rat>& s, long m) {
  Rat acc(0);
  for (std::size_t k = 0; k < A.coeffs().size(); ++k) {
    long idx = m - static_cast<long>(k);
    if (idx < 0 || idx >= static_cast<long>(s.size())) continue;
    acc += A.coeffs()[k] * s[idx];
  }
  return acc;
}

}  // namespace

Poly h_from_jets(const Poly& A, const Poly& B, const Jet& fjet, const Jet& gjet) {
  Rat bound = h_degree_bound(A, B);
  if (gjet.size() == 0 || gjet.coeffs[0] == 0)
    fail(Errc::GZeroAtOrigin, "the quotient by g needs g(0) != 0");
  if (bound < 0) return Poly();  // the degree bound already forces h = 0

  long D = static_cast<long>(rat_floor(bound).get_si());
  long jet_top = static_cast<long>(fjet.size()) - 1;
  long W = product_horizon(A, jet_top);
  long G = static_cast<long>(gjet.size()) - 1;
  if (std::min(W, G) < D)
    fail(Errc::InsufficientJet, "jets determine the quotient only to order " +
                                    std::to_string(std::min(W, G)) + ", need " + std::to_string(D));

  // w = A' f + 2 A f', orders 0..D
  std::vector<Rat> f = fjet.coeffs;
  std::vector<Rat> fp(f.size() > 0 ? f.size() - 1 : 0);
  for (std::size_t i = 1; i < f.size(); ++i) fp[i - 1] = Rat(static_cast<long>(i)) * f[i];
  Poly Ad = A.derivative();
  std::vector<Rat> w(D + 1);
  for (long m = 0; m <= D; ++m) w[m] = conv_coeff(Ad, f, m) + 2 * conv_coeff(A, fp, m);

  // series division by g
  std::vector<Rat> h(D + 1);
  for (long m = 0; m <= D; ++m) {
    Rat acc = w[m];
    for (long i = 1; i <= m; ++i) acc -= gjet.coeffs[i] * h[m - i];
    h[m] = acc / gjet.coeffs[0];
  }
  return Poly(std::move(h));
}

OdeE build_ode(const Poly& A, const Poly& B, const Poly& h) {
  if (A.is_zero() || B.is_zero() || h.is_zero())
    fail(Errc::ZeroInput, "build_ode needs nonzero A, B, h");
  Poly Ad = A.derivative(), Add = Ad.derivative(), Bd = B.derivative(), hd = h.derivative();
  Rat two(2), four(4), six(6);
  OdeE E;
  E.q2 = four * (A * B * h);
  E.q1 = six * (Ad * B * h) + two * (A * Bd * h) - four * (A * B * hd);
  E.q0 = (Ad * Bd * h) + two * (Add * B * h) - two * (B * Ad * hd) + h * h * h;
  return E;
}

CharData char_data(const OdeE& E) {
  if (E.q2.is_zero()) fail(Errc::ZeroInput, "Q2 must not be identically zero");
  CharData cd;
  long best = std::numeric_limits<long>::min();
  for (int j = 0; j <= 2; ++j) {
    const Poly& Q = E.q(j);
    if (Q.is_zero()) continue;
    best = std::max(best, *Q.degree() - j);
  }
  cd.char_number = best;
  Poly P;
  for (int j = 0; j <= 2; ++j) {
    const Poly& Q = E.q(j);
    if (Q.is_zero() || *Q.degree() - j != best) continue;
    cd.contributing.push_back(j);
    P = P + Q.leading() * falling_factorial(static_cast<unsigned>(j));
  }
  cd.char_poly = std::move(P);
  return cd;
}

Poly closed_form_char_poly(unsigned eta, unsigned chi, unsigned mu, const Rat& a, const Rat& b,
                           const Rat& hlead) {
  Rat bound = make_rat(static_cast<long>(eta) + static_cast<long>(chi) - 2, 2);
  Rat mu_r(static_cast<long>(mu));
  if (mu_r > bound)
    fail(Errc::BoundViolation, "deg h = " + std::to_string(mu) + " exceeds the bound " +
                                   rat_str(bound));
  Rat abh = a * b * hlead;
  Poly xi = Poly::from_longs({0, 1});
  Poly core = Rat(4) * (xi * xi - xi);
  if (mu_r == bound) {
    core = core + Rat(4 * (static_cast<long>(eta) + 1)) * xi +
           Poly::constant(Rat(static_cast<long>(eta) * static_cast<long>(eta)) +
                          hlead * hlead / (a * b));
  } else {
    long e = eta, c = chi, m = mu;
    core = core + Rat(6 * e + 2 * c - 4 * m) * xi +
           Poly::constant(Rat(e * c + 2 * e * (e - 1) - 2 * e * m));
  }
  return abh * core;
}

}  // namespace pfe
