#pragma once

#include <vector>

#include "pfe/poly.hpp"

namespace pfe {

/// Q2 y'' + Q1 y' + Q0 y = 0 with Q2 not identically zero.
struct OdeE {
  Poly q2, q1, q0;
  const Poly& q(int j) const { return j == 2 ? q2 : (j == 1 ? q1 : q0); }
};

/// Characteristic data of an ODE: N(E) = max over nonzero Q^(j) of
/// (deg Q^(j) - j), and P(xi) = sum over the attaining j of
/// leading(Q^(j)) * (xi)_j. P multiplies c_n in the coefficient recurrence.
struct CharData {
  long char_number = 0;
  Poly char_poly;
  std::vector<int> contributing;  // sorted subset of {0,1,2}
};

/// Taylor coefficients f(0), f'(0)/1!, f''(0)/2!, ... at the origin.
struct Jet {
  std::vector<Rat> coeffs;
  std::size_t size() const { return coeffs.size(); }
};

/// (deg A + deg B)/2 - 1, exact (may be half-integral). A negative bound
/// forces h identically zero.
Rat h_degree_bound(const Poly& A, const Poly& B);

/// The polynomial h with A'f + 2Af' = hg, computed as the truncated series
/// quotient (A'f + 2Af') / g up to degree floor(h_degree_bound). Terms beyond
/// the bound vanish for genuine entire solutions and are not computed here.
/// Requires g(0) != 0 and jets long enough to determine every quotient
/// coefficient up to the bound.
Poly h_from_jets(const Poly& A, const Poly& B, const Jet& fjet, const Jet& gjet);

/// The second-order equation satisfied by f when A'f + 2Af' = hg and
/// B'g + 2Bg' = -hf:
///   Q2 = 4ABh,
///   Q1 = 6A'Bh + 2AB'h - 4ABh',
///   Q0 = A'B'h + 2A''Bh - 2BA'h' + h^3.
OdeE build_ode(const Poly& A, const Poly& B, const Poly& h);

CharData char_data(const OdeE& E);

/// Closed form of the characteristic polynomial of build_ode(A, B, h) from
/// the shape data alone (eta = deg A, chi = deg B, mu = deg h, a, b, hlead
/// the leading coefficients):
///   mu = (eta+chi)/2 - 1:  a*b*h * [4 xi(xi-1) + 4(eta+1) xi + eta^2 + h^2/(a*b)]
///   mu < (eta+chi)/2 - 1:  a*b*h * [4 xi(xi-1) + (6 eta + 2 chi - 4 mu) xi
///                                   + (eta chi + 2 eta(eta-1) - 2 eta mu)]
/// mu beyond the bound throws Errc::BoundViolation.
Poly closed_form_char_poly(unsigned eta, unsigned chi, unsigned mu, const Rat& a, const Rat& b,
                           const Rat& hlead);

}  // namespace pfe
