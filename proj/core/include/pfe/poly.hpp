#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pfe/valuation.hpp"

namespace pfe {

/// Dense univariate polynomial over the rationals, canonical form
/// (no trailing zero coefficient). The zero polynomial has empty storage
/// and degree() == nullopt, a sentinel below every integer.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);

  static Poly constant(Rat c);
  static Poly from_longs(std::initializer_list<long> coeffs);
  static Poly monomial(Rat c, std::size_t power);

  bool is_zero() const { return c_.empty(); }
  std::optional<long> degree() const;
  const Rat& leading() const;  // nonzero polynomials only
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(std::size_t k) const;
  /// Index of the lowest nonzero coefficient (nonzero polynomials only).
  std::size_t valuation_at_zero() const;

  Rat operator()(const Rat& x) const;
  Int eval_int_numerator(const Int& n, Int& den_out) const;

  Poly derivative() const;
  /// P(x + s), expanded.
  Poly shifted_arg(const Rat& s) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rat& s, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str(std::string_view var = "x") const;

private:
  std::vector<Rat> c_;
  void strip();
};

/// Exact division with remainder: a = q*b + r, deg r < deg b. b must be nonzero.
struct PolyDivMod {
  Poly quotient;
  Poly remainder;
};
PolyDivMod poly_divmod(const Poly& a, const Poly& b);

/// The falling factorial (xi)_j = xi (xi-1) ... (xi-j+1), expanded;
/// (xi)_0 = 1 by the empty-product convention.
Poly falling_factorial(unsigned j);

/// Scales a polynomial family by gamma = p^(-v), v the minimal ord_p over all
/// coefficients of all members. Afterwards every coefficient has ord_p >= 0
/// and some coefficient has ord_p = 0, so ord_p(P(n)) >= 0 at every integer n.
struct GammaScaled {
  Rat gamma;
  std::vector<Poly> scaled;
};
GammaScaled gamma_normalize(const Prime& p, const std::vector<Poly>& family);

/// ord_p of the exact value P(n).
ExtRat eval_ord(const Prime& p, const Poly& P, const Int& n);

}  // namespace pfe
