#include "pfe/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace pfe {

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { strip(); }

void Poly::strip() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(Rat c) {
  Poly p;
  if (c != 0) p.c_.push_back(std::move(c));
  return p;
}

Poly Poly::from_longs(std::initializer_list<long> coeffs) {
  std::vector<Rat> v;
  v.reserve(coeffs.size());
  for (long c : coeffs) v.emplace_back(c);
  return Poly(std::move(v));
}

Poly Poly::monomial(Rat c, std::size_t power) {
  Poly p;
  if (c == 0) return p;
  p.c_.assign(power + 1, Rat(0));
  p.c_[power] = std::move(c);
  return p;
}

std::optional<long> Poly::degree() const {
  if (c_.empty()) return std::nullopt;
  return static_cast<long>(c_.size()) - 1;
}

const Rat& Poly::leading() const {
  if (c_.empty()) throw std::invalid_argument("leading() of the zero polynomial");
  return c_.back();
}

Rat Poly::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }

std::size_t Poly::valuation_at_zero() const {
  if (c_.empty()) throw std::invalid_argument("valuation_at_zero() of the zero polynomial");
  std::size_t v = 0;
  while (c_[v] == 0) ++v;
  return v;
}

Rat Poly::operator()(const Rat& x) const {
  Rat acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Int Poly::eval_int_numerator(const Int& n, Int& den_out) const {
  // P(n) = (sum of c_i' n^i) / lcm of denominators; exact, no mpq churn.
  Int lcm(1);
  for (const Rat& c : c_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  Int acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) {
    Int scaled = c_[i].get_num() * (lcm / c_[i].get_den());
    acc = acc * n + scaled;
  }
  den_out = lcm;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rat(static_cast<long>(i)) * c_[i];
  return Poly(std::move(d));
}

Poly Poly::shifted_arg(const Rat& s) const {
  // Horner in (x + s)
  Poly xs = Poly::from_longs({0, 1}) + Poly::constant(s);
  Poly acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * xs + Poly::constant(c_[i]);
  return acc;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (Rat& c : r.c_) c = -c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return Poly(std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(r));
}

Poly operator*(const Rat& s, const Poly& a) {
  if (s == 0) return Poly();
  std::vector<Rat> r = a.c_;
  for (Rat& c : r) c *= s;
  return Poly(std::move(r));
}

std::string Poly::str(std::string_view var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rat& c = c_[i];
    if (c == 0) continue;
    Rat mag = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit_coeff = (mag == 1) && i > 0;
    if (!unit_coeff) os << rat_str(mag);
    if (i > 0) {
      if (!unit_coeff) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

PolyDivMod poly_divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by the zero polynomial");
  Poly r = a;
  std::vector<Rat> q;
  long db = *b.degree();
  while (!r.is_zero() && *r.degree() >= db) {
    long k = *r.degree() - db;
    Rat f = r.leading() / b.leading();
    if (static_cast<std::size_t>(k) >= q.size()) q.resize(k + 1, Rat(0));
    q[k] = f;
    r = r - Poly::monomial(f, k) * b;
  }
  return {Poly(std::move(q)), std::move(r)};
}

Poly falling_factorial(unsigned j) {
  Poly acc = Poly::constant(Rat(1));
  for (unsigned k = 0; k < j; ++k)
    acc = acc * (Poly::from_longs({0, 1}) - Poly::constant(Rat(static_cast<long>(k))));
  return acc;
}

GammaScaled gamma_normalize(const Prime& p, const std::vector<Poly>& family) {
  bool any = false;
  Rat vmin;
  for (const Poly& P : family)
    for (const Rat& c : P.coeffs()) {
      if (c == 0) continue;
      Rat v = ord_rat(p, c).value();
      if (!any || v < vmin) vmin = v;
      any = true;
    }
  if (!any) fail(Errc::AllZero, "gamma_normalize: every member is the zero polynomial");
  long v = static_cast<long>(vmin.get_num().get_si());
  if (!is_integer(vmin)) {
    // coefficients are rational, so their ord is always an integer
    throw std::logic_error("gamma_normalize: non-integer coefficient valuation");
  }
  Rat gamma = pow_rat(p.as_int(), -v);
  std::vector<Poly> scaled;
  scaled.reserve(family.size());
  for (const Poly& P : family) scaled.push_back(gamma * P);
  return {gamma, std::move(scaled)};
}

ExtRat eval_ord(const Prime& p, const Poly& P, const Int& n) {
  if (P.is_zero()) return ExtRat::infinity();
  Int den;
  Int num = P.eval_int_numerator(n, den);
  if (num == 0) return ExtRat::infinity();
  return ExtRat(Rat(ord_int(p, num).value() - ord_int(p, den).value()));
}

}  // namespace pfe
