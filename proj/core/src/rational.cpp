#include "pfe/rational.hpp"

#include "pfe/error.hpp"

namespace pfe {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) fail(Errc::ParseError, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

Rat parse_rat(std::string_view text) {
  auto bad = [&] { fail(Errc::ParseError, "not a rational: '" + std::string(text) + "'"); };
  if (text.empty()) bad();
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Int n(s);
      return Rat(n);
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (num.empty() || den.empty()) bad();
    return make_rat(Int(num), Int(den));
  } catch (const std::invalid_argument&) {
    bad();
  }
  return Rat();  // unreachable
}

std::string rat_str(const Rat& q) { return q.get_str(); }

std::string int_str(const Int& n) { return n.get_str(); }

double to_double(const Rat& q) { return q.get_d(); }

bool is_integer(const Rat& q) { return q.get_den() == 1; }

Int rat_floor(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return f;
}

Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rat pow_rat(const Int& base, long exp) {
  if (exp >= 0) return Rat(pow_int(base, static_cast<unsigned long>(exp)));
  if (base == 0) fail(Errc::ParseError, "0 to a negative power");
  return make_rat(Int(1), pow_int(base, static_cast<unsigned long>(-exp)));
}

}  // namespace pfe
