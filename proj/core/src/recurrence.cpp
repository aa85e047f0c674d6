#include "pfe/recurrence.hpp"

#include <algorithm>
#include <stdexcept>

namespace pfe {

Recurrence derive_recurrence(const Prime& p, const OdeE& E) {
  CharData cd = char_data(E);
  const long N = cd.char_number;

  // The x^(n+N) coefficient of Q2 y'' + Q1 y' + Q0 y collects
  // q^(j)_k * (n+s)_j * c_{n+s} with s = N + j - k. Each s lies in [0, t]
  // because N >= deg Q^(j) - j.
  long t = 0;
  for (int j = 0; j <= 2; ++j) {
    const Poly& Q = E.q(j);
    if (Q.is_zero()) continue;
    for (std::size_t k = 0; k < Q.coeffs().size(); ++k)
      if (Q.coeffs()[k] != 0) t = std::max(t, N + j - static_cast<long>(k));
  }

  std::vector<Poly> fam(t + 1);
  for (int j = 0; j <= 2; ++j) {
    const Poly& Q = E.q(j);
    if (Q.is_zero()) continue;
    Poly ff = falling_factorial(static_cast<unsigned>(j));
    for (std::size_t k = 0; k < Q.coeffs().size(); ++k) {
      if (Q.coeffs()[k] == 0) continue;
      long s = N + j - static_cast<long>(k);
      fam[s] = fam[s] + Q.coeffs()[k] * ff.shifted_arg(Rat(s));
    }
  }
  if (!(fam[0] == cd.char_poly))
    throw std::logic_error("recurrence derivation: c_n multiplier differs from P_E");
  if (fam[t].is_zero()) throw std::logic_error("recurrence derivation: P_t vanished");

  GammaScaled gs = gamma_normalize(p, fam);
  Recurrence R{p, t, std::move(gs.scaled), gs.gamma, E, N, -N};
  return R;
}

namespace {

// Left side of constraint n, summed over the known coefficients with index
// below n + t (negative indices read as absent).
Rat lower_part(const Recurrence& R, const std::vector<std::optional<Rat>>& c, long n) {
  Rat acc(0);
  for (long s = 0; s < R.span; ++s) {
    long m = n + s;
    if (m < 0) continue;
    if (R.P[s].is_zero()) continue;
    Rat mult = R.P[s](Rat(n));
    if (mult == 0) continue;
    if (!c[m]) fail(Errc::FreeParameter, "coefficient c_" + std::to_string(m) +
                                             " is not determined; supply a longer init");
    acc += mult * *c[m];
  }
  return acc;
}

}  // namespace

SeriesPrefix forward_solve(const Recurrence& R, const Jet& init, std::size_t M) {
  if (init.size() > M + 1)
    throw std::invalid_argument("forward_solve: M must cover the init prefix");
  std::vector<std::optional<Rat>> c(M + 1);
  for (std::size_t i = 0; i < init.size(); ++i) c[i] = init.coeffs[i];

  for (long n = R.first_constraint; n + R.span <= static_cast<long>(M); ++n) {
    long idx = n + R.span;
    if (idx < 0) continue;
    Rat acc = lower_part(R, c, n);
    Rat lead = R.P[R.span](Rat(n));
    if (lead != 0) {
      Rat v = Rat(-acc / lead);
      if (c[idx]) {
        if (*c[idx] != v)
          fail(Errc::Inconsistent, "constraint at n = " + std::to_string(n) + " forces c_" +
                                       std::to_string(idx) + " = " + rat_str(v) +
                                       ", init says " + rat_str(*c[idx]));
      } else {
        c[idx] = v;
      }
    } else {
      // the top coefficient drops out: pure consistency constraint
      if (acc != 0)
        fail(Errc::Inconsistent,
             "constraint at n = " + std::to_string(n) + " cannot be satisfied");
      if (!c[idx])
        fail(Errc::FreeParameter, "c_" + std::to_string(idx) +
                                      " is free (multiplier vanishes); supply it in init");
    }
  }

  std::vector<Rat> out(M + 1);
  for (std::size_t i = 0; i <= M; ++i) {
    if (!c[i]) fail(Errc::FreeParameter, "c_" + std::to_string(i) + " undetermined");
    out[i] = *c[i];
  }
  return SeriesPrefix{std::move(out), R.prime};
}

LambdaAnalysis lambda_analysis(const SeriesPrefix& s, const std::vector<Rat>& lambda_grid) {
  const std::size_t M = s.coeffs.empty() ? 0 : s.coeffs.size() - 1;
  LambdaAnalysis out;
  out.entire_consistent = true;

  std::vector<std::size_t> support;
  for (std::size_t n = 0; n < s.coeffs.size(); ++n)
    if (s.coeffs[n] != 0) support.push_back(n);
  if (support.empty()) {
    // the zero prefix is entire; every slope is bounded
    out.entire_consistent = true;
    for (const Rat& l : lambda_grid)
      if (!out.lambda_star || l > *out.lambda_star) out.lambda_star = l;
    return out;
  }

  std::vector<Rat> ords(support.size());
  for (std::size_t i = 0; i < support.size(); ++i)
    ords[i] = ord_rat(s.prime, s.coeffs[support[i]]).value();

  const std::size_t half = M / 2;
  for (const Rat& lambda : lambda_grid) {
    bool have_early = false, have_late = false;
    Rat early_min, late_min;
    for (std::size_t i = 0; i < support.size(); ++i) {
      Rat d = ords[i] - lambda * Rat(static_cast<long>(support[i]));
      if (support[i] <= half) {
        if (!have_early || d < early_min) early_min = d;
        have_early = true;
      } else {
        if (!have_late || d < late_min) late_min = d;
        have_late = true;
      }
    }
    // windowed proxies: "bounded below" = no new low in the late half;
    // "grows" = the late half clears the early minimum by a margin
    bool bounded = !have_late || !have_early || late_min >= early_min;
    bool grows = !have_late || !have_early || late_min >= early_min + 1;
    if (bounded && (!out.lambda_star || lambda > *out.lambda_star)) out.lambda_star = lambda;
    if (!grows) out.entire_consistent = false;
  }
  return out;
}

GrowthReport growth_report(const Prime& p, const Recurrence& R, const SeriesPrefix& s,
                           const Rat& weight_limit, const std::vector<Rat>& lambda_grid) {
  if (p.value() != R.prime.value())
    throw std::invalid_argument("growth_report: prime mismatch with the recurrence");
  const std::size_t M = s.coeffs.empty() ? 0 : s.coeffs.size() - 1;

  // the prefix must satisfy every in-window constraint exactly
  for (long n = R.first_constraint; n + R.span <= static_cast<long>(M); ++n) {
    Rat acc(0);
    for (long off = 0; off <= R.span; ++off) {
      long m = n + off;
      if (m < 0) continue;
      if (R.P[off].is_zero()) continue;
      acc += R.P[off](Rat(n)) * s.coeffs[m];
    }
    if (acc != 0)
      fail(Errc::NotASolution,
           "prefix violates the recurrence at n = " + std::to_string(n));
  }

  GrowthReport rep;
  rep.weight_limit = weight_limit;
  rep.window = M;
  rep.lambda_grid = lambda_grid;
  rep.valuations.reserve(s.coeffs.size());
  for (const Rat& c : s.coeffs) rep.valuations.push_back(ord_rat(p, c));

  bool all_zero = true;
  for (const Rat& c : s.coeffs)
    if (c != 0) {
      all_zero = false;
      break;
    }
  rep.degenerate = all_zero;

  if (!all_zero) {
    // ord(P_0(n) ... P_0(n+k)) + ord(c_n) >= min ord(c_{n+k+1} .. c_{n+k+t}),
    // sampled for n <= M/4 and geometric k.
    std::vector<ExtRat> p0_ord(M + 1);
    for (std::size_t n = 0; n <= M; ++n) p0_ord[n] = eval_ord(p, R.P[0], Int(n));
    for (std::size_t n = 0; n <= M / 4; ++n) {
      if (s.coeffs[n] == 0) continue;
      for (std::size_t k = 1; n + k + R.span <= M; k *= 2) {
        ExtRat lhs = rep.valuations[n];
        for (std::size_t i = n; i <= n + k; ++i) lhs += p0_ord[i];
        ExtRat rhs = ExtRat::infinity();
        for (long j = 1; j <= R.span; ++j) rhs = min(rhs, rep.valuations[n + k + j]);
        bool ok = lhs >= rhs;
        rep.witnesses.push_back({n, k, lhs, rhs, ok});
        if (!ok) ++rep.violations;
      }
    }
  }

  LambdaAnalysis la = lambda_analysis(s, lambda_grid);
  rep.lambda_star = la.lambda_star;
  rep.entire_consistent = la.entire_consistent;
  return rep;
}

}  // namespace pfe
