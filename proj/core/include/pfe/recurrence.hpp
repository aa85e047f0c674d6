#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pfe/ode.hpp"
#include "pfe/poly.hpp"
#include "pfe/weights.hpp"

namespace pfe {

/// The coefficient recurrence of an ODE:
///   P_t(n) c_{n+t} + ... + P_1(n) c_{n+1} + P_0(n) c_n = 0
/// with P_0 = gamma * (characteristic polynomial) and every P_i gamma-scaled
/// so that ord_p(P_i(n)) >= 0 for all integers n. The constraints hold for
/// every n >= first_constraint (= -N(E)) once indices below zero are read as
/// absent, which covers the low-order coefficient matching as well.
struct Recurrence {
  Prime prime;
  long span = 0;  // t
  std::vector<Poly> P;
  Rat gamma;
  OdeE origin;
  long char_number = 0;
  long first_constraint = 0;
};

Recurrence derive_recurrence(const Prime& p, const OdeE& E);

/// Forward-solves the recurrence for c_0..c_M. Each constraint is solved for
/// its highest-index coefficient; when that multiplier vanishes the
/// constraint is verified against known values instead (Errc::Inconsistent on
/// failure) and the untouched coefficient must come from init
/// (Errc::FreeParameter otherwise). Extra init entries are consistency
/// constraints, not overrides.
SeriesPrefix forward_solve(const Recurrence& R, const Jet& init, std::size_t M);

/// One sampled instance of the ultrametric product inequality
///   ord(P_0(n) ... P_0(n+k)) + ord(c_n) >= min ord(c_{n+k+1}..c_{n+k+t}),
/// which every genuine solution satisfies for every n, k.
struct GrowthWitness {
  std::size_t n = 0;
  std::size_t k = 0;
  ExtRat lhs;
  ExtRat rhs;
  bool ok = true;
};

/// Valuation growth of a solution prefix against the weight limit L of P_0.
/// entire_consistent and lambda_star are windowed proxies for tail
/// statements; `window` records the prefix length they were decided on.
struct GrowthReport {
  std::vector<ExtRat> valuations;
  Rat weight_limit;
  std::optional<Rat> lambda_star;  // max grid slope with bounded-below ord(c_n) - lambda*n
  bool entire_consistent = false;  // ord(c_n) - lambda*n grows, for every grid lambda
  std::vector<GrowthWitness> witnesses;
  std::size_t violations = 0;
  std::size_t window = 0;
  std::vector<Rat> lambda_grid;
  bool degenerate = false;  // zero prefix
};

/// Windowed slope analysis alone (no recurrence verification); the pieces of
/// growth_report that only need the prefix.
struct LambdaAnalysis {
  std::optional<Rat> lambda_star;
  bool entire_consistent = false;
};
LambdaAnalysis lambda_analysis(const SeriesPrefix& s, const std::vector<Rat>& lambda_grid);

/// Verifies the prefix against R (Errc::NotASolution), samples the product
/// inequality on n <= M/4, k in {1,2,4,...}, and runs the slope analysis.
GrowthReport growth_report(const Prime& p, const Recurrence& R, const SeriesPrefix& s,
                           const Rat& weight_limit, const std::vector<Rat>& lambda_grid);

}  // namespace pfe
