// Acceptance suite: one line per criterion, exit code = number of failures.

#include <chrono>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "pfe/analyzer.hpp"
#include "pfe/instance_io.hpp"

using namespace pfe;
using Clock = std::chrono::steady_clock;

namespace {

struct Harness {
  int failures = 0;

  void report(int id, const std::string& what, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n";
    if (!ok) ++failures;
  }

  template <class F>
  void run(int id, const std::string& what, F&& f) {
    try {
      auto [ok, detail] = f();
      report(id, what, ok, detail);
    } catch (const std::exception& e) {
      report(id, what, false, std::string("exception: ") + e.what());
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Rat abs_rat(const Rat& q) { return q < 0 ? Rat(-q) : q; }

std::string detail_time(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

ProblemInstance instance_of(long p, Poly A, Poly B, std::vector<Rat> fjet, std::vector<Rat> gjet) {
  return ProblemInstance{Prime(p), std::move(A),      std::move(B), Jet{std::move(fjet)},
                         Jet{std::move(gjet)}, std::nullopt, Int(0),       {},
                         200};
}

}  // namespace

int main() {
  Harness h;

  // 1. ord_p(n!) equals the Legendre sum for all n <= 1e5, p in {2,3,5,7,11}.
  h.run(1, "factorial identity vs Legendre oracle, n <= 1e5, exact", [] {
    auto t0 = Clock::now();
    for (long pv : {2L, 3L, 5L, 7L, 11L}) {
      Prime p(pv);
      for (long n = 0; n <= 100000; ++n) {
        if (!(ord_factorial(p, Int(n)) == ExtRat(Rat(test::legendre_factorial_ord(p, Int(n))))))
          return std::pair{false, "mismatch at p=" + std::to_string(pv) +
                                      ", n=" + std::to_string(n)};
      }
    }
    double dt = seconds_since(t0);
    return std::pair{dt < 5.0, detail_time(dt)};
  });

  // 2. Truncated ord mean: scan at N = 1e6 within 1e-4 of the closed form.
  h.run(2, "partial-sum mean vs closed form, (p,s) grid, N = 1e6, gap <= 1e-4", [] {
    Rat tol = make_rat(1, 10000);
    for (long pv : {2L, 3L, 5L}) {
      Prime p(pv);
      for (unsigned s = 0; s <= 3; ++s) {
        auto t0 = Clock::now();
        ScanReport rep = bounded_ord_mean_scan(p, s, Int(1000000));
        double dt = seconds_since(t0);
        if (rep.abs_gap > tol)
          return std::pair{false, "gap " + rat_str(rep.abs_gap) + " at p=" + std::to_string(pv) +
                                      ", s=" + std::to_string(s)};
        if (dt >= 10.0)
          return std::pair{false, "pair took " + detail_time(dt)};
      }
    }
    return std::pair{true, std::string()};
  });

  // 3. Z_p weights: empirical mean at N = 1e6 within 5e-3 of 1/(p-1).
  h.run(3, "Z_p case weights at N = 1e6, gap < 5e-3", [] {
    Rat tol = make_rat(5, 1000);
    for (long pv : {3L, 5L}) {
      Prime p(pv);
      std::vector<std::pair<Rat, Int>> cases = {
          {Rat(7), Int(8)},                      // natural number, scan starts past the pole
          {make_rat(5, 2), Int(0)},              //
          {make_rat(1, 1 - pv), Int(0)},         // 1/(1-p)
      };
      for (const auto& [alpha, m] : cases) {
        ScanReport rep = weight_empirical(p, rational_elt(alpha), m, Int(1000000));
        if (!(rep.target == make_rat(1, pv - 1)))
          return std::pair{false, std::string("wrong target for alpha=") + rat_str(alpha)};
        if (rep.abs_gap >= tol)
          return std::pair{false, "gap " + rat_str(rep.abs_gap) + " for alpha=" + rat_str(alpha) +
                                      ", p=" + std::to_string(pv)};
      }
    }
    return std::pair{true, std::string()};
  });

  // 4. Outside the unit disk every summand equals ord(alpha): mean exactly -1.
  h.run(4, "outside-disk case is exact at every N (alpha = 1/p)", [] {
    for (long pv : {3L, 5L}) {
      Prime p(pv);
      for (long N : {10L, 1000L, 100000L}) {
        ScanReport rep = weight_empirical(p, rational_elt(make_rat(1, pv)), Int(0), Int(N));
        if (!(rep.mean == Rat(-1)) || !(rep.abs_gap == Rat(0)))
          return std::pair{false, "mean " + rat_str(rep.mean) + " at N=" + std::to_string(N)};
      }
    }
    return std::pair{true, std::string()};
  });

  // 5. Sign of the fractional correction, decided by the scan at N = 3^12.
  h.run(5, "weight sign resolution at N = 3^12: near 7/18, far from 5/18, flagged", [] {
    Prime p(3);
    PAdicElement alpha = ramified_shift(p, Rat(0), make_rat(3, 2), Rat(1));
    WeightReport w = weight(p, alpha);
    if (!(w.weight == make_rat(7, 18))) return std::pair{false, std::string("closed form wrong")};
    if (!w.subtracted_variant || !(*w.subtracted_variant == make_rat(5, 18)) || w.note.empty())
      return std::pair{false, std::string("report does not flag the sign discrepancy")};
    ScanReport rep = weight_empirical(p, alpha, Int(0), Int(531441));
    Rat gap_plus = abs_rat(Rat(rep.mean - make_rat(7, 18)));
    Rat gap_minus = abs_rat(Rat(rep.mean - make_rat(5, 18)));
    bool ok = gap_plus < make_rat(1, 1000) && gap_minus > make_rat(5, 100);
    return std::pair{ok, "mean = " + rat_str(rep.mean) + ", |mean - 7/18| = " + rat_str(gap_plus)};
  });

  // 6. Partial-fraction identity, exhaustive over reduced a/b, b > 1, n <= 12.
  h.run(6, "partial-fraction identity exhaustive (a,b <= 10, n <= 12), exact", [] {
    for (long a = 1; a <= 10; ++a)
      for (long b = 2; b <= 10; ++b) {
        if (std::gcd(a, b) != 1) continue;
        for (unsigned n = 0; n <= 12; ++n)
          if (!partial_fraction_identity(make_rat(a, b), n))
            return std::pair{false,
                             "fails at alpha=" + std::to_string(a) + "/" + std::to_string(b) +
                                 ", n=" + std::to_string(n)};
      }
    return std::pair{true, std::string()};
  });

  // 7. Closed-form characteristic polynomials on 100 randomized instances.
  h.run(7, "closed forms equal char_data(build_ode(...)) on 100 instances, exact", [] {
    auto t0 = Clock::now();
    test::Rng rng(71);
    int checked = 0;
    while (checked < 100) {
      long eta = rng.integer(0, 6), chi = rng.integer(0, 6);
      if (eta + chi < 2) continue;
      long mu = rng.integer(0, (eta + chi) / 2 - 1);
      auto poly_of = [&](long deg) {
        std::vector<Rat> c;
        for (long i = 0; i < deg; ++i) c.push_back(rng.rat_or_zero(9, 4));
        c.push_back(rng.rat(9, 4));
        return Poly(std::move(c));
      };
      Poly A = poly_of(eta), B = poly_of(chi), hp = poly_of(mu);
      CharData cd = char_data(build_ode(A, B, hp));
      Poly closed = closed_form_char_poly(static_cast<unsigned>(eta), static_cast<unsigned>(chi),
                                          static_cast<unsigned>(mu), A.leading(), B.leading(),
                                          hp.leading());
      if (!(cd.char_poly == closed))
        return std::pair{false, "mismatch at eta=" + std::to_string(eta) +
                                    ", chi=" + std::to_string(chi) + ", mu=" + std::to_string(mu)};
      if (cd.char_number != eta + chi + mu - 2)
        return std::pair{false, std::string("characteristic number off")};
      ++checked;
    }
    double dt = seconds_since(t0);
    return std::pair{dt < 2.0, detail_time(dt)};
  });

  // 8. y'' - y = 0: exact factorial coefficients and the growth verdict at p = 3.
  h.run(8, "exponential recurrence fixture: exact 1/(2k)!, lambda_star near -1/2", [] {
    OdeE E{Poly::from_longs({1}), Poly(), Poly::from_longs({-1})};
    Prime p(3);
    Recurrence R = derive_recurrence(p, E);
    SeriesPrefix s = forward_solve(R, Jet{{Rat(1), Rat(0)}}, 200);
    Int fact(1);
    for (long k = 1; 2 * k <= 50; ++k) {
      fact *= (2 * k - 1) * (2 * k);
      if (!(s.coeffs[2 * k] == make_rat(Int(1), fact)))
        return std::pair{false, "c_" + std::to_string(2 * k) + " != 1/(2k)!"};
    }
    std::vector<Rat> grid;
    for (long i = -10; i <= 0; ++i) grid.push_back(make_rat(i, 10));
    GrowthReport rep = growth_report(p, R, s, Rat(0), grid);
    if (rep.entire_consistent) return std::pair{false, std::string("prefix read as entire")};
    if (!rep.lambda_star) return std::pair{false, std::string("no bounded slope found")};
    Rat err = abs_rat(Rat(*rep.lambda_star + make_rat(1, 2)));
    bool ok = err <= make_rat(1, 10);
    return std::pair{ok, "lambda_star = " + rat_str(*rep.lambda_star)};
  });

  // 9. Pipeline fixtures: the three verdicts, with exact characteristic data.
  h.run(9, "pipeline fixtures: HZeroPolynomialOnly / ParityObstruction / GrowthContradiction",
        [] {
          Verdict v1 = analyze(
              instance_of(5, Poly::from_longs({1}), Poly::from_longs({1}), {Rat(0)}, {Rat(1)}));
          if (!std::holds_alternative<HZeroPolynomialOnly>(v1))
            return std::pair{false, std::string("constant instance: ") + verdict_name(v1)};

          ProblemInstance parity =
              instance_of(5, Poly::from_longs({1}), Poly::from_longs({-3, 1}), {Rat(2)}, {Rat(1)});
          Verdict v2 = analyze(parity);
          if (!std::holds_alternative<ParityObstruction>(v2))
            return std::pair{false, std::string("odd-degree instance: ") + verdict_name(v2)};

          Verdict v3 = analyze(instance_of(5, Poly::from_longs({1, 0, 1}), Poly::from_longs({1}),
                                           {Rat(0), Rat(1)}, {Rat(1)}));
          if (!std::holds_alternative<GrowthContradiction>(v3))
            return std::pair{false, std::string("quadratic instance: ") + verdict_name(v3)};
          const auto& gc = std::get<GrowthContradiction>(v3);
          if (!(gc.char_data.char_poly == Poly::from_longs({16, 16, 8})))
            return std::pair{false, std::string("characteristic polynomial not 8xi^2+16xi+16")};
          if (!(gc.weight_limit == make_rat(1, 2)))
            return std::pair{false, "L = " + rat_str(gc.weight_limit) + ", want 1/2"};
          ScanReport scan = poly_weight_scan(Prime(5), gc.recurrence.P[0], Int(0), Int(390625),
                                             gc.weight_limit);
          if (scan.abs_gap >= make_rat(5, 1000))
            return std::pair{false, "empirical gap " + rat_str(scan.abs_gap) + " at N = 5^8"};
          return std::pair{true, "empirical L gap = " + rat_str(scan.abs_gap)};
        });

  // 10. The sampled product inequality holds with zero violations on every fixture.
  h.run(10, "product-inequality witnesses: zero violations on all solved fixtures", [] {
    std::size_t samples = 0;
    auto check = [&samples](const Prime& p, const OdeE& E, const Jet& init,
                            std::size_t M) -> std::string {
      Recurrence R = derive_recurrence(p, E);
      SeriesPrefix s = forward_solve(R, init, M);
      GrowthReport rep = growth_report(p, R, s, Rat(0), {Rat(0)});
      samples += rep.witnesses.size();
      if (rep.violations != 0) return "violations in a fixture";
      return "";
    };
    OdeE expE{Poly::from_longs({1}), Poly(), Poly::from_longs({-1})};
    for (long pv : {3L, 5L})
      if (auto e = check(Prime(pv), expE, Jet{{Rat(1), Rat(0)}}, 160); !e.empty())
        return std::pair{false, e};
    OdeE airy{Poly::from_longs({1}), Poly(), Poly::from_longs({0, -1})};
    if (auto e = check(Prime(5), airy, Jet{{Rat(1), Rat(0)}}, 160); !e.empty())
      return std::pair{false, e};

    for (long pv : {5L, 7L}) {
      Verdict v = analyze(instance_of(pv, Poly::from_longs({1, 0, 1}), Poly::from_longs({1}),
                                      {Rat(0), Rat(1)}, {Rat(1)}));
      const auto* gc = std::get_if<GrowthContradiction>(&v);
      if (!gc) return std::pair{false, std::string("pipeline fixture did not complete")};
      samples += gc->report.witnesses.size();
      if (gc->report.violations != 0)
        return std::pair{false, std::string("violations in the pipeline fixture")};
    }

    test::Rng rng(101);
    int usable = 0;
    while (usable < 20) {
      std::vector<Rat> c;
      long d = rng.integer(0, 3);
      for (long i = 0; i < d; ++i) c.push_back(rng.rat_or_zero(7, 3));
      c.push_back(rng.rat(7, 3));
      Poly q2(c);
      if (q2.coeff(0) == 0) continue;
      std::vector<Rat> c0;
      long d0 = rng.integer(0, 2);
      for (long i = 0; i < d0; ++i) c0.push_back(rng.rat_or_zero(7, 3));
      c0.push_back(rng.rat(7, 3));
      OdeE E{q2, Poly(), Poly(c0)};
      try {
        if (auto e = check(Prime(3), E, Jet{{rng.rat_or_zero(5, 3), rng.rat_or_zero(5, 3)}}, 60);
            !e.empty())
          return std::pair{false, e};
      } catch (const Error&) {
        continue;
      }
      ++usable;
    }
    return std::pair{true, std::to_string(samples) + " samples"};
  });

  // 11. Weight limit of x(x-1) over p = 5 against the exhaustive scan at N = 5^8.
  h.run(11, "poly weight of x(x-1) at N = 5^8 within 5e-3 of 1/2", [] {
    Prime p(5);
    Poly P = Poly::from_longs({0, -1, 1});
    Rat L = poly_weight(p, P, {rational_elt(Rat(0)), rational_elt(Rat(1))});
    if (!(L == make_rat(1, 2))) return std::pair{false, std::string("closed L wrong")};
    // the scan starts at m = 2: the natural roots 0 and 1 are poles of ord
    ScanReport rep = poly_weight_scan(p, P, Int(2), Int(390625), L);
    bool ok = rep.abs_gap < make_rat(5, 1000);
    return std::pair{ok, "gap = " + rat_str(rep.abs_gap)};
  });

  std::cout << (h.failures == 0 ? "ALL CRITERIA PASS" : "FAILURES: " + std::to_string(h.failures))
            << "\n";
  return h.failures;
}
