#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "pfe/analyzer.hpp"
#include "pfe/instance_io.hpp"

namespace pfe::cli {

namespace {

std::string dec(const Rat& q) {
  std::ostringstream os;
  os << std::setprecision(12) << to_double(q);
  return os.str();
}

// Scan traces: one row per checkpoint N, exact mean, display-only decimal gap.
class Csv {
public:
  explicit Csv(const std::string& path) : file_(path) {
    if (!file_) fail(Errc::ParseError, "cannot open CSV output file: " + path);
    file_ << "N,mean_num,mean_den,gap_decimal\n";
  }
  void row(const Int& N, const Rat& mean, const Rat& gap) {
    file_ << int_str(N) << "," << int_str(mean.get_num()) << "," << int_str(mean.get_den()) << ","
          << dec(gap) << "\n";
  }

private:
  std::ofstream file_;
};

std::vector<Int> checkpoints(const Int& lo, const Int& hi) {
  std::vector<Int> cps;
  for (Int n = std::max(lo, Int(1)); n < hi; n *= 2)
    if (n >= lo) cps.push_back(n);
  cps.push_back(hi);
  return cps;
}

void print_scan(std::ostream& out, const ScanReport& rep, const std::string& label) {
  out << label << " mean = " << rat_str(rep.mean) << " (" << dec(rep.mean) << ") over "
      << int_str(rep.N) << " terms\n";
  out << "target = " << rat_str(rep.target) << " (" << dec(rep.target) << ")\n";
  out << "gap = " << dec(rep.abs_gap) << "\n";
}

struct InstanceArgs {
  std::string path;
  ProblemInstance load() const { return load_instance(path); }
};

// h for the diagnostic commands: explicit override, else from jets.
Poly resolve_h(const ProblemInstance& inst) {
  if (inst.h_override) return *inst.h_override;
  if (!inst.f_jet) fail(Errc::InsufficientJet, "instance has neither jets nor an explicit h");
  return h_from_jets(inst.A, inst.B, *inst.f_jet, *inst.g_jet);
}

OdeE resolve_ode(const ProblemInstance& inst) {
  Poly h = resolve_h(inst);
  if (h.is_zero()) fail(Errc::ZeroInput, "h is identically zero; there is no second-order ODE");
  return build_ode(inst.A, inst.B, h);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact p-adic analysis of A f^2 + B g^2 = 1"};
  app.require_subcommand(1);

  long p_value = 0;

  // ord
  auto* ord_cmd = app.add_subcommand("ord", "p-adic valuation of a rational");
  std::string ord_q;
  ord_cmd->add_option("--p", p_value, "prime")->required();
  ord_cmd->add_option("q", ord_q, "rational, e.g. 5/9")->required();
  ord_cmd->callback([&] {
    Prime p(p_value);
    Rat q = parse_rat(ord_q);
    out << "ord_" << p.value() << "(" << rat_str(q) << ") = " << ord_rat(p, q).str() << "\n";
  });

  // factorial-ord
  auto* fact_cmd = app.add_subcommand("factorial-ord", "ord_p(n!) via the digit-sum identity");
  std::string fact_n;
  fact_cmd->add_option("--p", p_value, "prime")->required();
  fact_cmd->add_option("n", fact_n, "natural number")->required();
  fact_cmd->callback([&] {
    Prime p(p_value);
    Int n(fact_n);
    out << "digit_sum = " << digit_sum(p, n) << "\n";
    out << "ord_" << p.value() << "(" << fact_n << "!) = " << ord_factorial(p, n).str() << "\n";
  });

  // sumx
  auto* sumx_cmd = app.add_subcommand("sumx", "mean of ord_p(j) over j <= N with ord_p(j) <= s");
  unsigned sumx_s = 0;
  std::string sumx_N, sumx_out;
  sumx_cmd->add_option("--p", p_value, "prime")->required();
  sumx_cmd->add_option("--s", sumx_s, "valuation cutoff")->required();
  sumx_cmd->add_option("--N", sumx_N, "scan length")->required();
  sumx_cmd->add_option("--out", sumx_out, "CSV trace file");
  sumx_cmd->callback([&] {
    Prime p(p_value);
    Int N(sumx_N);
    out << "closed form = " << rat_str(bounded_ord_mean_closed(p, sumx_s)) << "\n";
    ScanReport rep = bounded_ord_mean_scan(p, sumx_s, N);
    print_scan(out, rep, "empirical");
    if (!sumx_out.empty()) {
      Csv csv(sumx_out);
      for (const Int& n : checkpoints(Int(1), N)) {
        ScanReport r = bounded_ord_mean_scan(p, sumx_s, n);
        csv.row(n, r.mean, r.abs_gap);
      }
      out << "trace written to " << sumx_out << "\n";
    }
  });

  // weight
  auto* w_cmd = app.add_subcommand("weight", "Clark weight of a p-adic element");
  std::string w_alpha, w_emp, w_m, w_out;
  bool show_paper_sign = false;
  w_cmd->add_option("--p", p_value, "prime")->required();
  w_cmd->add_option("--alpha", w_alpha, "element: rat:5/2 | ram:q:e:u | zp:d0,d1,...")->required();
  w_cmd->add_option("--empirical", w_emp, "run the partial-sum scan to this N");
  w_cmd->add_option("--m", w_m, "scan start (default: the element's m_start)");
  w_cmd->add_flag("--show-paper-sign", show_paper_sign,
                  "also print the weight with the fractional correction subtracted");
  w_cmd->add_option("--out", w_out, "CSV trace file");
  w_cmd->callback([&] {
    Prime p(p_value);
    PAdicElement alpha = parse_element_spec(p, w_alpha);
    WeightReport rep = weight(p, alpha);
    out << "case = " << weight_case_name(rep.kind) << "\n";
    out << "r(alpha) = " << rep.r_alpha.str() << "\n";
    if (rep.kind == WeightCase::DiskNotZp)
      out << "[r] = " << rep.r_floor << ", <r> = " << rat_str(rep.r_frac) << "\n";
    out << "weight = " << rat_str(rep.weight) << " (" << dec(rep.weight) << ")\n";
    if (show_paper_sign) {
      if (rep.subtracted_variant)
        out << "subtracted-sign variant = " << rat_str(*rep.subtracted_variant) << " ("
            << dec(*rep.subtracted_variant) << ")\n";
      else
        out << "subtracted-sign variant: not applicable in this case\n";
    }
    if (!rep.note.empty()) out << "note: " << rep.note << "\n";
    out << "m_start = " << int_str(rep.m_start) << "\n";
    if (!w_emp.empty()) {
      Int N(w_emp);
      Int m = w_m.empty() ? rep.m_start : Int(w_m);
      ScanReport scan = weight_empirical(p, alpha, m, N);
      print_scan(out, scan, "empirical");
      if (rep.subtracted_variant)
        out << "gap to subtracted-sign variant = "
            << dec(Rat(abs(scan.mean - *rep.subtracted_variant))) << "\n";
      if (!w_out.empty()) {
        Csv csv(w_out);
        for (const Int& n : checkpoints(m + 1, N)) {
          ScanReport r = weight_empirical(p, alpha, m, n);
          csv.row(n, r.mean, r.abs_gap);
        }
        out << "trace written to " << w_out << "\n";
      }
    }
  });

  // liouville-scan
  auto* liou_cmd = app.add_subcommand(
      "liouville-scan", "certified max of ord_p(alpha - n) - k log_p(n) over 2 <= n <= N");
  std::string liou_alpha, liou_N, liou_out;
  unsigned liou_k = 1;
  liou_cmd->add_option("--p", p_value, "prime")->required();
  liou_cmd->add_option("--alpha", liou_alpha, "rational element, rat:a/b")->required();
  liou_cmd->add_option("--N", liou_N, "scan length")->required();
  liou_cmd->add_option("--k", liou_k, "degree of alpha over Q (1 for rationals)");
  liou_cmd->add_option("--out", liou_out, "CSV trace file");
  liou_cmd->callback([&] {
    Prime p(p_value);
    PAdicElement alpha = parse_element_spec(p, liou_alpha);
    Int N(liou_N);
    Rat mx = liouville_scan(p, alpha, liou_k, N);
    out << "certified max over n <= " << int_str(N) << ": " << rat_str(mx) << " (" << dec(mx)
        << ")\n";
    if (!liou_out.empty()) {
      Csv csv(liou_out);
      for (const Int& n : checkpoints(Int(2), N)) {
        if (n < 2) continue;
        Rat r = liouville_scan(p, alpha, liou_k, n);
        csv.row(n, r, Rat(0));
      }
      out << "trace written to " << liou_out << "\n";
    }
  });

  // poly-weight
  auto* pw_cmd = app.add_subcommand("poly-weight", "weight limit of a polynomial from its roots");
  std::string pw_poly, pw_roots, pw_emp, pw_m;
  pw_cmd->add_option("--p", p_value, "prime")->required();
  pw_cmd->add_option("--poly", pw_poly, "coefficients low-to-high, e.g. 0,-1,1")->required();
  pw_cmd->add_option("--roots", pw_roots, "roots with multiplicity, ';'-separated element specs")
      ->required();
  pw_cmd->add_option("--empirical", pw_emp, "cross-check with a scan of ord_p(P(n)) to this N");
  pw_cmd->add_option("--m", pw_m, "scan start (default 0)");
  pw_cmd->callback([&] {
    Prime p(p_value);
    Poly P(parse_rat_list(pw_poly));
    std::vector<PAdicElement> roots;
    std::string cur;
    for (char ch : pw_roots + ";") {
      if (ch == ';') {
        if (!cur.empty()) roots.push_back(parse_element_spec(p, cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    Rat L = poly_weight(p, P, roots);
    out << "L = " << rat_str(L) << " (" << dec(L) << ")\n";
    if (!pw_emp.empty()) {
      Int m = pw_m.empty() ? Int(0) : Int(pw_m);
      ScanReport rep = poly_weight_scan(p, P, m, Int(pw_emp), L);
      print_scan(out, rep, "empirical");
    }
  });

  // instance-file commands
  InstanceArgs inst_args;
  std::string grid_override, rho_grid, growth_out;
  std::size_t solve_N = 24;

  auto add_instance_cmd = [&](const char* name, const char* desc) {
    auto* cmd = app.add_subcommand(name, desc);
    cmd->add_option("instance", inst_args.path, "JSON instance file")->required();
    return cmd;
  };

  auto* ode_cmd = add_instance_cmd("ode-build", "second-order ODE from (A, B, h)");
  ode_cmd->callback([&] {
    ProblemInstance inst = inst_args.load();
    OdeE E = resolve_ode(inst);
    out << "Q2 = " << E.q2.str() << "\n";
    out << "Q1 = " << E.q1.str() << "\n";
    out << "Q0 = " << E.q0.str() << "\n";
  });

  auto* char_cmd = add_instance_cmd("charpoly", "characteristic number and polynomial");
  char_cmd->callback([&] {
    ProblemInstance inst = inst_args.load();
    CharData cd = char_data(resolve_ode(inst));
    out << "N(E) = " << cd.char_number << "\n";
    out << "P(xi) = " << cd.char_poly.str("xi") << "\n";
    out << "contributing j:";
    for (int j : cd.contributing) out << " " << j;
    out << "\n";
  });

  auto* rec_cmd = add_instance_cmd("recurrence", "coefficient recurrence of the ODE");
  rec_cmd->callback([&] {
    ProblemInstance inst = inst_args.load();
    Recurrence R = derive_recurrence(inst.p, resolve_ode(inst));
    out << "gamma = " << rat_str(R.gamma) << ", span t = " << R.span
        << ", constraints from n = " << R.first_constraint << "\n";
    for (long s = 0; s <= R.span; ++s) out << "P_" << s << "(n) = " << R.P[s].str("n") << "\n";
  });

  auto* solve_cmd = add_instance_cmd("solve-series", "forward-solve the recurrence from the f-jet");
  solve_cmd->add_option("--N", solve_N, "prefix length (default 24)");
  solve_cmd->callback([&] {
    ProblemInstance inst = inst_args.load();
    if (!inst.f_jet) fail(Errc::InsufficientJet, "instance has no f-jet to start from");
    Recurrence R = derive_recurrence(inst.p, resolve_ode(inst));
    SeriesPrefix s = forward_solve(R, *inst.f_jet, std::max(solve_N, inst.f_jet->size()));
    for (std::size_t i = 0; i < s.coeffs.size(); ++i)
      out << "c_" << i << " = " << rat_str(s.coeffs[i]) << "\n";
  });

  auto* growth_cmd = add_instance_cmd("growth", "valuation growth report for the solved prefix");
  growth_cmd->add_option("--lambda-grid", grid_override, "slopes a/b,c/d,...");
  growth_cmd->add_option("--out", growth_out, "CSV of coefficient valuations");
  growth_cmd->callback([&] {
    ProblemInstance inst = inst_args.load();
    if (!grid_override.empty()) inst.lambda_grid = parse_rat_list(grid_override);
    Verdict v = analyze(inst);
    const auto* gc = std::get_if<GrowthContradiction>(&v);
    if (!gc) fail(Errc::Inconsistent, std::string("pipeline stopped early: ") + verdict_name(v));
    const GrowthReport& rep = gc->report;
    out << "L = " << rat_str(rep.weight_limit) << "\n";
    out << "window M = " << rep.window << "\n";
    out << "samples = " << rep.witnesses.size() << ", violations = " << rep.violations << "\n";
    out << "lambda_star = " << (rep.lambda_star ? rat_str(*rep.lambda_star) : std::string("(none)"))
        << "\n";
    out << "entire_consistent = " << (rep.entire_consistent ? "true" : "false") << "\n";
    if (!growth_out.empty()) {
      std::ofstream f(growth_out);
      if (!f) fail(Errc::ParseError, "cannot open CSV output file: " + growth_out);
      f << "n,ord_num,ord_den\n";
      for (std::size_t n = 0; n < rep.valuations.size(); ++n) {
        if (!rep.valuations[n].is_finite())
          f << n << ",inf,1\n";
        else
          f << n << "," << int_str(rep.valuations[n].value().get_num()) << ","
            << int_str(rep.valuations[n].value().get_den()) << "\n";
      }
      out << "valuations written to " << growth_out << "\n";
    }
  });

  auto* norms_cmd = add_instance_cmd("norms", "lognorm of A f^2 and B g^2 over a rho grid");
  norms_cmd->add_option("--rho-grid", rho_grid, "log-radii a/b,c/d,... (default 0,1,2,3,4)");
  norms_cmd->callback([&] {
    ProblemInstance inst = inst_args.load();
    if (!inst.f_jet) fail(Errc::InsufficientJet, "instance has no jets");
    std::vector<Rat> rhos = rho_grid.empty()
                                ? std::vector<Rat>{Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)}
                                : parse_rat_list(rho_grid);
    Poly f(inst.f_jet->coeffs), g(inst.g_jet->coeffs);
    if (f.is_zero() || g.is_zero()) fail(Errc::ZeroSeries, "norms need nonzero truncations");
    Poly F2 = inst.A * f * f, G2 = inst.B * g * g;
    SeriesPrefix sf{F2.coeffs(), inst.p}, sg{G2.coeffs(), inst.p};
    out << "rho | log||A f^2|| | log||B g^2||\n";
    std::vector<Rat> vf, vg;
    for (const Rat& rho : rhos) {
      vf.push_back(lognorm(sf, rho));
      vg.push_back(lognorm(sg, rho));
      out << rat_str(rho) << " | " << rat_str(vf.back()) << " | " << rat_str(vg.back()) << "\n";
    }
    if (rhos.size() >= 2) {
      std::size_t k = rhos.size() - 1;
      Rat step = rhos[k] - rhos[k - 1];
      if (step != 0)
        out << "slopes over the last step: " << rat_str(Rat((vf[k] - vf[k - 1]) / step)) << " vs "
            << rat_str(Rat((vg[k] - vg[k - 1]) / step)) << "\n";
    }
    long df = *F2.degree(), dg = *G2.degree();
    out << "limiting slopes: " << df << " (parity " << (df % 2 ? "odd" : "even") << ") vs " << dg
        << " (parity " << (dg % 2 ? "odd" : "even") << ")\n";
    if ((df - dg) % 2 != 0)
      out << "different parity: the two norms cannot agree on large circles, the identity "
             "A f^2 + B g^2 = 1 has no entire solutions beyond constants\n";
  });

  auto* an_cmd = add_instance_cmd("analyze", "full decision pipeline");
  an_cmd->add_option("--lambda-grid", grid_override, "slopes a/b,c/d,...");
  an_cmd->callback([&] {
    ProblemInstance inst = inst_args.load();
    if (!grid_override.empty()) inst.lambda_grid = parse_rat_list(grid_override);
    Verdict v = analyze(inst);
    out << render_verdict(inst, v);
  });

  std::vector<const char*> argv;
  argv.push_back("pfe");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pfe::cli
