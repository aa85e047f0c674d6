#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pfe/ode.hpp"
#include "pfe/recurrence.hpp"
#include "pfe/weights.hpp"

namespace pfe {

/// One problem instance of A f^2 + B g^2 = 1 over C_p. Jets are optional and
/// only needed once the pipeline has to compute h. `h_override` bypasses the
/// jet computation for diagnostics (ode-build, charpoly on explicit triples).
struct ProblemInstance {
  Prime p;
  Poly A, B;
  std::optional<Jet> f_jet, g_jet;
  std::optional<Poly> h_override;
  Int scan_N;
  std::vector<Rat> lambda_grid;
  std::size_t prefix_len = 200;
};

/// Checks the instance invariants: A, B nonzero; if jets are present,
/// g(0) != 0 and A(0) f(0)^2 + B(0) g(0)^2 = 1.
void validate_instance(const ProblemInstance& inst);

/// True iff deg A and deg B differ mod 2, in which case the equation has no
/// entire solutions beyond constants (the two norm functions would have to
/// agree with slopes of different parity).
bool parity_check(const Poly& A, const Poly& B);

struct ParityObstruction {};

struct HZeroPolynomialOnly {
  std::string reason;
};

/// The machinery ran to completion: characteristic polynomial, weight limit
/// L, forward-solved prefix, violation-free product-inequality samples. Read
/// as: no transcendental entire solution with these data.
struct GrowthContradiction {
  Rat weight_limit;
  CharData char_data;
  Recurrence recurrence;
  GrowthReport report;
  std::vector<std::string> root_notes;
};

struct Inconclusive {
  std::string reason;
};

using Verdict = std::variant<ParityObstruction, HZeroPolynomialOnly, GrowthContradiction, Inconclusive>;

const char* verdict_name(const Verdict& v) noexcept;

/// Decision pipeline: parity check, h-degree bound / h from jets, ODE,
/// characteristic data, root weights, recurrence, forward solve, growth
/// report. Sub-operation errors surface as Inconclusive with the error named.
Verdict analyze(const ProblemInstance& inst);

/// Deterministic human-readable report (identical instances render to
/// byte-identical text).
std::string render_verdict(const ProblemInstance& inst, const Verdict& v);

/// Root data of a quadratic (or lower-degree) characteristic polynomial over
/// Q_p: representable roots plus, for irrational conjugate pairs, the weight
/// contribution computed from the norm form.
struct RootAnalysis {
  std::vector<PAdicElement> representable;
  bool conjugate_pair = false;
  Rat pair_q;         // conjugate pair: roots are pair_q +- (unit) * p^pair_e
  Rat pair_e;
  Rat pair_weight;    // combined weight of the pair
  std::vector<std::string> notes;
};
RootAnalysis analyze_char_roots(const Prime& p, const Poly& P);

/// Weight limit of P assembled from a RootAnalysis (poly_weight on the
/// representable part; norm-form weights for a conjugate pair).
Rat weight_limit_from_roots(const Prime& p, const Poly& P, const RootAnalysis& roots);

}  // namespace pfe
