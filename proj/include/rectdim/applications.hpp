#pragma once

#include <optional>
#include <vector>

#include "rectdim/dimcore.hpp"

namespace rectdim::apps {

struct SimultaneousInstance {
  int m = 1;
  std::vector<double> tau;
  void validate() const;
};

struct LinearFormsInstance {
  int m = 1;
  int n = 1;
  std::vector<double> lambda;
  void validate() const;
};

// Cantor set on [0,1] generated by x -> (x+k)/base over the digit set.
// An empty digit list means the full digit set {0..base-1}.
struct CantorAxisSpec {
  int base = 2;
  std::vector<int> digits;

  bool full() const;
  int digit_count() const;
  double delta() const;  // log(#digits)/log(base)
  double log_base() const;
  void validate() const;
};

// Closed-form solver result together with the dimcore route it was
// cross-checked against.
struct SolverReport {
  double value = 0.0;
  double closed_form = 0.0;
  int argmin_i = 0;                // 1-based index attaining the closed-form min
  bool full_measure = false;       // boundary regime: ambient dimension
  bool full_hs_measure = false;    // shrinking targets carry full H^s measure
  std::vector<int> order;          // applied descending sort (original indices)
  core::ProductSpaceSpec space;
  core::ExponentProfile profile;   // exponent construction fed to dimcore
  core::DimensionReport report;    // dimcore route (empty in boundary regime)
};

core::ExponentProfile simultaneous_exponent_choice(const SimultaneousInstance& inst);
SolverReport simultaneous_dim(const SimultaneousInstance& inst);
SolverReport linear_forms_dim(const LinearFormsInstance& inst);

SolverReport shrinking_target_dim(const std::vector<CantorAxisSpec>& axes,
                                  const std::vector<double>& t);

struct MultPairReport {
  double value = 0.0;
  double closed_form = 0.0;
  int pair_case = 0;  // 1: t2+lb <= la; 2: la <= t2+lb <= t1+la; 3: rest
  core::DimensionReport report;
};

// Product-exponent pair (t1 on axis a, t2 on axis b); axes exchanged
// internally so that log a >= log b.
MultPairReport mult_pair_dim(double log_a, double delta1, double log_b, double delta2,
                             double t1, double t2);

enum class MultRegime { FormulaHolds, FormulaFails };

struct MultiplicativeInstance {
  double log_a = 0.0;
  double delta1 = 1.0;
  double log_b = 0.0;
  double delta2 = 1.0;
  double t = 0.0;
  std::optional<CantorAxisSpec> axis_a, axis_b;  // integer-base provenance

  // filled by mult_dim:
  MultRegime regime = MultRegime::FormulaHolds;
  double dim = 0.0;
  double factor_formula = 0.0;      // max{d1 + d2 lb/(t+lb), d2 + d1 la/(t+la)}
  double covering_upper = 0.0;
  double slicing_lower = 0.0;
  bool swapped = false;          // axes exchanged to enforce delta1 >= delta2
  bool full_measure = false;     // t = 0 boundary
  std::optional<double> that_t2; // interior maximizer (exceptional regime)
  // diagnostic crossing roots in (0,t) of the two candidate equations
  std::optional<double> crossing_case_i;
  std::optional<double> crossing_displayed;

  void validate() const;
};

MultiplicativeInstance mult_dim(MultiplicativeInstance inst, int threads = 1);

// Numeric maximizer of f(t2) = mult_pair_dim(t - t2, t2) over [0, t]:
// coarse grid then golden-section refinement on the bracketing cell.
std::pair<double, double> mult_sup_numeric(const MultiplicativeInstance& inst,
                                           int grid_points = 1000,
                                           double tol = 1e-10, int threads = 1);

struct OrbitResult {
  std::vector<std::vector<double>> orbit;     // per sample: -log psi_i(n) / -log rho(n)
  std::vector<std::vector<double>> clusters;  // grid-cluster representatives, sorted
  double liminf_t = 0.0;                      // min over samples of -log psi_1(n)/n
};

OrbitResult exponent_orbit(const std::vector<double>& n_values,
                           const std::vector<std::vector<double>>& psi,
                           const std::vector<double>& rho_log,
                           double cluster_eps = 0.05);

}  // namespace rectdim::apps
