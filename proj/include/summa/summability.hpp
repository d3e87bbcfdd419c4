#pragma once

#include "summa/gauge.hpp"
#include "summa/matrix_checks.hpp"

namespace summa {

// (B_i s)(n) over the whole certified grid; refuses uncertified tails > tol.
kernels::Grid transform_grid(const SequencePrefix& s, const MatrixFamily& F, const Scale& scale);

// Uniform I-limit of the transforms; a searched via liminf/limsup midpoint
// of the witness column when absent.
Verdict b_summable(const SequencePrefix& s, const MatrixFamily& F, const IdealHandle& I,
                   std::optional<double> a, const Scale& scale);

// Uniform I-limit of Σ_k b^(i)_nk F_k^(i)(|s_k - a|) against 0.
Verdict strong_summable(const SequencePrefix& s, const MatrixFamily& F, const GaugeFamily& gauges,
                        double a, const IdealHandle& I, const Scale& scale);

// Uniform I-limit of the weighted exceptional-set masses, for every eps.
Verdict statistically_convergent(const SequencePrefix& s, const MatrixFamily& F, double a,
                                 const IdealHandle& I, const Scale& scale);

// D(s, a, eps) = {k : |s_k - a| >= eps}
IndexSet exceptional_set(const SequencePrefix& s, double a, double eps);

// σ_{ni}(s) = Σ_k b^(i)_nk F_k^(i)(|s_k - (B_i s)(n)|); may be +inf.
double sigma_variance(const SequencePrefix& s, const MatrixFamily& F, const GaugeFamily& gauges,
                      int n, int i, const Scale& scale);

// Full σ grid (fast path for identity gauges under shifted Cesàro windows).
kernels::Grid sigma_grid(const SequencePrefix& s, const MatrixFamily& F,
                         const GaugeFamily& gauges, const Scale& scale,
                         kernels::Exec exec = kernels::Exec::parallel);

struct VarianceReport {
  Verdict envelope_ok;       // L(t) > 0 on the eps grid
  Verdict equicontinuity_ok;
  Verdict rows_bounded;      // M < inf off a base set
  Verdict row_sums_to_one;
  Verdict summable;
  Verdict sigma_to_zero;
  Verdict statistical;
  bool hypotheses_hold = false;
  bool agree = false;        // (summable && sigma->0) vs statistical at scale
  Verdict combined;
};

// Statistical convergence iff summability plus vanishing variance, with the
// two routes cross-checked against each other.
VarianceReport variance_characterization(const SequencePrefix& s, const MatrixFamily& F,
                                         const GaugeFamily& gauges, double a,
                                         const IdealHandle& I, const Scale& scale);

// Uniform Cesàro window means over all admissible shifts; estimate is the
// almost-limit.
Verdict almost_convergence(const SequencePrefix& s, const Scale& scale);

struct DecompositionResult {
  Status status = Status::inconclusive;
  SequencePrefix t;
  std::vector<int> disagreement;  // {k : s_k != t_k}
  // construction trace
  std::vector<double> eps_m;
  std::vector<int> A_size;
  std::vector<int> E_max;         // largest element of each witness set (0 = empty)
  std::vector<int> M_p;
  std::vector<int> p_m;
  std::vector<std::int64_t> F_depth;
  int uncovered_from = 0;         // first window index no F_m reaches (0 = covered)
  Verdict t_converges;            // ideal_limit(t, I) ~ a
  Verdict disagreement_in_J;      // derived-ideal membership
  std::string note;
};

// The constructive almost-everywhere decomposition: builds t agreeing with s
// off a derived-ideal member, I-convergent to a. Both postconditions are
// checked and reported.
DecompositionResult decompose_statistical(const SequencePrefix& s, const MatrixFamily& F,
                                          const IdealHandle& I, double a, const Scale& scale);

// Per-depth sup over base rows of the mass the family places outside the base
// set; the decomposition needs these to vanish along the chain.
std::vector<double> check_base_condition(const MatrixFamily& F, const FilterBase& base,
                                         const Scale& scale);

struct TauberianReport {
  Verdict row_sums_to_one;
  Verdict columns_to_zero;
  Verdict min_entry_dominates;  // min_{k<=n} a_nk >= psi(n)
  Verdict phi_decreasing;
  Verdict coupling;             // x psi(x+y) >= h(x phi(y)) on the sample grid
  Verdict h_faithful;           // h vanishes only at 0
  Verdict variation_bounded;    // |s_n - s_{n+1}| = O(phi(n))
  double variation_constant = 0.0;
  Verdict statistical;          // A-statistical convergence of s
  Verdict ordinary;             // checked conclusion
  bool hypotheses_hold = false;
  bool claimed = false;
  double limit = 0.0;
};

// Slow-variation Tauberian condition: under the named hypotheses, statistical
// convergence upgrades to ordinary convergence; the conclusion is verified
// directly, never assumed.
TauberianReport tauberian_check(const SequencePrefix& s, const SummabilityMatrix& A,
                                const IdealHandle& I, const std::function<double(double)>& phi,
                                const std::function<double(double)>& psi,
                                const std::function<double(double)>& h, const Scale& scale);

}  // namespace summa
