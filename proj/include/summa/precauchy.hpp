#pragma once

#include "summa/limsup_cluster.hpp"

namespace summa {

// D(s, eps) = {(k, l) : |s_k - s_l| >= eps}, symmetric in (k, l).
struct PairExceptionalSet {
  std::function<bool(int k, int l)> contains;
  double eps = 0.0;
};

PairExceptionalSet pair_exceptional_set(const SequencePrefix& s, double eps);

// Uniform I-vanishing of the diagonal pair masses ΣΣ b^(i) b^(i) over D(s,eps),
// for every eps.
Verdict pre_cauchy(const SequencePrefix& s, const MatrixFamily& F, const IdealHandle& I,
                   const Scale& scale);

// The mixed-row variant: uniformity over index pairs (i, j).
Verdict pre_cauchy_plus(const SequencePrefix& s, const MatrixFamily& F, const IdealHandle& I,
                        const Scale& scale);

// One cell of the double gauge sum ΣΣ b^(i)_nk b^(j)_nl F_kl(|s_k - s_l|);
// j defaults to i (diagonal variant).
double gauge_pre_cauchy_sum(const SequencePrefix& s, const MatrixFamily& F,
                            const PairGaugeFamily& gauges, int n, int i,
                            std::optional<int> j, const Scale& scale);

struct SubsequenceReport {
  Verdict ideal_inside_derived;  // I ⊆ J probed on base sets
  Verdict rows_bounded;
  Verdict precauchy;
  std::vector<Verdict> W_exceptional_small;  // {n in W : |s_n - a| >= eps} ∈ I per eps
  double w = 0.0;                             // I-liminf of the W masses
  bool premises_hold = false;
  Verdict statistical;
  Verdict combined;
};

// A pre-Cauchy sequence converging to a along a W of positive lower mass is
// statistically convergent to a; conclusion verified directly.
SubsequenceReport subsequence_convergence(const SequencePrefix& s, const MatrixFamily& F,
                                          const IdealHandle& I, double a, const IndexSet& W,
                                          const Scale& scale);

struct DichotomyReport {
  Verdict rows_bounded;
  Verdict row_sums_to_one;
  Verdict base_compatible;  // consecutive basis rows differ by < 1/3
  Verdict precauchy_plus;
  Verdict H_in_J;
  Verdict X_in_J;
  Verdict Y_in_J;
  char branch = '-';  // which of X, Y landed in the ideal
  bool premises_hold = false;
  Verdict combined;
};

// With the value band (alpha, beta) negligible, one of the two outer bands
// must be negligible as well.
DichotomyReport dichotomy_check(const SequencePrefix& s, const MatrixFamily& F,
                                const IdealHandle& I, double alpha, double beta,
                                const Scale& scale);

struct NowhereDenseReport {
  DichotomyReport hypotheses;  // 5.1-5.3 style checks (band fields unused)
  Verdict bounded;
  std::vector<double> cluster_set;
  bool nowhere_dense = false;
  int longest_run = 0;
  Verdict conclusion;
};

// A bounded pre-Cauchy-plus sequence whose cluster set has no interval (at
// grid resolution) must be statistically convergent to one of its clusters.
NowhereDenseReport nowhere_dense_cluster_conclusion(const SequencePrefix& s,
                                                    const MatrixFamily& F, const IdealHandle& I,
                                                    const Scale& scale, int grid_points = 65,
                                                    int run_cap = 2);

}  // namespace summa
