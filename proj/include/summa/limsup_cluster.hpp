#pragma once

#include "summa/summability.hpp"

namespace summa {

struct LimsupInequalityReport {
  Verdict abs_rows_finite;
  Verdict abs_row_sums_to_one;
  Verdict row_sums_to_one;
  std::vector<Verdict> probe_vanishing;  // weighted mass of probe sets in J
  int probes_used = 0;
  double lhs_limsup = 0.0, rhs_limsup = 0.0;
  double lhs_liminf = 0.0, rhs_liminf = 0.0;
  bool hypotheses_hold = false;
  Verdict conclusion;
};

// I-limsup of the transformed sequence never exceeds the J-limsup of the
// original (and the liminf mirror), for matrices with signed entries allowed.
LimsupInequalityReport matrix_limsup_inequality(const SummabilityMatrix& A, const IdealHandle& I,
                                                const IdealHandle& J, const SequencePrefix& s,
                                                const Scale& scale,
                                                const std::vector<IndexSet>& probes = {});

struct LimsupStatReport {
  Verdict rows_bounded;
  Verdict row_sums_to_one;
  Verdict summable;
  double j_limsup = 0.0, j_liminf = 0.0;
  bool premise_holds = false;
  Verdict statistical;
  Verdict combined;
};

// When the transforms settle at a and the derived-ideal limsup (or liminf)
// equals a, statistical convergence to a follows; verified directly.
LimsupStatReport limsup_implies_statistical(const SequencePrefix& s, const MatrixFamily& F,
                                            const IdealHandle& I, double a, const Scale& scale);

struct ClusterReport {
  Verdict rows_bounded;
  Verdict row_sums_to_one;
  std::vector<double> criterion;  // I-liminf inf_i of the exceptional masses, per eps
  Verdict verdict;
};

// a is a derived-ideal cluster point iff every eps keeps the criterion
// strictly below 1.
ClusterReport jbi_cluster_point(const SequencePrefix& s, const MatrixFamily& F,
                                const IdealHandle& I, double a, const Scale& scale);

struct GaugeClusterReport {
  double gauge_liminf = 0.0;
  bool premise_holds = false;
  ClusterReport cluster;
  Verdict combined;
};

// Vanishing I-liminf of the gauge sums forces a cluster point, provided the
// lower envelope stays positive.
GaugeClusterReport cluster_gauge_sufficient(const SequencePrefix& s, const MatrixFamily& F,
                                            const GaugeFamily& gauges, const IdealHandle& I,
                                            double a, const Scale& scale);

// Default probe sets for the vanishing hypothesis: initial segments, squares,
// geometric gaps.
std::vector<IndexSet> default_probe_sets(int N);

inline constexpr double kClusterMargin = 1e-6;

}  // namespace summa
