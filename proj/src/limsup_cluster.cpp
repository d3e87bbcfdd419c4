#include "summa/limsup_cluster.hpp"

#include <algorithm>
#include <cmath>

namespace summa {

namespace {

SequencePrefix prefix_of(std::vector<double> v) {
  SequencePrefix p;
  p.values = std::move(v);
  return p;
}

std::vector<double> grid_sup_rows(const kernels::Grid& g) {
  return kernels::sup_deviation(g, std::vector<double>(static_cast<size_t>(g.cols), 0.0));
}

}  // namespace

std::vector<IndexSet> default_probe_sets(int N) {
  std::vector<IndexSet> out;
  const int head = std::max(1, N / 100);
  out.push_back(IndexSet::of([head](int n) { return n <= head; }, "initial segment"));
  out.push_back(IndexSet::of([](int n) { return is_perfect_square(n); }, "squares"));
  out.push_back(IndexSet::of(
      [](int n) {
        // powers of two
        return (n & (n - 1)) == 0;
      },
      "geometric gaps"));
  return out;
}

LimsupInequalityReport matrix_limsup_inequality(const SummabilityMatrix& A, const IdealHandle& I,
                                                const IdealHandle& J, const SequencePrefix& s,
                                                const Scale& scale,
                                                const std::vector<IndexSet>& probes) {
  LimsupInequalityReport rep;
  const int N = scale.N;
  if (s.size() < N) throw input_error("matrix_limsup_inequality: prefix shorter than window");

  MatrixFamily F = single_family(A, /*nonnegative=*/false);

  kernels::Grid abs_grid = abs_row_sum_grid(F, N);
  std::vector<double> abs_sums = grid_sup_rows(abs_grid);
  double sup_abs = 0.0;
  for (double v : abs_sums) sup_abs = std::max(sup_abs, v);
  rep.abs_rows_finite.scale = scale;
  rep.abs_rows_finite.estimate = ExtendedReal(sup_abs);
  rep.abs_rows_finite.residual = sup_abs;
  rep.abs_rows_finite.status =
      std::isfinite(sup_abs) ? Status::holds_at_scale : Status::fails_at_scale;
  if (rep.abs_rows_finite.fails()) rep.abs_rows_finite.witnesses = {1};

  std::vector<double> dev_abs(abs_sums.size());
  for (size_t j = 0; j < abs_sums.size(); ++j) dev_abs[j] = std::fabs(abs_sums[j] - 1.0);
  rep.abs_row_sums_to_one = limit_test_against(dev_abs, I, scale.with_N(abs_grid.rows));

  kernels::Grid ones = kernels::family_weighted_grid(
      F, std::vector<double>(static_cast<size_t>(N), 1.0), N);
  rep.row_sums_to_one =
      uniform_limit_grid(ones, std::vector<double>(static_cast<size_t>(ones.cols), 1.0), I, scale);

  const std::vector<IndexSet> used = probes.empty() ? default_probe_sets(N) : probes;
  for (const auto& E : used) {
    // only sets certified to lie in J are meaningful probes
    if (!ideal_member(J, E, scale).holds()) continue;
    ++rep.probes_used;
    std::vector<double> mask(static_cast<size_t>(N), 0.0);
    for (int k = 1; k <= N; ++k)
      if (E.contains(k)) mask[static_cast<size_t>(k) - 1] = 1.0;
    // |a_nk| against the probe
    MatrixFamily Fabs = F;
    Fabs.member = [A](int) {
      SummabilityMatrix M = A;
      M.row = [r = A.row](int n) {
        auto out = r(n);
        for (auto& [k, v] : out) v = std::fabs(v);
        return out;
      };
      return M;
    };
    kernels::Grid g = kernels::family_weighted_grid(Fabs, mask, N);
    rep.probe_vanishing.push_back(
        uniform_limit_grid(g, std::vector<double>(static_cast<size_t>(g.cols), 0.0), I, scale));
  }

  rep.hypotheses_hold = rep.abs_rows_finite.holds() && rep.abs_row_sums_to_one.holds() &&
                        rep.row_sums_to_one.holds();
  for (const auto& v : rep.probe_vanishing) rep.hypotheses_hold = rep.hypotheses_hold && v.holds();

  kernels::Grid tg = kernels::family_weighted_grid(F, std::vector<double>(s.values.begin(),
                                                                          s.values.begin() + N),
                                                   N);
  std::vector<double> As(static_cast<size_t>(tg.rows));
  for (int n = 1; n <= tg.rows; ++n) As[static_cast<size_t>(n) - 1] = tg.at(n, 0);
  const Scale rows_scale = scale.with_N(tg.rows);
  rep.lhs_limsup = ideal_limsup(prefix_of(As), I, rows_scale).v;
  rep.lhs_liminf = ideal_liminf(prefix_of(As), I, rows_scale).v;
  rep.rhs_limsup = ideal_limsup(s, J, scale).v;
  rep.rhs_liminf = ideal_liminf(s, J, scale).v;

  // remaining descent of the transformed side at the window edge: an excess
  // smaller than the last observed drop cannot be certified as a violation
  const auto half_value = [&](bool negate) {
    const auto depths = detail::residual_depths(finite_ideal_base(scale.m_max), tg.rows);
    if (depths.empty()) return negate ? -rep.lhs_liminf : rep.lhs_limsup;
    const std::int64_t half = depths.back() / 2;
    double m = -std::numeric_limits<double>::infinity();
    for (int n = static_cast<int>(half) + 1; n <= tg.rows; ++n) {
      const double v = As[static_cast<size_t>(n) - 1];
      m = std::max(m, negate ? -v : v);
    }
    return m;
  };
  const double sup_slack = std::max(0.0, half_value(false) - rep.lhs_limsup);
  const double inf_slack = std::max(0.0, half_value(true) - (-rep.lhs_liminf));

  rep.conclusion.scale = scale;
  if (!rep.hypotheses_hold) {
    rep.conclusion.status = Status::inconclusive;
    rep.conclusion.note = "hypotheses fail; inequality not claimed";
    return rep;
  }
  const double sup_excess = rep.lhs_limsup - rep.rhs_limsup;
  const double inf_excess = rep.rhs_liminf - rep.lhs_liminf;
  rep.conclusion.residual = std::max(0.0, std::max(sup_excess, inf_excess));
  if (sup_excess <= scale.tol && inf_excess <= scale.tol) {
    rep.conclusion.status = Status::holds_at_scale;
  } else if ((sup_excess <= scale.tol || sup_slack > scale.tol) &&
             (inf_excess <= scale.tol || inf_slack > scale.tol)) {
    rep.conclusion.status = Status::inconclusive;
    rep.conclusion.note = "transformed side still descending; excess unresolved at scale";
  } else {
    rep.conclusion.status = Status::fails_at_scale;
    rep.conclusion.witnesses = {1};
  }
  return rep;
}

LimsupStatReport limsup_implies_statistical(const SequencePrefix& s, const MatrixFamily& F,
                                            const IdealHandle& I, double a, const Scale& scale) {
  if (!F.nonnegative)
    throw input_error("limsup_implies_statistical: family must be nonnegative");
  LimsupStatReport rep;
  const int N = scale.N;

  kernels::Grid abs_grid = abs_row_sum_grid(F, N);
  std::vector<double> sup_abs = grid_sup_rows(abs_grid);
  double M = 0.0;
  for (double v : sup_abs) M = std::max(M, v);
  rep.rows_bounded.scale = scale;
  rep.rows_bounded.estimate = ExtendedReal(M);
  rep.rows_bounded.residual = M;
  rep.rows_bounded.status = std::isfinite(M) ? Status::holds_at_scale : Status::fails_at_scale;
  if (rep.rows_bounded.fails()) rep.rows_bounded.witnesses = {1};

  kernels::Grid ones = kernels::family_weighted_grid(
      F, std::vector<double>(static_cast<size_t>(N), 1.0), N);
  rep.row_sums_to_one =
      uniform_limit_grid(ones, std::vector<double>(static_cast<size_t>(ones.cols), 1.0), I, scale);

  rep.summable = b_summable(s, F, I, a, scale);

  IdealHandle J = derived_ideal(F, I, scale);
  rep.j_limsup = ideal_limsup(s, J, scale).v;
  rep.j_liminf = ideal_liminf(s, J, scale).v;

  rep.premise_holds = rep.rows_bounded.holds() && rep.row_sums_to_one.holds() &&
                      rep.summable.holds() &&
                      (std::fabs(rep.j_limsup - a) <= scale.tol ||
                       std::fabs(rep.j_liminf - a) <= scale.tol);

  rep.combined.scale = scale;
  rep.combined.estimate = ExtendedReal(a);
  if (!rep.premise_holds) {
    rep.combined.status = Status::inconclusive;
    rep.combined.note = "premises fail; no claim";
    return rep;
  }
  rep.statistical = statistically_convergent(s, F, a, I, scale);
  rep.combined = rep.statistical;
  if (!rep.statistical.holds())
    rep.combined.note = "premises hold but the conclusion fails at scale";
  return rep;
}

ClusterReport jbi_cluster_point(const SequencePrefix& s, const MatrixFamily& F,
                                const IdealHandle& I, double a, const Scale& scale) {
  if (!F.nonnegative) throw input_error("jbi_cluster_point: family must be nonnegative");
  ClusterReport rep;
  const int N = scale.N;
  if (s.size() < N) throw input_error("jbi_cluster_point: prefix shorter than window");

  kernels::Grid abs_grid = abs_row_sum_grid(F, N);
  std::vector<double> sup_abs = grid_sup_rows(abs_grid);
  double M = 0.0;
  for (double v : sup_abs) M = std::max(M, v);
  rep.rows_bounded.scale = scale;
  rep.rows_bounded.estimate = ExtendedReal(M);
  rep.rows_bounded.residual = M;
  rep.rows_bounded.status = std::isfinite(M) ? Status::holds_at_scale : Status::fails_at_scale;
  if (rep.rows_bounded.fails()) rep.rows_bounded.witnesses = {1};

  kernels::Grid ones = kernels::family_weighted_grid(
      F, std::vector<double>(static_cast<size_t>(N), 1.0), N);
  rep.row_sums_to_one =
      uniform_limit_grid(ones, std::vector<double>(static_cast<size_t>(ones.cols), 1.0), I, scale);

  rep.verdict.scale = scale;
  rep.verdict.estimate = ExtendedReal(a);
  bool all_below = true;
  double worst = 0.0;
  for (double eps : scale.eps_list) {
    std::vector<double> mask(static_cast<size_t>(N), 0.0);
    for (int k = 1; k <= N; ++k)
      if (std::fabs(s.at(k) - a) >= eps) mask[static_cast<size_t>(k) - 1] = 1.0;
    kernels::Grid g = kernels::family_weighted_grid(F, mask, N);
    const std::vector<double> v = kernels::inf_over_family(g);
    const double c = ideal_liminf(prefix_of(v), I, scale.with_N(g.rows)).v;
    rep.criterion.push_back(c);
    worst = std::max(worst, c);
    if (!(c < 1.0 - kClusterMargin)) all_below = false;
  }
  rep.verdict.residual = worst;
  if (!rep.rows_bounded.holds() || !rep.row_sums_to_one.holds()) {
    rep.verdict.status = Status::inconclusive;
    rep.verdict.note = "row-sum hypotheses fail";
  } else if (all_below) {
    rep.verdict.status = Status::holds_at_scale;
  } else {
    rep.verdict.status = Status::fails_at_scale;
    rep.verdict.witnesses = {1};
    rep.verdict.note = "criterion reaches 1 for some eps";
  }
  return rep;
}

GaugeClusterReport cluster_gauge_sufficient(const SequencePrefix& s, const MatrixFamily& F,
                                            const GaugeFamily& gauges, const IdealHandle& I,
                                            double a, const Scale& scale) {
  for (double eps : scale.eps_list)
    if (lower_envelope(gauges, eps).value <= 0.0)
      throw input_error("cluster_gauge_sufficient: gauge lower envelope vanishes at eps=" +
                        std::to_string(eps));
  GaugeClusterReport rep;
  const int N = scale.N;

  kernels::Grid g;
  if (gauges.uniform_in_i) {
    std::vector<double> f(static_cast<size_t>(N));
    for (int k = 1; k <= N; ++k)
      f[static_cast<size_t>(k) - 1] = gauges.eval(k, F.indices.front(), std::fabs(s.at(k) - a));
    g = kernels::family_weighted_grid(F, f, N);
  } else {
    g = kernels::family_weighted_grid_ki(
        F, [&](int k, int i) { return gauges.eval(k, i, std::fabs(s.at(k) - a)); }, N);
  }
  const std::vector<double> v = kernels::inf_over_family(g);
  rep.gauge_liminf = ideal_liminf(prefix_of(v), I, scale.with_N(g.rows)).v;
  // a liminf still descending across window halves is consistent with 0
  double min_first = std::numeric_limits<double>::infinity();
  double min_second = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= g.rows; ++n) {
    (n <= g.rows / 2 ? min_first : min_second) =
        std::min(n <= g.rows / 2 ? min_first : min_second, v[static_cast<size_t>(n) - 1]);
  }
  rep.premise_holds =
      rep.gauge_liminf <= scale.tol || min_second <= kDecayThreshold * min_first;

  rep.combined.scale = scale;
  rep.combined.estimate = ExtendedReal(a);
  if (!rep.premise_holds) {
    rep.combined.status = Status::inconclusive;
    rep.combined.note = "gauge liminf stays positive; no claim";
    return rep;
  }
  rep.cluster = jbi_cluster_point(s, F, I, a, scale);
  rep.combined = rep.cluster.verdict;
  if (!rep.cluster.verdict.holds())
    rep.combined.note = "premise holds but the cluster criterion fails";
  return rep;
}

}  // namespace summa
