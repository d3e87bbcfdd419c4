#include "summa/precauchy.hpp"

#include <algorithm>
#include <cmath>

namespace summa {

namespace {

SequencePrefix prefix_of(std::vector<double> v) {
  SequencePrefix p;
  p.values = std::move(v);
  return p;
}

Verdict combine_eps_verdicts(const std::vector<std::pair<double, Verdict>>& per_eps,
                             const Scale& scale) {
  Verdict out;
  out.scale = scale;
  out.residual = 0.0;
  bool any_pass = false, any_fail = false;
  for (const auto& [eps, v] : per_eps) {
    out.residual = std::max(out.residual, v.residual);
    if (v.fails()) {
      any_fail = true;
      out.witnesses = v.witnesses;
      out.note = "pair mass persists at eps=" + std::to_string(eps);
      break;
    }
    if (v.holds()) {
      any_pass = true;
    } else {
      out.unresolved.push_back(eps);
    }
  }
  out.status = any_fail ? Status::fails_at_scale
                        : (any_pass ? Status::holds_at_scale : Status::inconclusive);
  return out;
}

bool shifts_of_cesaro(const MatrixFamily& F) {
  return (F.kind == FamilyKind::shifts || F.kind == FamilyKind::single) &&
         F.base_kind == MatrixKind::cesaro;
}

double sup_abs_rows(const MatrixFamily& F, int N, Verdict& verdict, const Scale& scale) {
  kernels::Grid abs_grid = abs_row_sum_grid(F, N);
  double M = 0.0;
  for (double v : abs_grid.data) M = std::max(M, v);
  verdict.scale = scale;
  verdict.estimate = ExtendedReal(M);
  verdict.residual = M;
  verdict.status = std::isfinite(M) ? Status::holds_at_scale : Status::fails_at_scale;
  if (verdict.fails()) verdict.witnesses = {1};
  return M;
}

}  // namespace

PairExceptionalSet pair_exceptional_set(const SequencePrefix& s, double eps) {
  if (eps <= 0) throw input_error("pair_exceptional_set: eps must be positive");
  auto values = std::make_shared<std::vector<double>>(s.values);
  PairExceptionalSet out;
  out.eps = eps;
  out.contains = [values, eps](int k, int l) {
    if (k < 1 || l < 1 || static_cast<size_t>(k) > values->size() ||
        static_cast<size_t>(l) > values->size())
      return false;
    return std::fabs((*values)[static_cast<size_t>(k) - 1] -
                     (*values)[static_cast<size_t>(l) - 1]) >= eps;
  };
  return out;
}

// Markov-style decay oracle: the eps-free pair sums ΣΣ b b |s_k - s_l| bound
// eps times the pair-indicator mass, so while they are still decaying at the
// window edge an eps-level failure is undecidable rather than refuted.
static std::optional<WindowReport> pair_decay_report(const MatrixFamily& F,
                                                     const std::vector<double>& sv, int N,
                                                     const Scale& scale) {
  try {
    kernels::Grid p1 = kernels::pair_power_grid(F, sv, 1, N);
    const std::vector<double> v = kernels::sup_deviation(
        p1, std::vector<double>(static_cast<size_t>(p1.cols), 0.0));
    return window_residual_test(v, finite_ideal_base(scale.m_max), scale.with_N(p1.rows));
  } catch (const capability_error&) {
    return std::nullopt;
  }
}

static bool decay_obstructed(const std::optional<WindowReport>& rep, double eps) {
  if (!rep) return true;  // no oracle, keep the raw verdict
  if (rep->best <= std::min(eps, 1e-6)) return false;
  return rep->decay >= kDecayThreshold;
}

Verdict pre_cauchy(const SequencePrefix& s, const MatrixFamily& F, const IdealHandle& I,
                   const Scale& scale) {
  if (!F.nonnegative) throw input_error("pre_cauchy: family must be nonnegative");
  if (s.size() < scale.N) throw input_error("pre_cauchy: prefix shorter than window");
  const int N = scale.N;
  const std::vector<double> sv(s.values.begin(), s.values.begin() + N);
  const auto decay = pair_decay_report(F, sv, N, scale);
  std::vector<std::pair<double, Verdict>> per_eps;
  for (double eps : scale.eps_list) {
    kernels::Grid g = kernels::pair_indicator_grid(F, sv, eps, N);
    Verdict v = uniform_limit_grid(g, std::vector<double>(static_cast<size_t>(g.cols), 0.0), I,
                                   scale);
    if (v.fails() && !decay_obstructed(decay, eps)) {
      v.status = Status::inconclusive;
      v.note = "pair mass covers the window but the pair sums still decay";
    }
    per_eps.emplace_back(eps, v);
  }
  return combine_eps_verdicts(per_eps, scale);
}

Verdict pre_cauchy_plus(const SequencePrefix& s, const MatrixFamily& F, const IdealHandle& I,
                        const Scale& scale) {
  if (!F.nonnegative) throw input_error("pre_cauchy_plus: family must be nonnegative");
  if (s.size() < scale.N) throw input_error("pre_cauchy_plus: prefix shorter than window");
  const int N = scale.N;
  if (F.count() == 1) return pre_cauchy(s, F, I, scale);  // i = j forced

  const std::vector<double> sv(s.values.begin(), s.values.begin() + N);
  const auto tv = kernels::two_valued(sv);
  const auto decay = pair_decay_report(F, sv, N, scale);

  std::vector<std::pair<double, Verdict>> per_eps;
  for (double eps : scale.eps_list) {
    std::vector<double> v;  // sup over (i, j) per row
    if (tv) {
      if (tv->second - tv->first < eps) {
        Verdict h;
        h.scale = scale;
        h.status = Status::holds_at_scale;
        h.residual = 0.0;
        per_eps.emplace_back(eps, h);
        continue;
      }
      std::vector<double> hi(static_cast<size_t>(N), 0.0), ones(static_cast<size_t>(N), 1.0);
      for (int k = 0; k < N; ++k)
        hi[static_cast<size_t>(k)] = (sv[static_cast<size_t>(k)] == tv->second) ? 1.0 : 0.0;
      kernels::Grid r = kernels::family_weighted_grid(F, hi, N);
      kernels::Grid R = kernels::family_weighted_grid(F, ones, N);
      v.assign(static_cast<size_t>(r.rows), 0.0);
#pragma omp parallel for schedule(static)
      for (int n = 1; n <= r.rows; ++n) {
        double sup = 0.0;
        for (int i = 0; i < r.cols; ++i)
          for (int j = 0; j < r.cols; ++j) {
            const double u = r.at(n, i) * (R.at(n, j) - r.at(n, j)) +
                             (R.at(n, i) - r.at(n, i)) * r.at(n, j);
            sup = std::max(sup, u);
          }
        v[static_cast<size_t>(n) - 1] = sup;
      }
    } else if (shifts_of_cesaro(F)) {
      // mixed windows [i+1..i+n] x [j+1..j+n] with uniform weights: count far
      // pairs between the two windows through sorted window copies
      const int rows = kernels::certified_rows(F, N);
      v.assign(static_cast<size_t>(rows), 0.0);
      const std::int64_t work = static_cast<std::int64_t>(rows) * F.count() * F.count();
      if (work > (std::int64_t{1} << 24))
        throw capability_error(
            "pre_cauchy_plus: (n, i, j) grid too large for the general-value path; reduce N "
            "or i_max, or use a two-valued sequence");
#pragma omp parallel for schedule(dynamic)
      for (int n = 1; n <= rows; ++n) {
        std::vector<std::vector<double>> windows(static_cast<size_t>(F.count()));
        for (int c = 0; c < F.count(); ++c) {
          const int sh = F.indices[static_cast<size_t>(c)];
          auto& w = windows[static_cast<size_t>(c)];
          w.assign(sv.begin() + std::min(sh, N), sv.begin() + std::min(sh + n, N));
          std::sort(w.begin(), w.end());
        }
        double sup = 0.0;
        for (int i = 0; i < F.count(); ++i)
          for (int j = 0; j < F.count(); ++j) {
            const auto& wi = windows[static_cast<size_t>(i)];
            const auto& wj = windows[static_cast<size_t>(j)];
            double cnt = 0.0;
            for (double x : wi) {
              cnt += static_cast<double>(std::upper_bound(wj.begin(), wj.end(), x - eps) -
                                         wj.begin());
              cnt += static_cast<double>(wj.end() -
                                         std::lower_bound(wj.begin(), wj.end(), x + eps));
            }
            sup = std::max(sup, cnt / (static_cast<double>(n) * n));
          }
        v[static_cast<size_t>(n) - 1] = sup;
      }
    } else {
      throw capability_error(
          "pre_cauchy_plus: general-value multi-member families need the shifted-window "
          "fast path; reduce to a single matrix or a two-valued sequence");
    }
    Verdict verdict = limit_test_against(v, I, scale.with_N(static_cast<int>(v.size())));
    if (verdict.fails() && !decay_obstructed(decay, eps)) {
      verdict.status = Status::inconclusive;
      verdict.note = "pair mass covers the window but the pair sums still decay";
    }
    per_eps.emplace_back(eps, verdict);
  }
  return combine_eps_verdicts(per_eps, scale);
}

double gauge_pre_cauchy_sum(const SequencePrefix& s, const MatrixFamily& F,
                            const PairGaugeFamily& gauges, int n, int i, std::optional<int> j,
                            const Scale& scale) {
  if (!F.nonnegative) throw input_error("gauge_pre_cauchy_sum: family must be nonnegative");
  const int N = std::min(scale.N, s.size());
  const int jj = j.value_or(i);
  const auto Bi = F.member(i);
  const auto Bj = F.member(jj);
  const std::vector<double> sv(s.values.begin(), s.values.begin() + N);
  return kernels::pair_gauge_cell(
      Bi, Bj, n, sv,
      [&gauges, i, jj](int k, int l, double t) { return gauges.eval(k, l, i, jj, t); }, N);
}

SubsequenceReport subsequence_convergence(const SequencePrefix& s, const MatrixFamily& F,
                                          const IdealHandle& I, double a, const IndexSet& W,
                                          const Scale& scale) {
  SubsequenceReport rep;
  const int N = scale.N;
  IdealHandle J = derived_ideal(F, I, scale);

  // I ⊆ J on probe base sets
  rep.ideal_inside_derived.scale = scale;
  rep.ideal_inside_derived.status = Status::holds_at_scale;
  rep.ideal_inside_derived.residual = 0.0;
  if (I.has_base()) {
    for (int m = 1; m <= std::min(3, I.base.m_count); ++m) {
      std::vector<int> Bm;
      for (int n = 1; n <= N; ++n)
        if (I.base.in_base(m, n)) Bm.push_back(n);
      Verdict v = derived_ideal_member(J, IndexSet::from_indices(Bm), scale);
      if (!v.holds()) {
        rep.ideal_inside_derived = v;
        rep.ideal_inside_derived.note = "base set " + std::to_string(m) + " not in derived ideal";
        break;
      }
    }
  }

  sup_abs_rows(F, N, rep.rows_bounded, scale);
  rep.precauchy = pre_cauchy(s, F, I, scale);

  bool W_small = true;
  for (double eps : scale.eps_list) {
    std::vector<int> bad;
    for (int n = 1; n <= N; ++n)
      if (W.contains(n) && std::fabs(s.at(n) - a) >= eps) bad.push_back(n);
    Verdict v = ideal_member(I, IndexSet::from_indices(bad), scale);
    if (!v.holds()) W_small = false;
    rep.W_exceptional_small.push_back(v);
  }

  std::vector<double> mask(static_cast<size_t>(N), 0.0);
  for (int k = 1; k <= N; ++k)
    if (W.contains(k)) mask[static_cast<size_t>(k) - 1] = 1.0;
  kernels::Grid g = kernels::family_weighted_grid(F, mask, N);
  const std::vector<double> v = kernels::inf_over_family(g);
  rep.w = ideal_liminf(prefix_of(v), I, scale.with_N(g.rows)).v;

  rep.premises_hold = rep.ideal_inside_derived.holds() && rep.rows_bounded.holds() &&
                      rep.precauchy.holds() && W_small && rep.w > scale.tol;

  rep.combined.scale = scale;
  rep.combined.estimate = ExtendedReal(a);
  if (!rep.premises_hold) {
    rep.combined.status = Status::inconclusive;
    rep.combined.note = "premises fail; no claim";
    return rep;
  }
  rep.statistical = statistically_convergent(s, F, a, I, scale);
  rep.combined = rep.statistical;
  if (!rep.statistical.holds())
    rep.combined.note = "premises hold but statistical convergence fails at scale";
  return rep;
}

namespace {

Verdict base_compatibility_check(const MatrixFamily& F, const IdealHandle& I, const Scale& scale,
                                 std::pair<int, int>* offending) {
  Verdict v;
  v.scale = scale;
  v.status = Status::holds_at_scale;
  v.residual = 0.0;
  if (!I.has_base()) {
    v.status = Status::inconclusive;
    v.note = "ideal exposes no basis";
    return v;
  }
  const int N = scale.N;
  // sampled basis sets: shallow, middle, deepest
  for (int m : {1, I.base.m_count / 2, I.base.m_count}) {
    if (m < 1) continue;
    std::vector<int> C;
    for (int n = 1; n <= N && static_cast<int>(C.size()) < 4096; ++n)
      if (!I.base.in_base(m, n)) C.push_back(n);
    if (C.size() < 2) continue;
    // consecutive elements from the tail half
    const size_t from = C.size() / 2;
    int checked = 0;
    for (size_t t = from; t + 1 < C.size() && checked < 32; ++t, ++checked) {
      double inf_diff = std::numeric_limits<double>::infinity();
      for (int idx : F.indices) {
        const auto B = F.member(idx);
        auto ra = B.row(C[t]);
        auto rb = B.row(C[t + 1]);
        double acc = 0.0;
        size_t p = 0, q = 0;
        while (p < ra.size() || q < rb.size()) {
          const int ka = p < ra.size() ? ra[p].first : N + 1;
          const int kb = q < rb.size() ? rb[q].first : N + 1;
          if (ka > N && kb > N) break;
          if (ka == kb) {
            acc += std::fabs(ra[p].second - rb[q].second);
            ++p;
            ++q;
          } else if (ka < kb) {
            acc += std::fabs(ra[p].second);
            ++p;
          } else {
            acc += std::fabs(rb[q].second);
            ++q;
          }
        }
        inf_diff = std::min(inf_diff, acc);
        if (inf_diff < 1.0 / 3.0) break;
      }
      v.residual = std::max(v.residual, inf_diff);
      if (!(inf_diff < 1.0 / 3.0)) {
        v.status = Status::fails_at_scale;
        v.witnesses = {C[t], C[t + 1]};
        v.note = "consecutive basis rows differ by >= 1/3";
        if (offending) *offending = {C[t], C[t + 1]};
        return v;
      }
    }
  }
  return v;
}

}  // namespace

DichotomyReport dichotomy_check(const SequencePrefix& s, const MatrixFamily& F,
                                const IdealHandle& I, double alpha, double beta,
                                const Scale& scale) {
  if (!(alpha < beta)) throw input_error("dichotomy_check: need alpha < beta");
  if (!I.admissible) throw input_error("dichotomy_check: ideal must be admissible");
  DichotomyReport rep;
  const int N = scale.N;

  sup_abs_rows(F, N, rep.rows_bounded, scale);
  kernels::Grid ones = kernels::family_weighted_grid(
      F, std::vector<double>(static_cast<size_t>(N), 1.0), N);
  rep.row_sums_to_one =
      uniform_limit_grid(ones, std::vector<double>(static_cast<size_t>(ones.cols), 1.0), I, scale);

  std::pair<int, int> offending{0, 0};
  rep.base_compatible = base_compatibility_check(F, I, scale, &offending);
  if (rep.base_compatible.fails())
    throw capability_error("dichotomy_check: basis rows " + std::to_string(offending.first) +
                           "," + std::to_string(offending.second) +
                           " violate the successive-difference bound");

  rep.precauchy_plus = pre_cauchy_plus(s, F, I, scale);

  IdealHandle J = derived_ideal(F, I, scale);
  std::vector<int> H, X, Y;
  for (int n = 1; n <= N; ++n) {
    const double v = s.at(n);
    if (v > alpha && v < beta) H.push_back(n);
    if (v <= alpha) X.push_back(n);
    if (v >= beta) Y.push_back(n);
  }
  rep.H_in_J = derived_ideal_member(J, IndexSet::from_indices(H), scale);
  rep.X_in_J = derived_ideal_member(J, IndexSet::from_indices(X), scale);
  rep.Y_in_J = derived_ideal_member(J, IndexSet::from_indices(Y), scale);

  rep.premises_hold = rep.rows_bounded.holds() && rep.row_sums_to_one.holds() &&
                      rep.base_compatible.holds() && rep.precauchy_plus.holds() &&
                      rep.H_in_J.holds();

  rep.combined.scale = scale;
  if (!rep.premises_hold) {
    rep.combined.status = Status::inconclusive;
    rep.combined.note = "premises fail; no claim";
    return rep;
  }
  if (rep.X_in_J.holds()) {
    rep.branch = 'X';
    rep.combined.status = Status::holds_at_scale;
    rep.combined.residual = rep.X_in_J.residual;
  } else if (rep.Y_in_J.holds()) {
    rep.branch = 'Y';
    rep.combined.status = Status::holds_at_scale;
    rep.combined.residual = rep.Y_in_J.residual;
  } else {
    rep.combined.status = Status::fails_at_scale;
    rep.combined.witnesses = {1};
    rep.combined.note = "neither outer band lands in the derived ideal";
  }
  return rep;
}

NowhereDenseReport nowhere_dense_cluster_conclusion(const SequencePrefix& s,
                                                    const MatrixFamily& F, const IdealHandle& I,
                                                    const Scale& scale, int grid_points,
                                                    int run_cap) {
  NowhereDenseReport rep;
  const int N = scale.N;

  sup_abs_rows(F, N, rep.hypotheses.rows_bounded, scale);
  kernels::Grid ones = kernels::family_weighted_grid(
      F, std::vector<double>(static_cast<size_t>(N), 1.0), N);
  rep.hypotheses.row_sums_to_one =
      uniform_limit_grid(ones, std::vector<double>(static_cast<size_t>(ones.cols), 1.0), I, scale);
  rep.hypotheses.base_compatible = base_compatibility_check(F, I, scale, nullptr);
  rep.hypotheses.precauchy_plus = pre_cauchy_plus(s, F, I, scale);

  IdealHandle J = derived_ideal(F, I, scale);
  double lo = s.at(1), hi = s.at(1);
  for (int n = 1; n <= N; ++n) {
    lo = std::min(lo, s.at(n));
    hi = std::max(hi, s.at(n));
  }
  rep.bounded = is_ideal_bounded(s, J, std::max(std::fabs(lo), std::fabs(hi)) + 1.0, scale);

  std::vector<double> grid;
  double step;
  if (hi - lo <= 1e-6) {
    // essentially constant: the only candidate cluster is the midrange
    grid = {0.5 * (lo + hi)};
    step = 1e-6;
  } else {
    step = (hi - lo) / (grid_points - 1);
    for (int j = 0; j < grid_points; ++j) grid.push_back(lo + step * j);
  }
  rep.cluster_set = ideal_cluster_points(s, J, grid, std::max(step, 1e-9), scale);

  // longest run of grid-adjacent cluster members
  int run = 0;
  rep.longest_run = 0;
  size_t ci = 0;
  for (int j = 0; j < static_cast<int>(grid.size()); ++j) {
    const bool in = ci < rep.cluster_set.size() &&
                    std::fabs(rep.cluster_set[ci] - grid[static_cast<size_t>(j)]) < step * 0.5;
    if (in) {
      ++ci;
      ++run;
      rep.longest_run = std::max(rep.longest_run, run);
    } else {
      run = 0;
    }
  }
  rep.nowhere_dense = rep.longest_run <= run_cap && !rep.cluster_set.empty();

  rep.conclusion.scale = scale;
  const bool premises = rep.hypotheses.rows_bounded.holds() &&
                        rep.hypotheses.row_sums_to_one.holds() &&
                        rep.hypotheses.base_compatible.holds() &&
                        rep.hypotheses.precauchy_plus.holds() && rep.bounded.holds();
  if (!premises || rep.cluster_set.empty()) {
    rep.conclusion.status = Status::inconclusive;
    rep.conclusion.note = rep.cluster_set.empty() ? "no cluster points found on the grid"
                                                  : "premises fail; no claim";
    return rep;
  }
  if (!rep.nowhere_dense) {
    rep.conclusion.status = Status::inconclusive;
    rep.conclusion.note = "cluster set shows an interval at grid resolution; grid too coarse";
    return rep;
  }
  for (double a : rep.cluster_set) {
    Verdict v = statistically_convergent(s, F, a, I, scale);
    if (v.holds()) {
      rep.conclusion = v;
      return rep;
    }
  }
  rep.conclusion.status = Status::fails_at_scale;
  rep.conclusion.witnesses = {1};
  rep.conclusion.note = "no cluster value is a statistical limit at scale";
  return rep;
}

}  // namespace summa
