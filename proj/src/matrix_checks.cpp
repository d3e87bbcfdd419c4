#include "summa/matrix_checks.hpp"

#include <algorithm>
#include <cmath>

namespace summa {

namespace {

// growth flag: does the second half of the window dominate the first half
bool looks_growing(const std::vector<double>& v, double factor = 1.2) {
  const size_t half = v.size() / 2;
  if (half == 0) return false;
  double first = 0.0, second = 0.0;
  for (size_t j = 0; j < half; ++j) first = std::max(first, v[j]);
  for (size_t j = half; j < v.size(); ++j) second = std::max(second, v[j]);
  return second > factor * first + 1e-12;
}

int argmax_1based(const std::vector<double>& v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin()) + 1;
}

}  // namespace

kernels::Grid abs_row_sum_grid(const MatrixFamily& F, int N, kernels::Exec exec) {
  if (F.nonnegative) {
    return kernels::family_weighted_grid(F, std::vector<double>(static_cast<size_t>(N), 1.0), N,
                                         exec);
  }
  const int rows = kernels::certified_rows(F, N);
  kernels::Grid g;
  g.resize(rows, F.count());
#pragma omp parallel for schedule(dynamic) if (exec == kernels::Exec::parallel)
  for (int j = 0; j < F.count(); ++j) {
    const auto B = F.member(F.indices[static_cast<size_t>(j)]);
    for (int n = 1; n <= rows; ++n) g.at(n, j) = B.abs_row_sum(n, N);
  }
  return g;
}

ToeplitzReport check_toeplitz_regularity(const SummabilityMatrix& A, const Scale& scale) {
  ToeplitzReport rep;
  const int N = scale.N;
  const IdealHandle If = IdealHandle::finite(scale.m_max);

  std::vector<double> abs_sums(static_cast<size_t>(N), 0.0);
  std::vector<double> signed_sums(static_cast<size_t>(N), 0.0);
  const int cols = std::min(kColumnBudget, N);
  std::vector<std::vector<double>> column(static_cast<size_t>(cols) + 1,
                                          std::vector<double>(static_cast<size_t>(N), 0.0));
#pragma omp parallel for schedule(dynamic)
  for (int n = 1; n <= N; ++n) {
    double a = 0.0, s = 0.0;
    for (const auto& [k, v] : A.row(n)) {
      if (k > N) continue;
      a += std::fabs(v);
      s += v;
      if (k <= cols) column[static_cast<size_t>(k)][static_cast<size_t>(n) - 1] = v;
    }
    a += A.tail_bound(n, N);
    abs_sums[static_cast<size_t>(n) - 1] = a;
    signed_sums[static_cast<size_t>(n) - 1] = s;
  }

  rep.sup_abs_row_sum = *std::max_element(abs_sums.begin(), abs_sums.end());
  rep.bounded_abs_row_sums.scale = scale;
  rep.bounded_abs_row_sums.residual = rep.sup_abs_row_sum;
  rep.bounded_abs_row_sums.estimate = ExtendedReal(rep.sup_abs_row_sum);
  if (looks_growing(abs_sums) || !std::isfinite(rep.sup_abs_row_sum)) {
    rep.bounded_abs_row_sums.status = Status::fails_at_scale;
    rep.bounded_abs_row_sums.witnesses = {argmax_1based(abs_sums)};
    rep.bounded_abs_row_sums.note = "absolute row sums grow across the window";
  } else {
    rep.bounded_abs_row_sums.status = Status::holds_at_scale;
  }

  std::vector<double> dev(static_cast<size_t>(N));
  for (int n = 1; n <= N; ++n)
    dev[static_cast<size_t>(n) - 1] = std::fabs(signed_sums[static_cast<size_t>(n) - 1] - 1.0);
  rep.row_sums_to_one = limit_test_against(dev, If, scale);
  rep.row_sums_to_one.estimate = ExtendedReal(1.0);

  rep.columns_to_zero.scale = scale;
  rep.columns_to_zero.status = Status::holds_at_scale;
  rep.columns_to_zero.residual = 0.0;
  for (int k = 1; k <= cols; ++k) {
    std::vector<double> cv(static_cast<size_t>(N));
    for (int n = 1; n <= N; ++n)
      cv[static_cast<size_t>(n) - 1] = std::fabs(column[static_cast<size_t>(k)][static_cast<size_t>(n) - 1]);
    Verdict v = limit_test_against(cv, If, scale);
    if (!v.holds()) {
      rep.columns_to_zero = v;
      rep.worst_column = k;
      rep.columns_to_zero.note = "column " + std::to_string(k) + " does not vanish";
      break;
    }
    rep.columns_to_zero.residual = std::max(rep.columns_to_zero.residual, v.residual);
  }
  return rep;
}

Verdict check_condition_plus(MatrixFamily& F, const std::vector<int>& candidates,
                             const Scale& scale) {
  Verdict out;
  out.scale = scale;
  const std::vector<int>& cand = candidates.empty() ? F.indices : candidates;
  const int N = scale.N;
  double best_inf = 0.0;
  int best_i = -1;
  for (int i0 : cand) {
    const auto B = F.member(i0);
    double inf = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= kernels::certified_rows(F, N); ++n) {
      inf = std::min(inf, B.abs_row_sum(n, N) + B.tail_bound(n, N));
      if (inf < kConditionPlusFloor) break;
    }
    if (inf >= kConditionPlusFloor && inf > best_inf) {
      best_inf = inf;
      best_i = i0;
    }
  }
  if (best_i >= 0) {
    out.status = Status::holds_at_scale;
    out.estimate = ExtendedReal(best_inf);
    out.residual = 0.0;
    out.witnesses = {best_i};
    F.condition_plus_witness = best_i;
  } else {
    out.status = Status::fails_at_scale;
    out.residual = kConditionPlusFloor;
    out.witnesses = cand;
    out.note = "no candidate keeps absolute row sums above the floor";
  }
  return out;
}

ConsistencyReport check_consistency_conditions(const MatrixFamily& F, const IdealHandle& I,
                                               const std::vector<SequencePrefix>& probes,
                                               const Scale& scale) {
  ConsistencyReport rep;
  const int N = scale.N;

  kernels::Grid abs_grid = abs_row_sum_grid(F, N);
  std::vector<double> sup_abs = kernels::sup_deviation(
      abs_grid, std::vector<double>(static_cast<size_t>(abs_grid.cols), 0.0));
  rep.abs_rows_bounded.scale = scale;
  // best bound over the base chain: for nested bases this is the deepest window
  if (I.has_base()) {
    const auto wr = window_residual_test(sup_abs, I.base, scale);
    rep.M = wr.best;
  } else {
    rep.M = *std::max_element(sup_abs.begin(), sup_abs.end());
  }
  rep.abs_rows_bounded.estimate = ExtendedReal(rep.M);
  rep.abs_rows_bounded.residual = rep.M;
  if (looks_growing(sup_abs)) {
    rep.abs_rows_bounded.status = Status::fails_at_scale;
    rep.abs_rows_bounded.witnesses = {argmax_1based(sup_abs)};
    rep.abs_rows_bounded.note = "absolute row sums grow; no base set bounds them";
  } else {
    rep.abs_rows_bounded.status = Status::holds_at_scale;
  }

  if (probes.empty()) {
    rep.vacuous_probes = true;
    Verdict v;
    v.scale = scale;
    v.status = Status::holds_at_scale;
    v.residual = 0.0;
    v.note = "vacuous: no probes supplied";
    rep.probe_limits.push_back(v);
  }
  for (const auto& probe : probes) {
    if (probe.size() < N) throw input_error("consistency probe shorter than window");
    std::vector<int> support;
    for (int k = 1; k <= N; ++k)
      if (probe.at(k) != 0.0) support.push_back(k);
    const Verdict in_ideal = ideal_member(I, IndexSet::from_indices(support), scale);
    if (!in_ideal.holds())
      throw input_error("consistency probe support is not absorbed by the ideal at scale");
    kernels::Grid g = kernels::family_weighted_grid(
        F, std::vector<double>(probe.values.begin(), probe.values.begin() + N), N);
    // uniform vanishing of the probe transforms
    kernels::Grid ag = g;
    for (auto& x : ag.data) x = std::fabs(x);
    Verdict v = uniform_limit_grid(ag, std::vector<double>(static_cast<size_t>(g.cols), 0.0), I,
                                   scale);
    rep.probe_limits.push_back(v);
  }

  kernels::Grid ones = kernels::family_weighted_grid(
      F, std::vector<double>(static_cast<size_t>(N), 1.0), N);
  rep.row_sums_to_one = uniform_limit_grid(
      ones, std::vector<double>(static_cast<size_t>(ones.cols), 1.0), I, scale);
  return rep;
}

Verdict families_agree(const MatrixFamily& A, const MatrixFamily& B, const IdealHandle& I,
                       const Scale& scale) {
  if (A.indices != B.indices) throw input_error("families_agree: index sets differ");
  const int N = scale.N;
  const int rows = std::min(kernels::certified_rows(A, N), kernels::certified_rows(B, N));
  kernels::Grid g;
  g.resize(rows, A.count());
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < A.count(); ++j) {
    const auto Ma = A.member(A.indices[static_cast<size_t>(j)]);
    const auto Mb = B.member(B.indices[static_cast<size_t>(j)]);
    for (int n = 1; n <= rows; ++n) {
      auto ra = Ma.row(n);
      auto rb = Mb.row(n);
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
      g.at(n, j) = acc;
    }
  }
  return uniform_limit_grid(g, std::vector<double>(static_cast<size_t>(g.cols), 0.0), I, scale);
}

IdealHandle derived_ideal(const MatrixFamily& F, const IdealHandle& inner, const Scale& scale) {
  if (!F.nonnegative)
    throw input_error("derived_ideal: family must be flagged nonnegative");
  MatrixFamily Fcopy = F;
  if (!Fcopy.condition_plus_witness) {
    Verdict plus = check_condition_plus(Fcopy, {}, scale);
    if (!plus.holds())
      throw capability_error(
          "derived_ideal: condition (+) could not be verified, refusing (the full index "
          "set might otherwise qualify as a member)");
  }

  IdealHandle J;
  J.variant = IdealVariant::matrix_derived;
  J.derived = std::make_shared<DerivedIdealData>(DerivedIdealData{Fcopy, inner});
  J.name = "J[" + F.name + "," + inner.name + "]";

  // admissibility probe: sampled singleton columns must vanish along the inner
  // ideal; run at reduced scale, this stamps a flag rather than a verdict
  const int Nprobe = std::min(scale.N, 2000);
  Scale probe = scale.with_N(Nprobe);
  J.admissible = true;
  for (int k = 1; k <= std::min(kColumnBudget, Nprobe); k *= 4) {
    Verdict v = derived_ideal_member(J, IndexSet::from_indices({k}), probe);
    if (v.fails()) {
      J.admissible = false;
      break;
    }
  }
  return J;
}

}  // namespace summa
