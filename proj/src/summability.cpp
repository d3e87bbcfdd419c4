#include "summa/summability.hpp"

#include <algorithm>
#include <cmath>

namespace summa {

namespace {

std::vector<double> window_values(const SequencePrefix& s, int N) {
  return std::vector<double>(s.values.begin(), s.values.begin() + N);
}

void require_window(const SequencePrefix& s, const Scale& scale, const char* who) {
  if (s.size() == 0) throw input_error(std::string(who) + ": empty prefix");
  if (s.size() < scale.N)
    throw input_error(std::string(who) + ": prefix shorter than scale window");
}

// max tail bound over a sampled (n, i) subgrid; exact 0 for certified rows
double sampled_tail_bound(const MatrixFamily& F, int rows, int N) {
  if (F.kind == FamilyKind::shifts &&
      (F.base_kind == MatrixKind::cesaro || F.base_kind == MatrixKind::identity))
    return 0.0;  // rows are restricted so every window fits
  double worst = 0.0;
  for (int j = 0; j < F.count(); ++j) {
    const auto B = F.member(F.indices[static_cast<size_t>(j)]);
    for (int n = rows; n >= 1; n /= 2) {
      worst = std::max(worst, B.tail_bound(n, N));
      if (n == 1) break;
    }
  }
  return worst;
}

Verdict grid_uniform_zero(const kernels::Grid& g, const IdealHandle& I, const Scale& scale) {
  return uniform_limit_grid(g, std::vector<double>(static_cast<size_t>(g.cols), 0.0), I, scale);
}

bool looks_unbounded(const SequencePrefix& s, int N) {
  double first = 0.0, second = 0.0;
  for (int n = 1; n <= N / 2; ++n) first = std::max(first, std::fabs(s.at(n)));
  for (int n = N / 2 + 1; n <= N; ++n) second = std::max(second, std::fabs(s.at(n)));
  return first > 0.0 && second > 1.9 * first + 1.0;
}

Verdict hypothesis(bool ok, const Scale& scale, double value, const std::string& note_fail) {
  Verdict v;
  v.scale = scale;
  v.residual = 0.0;
  v.estimate = ExtendedReal(value);
  if (ok) {
    v.status = Status::holds_at_scale;
  } else {
    v.status = Status::fails_at_scale;
    v.witnesses = {0};
    v.note = note_fail;
  }
  return v;
}

}  // namespace

kernels::Grid transform_grid(const SequencePrefix& s, const MatrixFamily& F, const Scale& scale) {
  require_window(s, scale, "transform_grid");
  kernels::Grid g = kernels::family_weighted_grid(F, window_values(s, scale.N), scale.N);
  const double tb = sampled_tail_bound(F, g.rows, scale.N);
  if (tb > 0.0) {
    const double sup = s.sup_abs();
    if (!s.tail_abs_bound && tb * sup > scale.tol)
      throw capability_error("transform_grid: uncertified tail mass " + std::to_string(tb * sup) +
                             " exceeds tol and the sequence declares no tail bound");
    g.max_tail_error = std::max(g.max_tail_error, tb * sup);
    if (g.max_tail_error > scale.tol)
      throw capability_error("transform_grid: certified tail error exceeds tol at this scale");
  }
  return g;
}

Verdict b_summable(const SequencePrefix& s, const MatrixFamily& F, const IdealHandle& I,
                   std::optional<double> a, const Scale& scale) {
  kernels::Grid g = transform_grid(s, F, scale);
  double target;
  if (a) {
    target = *a;
  } else {
    // family-wide candidate: midpoint of the extreme column limsups/liminfs
    std::vector<int> cols;
    if (I.has_base()) {
      for (int j = 0; j < g.cols; ++j) cols.push_back(j);
    } else {
      for (int j = 0; j < g.cols; j += std::max(1, g.cols / 8)) cols.push_back(j);
    }
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    const Scale rows_scale = scale.with_N(g.rows);
    for (int j : cols) {
      SequencePrefix column;
      column.values.resize(static_cast<size_t>(g.rows));
      for (int n = 1; n <= g.rows; ++n) column.values[static_cast<size_t>(n) - 1] = g.at(n, j);
      hi = std::max(hi, ideal_limsup(column, I, rows_scale).v);
      lo = std::min(lo, ideal_liminf(column, I, rows_scale).v);
    }
    if (!std::isfinite(hi) || !std::isfinite(lo)) {
      Verdict out;
      out.scale = scale;
      out.status = Status::fails_at_scale;
      out.estimate = std::isfinite(hi) ? ExtendedReal::neg_infinity() : ExtendedReal::infinity();
      out.residual = std::numeric_limits<double>::max();
      out.witnesses = {g.rows};
      out.note = "transform family admits no finite candidate limit";
      return out;
    }
    target = 0.5 * (hi + lo);
  }
  Verdict out = uniform_limit_grid(g, std::vector<double>(static_cast<size_t>(g.cols), target), I,
                                   scale);
  out.estimate = ExtendedReal(target);
  return out;
}

Verdict strong_summable(const SequencePrefix& s, const MatrixFamily& F, const GaugeFamily& gauges,
                        double a, const IdealHandle& I, const Scale& scale) {
  require_window(s, scale, "strong_summable");
  if (!F.nonnegative) throw input_error("strong_summable: family must be nonnegative");
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
  // divergent tails give +inf cells, a legitimate value in [0, inf]
  const double tb = sampled_tail_bound(F, g.rows, N);
  if (tb > 0.0) {
    if (std::isinf(tb)) {
      for (auto& x : g.data) x = std::numeric_limits<double>::infinity();
    } else {
      const double reach = s.tail_abs_bound ? *s.tail_abs_bound + std::fabs(a)
                                            : std::numeric_limits<double>::quiet_NaN();
      const double bound = std::isnan(reach)
                               ? std::numeric_limits<double>::infinity()
                               : tb * upper_envelope(gauges, std::max(reach, 1e-300)).value;
      if (bound > scale.tol)
        throw capability_error("strong_summable: uncertified gauge tail at this scale");
    }
  }
  Verdict out = grid_uniform_zero(g, I, scale);
  out.estimate = ExtendedReal(a);
  return out;
}

Verdict statistically_convergent(const SequencePrefix& s, const MatrixFamily& F, double a,
                                 const IdealHandle& I, const Scale& scale) {
  require_window(s, scale, "statistically_convergent");
  if (!F.nonnegative) throw input_error("statistically_convergent: family must be nonnegative");
  const int N = scale.N;

  // Markov-style decay oracle: the weighted deviation sums Σ b |s_k - a|
  // dominate eps times every exceptional mass, so while they keep decaying at
  // the window edge an eps-level failure is undecidable, not refuted — the
  // exceptional set would keep thinning beyond the window.
  std::vector<double> dev(static_cast<size_t>(N));
  for (int k = 1; k <= N; ++k) dev[static_cast<size_t>(k) - 1] = std::fabs(s.at(k) - a);
  kernels::Grid dev_grid = kernels::family_weighted_grid(F, dev, N);
  const std::vector<double> dev_sums = kernels::sup_deviation(
      dev_grid, std::vector<double>(static_cast<size_t>(dev_grid.cols), 0.0));
  const WindowReport dev_report =
      window_residual_test(dev_sums, finite_ideal_base(scale.m_max), scale.with_N(dev_grid.rows));
  const bool sums_decaying = dev_report.decay < kDecayThreshold || dev_report.best <= scale.tol;
  const auto dev_obstructed = [&](double) { return !sums_decaying; };

  Verdict out;
  out.scale = scale;
  out.estimate = ExtendedReal(a);
  out.residual = 0.0;
  bool any_pass = false, any_fail = false;
  for (double eps : scale.eps_list) {
    std::vector<double> mask(static_cast<size_t>(N), 0.0);
    for (int k = 1; k <= N; ++k)
      if (dev[static_cast<size_t>(k) - 1] >= eps) mask[static_cast<size_t>(k) - 1] = 1.0;
    kernels::Grid g = kernels::family_weighted_grid(F, mask, N);
    Verdict v = grid_uniform_zero(g, I, scale);
    out.residual = std::max(out.residual, v.residual);
    if (v.holds()) {
      any_pass = true;
    } else if (v.fails() && dev_obstructed(eps)) {
      any_fail = true;
      out.witnesses = v.witnesses;
      out.note = "exceptional mass persists at eps=" + std::to_string(eps);
      break;
    } else {
      out.unresolved.push_back(eps);
    }
  }
  out.status = any_fail ? Status::fails_at_scale
                        : (any_pass ? Status::holds_at_scale : Status::inconclusive);
  return out;
}

IndexSet exceptional_set(const SequencePrefix& s, double a, double eps) {
  if (eps <= 0) throw input_error("exceptional_set: eps must be positive");
  auto values = std::make_shared<std::vector<double>>(s.values);
  return IndexSet::of(
      [values, a, eps](int k) {
        if (k < 1 || static_cast<size_t>(k) > values->size()) return false;
        return std::fabs((*values)[static_cast<size_t>(k) - 1] - a) >= eps;
      },
      "D(s," + std::to_string(a) + "," + std::to_string(eps) + ")");
}

double sigma_variance(const SequencePrefix& s, const MatrixFamily& F, const GaugeFamily& gauges,
                      int n, int i, const Scale& scale) {
  if (!F.nonnegative) throw input_error("sigma_variance: family must be nonnegative");
  const int N = std::min(scale.N, s.size());
  const auto B = F.member(i);
  const double center = transform(s, B, n).value;
  double acc = 0.0;
  for (const auto& [k, b] : B.row(n)) {
    if (k > N) continue;
    acc += b * gauges.eval(k, i, std::fabs(s.at(k) - center));
  }
  if (B.tail_bound(n, N) > 0.0 && !s.tail_abs_bound)
    return std::numeric_limits<double>::infinity();
  return acc;
}

kernels::Grid sigma_grid(const SequencePrefix& s, const MatrixFamily& F,
                         const GaugeFamily& gauges, const Scale& scale, kernels::Exec exec) {
  require_window(s, scale, "sigma_grid");
  const int N = scale.N;
  kernels::Grid tau = kernels::family_weighted_grid(F, window_values(s, N), N, exec);

  const bool shifts_cesaro = (F.kind == FamilyKind::shifts || F.kind == FamilyKind::single) &&
                             F.base_kind == MatrixKind::cesaro;
  kernels::Grid g;
  g.resize(tau.rows, tau.cols);
  if (shifts_cesaro && gauges.is_identity) {
    // Σ_{window} |s_k - c| / n via Fenwick (count, sum) over value ranks
    std::vector<double> vals = window_values(s, N);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    const int V = static_cast<int>(vals.size());
#pragma omp parallel for schedule(dynamic) if (exec == kernels::Exec::parallel)
    for (int j = 0; j < tau.cols; ++j) {
      const int sh = F.kind == FamilyKind::shifts ? F.indices[static_cast<size_t>(j)]
                                                  : F.member(F.indices[0]).shift;
      kernels::Fenwick cnt(V), sum(V);
      double in_window = 0.0, sum_window = 0.0;
      for (int n = 1; n <= tau.rows; ++n) {
        const int k = sh + n;
        if (k <= N) {
          const double v = s.at(k);
          const int r = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), v) -
                                         vals.begin());
          cnt.add(r, 1.0);
          sum.add(r, v);
          in_window += 1.0;
          sum_window += v;
        }
        const double c = tau.at(n, j);
        const int le = static_cast<int>(std::upper_bound(vals.begin(), vals.end(), c) -
                                        vals.begin()) - 1;
        const double c_le = cnt.prefix(le), s_le = sum.prefix(le);
        const double below = c * c_le - s_le;
        const double above = (sum_window - s_le) - c * (in_window - c_le);
        g.at(n, j) = (below + above) / n;
      }
    }
    return g;
  }

  const std::int64_t est = kernels::estimate_family_support(F, tau.rows, N);
  if (est > (std::int64_t{1} << 28))
    throw capability_error("sigma_grid: row-centred gauge sums need " + std::to_string(est) +
                           " row visits at this scale; reduce N or use identity gauges");
#pragma omp parallel for schedule(dynamic) if (exec == kernels::Exec::parallel)
  for (int j = 0; j < tau.cols; ++j) {
    const int i = F.indices[static_cast<size_t>(j)];
    const auto B = F.member(i);
    for (int n = 1; n <= tau.rows; ++n) {
      const double c = tau.at(n, j);
      double acc = 0.0;
      for (const auto& [k, b] : B.row(n))
        if (k <= N) acc += b * gauges.eval(k, i, std::fabs(s.at(k) - c));
      g.at(n, j) = acc;
    }
  }
  return g;
}

VarianceReport variance_characterization(const SequencePrefix& s, const MatrixFamily& F,
                                         const GaugeFamily& gauges, double a,
                                         const IdealHandle& I, const Scale& scale) {
  VarianceReport rep;
  const int N = scale.N;

  double worst_lower = std::numeric_limits<double>::infinity();
  for (double eps : scale.eps_list)
    worst_lower = std::min(worst_lower, lower_envelope(gauges, eps).value);
  rep.envelope_ok = hypothesis(worst_lower > 0.0, scale, worst_lower,
                               "gauge family vanishes somewhere on the eps grid");

  const auto delta = equicontinuity_delta(gauges, scale.tol * 10);
  rep.equicontinuity_ok = hypothesis(delta.has_value(), scale, delta.value_or(0.0),
                                     "no delta keeps the family below tau near 0");

  kernels::Grid abs_grid = abs_row_sum_grid(F, N);
  std::vector<double> sup_abs = kernels::sup_deviation(
      abs_grid, std::vector<double>(static_cast<size_t>(abs_grid.cols), 0.0));
  double M = 0.0;
  for (double v : sup_abs) M = std::max(M, v);
  rep.rows_bounded = hypothesis(std::isfinite(M), scale, M, "unbounded row sums");

  kernels::Grid ones = kernels::family_weighted_grid(
      F, std::vector<double>(static_cast<size_t>(N), 1.0), N);
  rep.row_sums_to_one = uniform_limit_grid(
      ones, std::vector<double>(static_cast<size_t>(ones.cols), 1.0), I, scale);

  rep.hypotheses_hold = rep.envelope_ok.holds() && rep.equicontinuity_ok.holds() &&
                        rep.rows_bounded.holds() && rep.row_sums_to_one.holds();

  rep.summable = b_summable(s, F, I, a, scale);
  kernels::Grid sg = sigma_grid(s, F, gauges, scale);
  rep.sigma_to_zero = grid_uniform_zero(sg, I, scale);
  rep.statistical = statistically_convergent(s, F, a, I, scale);

  const bool lhs = rep.summable.holds() && rep.sigma_to_zero.holds();
  rep.agree = lhs == rep.statistical.holds();
  rep.combined.scale = scale;
  rep.combined.estimate = ExtendedReal(a);
  rep.combined.residual = std::max(rep.sigma_to_zero.residual, rep.statistical.residual);
  if (!rep.hypotheses_hold) {
    rep.combined.status = Status::inconclusive;
    rep.combined.note = "hypotheses fail; no equivalence claimed";
  } else if (!rep.agree) {
    rep.combined.status = Status::fails_at_scale;
    rep.combined.witnesses = {0};
    rep.combined.note = "the two characterisations disagree at scale";
  } else {
    rep.combined.status = rep.statistical.status;
  }
  return rep;
}

Verdict almost_convergence(const SequencePrefix& s, const Scale& scale) {
  require_window(s, scale, "almost_convergence");
  const int N = scale.N;
  if (looks_unbounded(s, N))
    throw input_error("almost_convergence: sequence appears unbounded on the window");
  const int shifts = N / 2;  // keep every window inside the prefix
  MatrixFamily F = build_shift_family(cesaro(), shifts);
  Scale sc = scale.with_imax(shifts);
  Verdict out = b_summable(s, F, IdealHandle::finite(scale.m_max), std::nullopt, sc);
  return out;
}

std::vector<double> check_base_condition(const MatrixFamily& F, const FilterBase& base,
                                         const Scale& scale) {
  if (!F.nonnegative) throw input_error("check_base_condition: family must be nonnegative");
  const int N = scale.N;
  std::vector<double> out;
  for (int m = 1; m <= base.m_count; ++m) {
    std::vector<double> mask(static_cast<size_t>(N), 0.0);
    std::int64_t depth = -1;
    if (base.is_prefix_type()) {
      depth = std::min<std::int64_t>(base.prefix_depth(m), N);
      for (std::int64_t k = depth + 1; k <= N; ++k) mask[static_cast<size_t>(k) - 1] = 1.0;
    } else {
      for (int k = 1; k <= N; ++k)
        if (!base.in_base(m, k)) mask[static_cast<size_t>(k) - 1] = 1.0;
    }
    kernels::Grid g = kernels::family_weighted_grid(F, mask, N);
    double sup = 0.0;
    for (int n = 1; n <= g.rows; ++n) {
      const bool in_Bm = base.is_prefix_type() ? (n <= depth) : base.in_base(m, n);
      if (!in_Bm) continue;
      for (int j = 0; j < g.cols; ++j) sup = std::max(sup, g.at(n, j));
    }
    // row mass past the window is outside every prefix base set as well
    out.push_back(sup + g.max_tail_error);
  }
  return out;
}

DecompositionResult decompose_statistical(const SequencePrefix& s, const MatrixFamily& F,
                                          const IdealHandle& I, double a, const Scale& scale) {
  require_window(s, scale, "decompose_statistical");
  if (!I.has_base())
    throw input_error("decompose_statistical: the inner ideal needs an explicit base");
  if (!I.admissible) throw input_error("decompose_statistical: inner ideal must be admissible");
  if (!F.nonnegative) throw input_error("decompose_statistical: family must be nonnegative");
  const int N = scale.N;

  DecompositionResult res;
  IdealHandle J = derived_ideal(F, I, scale);

  // I ⊆ J probed on small base sets
  for (int m = 1; m <= std::min(3, I.base.m_count); ++m) {
    std::vector<int> Bm;
    for (int n = 1; n <= N; ++n)
      if (I.base.in_base(m, n)) Bm.push_back(n);
    Verdict v = derived_ideal_member(J, IndexSet::from_indices(Bm), scale);
    if (v.fails()) {
      res.status = Status::inconclusive;
      res.note = "inner ideal not contained in the derived ideal on probe base sets";
      return res;
    }
  }

  const std::vector<double> base_vals = check_base_condition(F, I.base, scale);
  double base_min = std::numeric_limits<double>::infinity(), base_max = 0.0;
  for (double v : base_vals) {
    base_min = std::min(base_min, v);
    base_max = std::max(base_max, v);
  }
  if (!(base_min <= scale.tol || base_min <= 0.25 * base_max))
    throw capability_error("decompose_statistical: base compatibility sums do not vanish");

  // eq-style chain: M_p = first base index whose compatibility sup <= 2^-p
  std::vector<int> M_p;
  {
    int prev = 0;
    for (int p = 1; p <= I.base.m_count; ++p) {
      const double target = std::pow(2.0, -p);
      int chosen = -1;
      for (int m = prev + 1; m <= I.base.m_count; ++m)
        if (base_vals[static_cast<size_t>(m) - 1] <= target) { chosen = m; break; }
      if (chosen < 0) break;
      M_p.push_back(chosen);
      prev = chosen;
    }
  }
  if (M_p.empty()) {
    res.status = Status::inconclusive;
    res.note = "no base depth meets the first compatibility level";
    return res;
  }
  res.M_p = M_p;

  // witness sets E_m and their absorbing depths
  std::vector<std::int64_t> F_depths;
  std::vector<std::vector<std::uint8_t>> A_masks;
  int prev_p = 0;
  for (int m = 1; m <= scale.m_max; ++m) {
    const double eps_m = std::pow(2.0, -m);
    std::vector<double> mask(static_cast<size_t>(N), 0.0);
    std::vector<std::uint8_t> amask(static_cast<size_t>(N), 0);
    int a_size = 0;
    for (int k = 1; k <= N; ++k)
      if (std::fabs(s.at(k) - a) >= eps_m) {
        mask[static_cast<size_t>(k) - 1] = 1.0;
        amask[static_cast<size_t>(k) - 1] = 1;
        ++a_size;
      }
    kernels::Grid g = kernels::family_weighted_grid(F, mask, N);
    std::vector<int> E;
    for (int n = 1; n <= g.rows; ++n) {
      double sup = 0.0;
      for (int j = 0; j < g.cols; ++j) sup = std::max(sup, g.at(n, j));
      if (sup >= eps_m) E.push_back(n);
    }
    // p_m: minimal strictly increasing index with E_m inside B_{M_{p_m}}
    int chosen_p = -1;
    for (int p = prev_p + 1; p <= static_cast<int>(M_p.size()); ++p) {
      const int base_idx = M_p[static_cast<size_t>(p) - 1];
      bool contains = true;
      if (I.base.is_prefix_type()) {
        contains = E.empty() || E.back() <= I.base.prefix_depth(base_idx);
      } else {
        for (int n : E)
          if (!I.base.in_base(base_idx, n)) { contains = false; break; }
      }
      if (contains) { chosen_p = p; break; }
    }
    if (chosen_p < 0) break;  // chain exhausted at this scale
    prev_p = chosen_p;
    res.eps_m.push_back(eps_m);
    res.A_size.push_back(a_size);
    res.E_max.push_back(E.empty() ? 0 : E.back());
    res.p_m.push_back(chosen_p);
    const int base_idx = M_p[static_cast<size_t>(chosen_p) - 1];
    F_depths.push_back(I.base.is_prefix_type() ? std::min<std::int64_t>(I.base.prefix_depth(base_idx), N)
                                               : -1);
    A_masks.push_back(std::move(amask));
    if (!F_depths.empty() && F_depths.back() >= N && I.base.is_prefix_type()) break;
  }
  res.F_depth = F_depths;
  if (res.eps_m.empty()) {
    res.status = Status::inconclusive;
    res.note = "no witness set was absorbed by the base chain";
    return res;
  }

  // t_k = a on A_{m(k)}, s_k elsewhere; m(k) = first chain member containing k
  const int chain = static_cast<int>(res.eps_m.size());
  res.t.values = window_values(s, N);
  res.uncovered_from = 0;
  for (int k = 1; k <= N; ++k) {
    int mk = -1;
    if (I.base.is_prefix_type()) {
      for (int m = 0; m < chain; ++m)
        if (k <= F_depths[static_cast<size_t>(m)]) { mk = m; break; }
    } else {
      for (int m = 0; m < chain; ++m)
        if (I.base.in_base(res.M_p[static_cast<size_t>(res.p_m[static_cast<size_t>(m)]) - 1], k)) {
          mk = m;
          break;
        }
    }
    if (mk < 0) {
      if (res.uncovered_from == 0) res.uncovered_from = k;
      continue;
    }
    if (A_masks[static_cast<size_t>(mk)][static_cast<size_t>(k) - 1]) {
      res.t.values[static_cast<size_t>(k) - 1] = a;
      if (s.at(k) != a) res.disagreement.push_back(k);
    }
  }

  // postconditions, checked with the target fixed rather than re-searched
  std::vector<double> dev(static_cast<size_t>(N));
  for (int k = 1; k <= N; ++k) dev[static_cast<size_t>(k) - 1] = std::fabs(res.t.at(k) - a);
  res.t_converges = limit_test_against(dev, I, scale);
  res.t_converges.estimate = ExtendedReal(a);
  res.disagreement_in_J = derived_ideal_member(J, IndexSet::from_indices(res.disagreement), scale);
  res.status = (res.t_converges.holds() && res.disagreement_in_J.holds())
                   ? Status::holds_at_scale
                   : Status::fails_at_scale;
  if (res.uncovered_from > 0)
    res.note = "chain covers the window only up to " + std::to_string(res.uncovered_from - 1);
  return res;
}

TauberianReport tauberian_check(const SequencePrefix& s, const SummabilityMatrix& A,
                                const IdealHandle& I, const std::function<double(double)>& phi,
                                const std::function<double(double)>& psi,
                                const std::function<double(double)>& h, const Scale& scale) {
  require_window(s, scale, "tauberian_check");
  TauberianReport rep;
  const int N = scale.N;
  MatrixFamily F = single_family(A);

  kernels::Grid ones = kernels::family_weighted_grid(
      F, std::vector<double>(static_cast<size_t>(N), 1.0), N);
  rep.row_sums_to_one = uniform_limit_grid(
      ones, std::vector<double>(static_cast<size_t>(ones.cols), 1.0), I, scale);

  ToeplitzReport toep = check_toeplitz_regularity(A, scale);
  rep.columns_to_zero = toep.columns_to_zero;

  // min over the full initial segment k = 1..n dominates psi(n): sparse rows
  // with gaps below the diagonal fail through the implicit zeros
  rep.min_entry_dominates.scale = scale;
  rep.min_entry_dominates.status = Status::holds_at_scale;
  rep.min_entry_dominates.residual = 0.0;
  for (int n = 1; n <= N; ++n) {
    double mn = std::numeric_limits<double>::infinity();
    int count = 0;
    for (const auto& [k, v] : A.row(n)) {
      if (k > n) continue;
      mn = std::min(mn, v);
      ++count;
    }
    if (count < n) mn = 0.0;
    if (mn < psi(static_cast<double>(n)) - 1e-15) {
      rep.min_entry_dominates.status = Status::fails_at_scale;
      rep.min_entry_dominates.witnesses = {n};
      rep.min_entry_dominates.note = "row minimum drops below psi";
      break;
    }
  }

  const auto grid = gauge_sample_grid(64);
  bool dec = true;
  for (size_t j = 1; j < grid.size(); ++j)
    if (phi(grid[j]) > phi(grid[j - 1]) + 1e-12) { dec = false; break; }
  rep.phi_decreasing = hypothesis(dec, scale, 0.0, "phi is not decreasing on the sample grid");

  bool coup = true;
  for (double x : grid) {
    for (double y : grid)
      if (x * psi(x + y) < h(x * phi(y)) - 1e-12) { coup = false; break; }
    if (!coup) break;
  }
  rep.coupling = hypothesis(coup, scale, 0.0, "x psi(x+y) >= h(x phi(y)) fails on the grid");

  bool faithful = h(0.0) == 0.0;
  double tail_min = std::numeric_limits<double>::infinity();
  for (double x : grid)
    if (x >= 1e-3) tail_min = std::min(tail_min, h(x));
  faithful = faithful && tail_min > 0.0;
  rep.h_faithful = hypothesis(faithful, scale, tail_min, "h vanishes away from 0");

  std::vector<double> ratio(static_cast<size_t>(N) - 1);
  for (int n = 1; n < N; ++n) {
    const double p = phi(static_cast<double>(n));
    ratio[static_cast<size_t>(n) - 1] = std::fabs(s.at(n + 1) - s.at(n)) / (p > 0 ? p : 1e-300);
  }
  rep.variation_constant = *std::max_element(ratio.begin(), ratio.end());
  double first = 0.0, second = 0.0;
  for (size_t j = 0; j < ratio.size() / 2; ++j) first = std::max(first, ratio[j]);
  for (size_t j = ratio.size() / 2; j < ratio.size(); ++j) second = std::max(second, ratio[j]);
  // window-doubling gives a factor ~2 for ratios growing linearly; flag well
  // below that so linear growth cannot slip through
  const bool bounded = !(second > 1.5 * first + 1e-12);
  rep.variation_bounded =
      hypothesis(bounded, scale, rep.variation_constant, "successive differences outgrow phi");
  if (!bounded) {
    int arg = 0;
    for (size_t j = 0; j < ratio.size(); ++j)
      if (ratio[j] == rep.variation_constant) arg = static_cast<int>(j) + 1;
    rep.variation_bounded.witnesses = {arg};
  }

  rep.hypotheses_hold = rep.row_sums_to_one.holds() && rep.columns_to_zero.holds() &&
                        rep.min_entry_dominates.holds() && rep.phi_decreasing.holds() &&
                        rep.coupling.holds() && rep.h_faithful.holds() &&
                        rep.variation_bounded.holds();

  // limit candidate from the sequence's own window (the conclusion concerns
  // ordinary convergence of s, and transform means lag by O(log n / n))
  const ExtendedReal cand = candidate_limit(
      std::vector<double>(s.values.begin(), s.values.begin() + N), IdealHandle::finite(scale.m_max),
      scale);
  rep.limit = cand.is_finite() ? cand.v : 0.0;
  rep.statistical = statistically_convergent(s, F, rep.limit, I, scale);

  if (rep.hypotheses_hold && rep.statistical.holds()) {
    std::vector<double> dev(static_cast<size_t>(N));
    for (int n = 1; n <= N; ++n) dev[static_cast<size_t>(n) - 1] = std::fabs(s.at(n) - rep.limit);
    rep.ordinary = limit_test_against(dev, IdealHandle::finite(scale.m_max), scale);
    rep.ordinary.estimate = ExtendedReal(rep.limit);
    rep.claimed = true;
  } else {
    rep.ordinary.scale = scale;
    rep.ordinary.status = Status::inconclusive;
    rep.ordinary.note = "premises not established; no conclusion claimed";
    rep.claimed = false;
  }
  return rep;
}

}  // namespace summa
