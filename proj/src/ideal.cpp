#include "summa/ideal.hpp"

#include <algorithm>
#include <cmath>

namespace summa {

namespace detail {

std::vector<std::int64_t> residual_depths(const FilterBase& base, int N) {
  const std::int64_t cap = N - tail_sentinel_width(N);
  std::vector<std::int64_t> depths;
  if (cap < 1) return depths;
  if (base.is_prefix_type()) {
    for (int m = 1; m <= base.m_count; ++m)
      depths.push_back(std::min<std::int64_t>(base.prefix_depth(m), cap));
    std::sort(depths.begin(), depths.end());
    depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
    if (depths.back() != cap) depths.push_back(cap);
  }
  return depths;
}

bool absorbed_at_scale(const FilterBase& base, const std::vector<int>& set, int N) {
  if (set.empty()) return true;
  const int max_el = *std::max_element(set.begin(), set.end());
  const std::int64_t cap = N - tail_sentinel_width(N);
  if (base.is_prefix_type()) {
    if (max_el > cap) return false;
    for (int m = 1; m <= base.m_count; ++m)
      if (base.prefix_depth(m) >= max_el) return true;
    return false;
  }
  for (int m = 1; m <= base.m_count; ++m) {
    bool contains = true;
    for (int n : set)
      if (!base.in_base(m, n)) { contains = false; break; }
    if (!contains) continue;
    // a base set swallowing essentially the whole window certifies nothing
    int outside = 0;
    for (int n = N; n > 0 && outside < tail_sentinel_width(N); --n)
      if (!base.in_base(m, n)) ++outside;
    if (outside >= tail_sentinel_width(N)) return true;
  }
  return false;
}

std::optional<int> absorb_fully(const FilterBase& base, const std::vector<int>& set) {
  if (set.empty()) return 1;
  if (base.is_prefix_type()) {
    const int max_el = *std::max_element(set.begin(), set.end());
    for (int m = 1; m <= base.m_count; ++m)
      if (base.prefix_depth(m) >= max_el) return m;
    return std::nullopt;
  }
  return base.absorb(set);
}

ExtendedReal limsup_window(const std::vector<double>& u, const FilterBase& base, int N) {
  N = std::min<int>(N, static_cast<int>(u.size()));
  if (base.is_prefix_type()) {
    const auto depths = residual_depths(base, N);
    if (depths.empty()) return ExtendedReal::neg_infinity();
    const auto sfx = kernels::suffix_max(std::vector<double>(u.begin(), u.begin() + N));
    return ExtendedReal(sfx[static_cast<size_t>(depths.back())]);
  }
  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int m = 1; m <= base.m_count; ++m) {
    double s = -std::numeric_limits<double>::infinity();
    int cnt = 0;
    for (int n = 1; n <= N; ++n)
      if (!base.in_base(m, n)) { s = std::max(s, u[static_cast<size_t>(n) - 1]); ++cnt; }
    if (cnt == 0) continue;
    any = true;
    best = std::min(best, s);
  }
  if (!any) return ExtendedReal::neg_infinity();
  return ExtendedReal(best);
}

}  // namespace detail

WindowReport window_residual_test(const std::vector<double>& v, const FilterBase& base,
                                  const Scale& scale) {
  const int N = static_cast<int>(v.size());
  WindowReport rep;
  rep.verdict.scale = scale;

  if (base.is_prefix_type()) {
    const auto depths = detail::residual_depths(base, N);
    if (depths.empty()) {
      rep.verdict.status = Status::inconclusive;
      rep.verdict.note = "window too small for any base depth";
      return rep;
    }
    const auto sfx = kernels::suffix_max(v);
    for (auto d : depths) {
      rep.depths.push_back(d);
      rep.residuals.push_back(sfx[static_cast<size_t>(d)]);
    }
    rep.best = rep.residuals.back();
    const std::int64_t half_target = depths.back() / 2;
    size_t half_idx = 0;
    for (size_t i = 0; i < depths.size(); ++i)
      if (std::llabs(depths[i] - half_target) < std::llabs(depths[half_idx] - half_target))
        half_idx = i;
    rep.half = rep.residuals[half_idx];
  } else {
    for (int m = 1; m <= base.m_count; ++m) {
      double s = 0.0;
      int cnt = 0;
      for (int n = 1; n <= N; ++n)
        if (!base.in_base(m, n)) { s = std::max(s, v[static_cast<size_t>(n) - 1]); ++cnt; }
      if (cnt == 0) break;
      rep.depths.push_back(-1);
      rep.residuals.push_back(s);
    }
    if (rep.residuals.empty()) {
      rep.verdict.status = Status::inconclusive;
      rep.verdict.note = "all base complements empty on window";
      return rep;
    }
    rep.best = rep.residuals.back();
    rep.half = rep.residuals[rep.residuals.size() / 2];
  }

  rep.decay = rep.half > 0 ? rep.best / rep.half : 0.0;
  if (std::isinf(rep.best) && std::isinf(rep.half)) rep.decay = 1.0;

  bool any_pass = false, any_obstructed = false;
  double max_obstructed = 0.0;
  for (double eps : scale.eps_list) {
    if (rep.best <= eps) {
      any_pass = true;
    } else if (rep.decay >= kDecayThreshold) {
      any_obstructed = true;
      max_obstructed = std::max(max_obstructed, eps);
    } else {
      rep.verdict.unresolved.push_back(eps);
    }
  }

  rep.verdict.residual = rep.best;
  if (any_obstructed) {
    rep.verdict.status = Status::fails_at_scale;
    // witnesses: deep-window indices still above the obstructed level
    const std::int64_t from = base.is_prefix_type() ? rep.depths.back() / 2 : 0;
    for (int n = static_cast<int>(from) + 1; n <= N && rep.verdict.witnesses.size() < 8; ++n)
      if (v[static_cast<size_t>(n) - 1] > max_obstructed) rep.verdict.witnesses.push_back(n);
    if (rep.verdict.witnesses.empty()) {
      for (int n = 1; n <= N && rep.verdict.witnesses.size() < 8; ++n)
        if (v[static_cast<size_t>(n) - 1] > max_obstructed) rep.verdict.witnesses.push_back(n);
    }
  } else if (any_pass) {
    rep.verdict.status = Status::holds_at_scale;
  } else {
    rep.verdict.status = Status::inconclusive;
    rep.verdict.note = "no eps level resolvable at this scale";
  }
  if (std::isinf(rep.best)) {
    rep.verdict.residual = std::numeric_limits<double>::max();
    rep.verdict.note += (rep.verdict.note.empty() ? "" : "; ");
    rep.verdict.note += "deviation reaches +inf on every window";
  }
  return rep;
}

Verdict limit_test_against(const std::vector<double>& v, const IdealHandle& I,
                           const Scale& scale) {
  if (I.has_base()) return window_residual_test(v, I.base, scale).verdict;

  // matrix-derived: each eps super-level set must be a member
  Verdict out;
  out.scale = scale;
  bool any_pass = false, any_obstructed = false;
  double min_pass = std::numeric_limits<double>::infinity();
  double max_obstructed = 0.0;
  const int N = static_cast<int>(v.size());
  for (double eps : scale.eps_list) {
    std::vector<int> idx;
    for (int n = 1; n <= N; ++n)
      if (v[static_cast<size_t>(n) - 1] >= eps) idx.push_back(n);
    Verdict member = derived_ideal_member(I, IndexSet::from_indices(std::move(idx)), scale);
    if (member.holds()) {
      any_pass = true;
      min_pass = std::min(min_pass, eps);
    } else if (member.fails()) {
      any_obstructed = true;
      if (eps > max_obstructed) {
        max_obstructed = eps;
        out.witnesses = member.witnesses;
      }
    } else {
      out.unresolved.push_back(eps);
    }
  }
  if (any_obstructed) {
    out.status = Status::fails_at_scale;
    out.residual = max_obstructed;
    if (out.witnesses.empty()) out.witnesses.push_back(N);
  } else if (any_pass) {
    out.status = Status::holds_at_scale;
    out.residual = min_pass;
  } else {
    out.status = Status::inconclusive;
    out.residual = std::numeric_limits<double>::max();
    out.note = "no eps level decidable through the derived ideal";
  }
  return out;
}

Verdict derived_ideal_member(const IdealHandle& J, const IndexSet& K, const Scale& scale) {
  if (J.variant != IdealVariant::matrix_derived || !J.derived)
    throw input_error("derived_ideal_member: not a matrix-derived ideal");
  const auto& D = *J.derived;
  std::vector<double> f(static_cast<size_t>(scale.N), 0.0);
  for (int k = 1; k <= scale.N; ++k)
    if (K.contains(k)) f[static_cast<size_t>(k) - 1] = 1.0;
  kernels::Grid g = kernels::family_weighted_grid(D.family, f, scale.N);
  std::vector<double> v = kernels::sup_deviation(g, std::vector<double>(static_cast<size_t>(g.cols), 0.0));
  return limit_test_against(v, D.inner, scale);
}

Verdict ideal_member(const IdealHandle& I, const IndexSet& K, const Scale& scale) {
  if (I.variant == IdealVariant::matrix_derived) return derived_ideal_member(I, K, scale);
  Verdict out;
  out.scale = scale;
  const auto idx = K.enumerate(scale.N);
  if (detail::absorbed_at_scale(I.base, idx, scale.N)) {
    out.status = Status::holds_at_scale;
    out.residual = 0.0;
  } else {
    out.status = Status::fails_at_scale;
    out.residual = 1.0;
    const int sentinel_from = scale.N - tail_sentinel_width(scale.N);
    for (auto it = idx.rbegin(); it != idx.rend() && out.witnesses.size() < 8; ++it)
      if (*it > sentinel_from) out.witnesses.push_back(*it);
    if (out.witnesses.empty() && !idx.empty()) out.witnesses.push_back(idx.back());
  }
  return out;
}

ExtendedReal ideal_limsup(const SequencePrefix& u, const IdealHandle& I, const Scale& scale) {
  if (u.size() == 0) throw input_error("ideal_limsup: empty prefix");
  const int N = std::min(scale.N, u.size());

  if (I.has_base())
    return detail::limsup_window(std::vector<double>(u.values.begin(), u.values.begin() + N),
                                 I.base, N);

  // derived ideal: limsup = largest value v with {n : u_n >= v} not a member.
  // Scanned from the top; verdicts near the noise floor are not monotone in
  // the threshold, so a binary search could land on a spurious flip.
  std::vector<double> vals(u.values.begin(), u.values.begin() + N);
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<int> idx;
  for (double t : vals) {
    idx.clear();
    for (int n = 1; n <= N; ++n)
      if (u.at(n) >= t) idx.push_back(n);
    if (!derived_ideal_member(I, IndexSet::from_indices(idx), scale).holds())
      return ExtendedReal(t);
  }
  return ExtendedReal::neg_infinity();
}

ExtendedReal ideal_liminf(const SequencePrefix& u, const IdealHandle& I, const Scale& scale) {
  SequencePrefix neg;
  neg.values.reserve(u.values.size());
  for (double x : u.values) neg.values.push_back(-x);
  neg.tail_abs_bound = u.tail_abs_bound;
  return -ideal_limsup(neg, I, scale);
}

ExtendedReal candidate_limit(const std::vector<double>& u, const IdealHandle& I,
                             const Scale& scale) {
  SequencePrefix p;
  p.values = u;
  const ExtendedReal hi = ideal_limsup(p, I, scale);
  const ExtendedReal lo = ideal_liminf(p, I, scale);
  if (!hi.is_finite() || !lo.is_finite()) {
    if (hi.is_pos_inf() && lo.is_pos_inf()) return ExtendedReal::infinity();
    if (hi.is_neg_inf() && lo.is_neg_inf()) return ExtendedReal::neg_infinity();
    return ExtendedReal(std::numeric_limits<double>::quiet_NaN());
  }
  return ExtendedReal(0.5 * (hi.v + lo.v));
}

Verdict ideal_limit(const SequencePrefix& u, const IdealHandle& I, const Scale& scale) {
  if (u.size() == 0) throw input_error("ideal_limit: empty prefix");
  if (u.size() < scale.N)
    throw input_error("ideal_limit: prefix shorter than scale window (" +
                      std::to_string(u.size()) + " < " + std::to_string(scale.N) + ")");
  const int N = scale.N;
  const ExtendedReal a = candidate_limit(
      std::vector<double>(u.values.begin(), u.values.begin() + N), I, scale);
  if (!a.is_finite()) {
    Verdict out;
    out.scale = scale;
    out.status = Status::fails_at_scale;
    out.estimate = a;
    out.residual = std::numeric_limits<double>::max();
    out.note = "no finite candidate limit at scale";
    double worst = 0.0;
    int arg = 1;
    for (int n = 1; n <= N; ++n)
      if (std::fabs(u.at(n)) > worst) { worst = std::fabs(u.at(n)); arg = n; }
    out.witnesses.push_back(arg);
    return out;
  }
  std::vector<double> v(static_cast<size_t>(N));
  for (int n = 1; n <= N; ++n) v[static_cast<size_t>(n) - 1] = std::fabs(u.at(n) - a.v);
  Verdict out = limit_test_against(v, I, scale);
  out.estimate = a;
  return out;
}

Verdict is_ideal_bounded(const SequencePrefix& u, const IdealHandle& I, double K,
                         const Scale& scale) {
  if (K <= 0) throw input_error("is_ideal_bounded: K must be positive");
  const int N = std::min(scale.N, u.size());
  IndexSet E = IndexSet::of([&u, K](int n) { return std::fabs(u.at(n)) > K; }, "exceed");
  std::vector<int> idx;
  for (int n = 1; n <= N; ++n)
    if (std::fabs(u.at(n)) > K) idx.push_back(n);
  Verdict out = ideal_member(I, IndexSet::from_indices(idx), scale.with_N(N));
  out.estimate = ExtendedReal(static_cast<double>(idx.size()));
  return out;
}

Verdict is_ideal_cauchy(const SequencePrefix& u, const IdealHandle& I, double eps,
                        const Scale& scale) {
  if (eps <= 0) throw input_error("is_ideal_cauchy: eps must be positive");
  const int N = std::min(scale.N, u.size());
  const Scale sc = scale.with_N(N);

  // candidate anchors: deep-window quantile indices plus global value quantiles
  std::vector<int> candidates;
  const int deep_from = N - tail_sentinel_width(N) + 1;
  for (int q = 0; q <= 4; ++q)
    candidates.push_back(std::min(N, deep_from + q * std::max(1, (N - deep_from) / 4)));
  std::vector<int> order(static_cast<size_t>(N));
  for (int n = 1; n <= N; ++n) order[static_cast<size_t>(n) - 1] = n;
  std::sort(order.begin(), order.end(), [&u](int a, int b) { return u.at(a) < u.at(b); });
  for (int q = 0; q <= 8; ++q)
    candidates.push_back(order[static_cast<size_t>((static_cast<std::int64_t>(N) - 1) * q / 8)]);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  Verdict best;
  best.scale = sc;
  best.status = Status::fails_at_scale;
  best.residual = std::numeric_limits<double>::max();
  size_t best_size = static_cast<size_t>(N) + 1;
  for (int k : candidates) {
    std::vector<int> idx;
    for (int n = 1; n <= N; ++n)
      if (std::fabs(u.at(n) - u.at(k)) >= eps) idx.push_back(n);
    Verdict member = ideal_member(I, IndexSet::from_indices(idx), sc);
    if (member.holds()) {
      member.witnesses = {k};
      member.estimate = ExtendedReal(u.at(k));
      return member;
    }
    if (idx.size() < best_size) {
      best_size = idx.size();
      best = member;
      best.estimate = ExtendedReal(u.at(k));
      if (best.witnesses.empty()) best.witnesses = {k};
    }
  }
  best.note = "no anchor index absorbs the far set";
  return best;
}

std::vector<double> ideal_cluster_points(const SequencePrefix& u, const IdealHandle& I,
                                         const std::vector<double>& grid, double eps,
                                         const Scale& scale) {
  if (grid.empty()) throw input_error("ideal_cluster_points: empty grid");
  if (eps <= 0) throw input_error("ideal_cluster_points: eps must be positive");
  const int N = std::min(scale.N, u.size());
  const Scale sc = scale.with_N(N);
  std::vector<double> out;
  for (double a : grid) {
    std::vector<int> idx;
    for (int n = 1; n <= N; ++n)
      if (std::fabs(u.at(n) - a) < eps) idx.push_back(n);
    const Verdict member = ideal_member(I, IndexSet::from_indices(idx), sc);
    if (member.fails()) out.push_back(a);
  }
  return out;
}

Verdict uniform_ideal_limit(const std::vector<SequencePrefix>& family,
                            const std::vector<double>& targets, const IdealHandle& I,
                            const Scale& scale) {
  if (family.empty()) throw input_error("uniform_ideal_limit: empty family");
  if (family.size() != targets.size())
    throw input_error("uniform_ideal_limit: family/target size mismatch");
  const int N = family[0].size();
  for (const auto& f : family)
    if (f.size() != N) throw input_error("uniform_ideal_limit: mismatched prefix lengths");
  const int W = std::min(N, scale.N);
  std::vector<double> v(static_cast<size_t>(W), 0.0);
#pragma omp parallel for schedule(static)
  for (int n = 1; n <= W; ++n) {
    double m = 0.0;
    for (size_t i = 0; i < family.size(); ++i)
      m = std::max(m, ext_nonneg_distance(family[i].at(n), targets[i]));
    v[static_cast<size_t>(n) - 1] = m;
  }
  Verdict out = limit_test_against(v, I, scale.with_N(W));
  out.estimate = ExtendedReal(0.0);
  return out;
}

Verdict uniform_limit_grid(const kernels::Grid& u, const std::vector<double>& targets,
                           const IdealHandle& I, const Scale& scale) {
  const std::vector<double> v = kernels::sup_deviation(u, targets);
  return limit_test_against(v, I, scale.with_N(u.rows));
}

}  // namespace summa
