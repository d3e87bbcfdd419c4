#include "summa/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace summa {
namespace kernels {

namespace {

std::vector<double> sorted_unique(const std::vector<double>& s) {
  std::vector<double> v(s);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

int rank_le(const std::vector<double>& vals, double x) {
  // number of distinct values <= x, minus one (-1 when none)
  return static_cast<int>(std::upper_bound(vals.begin(), vals.end(), x) - vals.begin()) - 1;
}

int rank_ge(const std::vector<double>& vals, double x) {
  // first rank with value >= x (vals.size() when none)
  return static_cast<int>(std::lower_bound(vals.begin(), vals.end(), x) - vals.begin());
}

bool is_shift_stack(const MatrixFamily& F, MatrixKind want) {
  return (F.kind == FamilyKind::shifts && F.base_kind == want) ||
         (F.kind == FamilyKind::single && F.base_kind == want);
}

int column_shift(const MatrixFamily& F, int j) {
  if (F.kind == FamilyKind::shifts) return F.indices[static_cast<size_t>(j)];
  return F.member(F.indices[static_cast<size_t>(j)]).shift;
}

}  // namespace

std::int64_t estimate_family_support(const MatrixFamily& F, int rows, int N) {
  // sampled upper estimate of Σ_n |row support|, per family column
  std::int64_t total = 0;
  for (int j = 0; j < F.count(); ++j) {
    const auto B = F.member(F.indices[static_cast<size_t>(j)]);
    double ratio = 0.0;
    for (int n = rows; n >= 1; n = n / 2) {
      size_t r = 0;
      for (const auto& [k, v] : B.row(n))
        if (k <= N) ++r;
      ratio = std::max(ratio, static_cast<double>(r) / n);
      if (n == 1) break;
    }
    total += static_cast<std::int64_t>(ratio * 0.5 * static_cast<double>(rows) *
                                       (static_cast<double>(rows) + 1.0));
  }
  return total;
}

namespace {

std::int64_t estimate_support_total(const MatrixFamily& F, int rows, int N) {
  return estimate_family_support(F, rows, N);
}

}  // namespace

int certified_rows(const MatrixFamily& F, int N) {
  if (F.kind == FamilyKind::shifts &&
      (F.base_kind == MatrixKind::cesaro || F.base_kind == MatrixKind::identity)) {
    const int max_shift = *std::max_element(F.indices.begin(), F.indices.end());
    return std::max(1, N - max_shift);
  }
  return N;
}

Grid family_weighted_grid_reference(const MatrixFamily& F, const std::vector<double>& f, int N) {
  const int rows = std::min(certified_rows(F, N), N);
  Grid g;
  g.resize(rows, F.count());
  double supf = 0.0;
  for (int k = 0; k < N; ++k) supf = std::max(supf, std::fabs(f[static_cast<size_t>(k)]));
  for (int j = 0; j < F.count(); ++j) {
    const auto B = F.member(F.indices[static_cast<size_t>(j)]);
    for (int n = 1; n <= rows; ++n) {
      double acc = 0.0;
      for (const auto& [k, b] : B.row(n))
        if (k <= N) acc += b * f[static_cast<size_t>(k) - 1];
      g.at(n, j) = acc;
      g.max_tail_error = std::max(g.max_tail_error, B.tail_bound(n, N) * supf);
    }
  }
  return g;
}

Grid family_weighted_grid(const MatrixFamily& F, const std::vector<double>& f, int N, Exec exec) {
  if (static_cast<int>(f.size()) < N) throw input_error("family_weighted_grid: integrand shorter than window");
  const int rows = certified_rows(F, N);
  const int cols = F.count();
  Grid g;
  g.resize(rows, cols);

  if (is_shift_stack(F, MatrixKind::cesaro)) {
    std::vector<double> P(static_cast<size_t>(N) + 1, 0.0);
    for (int k = 1; k <= N; ++k) P[static_cast<size_t>(k)] = P[static_cast<size_t>(k) - 1] + f[static_cast<size_t>(k) - 1];
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int n = 1; n <= rows; ++n) {
      const double inv = 1.0 / n;
      for (int j = 0; j < cols; ++j) {
        const int sh = column_shift(F, j);
        const int hi = std::min(sh + n, N);
        g.at(n, j) = (P[static_cast<size_t>(hi)] - P[static_cast<size_t>(std::min(sh, N))]) * inv;
      }
    }
    return g;
  }
  if (is_shift_stack(F, MatrixKind::identity)) {
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int n = 1; n <= rows; ++n)
      for (int j = 0; j < cols; ++j) {
        const int k = n + column_shift(F, j);
        g.at(n, j) = k <= N ? f[static_cast<size_t>(k) - 1] : 0.0;
      }
    return g;
  }

  double supf = 0.0;
  for (int k = 0; k < N; ++k) supf = std::max(supf, std::fabs(f[static_cast<size_t>(k)]));
  std::vector<double> tails(static_cast<size_t>(cols), 0.0);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int j = 0; j < cols; ++j) {
    const auto B = F.member(F.indices[static_cast<size_t>(j)]);
    double tail = 0.0;
    for (int n = 1; n <= rows; ++n) {
      double acc = 0.0;
      for (const auto& [k, b] : B.row(n))
        if (k <= N) acc += b * f[static_cast<size_t>(k) - 1];
      g.at(n, j) = acc;
      tail = std::max(tail, B.tail_bound(n, N) * supf);
    }
    tails[static_cast<size_t>(j)] = tail;
  }
  for (double t : tails) g.max_tail_error = std::max(g.max_tail_error, t);
  return g;
}

Grid family_weighted_grid_ki(const MatrixFamily& F, const std::function<double(int, int)>& f,
                             int N, Exec exec, std::int64_t budget) {
  const int rows = certified_rows(F, N);
  const int cols = F.count();
  const std::int64_t est = estimate_family_support(F, rows, N);
  if (est > budget) {
    const double shrink = std::sqrt(static_cast<double>(budget) / static_cast<double>(est));
    throw capability_error("family_weighted_grid_ki: estimated support " + std::to_string(est) +
                           " exceeds budget; try N <= " +
                           std::to_string(static_cast<int>(static_cast<double>(N) * shrink)) +
                           " or an index-uniform integrand");
  }
  Grid g;
  g.resize(rows, cols);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int j = 0; j < cols; ++j) {
    const int i = F.indices[static_cast<size_t>(j)];
    const auto B = F.member(i);
    for (int n = 1; n <= rows; ++n) {
      double acc = 0.0;
      for (const auto& [k, b] : B.row(n))
        if (k <= N) acc += b * f(k, i);
      g.at(n, j) = acc;
    }
  }
  return g;
}

Grid pair_indicator_grid_reference(const MatrixFamily& F, const std::vector<double>& s,
                                   double eps, int N) {
  const int rows = certified_rows(F, N);
  Grid g;
  g.resize(rows, F.count());
  for (int j = 0; j < F.count(); ++j) {
    const auto B = F.member(F.indices[static_cast<size_t>(j)]);
    for (int n = 1; n <= rows; ++n) {
      const auto row = B.row(n);
      double acc = 0.0;
      for (const auto& [k, bk] : row) {
        if (k > N) continue;
        for (const auto& [l, bl] : row) {
          if (l > N) continue;
          if (std::fabs(s[static_cast<size_t>(k) - 1] - s[static_cast<size_t>(l) - 1]) >= eps)
            acc += bk * bl;
        }
      }
      g.at(n, j) = acc;
    }
  }
  return g;
}

Grid pair_indicator_grid(const MatrixFamily& F, const std::vector<double>& s, double eps, int N,
                         Exec exec, std::int64_t budget) {
  if (eps <= 0) throw input_error("pair_indicator_grid: eps must be positive");
  if (static_cast<int>(s.size()) < N) throw input_error("pair_indicator_grid: prefix shorter than window");
  const int rows = certified_rows(F, N);
  const int cols = F.count();

  if (auto tv = two_valued(std::vector<double>(s.begin(), s.begin() + N))) {
    Grid g;
    if (tv->second - tv->first < eps) {
      g.resize(rows, cols);
      return g;
    }
    std::vector<double> hi(static_cast<size_t>(N), 0.0), ones(static_cast<size_t>(N), 1.0);
    for (int k = 0; k < N; ++k) hi[static_cast<size_t>(k)] = (s[static_cast<size_t>(k)] == tv->second) ? 1.0 : 0.0;
    Grid r = family_weighted_grid(F, hi, N, exec);
    Grid R = family_weighted_grid(F, ones, N, exec);
    g.resize(rows, cols);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int n = 1; n <= rows; ++n)
      for (int j = 0; j < cols; ++j)
        g.at(n, j) = 2.0 * r.at(n, j) * (R.at(n, j) - r.at(n, j));
    return g;
  }

  Grid g;
  g.resize(rows, cols);

  if (is_shift_stack(F, MatrixKind::cesaro)) {
    // sliding window [sh+1 .. sh+n] of uniform weight 1/n: count far pairs
    // incrementally over a Fenwick of value ranks
    const auto vals = sorted_unique(std::vector<double>(s.begin(), s.begin() + N));
    const int V = static_cast<int>(vals.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (int j = 0; j < cols; ++j) {
      const int sh = column_shift(F, j);
      Fenwick fw(V);
      double far_pairs = 0.0;  // unordered count
      double in_window = 0.0;
      for (int n = 1; n <= rows; ++n) {
        const int k = sh + n;
        if (k <= N) {
          const double v = s[static_cast<size_t>(k) - 1];
          const int lo = rank_le(vals, v - eps);
          const int hi = rank_ge(vals, v + eps);
          double cnt = 0.0;
          if (lo >= 0) cnt += fw.prefix(lo);
          if (hi < V) cnt += in_window - fw.prefix(hi - 1);
          far_pairs += cnt;
          fw.add(rank_ge(vals, v), 1.0);
          in_window += 1.0;
        }
        g.at(n, j) = 2.0 * far_pairs / (static_cast<double>(n) * n);
      }
    }
    return g;
  }
  if (is_shift_stack(F, MatrixKind::identity)) return g;  // single-entry rows: no far pairs

  const std::int64_t est = estimate_support_total(F, rows, N);
  if (est > budget) {
    const double shrink = std::sqrt(static_cast<double>(budget) / static_cast<double>(est));
    throw capability_error("pair_indicator_grid: estimated row support " + std::to_string(est) +
                           " exceeds budget " + std::to_string(budget) + "; try N <= " +
                           std::to_string(static_cast<int>(static_cast<double>(N) * shrink)));
  }

#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int j = 0; j < cols; ++j) {
    const auto B = F.member(F.indices[static_cast<size_t>(j)]);
    std::vector<std::pair<double, double>> byval;  // (s value, weight)
    std::vector<double> W;
    for (int n = 1; n <= rows; ++n) {
      byval.clear();
      for (const auto& [k, b] : B.row(n))
        if (k <= N) byval.emplace_back(s[static_cast<size_t>(k) - 1], b);
      std::sort(byval.begin(), byval.end());
      const int r = static_cast<int>(byval.size());
      W.assign(static_cast<size_t>(r) + 1, 0.0);
      for (int t = 0; t < r; ++t) W[static_cast<size_t>(t) + 1] = W[static_cast<size_t>(t)] + byval[static_cast<size_t>(t)].second;
      double acc = 0.0;
      int lo = 0, hi = 0;
      for (int t = 0; t < r; ++t) {
        const double v = byval[static_cast<size_t>(t)].first;
        while (lo < r && byval[static_cast<size_t>(lo)].first <= v - eps) ++lo;
        while (hi < r && byval[static_cast<size_t>(hi)].first < v + eps) ++hi;
        acc += byval[static_cast<size_t>(t)].second * (W[static_cast<size_t>(lo)] + (W[static_cast<size_t>(r)] - W[static_cast<size_t>(hi)]));
      }
      g.at(n, j) = acc;
    }
  }
  return g;
}

Grid pair_power_grid_reference(const MatrixFamily& F, const std::vector<double>& s, int p, int N) {
  const int rows = certified_rows(F, N);
  Grid g;
  g.resize(rows, F.count());
  for (int j = 0; j < F.count(); ++j) {
    const auto B = F.member(F.indices[static_cast<size_t>(j)]);
    for (int n = 1; n <= rows; ++n) {
      const auto row = B.row(n);
      double acc = 0.0;
      for (const auto& [k, bk] : row) {
        if (k > N) continue;
        for (const auto& [l, bl] : row) {
          if (l > N) continue;
          const double d = std::fabs(s[static_cast<size_t>(k) - 1] - s[static_cast<size_t>(l) - 1]);
          acc += bk * bl * (p == 1 ? d : d * d);
        }
      }
      g.at(n, j) = acc;
    }
  }
  return g;
}

Grid pair_power_grid(const MatrixFamily& F, const std::vector<double>& s, int p, int N, Exec exec,
                     std::int64_t budget) {
  if (p != 1 && p != 2) throw input_error("pair_power_grid: p must be 1 or 2");
  if (static_cast<int>(s.size()) < N) throw input_error("pair_power_grid: prefix shorter than window");
  const int rows = certified_rows(F, N);
  const int cols = F.count();
  Grid g;
  g.resize(rows, cols);

  if (is_shift_stack(F, MatrixKind::cesaro)) {
    if (p == 2) {
      // ΣΣ (s_k - s_l)^2 over the window = 2 n Q - 2 S^2 with sliding moments
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
      for (int j = 0; j < cols; ++j) {
        const int sh = column_shift(F, j);
        double S = 0.0, Q = 0.0;
        double m = 0.0;
        for (int n = 1; n <= rows; ++n) {
          const int k = sh + n;
          if (k <= N) {
            const double v = s[static_cast<size_t>(k) - 1];
            S += v;
            Q += v * v;
            m += 1.0;
          }
          g.at(n, j) = (2.0 * m * Q - 2.0 * S * S) / (static_cast<double>(n) * n);
        }
      }
      return g;
    }
    // p == 1: Fenwick over (count, sum) per value rank
    const auto vals = sorted_unique(std::vector<double>(s.begin(), s.begin() + N));
    const int V = static_cast<int>(vals.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (int j = 0; j < cols; ++j) {
      const int sh = column_shift(F, j);
      Fenwick cnt(V), sum(V);
      double total = 0.0;  // Σ over unordered pairs of |difference|
      double in_window = 0.0, sum_window = 0.0;
      for (int n = 1; n <= rows; ++n) {
        const int k = sh + n;
        if (k <= N) {
          const double v = s[static_cast<size_t>(k) - 1];
          const int le = rank_le(vals, v);
          const double c_le = cnt.prefix(le), s_le = sum.prefix(le);
          total += v * c_le - s_le + (sum_window - s_le) - v * (in_window - c_le);
          cnt.add(rank_ge(vals, v), 1.0);
          sum.add(rank_ge(vals, v), v);
          in_window += 1.0;
          sum_window += v;
        }
        g.at(n, j) = 2.0 * total / (static_cast<double>(n) * n);
      }
    }
    return g;
  }

  const std::int64_t est = estimate_support_total(F, rows, N);
  if (est > budget) {
    const double shrink = std::sqrt(static_cast<double>(budget) / static_cast<double>(est));
    throw capability_error("pair_power_grid: estimated row support " + std::to_string(est) +
                           " exceeds budget; try N <= " +
                           std::to_string(static_cast<int>(static_cast<double>(N) * shrink)));
  }

#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int j = 0; j < cols; ++j) {
    const auto B = F.member(F.indices[static_cast<size_t>(j)]);
    std::vector<std::pair<double, double>> byval;
    for (int n = 1; n <= rows; ++n) {
      byval.clear();
      for (const auto& [k, b] : B.row(n))
        if (k <= N) byval.emplace_back(s[static_cast<size_t>(k) - 1], b);
      if (p == 2) {
        double Ww = 0.0, Mw = 0.0, Qw = 0.0;
        for (const auto& [v, b] : byval) {
          Ww += b;
          Mw += b * v;
          Qw += b * v * v;
        }
        g.at(n, j) = 2.0 * Ww * Qw - 2.0 * Mw * Mw;
        continue;
      }
      std::sort(byval.begin(), byval.end());
      const int r = static_cast<int>(byval.size());
      double Wpre = 0.0, Mpre = 0.0, Wtot = 0.0, Mtot = 0.0;
      for (const auto& [v, b] : byval) {
        Wtot += b;
        Mtot += b * v;
      }
      double acc = 0.0;
      for (int t = 0; t < r; ++t) {
        const auto [v, b] = byval[static_cast<size_t>(t)];
        acc += b * (v * Wpre - Mpre + (Mtot - Mpre) - v * (Wtot - Wpre));
        Wpre += b;
        Mpre += b * v;
      }
      g.at(n, j) = acc;
    }
  }
  return g;
}

double pair_gauge_cell(const SummabilityMatrix& Bi, const SummabilityMatrix& Bj, int n,
                       const std::vector<double>& s,
                       const std::function<double(int, int, double)>& gauge, int N,
                       std::int64_t budget) {
  const auto ri = Bi.row(n);
  const auto rj = Bj.row(n);
  if (static_cast<std::int64_t>(ri.size()) * static_cast<std::int64_t>(rj.size()) > budget)
    throw capability_error("pair_gauge_cell: row support product exceeds budget at n=" +
                           std::to_string(n));
  double acc = 0.0;
  for (const auto& [k, bk] : ri) {
    if (k > N) continue;
    const double vk = s[static_cast<size_t>(k) - 1];
    for (const auto& [l, bl] : rj) {
      if (l > N) continue;
      acc += bk * bl * gauge(k, l, std::fabs(vk - s[static_cast<size_t>(l) - 1]));
    }
  }
  return acc;
}

std::vector<double> sup_deviation(const Grid& u, const std::vector<double>& g, Exec exec) {
  if (static_cast<int>(g.size()) != u.cols) throw input_error("sup_deviation: target size mismatch");
  std::vector<double> v(static_cast<size_t>(u.rows), 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int n = 1; n <= u.rows; ++n) {
    double m = 0.0;
    for (int j = 0; j < u.cols; ++j)
      m = std::max(m, ext_nonneg_distance(u.at(n, j), g[static_cast<size_t>(j)]));
    v[static_cast<size_t>(n) - 1] = m;
  }
  return v;
}

std::vector<double> inf_over_family(const Grid& u, Exec exec) {
  std::vector<double> v(static_cast<size_t>(u.rows), 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int n = 1; n <= u.rows; ++n) {
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j < u.cols; ++j) m = std::min(m, u.at(n, j));
    v[static_cast<size_t>(n) - 1] = m;
  }
  return v;
}

std::vector<double> suffix_max(const std::vector<double>& v) {
  std::vector<double> out(v.size() + 1, -std::numeric_limits<double>::infinity());
  for (int k = static_cast<int>(v.size()) - 1; k >= 0; --k)
    out[static_cast<size_t>(k)] = std::max(v[static_cast<size_t>(k)], out[static_cast<size_t>(k) + 1]);
  return out;
}

std::optional<std::pair<double, double>> two_valued(const std::vector<double>& s) {
  if (s.empty()) return std::nullopt;
  double a = s[0], b = s[0];
  bool have_b = false;
  for (double x : s) {
    if (x == a) continue;
    if (!have_b) {
      b = x;
      have_b = true;
      continue;
    }
    if (x != b) return std::nullopt;
  }
  if (!have_b) return std::make_pair(a, a);
  return std::make_pair(std::min(a, b), std::max(a, b));
}

}  // namespace kernels
}  // namespace summa
