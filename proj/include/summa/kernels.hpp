#pragma once

#include <cstdint>
#include <optional>

#include "summa/matrix.hpp"

namespace summa {
namespace kernels {

enum class Exec { serial, parallel };

// Fenwick tree over value ranks; double accumulators keep counts exact.
struct Fenwick {
  std::vector<double> t;
  explicit Fenwick(int n) : t(static_cast<size_t>(n) + 1, 0.0) {}
  void add(int pos, double w) {
    for (int i = pos + 1; i < static_cast<int>(t.size()); i += i & (-i))
      t[static_cast<size_t>(i)] += w;
  }
  // sum of slots [0, pos]; pos = -1 gives 0
  double prefix(int pos) const {
    double s = 0.0;
    for (int i = pos + 1; i > 0; i -= i & (-i)) s += t[static_cast<size_t>(i)];
    return s;
  }
};

// Dense (n, i) evaluation grid: rows are matrix row indices 1..rows,
// columns follow the family's index list.
struct Grid {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;
  double max_tail_error = 0.0;

  void resize(int r, int c) {
    rows = r;
    cols = c;
    data.assign(static_cast<size_t>(r) * static_cast<size_t>(c), 0.0);
  }
  double& at(int n, int j) { return data[(static_cast<size_t>(n) - 1) * cols + j]; }
  double at(int n, int j) const { return data[(static_cast<size_t>(n) - 1) * cols + j]; }
};

// Largest row index for which every family member's row is fully inside the
// window [1..N] (lower-triangular families only overhang by their shift).
int certified_rows(const MatrixFamily& F, int N);

// u[n][j] = Σ_k b^(i_j)_nk f_k for an integrand f given on [1..N].
// Entries with k > N contribute to max_tail_error via the members' tail bounds
// and sup|f|. Fast paths: Cesàro/identity shift families via prefix sums.
Grid family_weighted_grid(const MatrixFamily& F, const std::vector<double>& f, int N,
                          Exec exec = Exec::parallel);

// Reference implementation: straightforward row-materializing loops, serial.
Grid family_weighted_grid_reference(const MatrixFamily& F, const std::vector<double>& f, int N);

// u[n][j] = Σ_k b^(i_j)_nk f(k, i_j) for integrands that vary with the family
// index. No fast path; cost is Σ_n |row support| × |S|, guarded by `budget`.
Grid family_weighted_grid_ki(const MatrixFamily& F,
                             const std::function<double(int k, int i)>& f, int N,
                             Exec exec = Exec::parallel, std::int64_t budget = 1 << 28);

// Sampled upper estimate of Σ_n |row support| summed over the family columns.
std::int64_t estimate_family_support(const MatrixFamily& F, int rows, int N);

// Pair sums u[n][j] = Σ_k Σ_l b^(i_j)_nk b^(i_j)_nl χ{|s_k - s_l| >= eps}.
// Exact value of the double sum; evaluated by the two-valued product form,
// a Fenwick sliding count (uniform contiguous windows) or a sorted two-pointer
// scan per row. `budget` caps the per-row support of the generic path.
Grid pair_indicator_grid(const MatrixFamily& F, const std::vector<double>& s, double eps, int N,
                         Exec exec = Exec::parallel, std::int64_t budget = 1 << 22);

// Reference: literal quadratic double sum, serial.
Grid pair_indicator_grid_reference(const MatrixFamily& F, const std::vector<double>& s,
                                   double eps, int N);

// u[n][j] = Σ_k Σ_l b b |s_k - s_l|^p for p = 1 or 2 (identity/square gauges).
Grid pair_power_grid(const MatrixFamily& F, const std::vector<double>& s, int p, int N,
                     Exec exec = Exec::parallel, std::int64_t budget = 1 << 22);

Grid pair_power_grid_reference(const MatrixFamily& F, const std::vector<double>& s, int p, int N);

// Single-cell pair sum with an arbitrary pair gauge; literal double sum.
double pair_gauge_cell(const SummabilityMatrix& Bi, const SummabilityMatrix& Bj, int n,
                       const std::vector<double>& s,
                       const std::function<double(int k, int l, double t)>& gauge, int N,
                       std::int64_t budget = 1 << 26);

// v[n-1] = sup_j d(u[n][j], g[j]) in the generalized [0, inf] metric.
std::vector<double> sup_deviation(const Grid& u, const std::vector<double>& g,
                                  Exec exec = Exec::parallel);

// v[n-1] = inf_j u[n][j].
std::vector<double> inf_over_family(const Grid& u, Exec exec = Exec::parallel);

// suffix_max[k] = max(v[k..end]); one slot past the end holds -inf.
std::vector<double> suffix_max(const std::vector<double>& v);

// Two distinct values (lo, hi) if s takes at most two, exact comparison.
std::optional<std::pair<double, double>> two_valued(const std::vector<double>& s);

}  // namespace kernels
}  // namespace summa
