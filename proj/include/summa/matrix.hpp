#pragma once

#include <complex>
#include <tuple>
#include <utility>

#include "summa/core.hpp"

namespace summa {

enum class MatrixKind { cesaro, identity, general };

// Row-generated infinite matrix with certified truncation: row(n) yields the
// stored sparse entries (k ascending), tail_bound(n, K) bounds Σ_{k>K} |a_nk|.
// Lower-triangular matrices declare tail 0.
//
// kind must describe the actual row layout: evaluation takes closed-form fast
// paths keyed on it. Reset kind to general when wrapping or editing rows.
template <class T>
struct BasicSummabilityMatrix {
  std::function<std::vector<std::pair<int, T>>(int n)> row;
  std::function<double(int n, int cutoff)> tail_bound;
  MatrixKind kind = MatrixKind::general;
  int shift = 0;  // entries live at column k + shift relative to `kind`s canonical layout
  std::string name;

  T entry(int n, int k) const {
    for (const auto& [kk, v] : row(n))
      if (kk == k) return v;
    return T{};
  }

  double abs_row_sum(int n, int window) const {
    double s = 0.0;
    for (const auto& [k, v] : row(n))
      if (k <= window) s += std::abs(v);
    return s;
  }
};

using SummabilityMatrix = BasicSummabilityMatrix<double>;
using ComplexSummabilityMatrix = BasicSummabilityMatrix<std::complex<double>>;

// a_nk = 1/n for k <= n, else 0.
inline SummabilityMatrix cesaro() {
  SummabilityMatrix A;
  A.kind = MatrixKind::cesaro;
  A.name = "cesaro";
  A.row = [](int n) {
    std::vector<std::pair<int, double>> r;
    r.reserve(static_cast<size_t>(n));
    const double w = 1.0 / n;
    for (int k = 1; k <= n; ++k) r.emplace_back(k, w);
    return r;
  };
  A.tail_bound = [](int n, int cutoff) {
    return cutoff >= n ? 0.0 : static_cast<double>(n - cutoff) / n;
  };
  return A;
}

inline SummabilityMatrix identity_matrix() {
  SummabilityMatrix A;
  A.kind = MatrixKind::identity;
  A.name = "identity";
  A.row = [](int n) { return std::vector<std::pair<int, double>>{{n, 1.0}}; };
  A.tail_bound = [](int n, int cutoff) { return cutoff >= n ? 0.0 : 1.0; };
  return A;
}

// Lower-triangular matrix from explicit (n, k, value) triples.
inline SummabilityMatrix triangular_from_triples(std::vector<std::tuple<int, int, double>> triples,
                                                 std::string name = "triangular") {
  auto rows = std::make_shared<std::vector<std::vector<std::pair<int, double>>>>();
  for (auto& [n, k, v] : triples) {
    if (n < 1 || k < 1) throw input_error("triangular_from_triples: indices must be >= 1");
    if (k > n) throw input_error("triangular_from_triples: entry above the diagonal");
    if (rows->size() < static_cast<size_t>(n)) rows->resize(static_cast<size_t>(n));
    (*rows)[static_cast<size_t>(n) - 1].emplace_back(k, v);
  }
  for (auto& r : *rows) std::sort(r.begin(), r.end());
  SummabilityMatrix A;
  A.kind = MatrixKind::general;
  A.name = std::move(name);
  A.row = [rows](int n) {
    if (n < 1 || static_cast<size_t>(n) > rows->size()) return std::vector<std::pair<int, double>>{};
    return (*rows)[static_cast<size_t>(n) - 1];
  };
  A.tail_bound = [rows](int n, int cutoff) {
    if (n < 1 || static_cast<size_t>(n) > rows->size()) return 0.0;
    double t = 0.0;
    for (const auto& [k, v] : (*rows)[static_cast<size_t>(n) - 1])
      if (k > cutoff) t += std::fabs(v);
    return t;
  };
  return A;
}

// b_nk = a_{n,k-i} for k > i, 0 for k <= i.
inline SummabilityMatrix shift_matrix(const SummabilityMatrix& A, int i) {
  if (i < 0) throw input_error("shift_matrix: shift must be >= 0");
  if (i == 0) return A;
  SummabilityMatrix B;
  B.kind = A.kind;
  B.shift = A.shift + i;
  B.name = A.name + "+" + std::to_string(i);
  B.row = [base = A.row, i](int n) {
    auto r = base(n);
    for (auto& [k, v] : r) k += i;
    return r;
  };
  B.tail_bound = [base = A.tail_bound, i](int n, int cutoff) {
    return base(n, std::max(0, cutoff - i));
  };
  return B;
}

enum class FamilyKind { single, shifts, general };

// Indexed family (B_i)_{i∈S}; S is a finite list or a truncated ℕ₀.
struct MatrixFamily {
  std::vector<int> indices;
  std::function<SummabilityMatrix(int i)> member;
  bool nonnegative = false;
  FamilyKind kind = FamilyKind::general;
  MatrixKind base_kind = MatrixKind::general;  // meaningful for kind == shifts/single
  std::string name;
  std::optional<int> condition_plus_witness;

  int count() const { return static_cast<int>(indices.size()); }
};

inline MatrixFamily single_family(const SummabilityMatrix& A, bool nonnegative = true) {
  MatrixFamily F;
  F.indices = {0};
  F.member = [A](int) { return A; };
  F.nonnegative = nonnegative;
  F.kind = FamilyKind::single;
  F.base_kind = A.kind;
  F.name = A.name;
  return F;
}

// The family b^(i)_nk = a_{n,k-i} for i = 0..i_max.
inline MatrixFamily build_shift_family(const SummabilityMatrix& A, int i_max,
                                       bool nonnegative = true) {
  if (i_max < 0) throw input_error("build_shift_family: i_max must be >= 0");
  MatrixFamily F;
  F.indices.resize(static_cast<size_t>(i_max) + 1);
  for (int i = 0; i <= i_max; ++i) F.indices[static_cast<size_t>(i)] = i;
  F.member = [A](int i) { return shift_matrix(A, i); };
  F.nonnegative = nonnegative;
  F.kind = FamilyKind::shifts;
  F.base_kind = A.kind;
  F.name = A.name + "-shifts";
  return F;
}

// ---------------------------------------------------------------------------
// transform: one row of the matrix applied to a prefix, with certified tail.
// ---------------------------------------------------------------------------

template <class R>
struct TransformResult {
  R value{};
  double tail_error = 0.0;
};

// value = Σ over stored entries with k <= s.size() of a_nk s_k;
// tail_error bounds the contribution of everything past the prefix.
template <class T, class V>
auto transform(const std::vector<V>& s, const BasicSummabilityMatrix<T>& B, int n)
    -> TransformResult<decltype(T{} * V{})> {
  using R = decltype(T{} * V{});
  if (s.empty()) throw input_error("transform: empty prefix");
  const int N = static_cast<int>(s.size());
  R acc{};
  for (const auto& [k, a] : B.row(n))
    if (k <= N) acc += a * s[static_cast<size_t>(k) - 1];
  TransformResult<R> out;
  out.value = acc;
  const double tb = B.tail_bound(n, N);
  if (tb != 0.0) {
    double sup = 0.0;
    for (const auto& x : s) sup = std::max(sup, static_cast<double>(std::abs(x)));
    out.tail_error = tb * sup;
  }
  return out;
}

inline TransformResult<double> transform(const SequencePrefix& s, const SummabilityMatrix& B,
                                         int n) {
  if (s.size() == 0) throw input_error("transform: empty prefix");
  const int N = s.size();
  double acc = 0.0;
  for (const auto& [k, a] : B.row(n))
    if (k <= N) acc += a * s.at(k);
  TransformResult<double> out;
  out.value = acc;
  const double tb = B.tail_bound(n, N);
  if (tb > 0.0) {
    if (!s.tail_abs_bound && s.sup_abs() > 0.0) {
      // A nonzero tail with no declared bound on the unseen part of s cannot
      // be certified.
      throw capability_error("transform: row " + std::to_string(n) +
                             " has mass beyond the prefix and s has no tail bound");
    }
    out.tail_error = tb * s.sup_abs();
  }
  return out;
}

}  // namespace summa
