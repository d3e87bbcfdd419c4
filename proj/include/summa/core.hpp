#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace summa {

// Contract violations on caller-supplied data (bad prefix, mismatched lengths, ...).
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// The request is well-formed but not evaluable at this scale
// (missing tail bounds, row support over budget, no evaluable base, ...).
class capability_error : public std::runtime_error {
 public:
  explicit capability_error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Extended reals
// ---------------------------------------------------------------------------

// Value in [-inf, +inf]. Thin wrapper so infinities are deliberate, not accidental.
struct ExtendedReal {
  double v = 0.0;

  ExtendedReal() = default;
  explicit ExtendedReal(double x) : v(x) {}

  static ExtendedReal infinity() { return ExtendedReal(std::numeric_limits<double>::infinity()); }
  static ExtendedReal neg_infinity() { return ExtendedReal(-std::numeric_limits<double>::infinity()); }

  bool is_finite() const { return std::isfinite(v); }
  bool is_pos_inf() const { return std::isinf(v) && v > 0; }
  bool is_neg_inf() const { return std::isinf(v) && v < 0; }

  friend bool operator<(ExtendedReal a, ExtendedReal b) { return a.v < b.v; }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return a.v <= b.v; }
  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v == b.v; }

  ExtendedReal operator-() const { return ExtendedReal(-v); }
};

// Generalized metric on [0, inf]: d(a,b) = |a-b| for finite a,b,
// d(a,inf) = d(inf,a) = inf for finite a, and d(inf,inf) = 0.
inline double ext_nonneg_distance(double a, double b) {
  const bool ia = std::isinf(a), ib = std::isinf(b);
  if (ia && ib) return 0.0;
  if (ia || ib) return std::numeric_limits<double>::infinity();
  return std::fabs(a - b);
}

// Values on [0, inf]; +inf is a legitimate outcome (divergent gauge sums),
// measured with ext_nonneg_distance above.
using ExtendedNonneg = double;

// Same convention extended to signed values (two infinities of equal sign coincide).
inline double ext_distance(double a, double b) {
  if (std::isinf(a) && std::isinf(b)) {
    return (a > 0) == (b > 0) ? 0.0 : std::numeric_limits<double>::infinity();
  }
  if (std::isinf(a) || std::isinf(b)) return std::numeric_limits<double>::infinity();
  return std::fabs(a - b);
}

// ---------------------------------------------------------------------------
// Scale and verdicts
// ---------------------------------------------------------------------------

// Truncation scale every analysis is qualified by. No operation claims
// anything beyond the window [1..N], family indices <= i_max and base depth m_max.
struct Scale {
  int N = 10000;
  int i_max = 64;
  int m_max = 32;
  std::vector<double> eps_list = default_eps_list();
  double tol = 1e-6;

  static std::vector<double> default_eps_list() {
    std::vector<double> e;
    for (int k = 0; k <= 6; ++k) e.push_back(std::pow(10.0, -k));
    return e;
  }

  double min_eps() const {
    double m = std::numeric_limits<double>::infinity();
    for (double e : eps_list) m = std::min(m, e);
    return m;
  }
  double max_eps() const {
    double m = 0.0;
    for (double e : eps_list) m = std::max(m, e);
    return m;
  }

  Scale with_N(int n) const { Scale s = *this; s.N = n; return s; }
  Scale with_imax(int i) const { Scale s = *this; s.i_max = i; return s; }
};

enum class Status { holds_at_scale, fails_at_scale, inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::holds_at_scale: return "holds_at_scale";
    case Status::fails_at_scale: return "fails_at_scale";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

// Scale-qualified outcome of a convergence test.
struct Verdict {
  Status status = Status::inconclusive;
  ExtendedReal estimate{};
  double residual = std::numeric_limits<double>::infinity();
  Scale scale{};
  std::vector<int> witnesses;       // non-empty whenever status == fails_at_scale
  std::vector<double> unresolved;   // eps values the scale could not decide
  std::string note;

  bool holds() const { return status == Status::holds_at_scale; }
  bool fails() const { return status == Status::fails_at_scale; }
};

// ---------------------------------------------------------------------------
// Sequence prefixes
// ---------------------------------------------------------------------------

// Finite truncation of a sequence, logically indexed 1..size().
// tail_abs_bound, when present, bounds |s_n| for all n beyond the prefix.
struct SequencePrefix {
  std::vector<double> values;
  std::optional<double> tail_abs_bound;

  SequencePrefix() = default;
  explicit SequencePrefix(std::vector<double> v) : values(std::move(v)) {}

  int size() const { return static_cast<int>(values.size()); }
  double at(int k) const { return values[static_cast<size_t>(k) - 1]; }

  double sup_abs() const {
    double m = 0.0;
    for (double x : values) m = std::max(m, std::fabs(x));
    if (tail_abs_bound) m = std::max(m, *tail_abs_bound);
    return m;
  }

  static SequencePrefix from_generator(int n, const std::function<double(int)>& f) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) v[static_cast<size_t>(k) - 1] = f(k);
    return SequencePrefix(std::move(v));
  }
};

// Subset of the naturals given by a predicate, enumerable on a window.
struct IndexSet {
  std::function<bool(int)> contains;
  std::string name;

  std::vector<int> enumerate(int N) const {
    std::vector<int> out;
    for (int n = 1; n <= N; ++n)
      if (contains(n)) out.push_back(n);
    return out;
  }

  // dense 0/1 mask over [1..N]; mask[k-1] corresponds to index k
  std::vector<std::uint8_t> mask(int N) const {
    std::vector<std::uint8_t> m(static_cast<size_t>(N), 0);
    for (int n = 1; n <= N; ++n)
      if (contains(n)) m[static_cast<size_t>(n) - 1] = 1;
    return m;
  }

  static IndexSet of(std::function<bool(int)> pred, std::string name = "") {
    return IndexSet{std::move(pred), std::move(name)};
  }
  static IndexSet from_indices(std::vector<int> idx, std::string name = "") {
    auto set = std::make_shared<std::vector<int>>(std::move(idx));
    std::sort(set->begin(), set->end());
    return IndexSet{[set](int n) {
                      return std::binary_search(set->begin(), set->end(), n);
                    },
                    std::move(name)};
  }
};

inline bool is_perfect_square(int n) {
  if (n < 0) return false;
  int r = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
  for (int d = -1; d <= 1; ++d) {
    long long q = static_cast<long long>(r) + d;
    if (q >= 0 && q * q == n) return true;
  }
  return false;
}

}  // namespace summa
