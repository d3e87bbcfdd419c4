#include "summa/banach.hpp"

#include <algorithm>
#include <cmath>

namespace summa {

namespace {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

// Gaussian elimination with partial pivoting; nullopt when singular.
std::optional<Vec> solve_linear(std::vector<Vec> A, Vec b) {
  const int d = static_cast<int>(b.size());
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r)
      if (std::fabs(A[static_cast<size_t>(r)][static_cast<size_t>(c)]) >
          std::fabs(A[static_cast<size_t>(piv)][static_cast<size_t>(c)]))
        piv = r;
    if (std::fabs(A[static_cast<size_t>(piv)][static_cast<size_t>(c)]) < 1e-12) return std::nullopt;
    std::swap(A[static_cast<size_t>(c)], A[static_cast<size_t>(piv)]);
    std::swap(b[static_cast<size_t>(c)], b[static_cast<size_t>(piv)]);
    for (int r = c + 1; r < d; ++r) {
      const double f = A[static_cast<size_t>(r)][static_cast<size_t>(c)] /
                       A[static_cast<size_t>(c)][static_cast<size_t>(c)];
      for (int k = c; k < d; ++k)
        A[static_cast<size_t>(r)][static_cast<size_t>(k)] -=
            f * A[static_cast<size_t>(c)][static_cast<size_t>(k)];
      b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(c)];
    }
  }
  Vec x(static_cast<size_t>(d), 0.0);
  for (int r = d - 1; r >= 0; --r) {
    double s = b[static_cast<size_t>(r)];
    for (int k = r + 1; k < d; ++k) s -= A[static_cast<size_t>(r)][static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
    x[static_cast<size_t>(r)] = s / A[static_cast<size_t>(r)][static_cast<size_t>(r)];
  }
  return x;
}

int matrix_rank(std::vector<Vec> A, double tol = 1e-9) {
  if (A.empty()) return 0;
  const int rows = static_cast<int>(A.size());
  const int cols = static_cast<int>(A[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    double best = tol;
    for (int r = rank; r < rows; ++r)
      if (std::fabs(A[static_cast<size_t>(r)][static_cast<size_t>(c)]) > best) {
        best = std::fabs(A[static_cast<size_t>(r)][static_cast<size_t>(c)]);
        piv = r;
      }
    if (piv < 0) continue;
    std::swap(A[static_cast<size_t>(rank)], A[static_cast<size_t>(piv)]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const double f = A[static_cast<size_t>(r)][static_cast<size_t>(c)] /
                       A[static_cast<size_t>(rank)][static_cast<size_t>(c)];
      for (int k = 0; k < cols; ++k)
        A[static_cast<size_t>(r)][static_cast<size_t>(k)] -=
            f * A[static_cast<size_t>(rank)][static_cast<size_t>(k)];
    }
    ++rank;
  }
  return rank;
}

// Vertices of {y : <v, y> <= 1 for all v} by d-subset enumeration.
std::vector<Vec> polar_vertices(const std::vector<Vec>& constraints, int d) {
  std::vector<Vec> verts;
  const int m = static_cast<int>(constraints.size());
  std::vector<int> idx(static_cast<size_t>(d));
  std::function<void(int, int)> rec = [&](int from, int depth) {
    if (depth == d) {
      std::vector<Vec> A;
      for (int t = 0; t < d; ++t) A.push_back(constraints[static_cast<size_t>(idx[static_cast<size_t>(t)])]);
      auto y = solve_linear(A, Vec(static_cast<size_t>(d), 1.0));
      if (!y) return;
      for (const auto& v : constraints)
        if (dot(v, *y) > 1.0 + 1e-9) return;
      for (const auto& w : verts) {
        double ddist = 0.0;
        for (int k = 0; k < d; ++k) ddist = std::max(ddist, std::fabs(w[static_cast<size_t>(k)] - (*y)[static_cast<size_t>(k)]));
        if (ddist < 1e-9) return;
      }
      verts.push_back(*y);
      return;
    }
    for (int i = from; i < m; ++i) {
      idx[static_cast<size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return verts;
}

// Phase-1 simplex feasibility for A x = b, x >= 0.
bool lp_feasible(std::vector<Vec> A, Vec b, double tol) {
  const int m = static_cast<int>(b.size());
  const int n = A.empty() ? 0 : static_cast<int>(A[0].size());
  for (int r = 0; r < m; ++r)
    if (b[static_cast<size_t>(r)] < 0) {
      for (int c = 0; c < n; ++c) A[static_cast<size_t>(r)][static_cast<size_t>(c)] = -A[static_cast<size_t>(r)][static_cast<size_t>(c)];
      b[static_cast<size_t>(r)] = -b[static_cast<size_t>(r)];
    }
  // tableau with artificial basis
  const int cols = n + m;
  std::vector<Vec> T(static_cast<size_t>(m), Vec(static_cast<size_t>(cols) + 1, 0.0));
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) T[static_cast<size_t>(r)][static_cast<size_t>(c)] = A[static_cast<size_t>(r)][static_cast<size_t>(c)];
    T[static_cast<size_t>(r)][static_cast<size_t>(n + r)] = 1.0;
    T[static_cast<size_t>(r)][static_cast<size_t>(cols)] = b[static_cast<size_t>(r)];
  }
  std::vector<int> basis(static_cast<size_t>(m));
  for (int r = 0; r < m; ++r) basis[static_cast<size_t>(r)] = n + r;
  Vec z(static_cast<size_t>(cols) + 1, 0.0);  // phase-1 objective row (cost 1 on artificials)
  for (int c = 0; c <= cols; ++c) {
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += T[static_cast<size_t>(r)][static_cast<size_t>(c)];
    z[static_cast<size_t>(c)] = (c >= n && c < cols) ? s - 1.0 : s;
  }
  for (int iter = 0; iter < 2000; ++iter) {
    int enter = -1;
    for (int c = 0; c < cols; ++c)
      if (z[static_cast<size_t>(c)] > 1e-11) { enter = c; break; }  // Bland
    if (enter < 0) break;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      const double a = T[static_cast<size_t>(r)][static_cast<size_t>(enter)];
      if (a > 1e-11) {
        const double ratio = T[static_cast<size_t>(r)][static_cast<size_t>(cols)] / a;
        if (ratio < best - 1e-14 ||
            (ratio < best + 1e-14 && basis[static_cast<size_t>(r)] < (leave >= 0 ? basis[static_cast<size_t>(leave)] : cols + 1))) {
          best = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) break;  // unbounded (cannot happen in phase 1)
    const double piv = T[static_cast<size_t>(leave)][static_cast<size_t>(enter)];
    for (int c = 0; c <= cols; ++c) T[static_cast<size_t>(leave)][static_cast<size_t>(c)] /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double f = T[static_cast<size_t>(r)][static_cast<size_t>(enter)];
      if (f == 0.0) continue;
      for (int c = 0; c <= cols; ++c)
        T[static_cast<size_t>(r)][static_cast<size_t>(c)] -= f * T[static_cast<size_t>(leave)][static_cast<size_t>(c)];
    }
    const double fz = z[static_cast<size_t>(enter)];
    for (int c = 0; c <= cols; ++c) z[static_cast<size_t>(c)] -= fz * T[static_cast<size_t>(leave)][static_cast<size_t>(c)];
    basis[static_cast<size_t>(leave)] = enter;
  }
  double infeas = 0.0;
  for (int r = 0; r < m; ++r)
    if (basis[static_cast<size_t>(r)] >= n) infeas += T[static_cast<size_t>(r)][static_cast<size_t>(cols)];
  return infeas <= tol;
}

}  // namespace

double FiniteDimSpace::norm(const Vec& x) const {
  if (static_cast<int>(x.size()) != dim) throw input_error("norm: dimension mismatch");
  if (kind == NormKind::polytope) {
    double m = 0.0;
    for (const auto& e : dual_extremes) m = std::max(m, dot(e, x));
    return m;
  }
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::fabs(v), p);
  return std::pow(s, 1.0 / p);
}

double FiniteDimSpace::dual_norm(const Vec& y) const {
  if (static_cast<int>(y.size()) != dim) throw input_error("dual_norm: dimension mismatch");
  if (kind == NormKind::polytope) {
    double m = 0.0;
    for (const auto& v : primal_vertices) m = std::max(m, dot(v, y));
    return m;
  }
  if (std::isinf(p)) {
    double s = 0.0;
    for (double v : y) s += std::fabs(v);
    return s;
  }
  if (p == 1.0) {
    double m = 0.0;
    for (double v : y) m = std::max(m, std::fabs(v));
    return m;
  }
  const double q = p / (p - 1.0);
  double s = 0.0;
  for (double v : y) s += std::pow(std::fabs(v), q);
  return std::pow(s, 1.0 / q);
}

FiniteDimSpace make_polytope_space(std::vector<Vec> vertices) {
  if (vertices.empty()) throw input_error("make_polytope_space: no vertices");
  const int d = static_cast<int>(vertices[0].size());
  for (const auto& v : vertices)
    if (static_cast<int>(v.size()) != d) throw input_error("make_polytope_space: ragged vertex list");
  // symmetry: every vertex needs its antipode
  for (const auto& v : vertices) {
    bool found = false;
    for (const auto& w : vertices) {
      double dist = 0.0;
      for (int k = 0; k < d; ++k) dist = std::max(dist, std::fabs(v[static_cast<size_t>(k)] + w[static_cast<size_t>(k)]));
      if (dist < 1e-12) { found = true; break; }
    }
    if (!found) throw input_error("make_polytope_space: vertex list is not symmetric");
  }
  if (matrix_rank(vertices) < d)
    throw input_error("make_polytope_space: unit ball is not full-dimensional");
  FiniteDimSpace S;
  S.dim = d;
  S.kind = NormKind::polytope;
  S.primal_vertices = vertices;
  S.dual_extremes = polar_vertices(vertices, d);
  if (S.dual_extremes.empty())
    throw input_error("make_polytope_space: polar vertex enumeration found nothing");
  return S;
}

FiniteDimSpace make_pnorm_space(double p, int dim) {
  if (dim < 1) throw input_error("make_pnorm_space: dimension must be positive");
  if (!(p >= 1.0) && !std::isinf(p)) throw input_error("make_pnorm_space: need p >= 1");
  FiniteDimSpace S;
  S.dim = dim;
  S.kind = NormKind::pnorm;
  S.p = p;
  if (std::isinf(p)) {
    // dual is the l1 ball: extremes +-e_j
    for (int j = 0; j < dim; ++j)
      for (double sgn : {1.0, -1.0}) {
        Vec e(static_cast<size_t>(dim), 0.0);
        e[static_cast<size_t>(j)] = sgn;
        S.dual_extremes.push_back(e);
      }
  } else if (p == 1.0) {
    // dual is the sup-norm ball: extremes are sign vectors
    const int total = 1 << dim;
    for (int mask = 0; mask < total; ++mask) {
      Vec e(static_cast<size_t>(dim), 0.0);
      for (int j = 0; j < dim; ++j) e[static_cast<size_t>(j)] = (mask >> j) & 1 ? 1.0 : -1.0;
      S.dual_extremes.push_back(e);
    }
  }
  return S;
}

std::vector<double> functional_sequence(const VectorSequencePrefix& xs, const Vec& y) {
  std::vector<double> out(static_cast<size_t>(xs.size()));
#pragma omp parallel for schedule(static)
  for (int n = 1; n <= xs.size(); ++n) out[static_cast<size_t>(n) - 1] = dot(y, xs.at(n));
  return out;
}

SupportResult support_functional(const FiniteDimSpace& space, const Vec& x) {
  SupportResult res;
  const double nx = space.norm(x);
  if (nx == 0.0) {
    res.degenerate = true;
    if (!space.dual_extremes.empty()) {
      res.functional = space.dual_extremes.front();
    } else {
      res.functional = Vec(static_cast<size_t>(space.dim), 0.0);
      res.functional[0] = 1.0;
    }
    res.value = 0.0;
    return res;
  }
  if (space.kind == NormKind::polytope) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& e : space.dual_extremes) {
      const double v = dot(e, x);
      if (v > best) {
        best = v;
        res.functional = e;
      }
    }
    res.value = best;
    return res;
  }
  if (std::isinf(space.p)) {
    int arg = 0;
    for (int j = 1; j < space.dim; ++j)
      if (std::fabs(x[static_cast<size_t>(j)]) > std::fabs(x[static_cast<size_t>(arg)])) arg = j;
    Vec e(static_cast<size_t>(space.dim), 0.0);
    e[static_cast<size_t>(arg)] = x[static_cast<size_t>(arg)] >= 0 ? 1.0 : -1.0;
    res.functional = e;
    res.value = dot(e, x);
    return res;
  }
  if (space.p == 1.0) {
    Vec e(static_cast<size_t>(space.dim), 0.0);
    for (int j = 0; j < space.dim; ++j)
      e[static_cast<size_t>(j)] = x[static_cast<size_t>(j)] >= 0 ? 1.0 : -1.0;
    res.functional = e;
    res.value = dot(e, x);
    return res;
  }
  // duality map for 1 < p < inf
  Vec e(static_cast<size_t>(space.dim), 0.0);
  for (int j = 0; j < space.dim; ++j) {
    const double v = x[static_cast<size_t>(j)];
    e[static_cast<size_t>(j)] = (v >= 0 ? 1.0 : -1.0) * std::pow(std::fabs(v), space.p - 1.0) /
                                std::pow(nx, space.p - 1.0);
  }
  res.functional = e;
  res.value = dot(e, x);
  return res;
}

bool hull_contains(const std::vector<Vec>& points, const Vec& y, double tol) {
  if (points.empty()) return false;
  const int d = static_cast<int>(y.size());
  const int M = static_cast<int>(points.size());
  std::vector<Vec> A(static_cast<size_t>(d) + 1, Vec(static_cast<size_t>(M), 0.0));
  Vec b(static_cast<size_t>(d) + 1, 0.0);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < M; ++c) A[static_cast<size_t>(r)][static_cast<size_t>(c)] = points[static_cast<size_t>(c)][static_cast<size_t>(r)];
    b[static_cast<size_t>(r)] = y[static_cast<size_t>(r)];
  }
  for (int c = 0; c < M; ++c) A[static_cast<size_t>(d)][static_cast<size_t>(c)] = 1.0;
  b[static_cast<size_t>(d)] = 1.0;
  return lp_feasible(std::move(A), std::move(b), tol);
}

std::vector<Vec> sample_dual_ball(const FiniteDimSpace& space, int count, std::mt19937_64& rng) {
  std::vector<Vec> out;
  for (const auto& e : space.dual_extremes) out.push_back(e);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (static_cast<int>(out.size()) < count) {
    Vec y(static_cast<size_t>(space.dim));
    for (auto& v : y) v = gauss(rng);
    const double dn = space.dual_norm(y);
    if (dn < 1e-12) continue;
    const bool boundary = out.size() % 2 == 0;
    const double r = boundary ? 1.0 : unif(rng);
    for (auto& v : y) v *= r / dn;
    out.push_back(std::move(y));
  }
  return out;
}

SimonsResult simons_sup_check(const FiniteDimSpace& space, const std::vector<Vec>& H,
                              const VectorSequencePrefix& xs, const MatrixFamily& F,
                              const IdealHandle& I, const Scale& scale, int ball_samples,
                              std::uint64_t seed) {
  if (H.empty()) throw input_error("simons_sup_check: H must be nonempty");
  for (const auto& e : H)
    if (space.dual_norm(e) > 1.0 + 1e-9)
      throw input_error("simons_sup_check: H is not inside the dual ball");
  if (xs.size() < scale.N) throw input_error("simons_sup_check: vector prefix shorter than window");
  if (!I.has_base())
    throw input_error("simons_sup_check: the inner ideal needs a countable evaluable base");

  SimonsResult res;
  IdealHandle J = derived_ideal(F, I, scale);

  // bounded-mass hypothesis: sup of the family's row sums on the window
  {
    kernels::Grid abs_grid = abs_row_sum_grid(F, scale.N);
    for (double v : abs_grid.data) res.M = std::max(res.M, v);
    res.rows_bounded.scale = scale;
    res.rows_bounded.estimate = ExtendedReal(res.M);
    res.rows_bounded.residual = res.M;
    res.rows_bounded.status =
        std::isfinite(res.M) ? Status::holds_at_scale : Status::fails_at_scale;
    if (res.rows_bounded.fails()) {
      res.rows_bounded.witnesses = {1};
      res.verdict = res.rows_bounded;
      res.verdict.note = "row sums unbounded; no comparison claimed";
      res.verdict.status = Status::inconclusive;
      return res;
    }
  }

  res.sup_H = -std::numeric_limits<double>::infinity();
  for (const auto& e : H) {
    SequencePrefix seq;
    seq.values = functional_sequence(xs, e);
    res.sup_H = std::max(res.sup_H, ideal_limsup(seq, J, scale).v);
  }

  std::mt19937_64 rng(seed);
  std::vector<Vec> samples = sample_dual_ball(space, ball_samples, rng);
  res.samples = static_cast<int>(samples.size());
  res.sup_ball = res.sup_H;
  const double c = res.sup_H;
  const int N = scale.N;

  // single prefix-kernel matrix over a prefix-based inner ideal: certify each
  // sample in-place instead of paying the generic membership plumbing
  const bool fast = F.kind == FamilyKind::single && F.base_kind == MatrixKind::cesaro &&
                    F.member(F.indices[0]).shift == 0 && I.variant == IdealVariant::finite;
  const auto depths = detail::residual_depths(I.base, N);

  std::vector<std::uint8_t> violated(samples.size(), 0);
  if (fast && !depths.empty()) {
    const std::int64_t deepest = depths.back();
    std::int64_t half = depths.front();
    for (auto d : depths)
      if (std::llabs(d - deepest / 2) < std::llabs(half - deepest / 2)) half = d;
#pragma omp parallel
    {
      std::vector<double> w(static_cast<size_t>(N));
#pragma omp for schedule(static)
      for (int si = 0; si < static_cast<int>(samples.size()); ++si) {
        const Vec& y = samples[static_cast<size_t>(si)];
        double cnt = 0.0;
        for (int n = 1; n <= N; ++n) {
          if (dot(y, xs.at(n)) > c + scale.tol) cnt += 1.0;
          w[static_cast<size_t>(n) - 1] = cnt / n;
        }
        double best = 0.0, half_res = 0.0;
        for (int n = N; n > deepest; --n) best = std::max(best, w[static_cast<size_t>(n) - 1]);
        half_res = best;
        for (std::int64_t n = deepest; n > half; --n)
          half_res = std::max(half_res, w[static_cast<size_t>(n) - 1]);
        const double decay = half_res > 0 ? best / half_res : 0.0;
        bool any_pass = false, any_obstructed = false;
        for (double eps : scale.eps_list) {
          if (best <= eps)
            any_pass = true;
          else if (decay >= kDecayThreshold)
            any_obstructed = true;
        }
        if (!(any_pass && !any_obstructed)) violated[static_cast<size_t>(si)] = 1;
      }
    }
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (int si = 0; si < static_cast<int>(samples.size()); ++si) {
      const Vec& y = samples[static_cast<size_t>(si)];
      std::vector<int> K;
      for (int n = 1; n <= N; ++n)
        if (dot(y, xs.at(n)) > c + scale.tol) K.push_back(n);
      Verdict member = derived_ideal_member(J, IndexSet::from_indices(std::move(K)), scale);
      if (!member.holds()) violated[static_cast<size_t>(si)] = 1;
    }
  }
  for (size_t si = 0; si < samples.size(); ++si) {
    if (!violated[si]) continue;
    ++res.violations;
    SequencePrefix seq;
    seq.values = functional_sequence(xs, samples[si]);
    res.sup_ball = std::max(res.sup_ball, ideal_limsup(seq, J, scale).v);
  }
  res.gap = std::max(0.0, res.sup_ball - res.sup_H);

  res.verdict.scale = scale;
  res.verdict.estimate = ExtendedReal(res.sup_H);
  res.verdict.residual = res.gap;
  if (res.violations == 0) {
    res.verdict.status = Status::holds_at_scale;
  } else {
    res.verdict.status = Status::fails_at_scale;
    res.verdict.witnesses = {res.violations};
    res.verdict.note = "sampled functionals exceed the boundary supremum";
  }
  return res;
}

Verdict i_generation_check(const std::vector<Vec>& H, const std::vector<int>& decomposition_sizes,
                           const FiniteDimSpace& space, const Scale& scale) {
  Verdict out;
  out.scale = scale;
  if (H.empty()) throw input_error("i_generation_check: empty H");
  std::vector<int> sizes = decomposition_sizes;
  if (sizes.empty()) sizes = {static_cast<int>(H.size())};
  int prev = 0;
  for (int s : sizes) {
    if (s < prev || s > static_cast<int>(H.size()))
      throw input_error("i_generation_check: decomposition is not an increasing exhaustion");
    prev = s;
  }
  if (sizes.back() != static_cast<int>(H.size()))
    throw input_error("i_generation_check: decomposition does not exhaust H");

  // finite dimensions: conv of the union of the level hulls = conv(H)
  std::vector<Vec> pool(H.begin(), H.begin() + sizes.back());
  const std::vector<Vec>& targets = space.dual_extremes;
  if (targets.empty()) {
    out.status = Status::inconclusive;
    out.note = "dual ball has no enumerable extreme points";
    return out;
  }
  std::vector<int> outside;
  for (size_t j = 0; j < targets.size(); ++j)
    if (!hull_contains(pool, targets[j], 1e-9)) outside.push_back(static_cast<int>(j) + 1);
  out.residual = static_cast<double>(outside.size());
  if (outside.empty()) {
    out.status = Status::holds_at_scale;
  } else {
    out.status = Status::fails_at_scale;
    out.witnesses = outside;
    out.note = "dual extreme points escape the generated hull";
  }
  return out;
}

namespace {

TransferReport transfer_impl(const FiniteDimSpace& space, const std::vector<Vec>& H,
                             const VectorSequencePrefix& xs, const Vec& x, const MatrixFamily& F,
                             const IdealHandle& I, const Scale& scale, const GaugeFamily* gauges,
                             bool summable_mode, int samples, std::uint64_t seed) {
  TransferReport rep;
  rep.generation = i_generation_check(H, {}, space, scale);

  auto premise_check = [&](const Vec& e) -> Verdict {
    SequencePrefix seq;
    seq.values = functional_sequence(xs, e);
    const double target = dot(e, x);
    if (summable_mode) return b_summable(seq, F, I, target, scale);
    if (gauges) return strong_summable(seq, F, *gauges, target, I, scale);
    return statistically_convergent(seq, F, target, I, scale);
  };

  bool all = rep.generation.holds();
  for (const auto& e : H) {
    Verdict v = premise_check(e);
    all = all && v.holds();
    rep.premise.push_back(std::move(v));
  }
  rep.premises_hold = all;

  rep.conclusion.scale = scale;
  if (!rep.premises_hold) {
    rep.conclusion.status = Status::inconclusive;
    rep.conclusion.note = "premises fail; no claim";
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::vector<Vec> ys = sample_dual_ball(space, samples, rng);
  rep.samples = static_cast<int>(ys.size());
  for (const auto& y : ys) {
    Verdict v = premise_check(y);
    if (!v.holds()) ++rep.failures;
  }
  if (rep.failures == 0) {
    rep.conclusion.status = Status::holds_at_scale;
    rep.conclusion.residual = 0.0;
  } else {
    rep.conclusion.status = Status::fails_at_scale;
    rep.conclusion.witnesses = {rep.failures};
    rep.conclusion.note = "transfer fails on sampled functionals";
  }
  return rep;
}

}  // namespace

TransferReport weak_stat_transfer(const FiniteDimSpace& space, const std::vector<Vec>& H,
                                  const VectorSequencePrefix& xs, const Vec& x,
                                  const MatrixFamily& F, const IdealHandle& I, const Scale& scale,
                                  const GaugeFamily* gauges, int samples, std::uint64_t seed) {
  if (gauges) {
    // strong variant needs the envelope and equicontinuity hypotheses
    for (double eps : scale.eps_list)
      if (lower_envelope(*gauges, eps).value <= 0.0)
        throw input_error("weak_stat_transfer: gauge lower envelope vanishes");
    if (!equicontinuity_delta(*gauges, scale.tol * 10))
      throw input_error("weak_stat_transfer: gauge family not equicontinuous at 0");
  }
  return transfer_impl(space, H, xs, x, F, I, scale, gauges, /*summable_mode=*/false, samples,
                       seed);
}

TransferReport bi_summable_transfer(const FiniteDimSpace& space, const std::vector<Vec>& H,
                                    const VectorSequencePrefix& xs, const Vec& x,
                                    const MatrixFamily& F, const IdealHandle& I,
                                    const Scale& scale, int samples, std::uint64_t seed) {
  return transfer_impl(space, H, xs, x, F, I, scale, nullptr, /*summable_mode=*/true, samples,
                       seed);
}

}  // namespace summa
