#pragma once

#include <random>

#include "summa/summability.hpp"

namespace summa {

using Vec = std::vector<double>;

enum class NormKind { polytope, pnorm };

// Finite-dimensional normed space with an explicitly enumerable dual ball.
// Polytope spaces carry the polar's vertex list; p-norm spaces fall back to
// the duality-map formulas.
struct FiniteDimSpace {
  int dim = 0;
  NormKind kind = NormKind::pnorm;
  double p = 2.0;
  std::vector<Vec> primal_vertices;  // unit-ball vertices (polytope)
  std::vector<Vec> dual_extremes;    // polar vertices; for p-norms only when polytopal

  double norm(const Vec& x) const;
  double dual_norm(const Vec& y) const;
};

FiniteDimSpace make_polytope_space(std::vector<Vec> vertices);
FiniteDimSpace make_pnorm_space(double p, int dim);

struct VectorSequencePrefix {
  std::vector<Vec> xs;  // x_1 .. x_N
  int size() const { return static_cast<int>(xs.size()); }
  const Vec& at(int n) const { return xs[static_cast<size_t>(n) - 1]; }
  double bound(const FiniteDimSpace& space) const {
    double r = 0.0;
    for (const auto& x : xs) r = std::max(r, space.norm(x));
    return r;
  }
};

// ⟨y, x_n⟩ for n = 1..N
std::vector<double> functional_sequence(const VectorSequencePrefix& xs, const Vec& y);

inline double positive_part(double t) { return t > 0 ? t : 0.0; }

struct SupportResult {
  Vec functional;
  double value = 0.0;
  bool degenerate = false;  // x = 0
};

// A dual-ball extreme (or duality-map) functional attaining the norm of x.
SupportResult support_functional(const FiniteDimSpace& space, const Vec& x);

// y ∈ conv(points) within tol, decided by feasibility of the convex
// combination equations (phase-1 simplex). Robust for flat hulls.
bool hull_contains(const std::vector<Vec>& points, const Vec& y, double tol = 1e-9);

struct SimonsResult {
  double sup_H = 0.0;
  double sup_ball = 0.0;  // certified bound over the samples
  double gap = 0.0;
  double M = 0.0;         // sup of the family's row sums on the window
  Verdict rows_bounded;
  int samples = 0;
  int violations = 0;
  Verdict verdict;
};

// sup over H of the derived-ideal limsup of ⟨e, x_n⟩ versus the same sup over
// sampled dual-ball points. Each sample is certified via membership of its
// super-level set rather than a full limsup computation.
SimonsResult simons_sup_check(const FiniteDimSpace& space, const std::vector<Vec>& H,
                              const VectorSequencePrefix& xs, const MatrixFamily& F,
                              const IdealHandle& I, const Scale& scale, int ball_samples = 10000,
                              std::uint64_t seed = 12345);

// Does every increasing decomposition of H exhaust the dual ball? In finite
// dimensions the union of the hulls collapses to one hull; the check verifies
// the dual extremes land inside it.
Verdict i_generation_check(const std::vector<Vec>& H, const std::vector<int>& decomposition_sizes,
                           const FiniteDimSpace& space, const Scale& scale);

struct TransferReport {
  Verdict generation;
  std::vector<Verdict> premise;   // per boundary functional
  bool premises_hold = false;
  int samples = 0;
  int failures = 0;
  Verdict conclusion;
};

// Statistical convergence under every functional of an (I)-generating set
// transfers to the sampled dual ball; optional strong-summability variant.
TransferReport weak_stat_transfer(const FiniteDimSpace& space, const std::vector<Vec>& H,
                                  const VectorSequencePrefix& xs, const Vec& x,
                                  const MatrixFamily& F, const IdealHandle& I, const Scale& scale,
                                  const GaugeFamily* gauges = nullptr, int samples = 64,
                                  std::uint64_t seed = 2024);

// Same transfer for plain summability; signed families allowed.
TransferReport bi_summable_transfer(const FiniteDimSpace& space, const std::vector<Vec>& H,
                                    const VectorSequencePrefix& xs, const Vec& x,
                                    const MatrixFamily& F, const IdealHandle& I,
                                    const Scale& scale, int samples = 64,
                                    std::uint64_t seed = 2024);

// Dual-ball samples: extreme points first, then random boundary and interior.
std::vector<Vec> sample_dual_ball(const FiniteDimSpace& space, int count, std::mt19937_64& rng);

}  // namespace summa
