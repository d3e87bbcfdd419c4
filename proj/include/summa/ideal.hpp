#pragma once

#include "summa/filter_base.hpp"
#include "summa/kernels.hpp"
#include "summa/matrix.hpp"

namespace summa {

enum class IdealVariant { finite, based, matrix_derived };

struct DerivedIdealData;

// An ideal on ℕ, represented either by a countable filter base (finite/based)
// or as J_{B,I}: the sets whose weighted indicator transforms tend to 0 along
// the inner ideal, uniformly over the family.
struct IdealHandle {
  IdealVariant variant = IdealVariant::finite;
  FilterBase base;  // finite/based variants
  std::shared_ptr<const DerivedIdealData> derived;
  bool admissible = true;
  std::string name = "I_f";

  static IdealHandle finite(int m_count = 32) {
    IdealHandle I;
    I.variant = IdealVariant::finite;
    I.base = finite_ideal_base(m_count);
    I.name = "finite";
    return I;
  }
  static IdealHandle from_base(FilterBase b, std::string name = "based", bool admissible = true) {
    IdealHandle I;
    I.variant = IdealVariant::based;
    I.base = std::move(b);
    I.admissible = admissible;
    I.name = std::move(name);
    return I;
  }

  bool has_base() const { return variant != IdealVariant::matrix_derived; }
};

struct DerivedIdealData {
  MatrixFamily family;
  IdealHandle inner;
};

// ---------------------------------------------------------------------------
// Window residual machinery
// ---------------------------------------------------------------------------

// Residual decay threshold: an eps-level failure counts as a persistent
// obstruction only if deepening the window from half depth to full reduced
// the residual by less than this factor.
inline constexpr double kDecayThreshold = 0.8;

struct WindowReport {
  std::vector<std::int64_t> depths;   // base depths examined (prefix bases) or -1 markers
  std::vector<double> residuals;      // r(m) = sup over the m-th window
  double best = std::numeric_limits<double>::infinity();
  double half = std::numeric_limits<double>::infinity();
  double decay = 1.0;
  Verdict verdict;
};

// Classifies a nonnegative deviation sequence v (target 0) on [1..v.size()]
// against the filter base. Per eps: pass when some window already meets it,
// obstruction when the best window misses it without meaningful decay.
WindowReport window_residual_test(const std::vector<double>& v, const FilterBase& base,
                                  const Scale& scale);

// Dispatch on the ideal variant: base window test, or per-eps membership of
// the super-level sets in a derived ideal.
Verdict limit_test_against(const std::vector<double>& v, const IdealHandle& I, const Scale& scale);

// Membership of K in a matrix-derived ideal, by the defining transform test.
Verdict derived_ideal_member(const IdealHandle& J, const IndexSet& K, const Scale& scale);

// Set-membership judgment at scale for any ideal variant (tail-sentinel rule
// for based ideals; transform test for derived ones).
Verdict ideal_member(const IdealHandle& I, const IndexSet& K, const Scale& scale);

// ---------------------------------------------------------------------------
// Ideal limit operations
// ---------------------------------------------------------------------------

Verdict ideal_limit(const SequencePrefix& u, const IdealHandle& I, const Scale& scale);

ExtendedReal ideal_limsup(const SequencePrefix& u, const IdealHandle& I, const Scale& scale);
ExtendedReal ideal_liminf(const SequencePrefix& u, const IdealHandle& I, const Scale& scale);

Verdict is_ideal_bounded(const SequencePrefix& u, const IdealHandle& I, double K,
                         const Scale& scale);

Verdict is_ideal_cauchy(const SequencePrefix& u, const IdealHandle& I, double eps,
                        const Scale& scale);

std::vector<double> ideal_cluster_points(const SequencePrefix& u, const IdealHandle& I,
                                         const std::vector<double>& grid, double eps,
                                         const Scale& scale);

// Uniform convergence along the ideal: v_n = sup_i d(U_i(n), g_i) in the
// generalized [0, inf] metric, then the limit test against 0.
Verdict uniform_ideal_limit(const std::vector<SequencePrefix>& family,
                            const std::vector<double>& targets, const IdealHandle& I,
                            const Scale& scale);

// Grid flavour used by the matrix operations.
Verdict uniform_limit_grid(const kernels::Grid& u, const std::vector<double>& targets,
                           const IdealHandle& I, const Scale& scale);

// Candidate limit for a window of values: midpoint of [liminf, limsup] under I.
ExtendedReal candidate_limit(const std::vector<double>& u, const IdealHandle& I,
                             const Scale& scale);

namespace detail {

// Prefix-base depths usable for residual windows on [1..N], deepest last.
std::vector<std::int64_t> residual_depths(const FilterBase& base, int N);

// Absorption at scale: the set (given as sorted window indices) is contained
// in a usable base set. Based ideals use the tail sentinel.
bool absorbed_at_scale(const FilterBase& base, const std::vector<int>& set, int N);

// Full absorption (no sentinel): smallest base depth containing the set.
std::optional<int> absorb_fully(const FilterBase& base, const std::vector<int>& set);

ExtendedReal limsup_window(const std::vector<double>& u, const FilterBase& base, int N);

}  // namespace detail

}  // namespace summa
