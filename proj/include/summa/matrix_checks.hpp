#pragma once

#include "summa/ideal.hpp"

namespace summa {

inline constexpr double kConditionPlusFloor = 1e-9;
inline constexpr int kColumnBudget = 128;

struct ToeplitzReport {
  Verdict bounded_abs_row_sums;  // (i)
  Verdict row_sums_to_one;       // (ii)
  Verdict columns_to_zero;       // (iii)
  double sup_abs_row_sum = 0.0;
  int worst_column = 0;
  bool all_hold() const {
    return bounded_abs_row_sums.holds() && row_sums_to_one.holds() && columns_to_zero.holds();
  }
};

ToeplitzReport check_toeplitz_regularity(const SummabilityMatrix& A, const Scale& scale);

// Eq. (+): some member has absolute row sums bounded away from zero on the
// whole window. On success the witness index is stamped on the family.
Verdict check_condition_plus(MatrixFamily& F, const std::vector<int>& candidates,
                             const Scale& scale);

struct ConsistencyReport {
  Verdict abs_rows_bounded;            // sup of absolute row sums off a base set
  std::vector<Verdict> probe_limits;   // one per supplied d_I probe
  Verdict row_sums_to_one;
  double M = 0.0;                       // the bound achieved by the best base set
  bool vacuous_probes = false;
  bool all_hold() const {
    if (!abs_rows_bounded.holds() || !row_sums_to_one.holds()) return false;
    for (const auto& v : probe_limits)
      if (!v.holds()) return false;
    return true;
  }
};

// The summability-consistency conditions for the family: bounded absolute row
// sums off an ideal set, probe transforms vanishing uniformly, row sums -> 1.
ConsistencyReport check_consistency_conditions(const MatrixFamily& F, const IdealHandle& I,
                                               const std::vector<SequencePrefix>& probes,
                                               const Scale& scale);

// Uniform vanishing of Σ_k |a_nk - b_nk| over the shared index set.
Verdict families_agree(const MatrixFamily& A, const MatrixFamily& B, const IdealHandle& I,
                       const Scale& scale);

// J_{B,I}: the ideal of sets whose weighted indicator transforms vanish along
// I uniformly over the family. Requires nonnegativity and condition (+).
IdealHandle derived_ideal(const MatrixFamily& F, const IdealHandle& inner, const Scale& scale);

// sup over (n, i) of the absolute row sums on the window (helper shared by
// several hypothesis checks).
kernels::Grid abs_row_sum_grid(const MatrixFamily& F, int N, kernels::Exec exec = kernels::Exec::parallel);

}  // namespace summa
