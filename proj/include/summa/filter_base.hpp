#pragma once

#include <cstdint>

#include "summa/core.hpp"

namespace summa {

// Countable base for the filter dual to an ideal: an increasing chain of ideal
// members B_1 ⊆ B_2 ⊆ ..., so the filter sets C_m = ℕ∖B_m decrease in m.
//
// prefix_depth, when set, declares B_m = {1..prefix_depth(m)}; that unlocks
// O(1) window machinery. Generic bases supply only in_base.
struct FilterBase {
  int m_count = 32;
  std::function<bool(int m, int n)> in_base;          // n ∈ B_m
  std::function<std::int64_t(int m)> prefix_depth;    // null for generic bases

  bool is_prefix_type() const { return static_cast<bool>(prefix_depth); }

  // Complement of B_m restricted to the window.
  std::vector<int> complement_on_window(int m, int N) const {
    std::vector<int> out;
    for (int n = 1; n <= N; ++n)
      if (!in_base(m, n)) out.push_back(n);
    return out;
  }

  // Smallest m (<= m_count) with S ⊆ B_m, if any.
  std::optional<int> absorb(const std::vector<int>& S) const {
    for (int m = 1; m <= m_count; ++m) {
      bool ok = true;
      for (int n : S)
        if (!in_base(m, n)) { ok = false; break; }
      if (ok) return m;
    }
    return std::nullopt;
  }
};

// Base for the ideal of finite sets: geometric depths B_m = {1..2^(m-1)}.
// m_count sets reach any desk-scale window.
inline FilterBase finite_ideal_base(int m_count = 32) {
  FilterBase b;
  b.m_count = m_count;
  b.prefix_depth = [](int m) -> std::int64_t {
    if (m >= 62) return std::int64_t{1} << 62;
    return std::int64_t{1} << (m - 1);
  };
  b.in_base = [depth = b.prefix_depth](int m, int n) { return n <= depth(m); };
  return b;
}

// Number of trailing window indices treated as the unseen-tail sentinel:
// a window set counts as absorbed at scale only if it avoids this region.
inline int tail_sentinel_width(int N) { return std::max(8, N / 100); }

}  // namespace summa
