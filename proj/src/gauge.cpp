#include "summa/gauge.hpp"

#include <algorithm>
#include <cmath>

namespace summa {

std::vector<double> gauge_sample_grid(int points) {
  std::vector<double> g(static_cast<size_t>(points));
  const double lo = std::log(1e-6), hi = std::log(1e3);
  for (int j = 0; j < points; ++j)
    g[static_cast<size_t>(j)] = std::exp(lo + (hi - lo) * j / (points - 1));
  return g;
}

GaugeFunction power_gauge(double p) {
  if (p <= 0) throw input_error("power_gauge: p must be positive");
  GaugeFunction F;
  F.eval = [p](double t) { return std::pow(t, p); };
  F.kind = p >= 1.0 ? GaugeKind::orlicz : GaugeKind::modulus;
  F.power = p;
  F.name = "t^" + std::to_string(p);
  return F;
}

GaugeFunction gauge_from_table(std::vector<std::pair<double, double>> points, GaugeKind kind) {
  if (points.size() < 2) throw input_error("gauge_from_table: need at least two points");
  std::sort(points.begin(), points.end());
  if (points.front().first != 0.0 || points.front().second != 0.0)
    throw input_error("gauge_from_table: table must start at (0, 0)");
  for (size_t j = 1; j < points.size(); ++j) {
    if (points[j].first <= points[j - 1].first)
      throw input_error("gauge_from_table: t values must be strictly increasing");
    if (points[j].second < points[j - 1].second)
      throw input_error("gauge_from_table: values must be nondecreasing");
  }
  if (points.back().second <= 0.0)
    throw input_error("gauge_from_table: gauge must be positive somewhere");
  auto pts = std::make_shared<std::vector<std::pair<double, double>>>(std::move(points));
  GaugeFunction F;
  F.kind = kind;
  F.name = "table";
  F.eval = [pts](double t) {
    const auto& p = *pts;
    if (t <= 0) return 0.0;
    auto it = std::lower_bound(p.begin(), p.end(), std::make_pair(t, -1.0));
    if (it == p.end()) {
      const auto& [t1, v1] = p[p.size() - 1];
      const auto& [t0, v0] = p[p.size() - 2];
      const double slope = (v1 - v0) / (t1 - t0);
      return v1 + slope * (t - t1);
    }
    if (it->first == t) return it->second;
    const auto& [t1, v1] = *it;
    const auto& [t0, v0] = *(it - 1);
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
  };
  return F;
}

void validate_gauge(const GaugeFunction& F, const std::vector<double>& grid, double tol) {
  if (F.eval(0.0) != 0.0) throw input_error("gauge: F(0) must be 0");
  double prev_t = 0.0, prev_v = 0.0;
  for (double t : grid) {
    const double v = F.eval(t);
    if (!(t > 0) || !std::isfinite(v)) throw input_error("gauge: grid values must be finite");
    if (v <= 0.0) throw input_error("gauge: F(t) must be positive for t > 0 (t=" + std::to_string(t) + ")");
    if (v + tol < prev_v)
      throw input_error("gauge: not nondecreasing at t=" + std::to_string(t));
    prev_t = t;
    prev_v = v;
  }
  (void)prev_t;
  // kind law on grid pairs/triples (coarse stride keeps this quadratic check cheap)
  const size_t stride = std::max<size_t>(1, grid.size() / 32);
  if (F.kind == GaugeKind::orlicz) {
    for (size_t a = 0; a < grid.size(); a += stride)
      for (size_t b = a; b < grid.size(); b += stride) {
        const double mid = 0.5 * (grid[a] + grid[b]);
        if (F.eval(mid) > 0.5 * (F.eval(grid[a]) + F.eval(grid[b])) + tol)
          throw input_error("gauge: midpoint convexity fails near t=" + std::to_string(mid));
      }
    if (F.eval(grid.back()) <= 1.0 && F.eval(2.0 * grid.back()) <= 1.0)
      throw input_error("gauge: orlicz gauge does not grow at the top of the grid");
  } else {
    for (size_t a = 0; a < grid.size(); a += stride)
      for (size_t b = a; b < grid.size(); b += stride)
        if (F.eval(grid[a] + grid[b]) > F.eval(grid[a]) + F.eval(grid[b]) + tol)
          throw input_error("gauge: subadditivity fails near t=" + std::to_string(grid[a] + grid[b]));
  }
}

double delta2_constant(const GaugeFunction& F, const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw input_error("delta2_constant: empty grid");
  double worst = 0.0;
  for (double t : t_grid) {
    if (t <= 0) throw input_error("delta2_constant: grid must be positive");
    const double d = F.eval(t);
    if (d <= 0.0) throw input_error("delta2_constant: F(t) = 0 for t > 0 violates the gauge laws");
    worst = std::max(worst, F.eval(2.0 * t) / d);
  }
  return worst;
}

std::vector<std::pair<int, int>> gauge_sample_indices(const GaugeFamily& fam) {
  std::vector<int> ks{1}, is{0};
  if (!fam.uniform_in_k) {
    ks.clear();
    for (double k = 1; k <= fam.sample_k_max; k = std::max(k + 1, k * 1.25))
      ks.push_back(static_cast<int>(k));
    if (ks.back() != fam.sample_k_max) ks.push_back(fam.sample_k_max);
  }
  if (!fam.uniform_in_i) {
    is.clear();
    for (int i = 0; i <= fam.sample_i_max; i = std::max(i + 1, i + (fam.sample_i_max / 32 + 1)))
      is.push_back(i);
    if (is.back() != fam.sample_i_max) is.push_back(fam.sample_i_max);
  }
  std::vector<std::pair<int, int>> out;
  for (int k : ks)
    for (int i : is) out.emplace_back(k, i);
  return out;
}

EnvelopeValue lower_envelope(const GaugeFamily& fam, double t) {
  if (t <= 0) throw input_error("lower_envelope: t must be positive");
  EnvelopeValue out;
  out.value = std::numeric_limits<double>::infinity();
  for (const auto& [k, i] : gauge_sample_indices(fam))
    out.value = std::min(out.value, fam.eval(k, i, t));
  out.flagged = out.value <= 1e-6;  // vanishing within the default tolerance
  return out;
}

EnvelopeValue upper_envelope(const GaugeFamily& fam, double t) {
  if (t < 0) throw input_error("upper_envelope: t must be nonnegative");
  EnvelopeValue out;
  out.value = 0.0;
  for (const auto& [k, i] : gauge_sample_indices(fam))
    out.value = std::max(out.value, fam.eval(k, i, t));
  out.flagged = !std::isfinite(out.value) || out.value > 1e12;
  return out;
}

std::optional<double> equicontinuity_delta(const GaugeFamily& fam, double tau) {
  if (tau <= 0) throw input_error("equicontinuity_delta: tau must be positive");
  const auto idx = gauge_sample_indices(fam);
  const auto grid = gauge_sample_grid();
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    bool ok = true;
    for (const auto& [k, i] : idx)
      if (fam.eval(k, i, *it) > tau) { ok = false; break; }
    if (ok) return *it;
  }
  return std::nullopt;
}

}  // namespace summa
