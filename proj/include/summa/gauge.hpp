#pragma once

#include "summa/core.hpp"

namespace summa {

enum class GaugeKind { orlicz, modulus };

// Orlicz function or modulus as an opaque evaluator on [0, inf).
struct GaugeFunction {
  std::function<double(double)> eval;
  GaugeKind kind = GaugeKind::orlicz;
  std::optional<double> power;  // analytic descriptor when the gauge is t^p
  std::string name;

  double operator()(double t) const { return eval(t); }
};

// Geometric verification grid, 1e-6 .. 1e3.
std::vector<double> gauge_sample_grid(int points = 256);

// t^p: Orlicz for p >= 1, modulus for 0 < p < 1.
GaugeFunction power_gauge(double p);

// Piecewise-linear gauge through (t, v) points with monotone interpolation;
// extended past the last point with the final slope.
GaugeFunction gauge_from_table(std::vector<std::pair<double, double>> points, GaugeKind kind);

// Checks the gauge laws on the sample grid; throws input_error on violation.
// orlicz: nondecreasing, midpoint convex, divergent; modulus: subadditive.
void validate_gauge(const GaugeFunction& F, const std::vector<double>& grid, double tol = 1e-9);

// max over the grid of F(2t)/F(t).
double delta2_constant(const GaugeFunction& F, const std::vector<double>& t_grid);

// ---------------------------------------------------------------------------
// Indexed families F_k^(i)
// ---------------------------------------------------------------------------

struct GaugeFamily {
  std::function<double(int k, int i, double t)> eval;
  bool uniform_in_k = true;
  bool uniform_in_i = true;
  bool is_identity = false;  // every member is t -> t (unlocks fast variance paths)
  GaugeKind kind = GaugeKind::orlicz;
  std::string name;
  int sample_k_max = 10000;  // truncated index ranges the envelopes sample over
  int sample_i_max = 64;

  double operator()(int k, int i, double t) const { return eval(k, i, t); }

  GaugeFunction member(int k, int i) const {
    GaugeFunction F;
    F.eval = [e = eval, k, i](double t) { return e(k, i, t); };
    F.kind = kind;
    F.name = name + "[" + std::to_string(k) + "," + std::to_string(i) + "]";
    return F;
  }

  static GaugeFamily constant(const GaugeFunction& F) {
    GaugeFamily fam;
    fam.eval = [e = F.eval](int, int, double t) { return e(t); };
    fam.kind = F.kind;
    fam.name = F.name;
    return fam;
  }
  static GaugeFamily identity() {
    GaugeFamily fam = constant(power_gauge(1.0));
    fam.is_identity = true;
    fam.name = "id";
    return fam;
  }
};

// Double-index family F_{kl}^(i) (and the mixed F_{kl}^(i,j) variant).
struct PairGaugeFamily {
  std::function<double(int k, int l, int i, int j, double t)> eval;
  GaugeKind kind = GaugeKind::orlicz;
  std::string name;

  double operator()(int k, int l, int i, int j, double t) const { return eval(k, l, i, j, t); }

  static PairGaugeFamily constant(const GaugeFunction& F) {
    PairGaugeFamily fam;
    fam.eval = [e = F.eval](int, int, int, int, double t) { return e(t); };
    fam.kind = F.kind;
    fam.name = F.name;
    return fam;
  }
};

struct EnvelopeValue {
  double value = 0.0;
  bool flagged = false;  // vanishing (lower) / unbounded-looking (upper) at scale
};

// L(t) = inf over sampled (k, i) of F_k^(i)(t).
EnvelopeValue lower_envelope(const GaugeFamily& fam, double t);

// h(t) = sup over sampled (k, i) of F_k^(i)(t).
EnvelopeValue upper_envelope(const GaugeFamily& fam, double t);

// Largest grid delta with sup over sampled (k,i) of F(delta) <= tau.
std::optional<double> equicontinuity_delta(const GaugeFamily& fam, double tau);

// Sampled (k, i) pairs the envelope routines use: log-spaced k, i ranges.
std::vector<std::pair<int, int>> gauge_sample_indices(const GaugeFamily& fam);

}  // namespace summa
