#include "summa/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace summa {

namespace {

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw input_error(std::string("config: missing numeric field '") + key + "'");
  return j[key].get<double>();
}

std::string require_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw input_error(std::string("config: missing string field '") + key + "'");
  return j[key].get<std::string>();
}

}  // namespace

SummabilityMatrix parse_matrix(const json& j) {
  const std::string kind = require_string(j, "kind");
  if (kind == "cesaro") return cesaro();
  if (kind == "identity") return identity_matrix();
  if (kind == "shift_of") {
    if (!j.contains("base")) throw input_error("config: shift_of needs a base matrix");
    return shift_matrix(parse_matrix(j["base"]), static_cast<int>(require_number(j, "i")));
  }
  if (kind == "triangular_csv") {
    const std::string path = require_string(j, "path");
    std::ifstream in(path);
    if (!in) throw input_error("config: cannot open matrix csv '" + path + "'");
    std::vector<std::tuple<int, int, double>> triples;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      for (auto& ch : line)
        if (ch == ',') ch = ' ';
      std::istringstream ss(line);
      int n = 0, k = 0;
      double v = 0.0;
      if (!(ss >> n >> k >> v))
        throw input_error("matrix csv line " + std::to_string(lineno) + ": expected n,k,value");
      triples.emplace_back(n, k, v);
    }
    return triangular_from_triples(std::move(triples), "csv");
  }
  throw input_error("config: unknown matrix kind '" + kind + "'");
}

namespace {

// the nonnegativity flag is load-bearing for the statistical modes; verify it
// against sampled rows instead of trusting the config
void check_nonnegative_entries(const SummabilityMatrix& A) {
  if (A.kind == MatrixKind::cesaro || A.kind == MatrixKind::identity) return;
  for (int n = 1; n <= 64; ++n)
    for (const auto& [k, v] : A.row(n))
      if (v < 0.0)
        throw input_error("config: matrix declared nonnegative has entry " + std::to_string(v) +
                          " at (" + std::to_string(n) + "," + std::to_string(k) + ")");
}

}  // namespace

MatrixFamily parse_family(const json& j, int default_imax) {
  const std::string fam = require_string(j, "family");
  const bool nonneg = j.value("nonnegative", true);
  if (fam == "single") {
    if (!j.contains("matrix")) throw input_error("config: single family needs a matrix");
    SummabilityMatrix A = parse_matrix(j["matrix"]);
    if (nonneg) check_nonnegative_entries(A);
    return single_family(A, nonneg);
  }
  if (fam == "shifts") {
    if (!j.contains("base")) throw input_error("config: shift family needs a base matrix");
    SummabilityMatrix A = parse_matrix(j["base"]);
    if (nonneg) check_nonnegative_entries(A);
    return build_shift_family(A, static_cast<int>(j.value("i_max", default_imax)), nonneg);
  }
  throw input_error("config: unknown family kind '" + fam + "'");
}

IdealHandle parse_ideal(const json& j, const Scale& scale) {
  const std::string kind = require_string(j, "kind");
  if (kind == "finite") return IdealHandle::finite(scale.m_max);
  if (kind == "derived") {
    if (!j.contains("family") || !j.contains("inner"))
      throw input_error("config: derived ideal needs 'family' and 'inner'");
    MatrixFamily F = parse_family(j["family"], scale.i_max);
    IdealHandle inner = parse_ideal(j["inner"], scale);
    return derived_ideal(F, inner, scale);
  }
  throw input_error("config: unknown ideal kind '" + kind + "'");
}

GaugeFamily parse_gauge(const json& j) {
  const std::string kind = require_string(j, "kind");
  if (kind == "identity") return GaugeFamily::identity();
  if (kind == "power") {
    GaugeFamily fam = GaugeFamily::constant(power_gauge(require_number(j, "p")));
    return fam;
  }
  if (kind == "power_cycle") {
    const double lo = require_number(j, "p_min");
    const double hi = require_number(j, "p_max");
    const int period = static_cast<int>(j.value("period", 8));
    if (lo <= 0 || hi < lo) throw input_error("config: power_cycle needs 0 < p_min <= p_max");
    if (period < 1) throw input_error("config: power_cycle needs period >= 1");
    GaugeFamily fam;
    fam.uniform_in_k = false;
    fam.uniform_in_i = true;
    fam.kind = lo >= 1.0 ? GaugeKind::orlicz : GaugeKind::modulus;
    fam.name = "p-cycle";
    fam.eval = [lo, hi, period](int k, int, double t) {
      const double p = lo + (hi - lo) * ((k - 1) % period) / std::max(1, period - 1);
      return std::pow(t, p);
    };
    return fam;
  }
  if (kind == "table") {
    if (!j.contains("points") || !j["points"].is_array())
      throw input_error("config: table gauge needs points");
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : j["points"]) {
      if (!p.is_array() || p.size() != 2) throw input_error("config: table point must be [t, v]");
      pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    const std::string gk = j.value("gauge_kind", std::string("modulus"));
    GaugeFunction F = gauge_from_table(std::move(pts),
                                       gk == "orlicz" ? GaugeKind::orlicz : GaugeKind::modulus);
    validate_gauge(F, gauge_sample_grid(64));
    return GaugeFamily::constant(F);
  }
  throw input_error("config: unknown gauge kind '" + kind + "'");
}

FiniteDimSpace parse_space(const json& j) {
  const std::string kind = require_string(j, "kind");
  if (kind == "pnorm") {
    const double p = require_number(j, "p");
    return make_pnorm_space(p, static_cast<int>(require_number(j, "d")));
  }
  if (kind == "polytope") {
    if (!j.contains("vertices") || !j["vertices"].is_array())
      throw input_error("config: polytope space needs vertices");
    std::vector<Vec> verts;
    for (const auto& v : j["vertices"]) {
      Vec x;
      for (const auto& c : v) x.push_back(c.get<double>());
      verts.push_back(std::move(x));
    }
    return make_polytope_space(std::move(verts));
  }
  throw input_error("config: unknown space kind '" + kind + "'");
}

Scale parse_scale(const json& j, const Scale& defaults) {
  Scale s = defaults;
  if (!j.is_object()) return s;
  s.N = static_cast<int>(j.value("N", static_cast<double>(s.N)));
  s.i_max = static_cast<int>(j.value("i_max", static_cast<double>(s.i_max)));
  s.m_max = static_cast<int>(j.value("m_max", static_cast<double>(s.m_max)));
  s.tol = j.value("tol", s.tol);
  if (j.contains("eps_list")) {
    s.eps_list.clear();
    for (const auto& e : j["eps_list"]) s.eps_list.push_back(e.get<double>());
    if (s.eps_list.empty()) throw input_error("config: eps_list must be nonempty");
  }
  if (s.N < 1 || s.i_max < 0 || s.m_max < 1 || s.tol <= 0)
    throw input_error("config: scale bounds out of range");
  return s;
}

AnalysisConfig parse_config(const json& j) {
  AnalysisConfig cfg;
  cfg.mode = require_string(j, "mode");
  static const std::vector<std::string> modes = {"summable",  "strong",    "statistical",
                                                 "limsup",    "cluster",   "precauchy",
                                                 "decompose", "tauberian", "simons"};
  if (std::find(modes.begin(), modes.end(), cfg.mode) == modes.end())
    throw input_error("config: unknown mode '" + cfg.mode + "'");
  cfg.scale = parse_scale(j.value("scale", json::object()), Scale{});
  cfg.raw = j;
  return cfg;
}

json verdict_to_json(const Verdict& v) {
  json out;
  out["status"] = to_string(v.status);
  if (v.estimate.is_pos_inf())
    out["estimate"] = "inf";
  else if (v.estimate.is_neg_inf())
    out["estimate"] = "-inf";
  else
    out["estimate"] = v.estimate.v;
  out["residual"] = v.residual;
  out["witnesses"] = v.witnesses;
  out["unresolved_eps"] = v.unresolved;
  if (!v.note.empty()) out["note"] = v.note;
  out["scale"] = {{"N", v.scale.N},
                  {"i_max", v.scale.i_max},
                  {"m_max", v.scale.m_max},
                  {"tol", v.scale.tol},
                  {"eps_list", v.scale.eps_list}};
  return out;
}

SequencePrefix read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open sequence file '" + path + "'");
  SequencePrefix s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    try {
      size_t pos = 0;
      const double v = std::stod(line, &pos);
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos != line.size()) throw std::invalid_argument("trailing characters");
      s.values.push_back(v);
    } catch (const std::exception&) {
      throw input_error("sequence file line " + std::to_string(lineno) + ": not a number");
    }
  }
  if (s.values.empty()) throw input_error("sequence file '" + path + "' is empty");
  return s;
}

VectorSequencePrefix read_vector_sequence_file(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open sequence file '" + path + "'");
  VectorSequencePrefix xs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ss(line);
    Vec x;
    double v;
    while (ss >> v) x.push_back(v);
    if (static_cast<int>(x.size()) != dim)
      throw input_error("sequence file line " + std::to_string(lineno) + ": expected " +
                        std::to_string(dim) + " components");
    xs.xs.push_back(std::move(x));
  }
  if (xs.xs.empty()) throw input_error("sequence file '" + path + "' is empty");
  return xs;
}

namespace {

json series_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

int exit_of(const Verdict& v) {
  switch (v.status) {
    case Status::holds_at_scale: return 0;
    case Status::fails_at_scale: return 1;
    case Status::inconclusive: return 2;
  }
  return 2;
}

// sup-deviation diagnostic series for the transform-style modes
std::vector<double> sup_series(const kernels::Grid& g, double target) {
  return kernels::sup_deviation(g, std::vector<double>(static_cast<size_t>(g.cols), target));
}

}  // namespace

RunOutcome run_analysis(const AnalysisConfig& cfg, const std::string& input_path) {
  RunOutcome out;
  out.report["config"] = cfg.raw;
  const Scale& scale = cfg.scale;
  json& rep = out.report;

  if (cfg.mode == "simons") {
    FiniteDimSpace space = parse_space(cfg.raw.at("space"));
    VectorSequencePrefix xs = read_vector_sequence_file(input_path, space.dim);
    if (xs.size() < scale.N)
      throw input_error("vector sequence shorter than scale.N; pass --scale-N or a longer file");
    MatrixFamily F = cfg.raw.contains("matrix_family") ? parse_family(cfg.raw["matrix_family"], scale.i_max)
                                                       : single_family(cesaro());
    IdealHandle I = cfg.raw.contains("ideal") ? parse_ideal(cfg.raw["ideal"], scale)
                                              : IdealHandle::finite(scale.m_max);
    const int samples = static_cast<int>(cfg.raw.value("ball_samples", 2000));
    const std::uint64_t seed = cfg.raw.value("seed", 12345ULL);
    SimonsResult res = simons_sup_check(space, space.dual_extremes, xs, F, I, scale, samples, seed);
    rep["sup_H"] = res.sup_H;
    rep["sup_ball"] = res.sup_ball;
    rep["gap"] = res.gap;
    rep["samples"] = res.samples;
    rep["violations"] = res.violations;
    rep["hypotheses"] = {{"rows_bounded", verdict_to_json(res.rows_bounded)}};
    rep["verdict"] = verdict_to_json(res.verdict);
    out.exit_code = exit_of(res.verdict);
    return out;
  }

  SequencePrefix s = read_sequence_file(input_path);
  if (s.size() < scale.N)
    throw input_error("sequence has " + std::to_string(s.size()) +
                      " entries but scale.N = " + std::to_string(scale.N) +
                      "; pass --scale-N or a longer file");

  MatrixFamily F = cfg.raw.contains("matrix_family") ? parse_family(cfg.raw["matrix_family"], scale.i_max)
                                                     : single_family(cesaro());
  IdealHandle I = cfg.raw.contains("ideal") ? parse_ideal(cfg.raw["ideal"], scale)
                                            : IdealHandle::finite(scale.m_max);
  std::optional<double> target;
  if (cfg.raw.contains("target")) target = cfg.raw["target"].get<double>();

  if (cfg.mode == "summable") {
    Verdict v = b_summable(s, F, I, target, scale);
    kernels::Grid g = transform_grid(s, F, scale);
    rep["series"]["sup_deviation"] = series_json(sup_series(g, v.estimate.v));
    rep["verdict"] = verdict_to_json(v);
    out.exit_code = exit_of(v);
  } else if (cfg.mode == "strong") {
    GaugeFamily gauges = cfg.raw.contains("gauge") ? parse_gauge(cfg.raw["gauge"])
                                                   : GaugeFamily::identity();
    double a;
    if (target) {
      a = *target;
    } else {
      Verdict base = b_summable(s, F, I, std::nullopt, scale);
      a = base.estimate.v;
      rep["searched_target"] = a;
    }
    Verdict v = strong_summable(s, F, gauges, a, I, scale);
    if (gauges.uniform_in_i) {
      std::vector<double> f(static_cast<size_t>(scale.N));
      for (int k = 1; k <= scale.N; ++k)
        f[static_cast<size_t>(k) - 1] = gauges.eval(k, F.indices.front(), std::fabs(s.at(k) - a));
      kernels::Grid g = kernels::family_weighted_grid(F, f, scale.N);
      rep["series"]["gauge_sums"] = series_json(sup_series(g, 0.0));
    }
    rep["verdict"] = verdict_to_json(v);
    out.exit_code = exit_of(v);
  } else if (cfg.mode == "statistical") {
    double a;
    if (target) {
      a = *target;
    } else {
      Verdict base = b_summable(s, F, I, std::nullopt, scale);
      a = base.estimate.v;
      rep["searched_target"] = a;
    }
    Verdict v = statistically_convergent(s, F, a, I, scale);
    {
      // per-n exceptional mass at the finest eps level
      const double eps = scale.min_eps();
      std::vector<double> mask(static_cast<size_t>(scale.N), 0.0);
      for (int k = 1; k <= scale.N; ++k)
        if (std::fabs(s.at(k) - a) >= eps) mask[static_cast<size_t>(k) - 1] = 1.0;
      kernels::Grid g = kernels::family_weighted_grid(F, mask, scale.N);
      rep["series"]["exceptional_mass"] = series_json(sup_series(g, 0.0));
    }
    rep["verdict"] = verdict_to_json(v);
    out.exit_code = exit_of(v);
  } else if (cfg.mode == "limsup") {
    const ExtendedReal hi = ideal_limsup(s, I, scale);
    const ExtendedReal lo = ideal_liminf(s, I, scale);
    rep["limsup"] = hi.is_finite() ? json(hi.v) : json(hi.is_pos_inf() ? "inf" : "-inf");
    rep["liminf"] = lo.is_finite() ? json(lo.v) : json(lo.is_pos_inf() ? "inf" : "-inf");
    Verdict v = ideal_limit(s, I, scale);
    rep["verdict"] = verdict_to_json(v);
    out.exit_code = exit_of(v);
  } else if (cfg.mode == "cluster") {
    std::vector<double> grid;
    if (cfg.raw.contains("grid"))
      for (const auto& g : cfg.raw["grid"]) grid.push_back(g.get<double>());
    if (grid.empty()) {
      double lo = s.at(1), hi = s.at(1);
      for (int n = 1; n <= scale.N; ++n) {
        lo = std::min(lo, s.at(n));
        hi = std::max(hi, s.at(n));
      }
      for (int j = 0; j <= 16; ++j) grid.push_back(lo + (hi - lo) * j / 16.0);
    }
    const double eps = cfg.raw.value("eps", 0.1);
    IdealHandle J = derived_ideal(F, I, scale);
    const std::vector<double> points = ideal_cluster_points(s, J, grid, eps, scale);
    rep["grid"] = series_json(grid);
    rep["cluster_points"] = series_json(points);
    json crit = json::array();
    for (double a : points) {
      ClusterReport cr = jbi_cluster_point(s, F, I, a, scale);
      crit.push_back({{"a", a}, {"criterion", series_json(cr.criterion)},
                      {"verdict", verdict_to_json(cr.verdict)}});
    }
    rep["criteria"] = crit;
    Verdict v;
    v.scale = scale;
    v.status = points.empty() ? Status::fails_at_scale : Status::holds_at_scale;
    v.residual = 0.0;
    if (points.empty()) {
      v.witnesses = {1};
      v.note = "no cluster points on the grid";
    }
    rep["verdict"] = verdict_to_json(v);
    out.exit_code = exit_of(v);
  } else if (cfg.mode == "precauchy") {
    const bool plus = cfg.raw.value("plus", false);
    Verdict v = plus ? pre_cauchy_plus(s, F, I, scale) : pre_cauchy(s, F, I, scale);
    rep["variant"] = plus ? "plus" : "diagonal";
    rep["verdict"] = verdict_to_json(v);
    out.exit_code = exit_of(v);
  } else if (cfg.mode == "decompose") {
    if (!target) throw input_error("decompose mode needs a 'target'");
    DecompositionResult res = decompose_statistical(s, F, I, *target, scale);
    if (I.has_base())
      rep["series"]["base_condition"] = series_json(check_base_condition(F, I.base, scale));
    rep["status"] = to_string(res.status);
    rep["disagreement_size"] = static_cast<int>(res.disagreement.size());
    rep["disagreement"] = res.disagreement;
    rep["trace"] = {{"eps_m", series_json(res.eps_m)},
                    {"A_size", res.A_size},
                    {"E_max", res.E_max},
                    {"M_p", res.M_p},
                    {"p_m", res.p_m},
                    {"F_depth", res.F_depth},
                    {"uncovered_from", res.uncovered_from}};
    rep["t_converges"] = verdict_to_json(res.t_converges);
    rep["disagreement_in_J"] = verdict_to_json(res.disagreement_in_J);
    rep["series"]["t"] = series_json(std::vector<double>(res.t.values.begin(),
                                                         res.t.values.begin() +
                                                             std::min(res.t.size(), 1000)));
    if (!res.note.empty()) rep["note"] = res.note;
    out.exit_code = res.status == Status::holds_at_scale
                        ? 0
                        : (res.status == Status::fails_at_scale ? 1 : 2);
  } else if (cfg.mode == "tauberian") {
    const double alpha = cfg.raw.value("alpha", 1.0);
    auto phi = [alpha](double x) { return x <= 0 ? 1.0 : std::pow(x, -alpha); };
    auto psi = phi;
    auto h = [](double x) { return x / (1.0 + x); };
    SummabilityMatrix A = cfg.raw.contains("matrix") ? parse_matrix(cfg.raw["matrix"]) : cesaro();
    TauberianReport res = tauberian_check(s, A, I, phi, psi, h, scale);
    rep["hypotheses"] = {{"row_sums_to_one", verdict_to_json(res.row_sums_to_one)},
                         {"columns_to_zero", verdict_to_json(res.columns_to_zero)},
                         {"min_entry_dominates", verdict_to_json(res.min_entry_dominates)},
                         {"phi_decreasing", verdict_to_json(res.phi_decreasing)},
                         {"coupling", verdict_to_json(res.coupling)},
                         {"h_faithful", verdict_to_json(res.h_faithful)},
                         {"variation_bounded", verdict_to_json(res.variation_bounded)}};
    rep["variation_constant"] = res.variation_constant;
    rep["statistical"] = verdict_to_json(res.statistical);
    rep["claimed"] = res.claimed;
    rep["verdict"] = verdict_to_json(res.ordinary);
    out.exit_code = res.claimed ? exit_of(res.ordinary) : 2;
  } else {
    throw input_error("config: unhandled mode '" + cfg.mode + "'");
  }
  return out;
}

void write_report_atomically(const json& report, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream outf(tmp, std::ios::trunc);
    if (!outf) throw capability_error("cannot open output file '" + tmp + "'");
    outf << report.dump(2) << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw capability_error("cannot move report into place at '" + path + "'");
}

void write_series_csv(const json& report, const std::string& path) {
  std::ofstream outf(path, std::ios::trunc);
  if (!outf) throw capability_error("cannot open csv file '" + path + "'");
  if (!report.contains("series")) {
    outf << "n\n";
    return;
  }
  const json& series = report["series"];
  std::vector<std::string> keys;
  size_t rows = 0;
  for (auto it = series.begin(); it != series.end(); ++it) {
    keys.push_back(it.key());
    rows = std::max(rows, it.value().size());
  }
  outf << "n";
  for (const auto& k : keys) outf << "," << k;
  outf << "\n";
  for (size_t r = 0; r < rows; ++r) {
    outf << (r + 1);
    for (const auto& k : keys) {
      outf << ",";
      if (r < series[k].size()) outf << series[k][r].dump();
    }
    outf << "\n";
  }
}

}  // namespace summa
