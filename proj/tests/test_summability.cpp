#include <doctest.h>

#include <random>

#include "summa/corpus.hpp"
#include "summa/summability.hpp"

using namespace summa;

namespace {

Scale desk_scale(int N) {
  Scale s;
  s.N = N;
  return s;
}

SequencePrefix squares_indicator(int N) {
  return SequencePrefix::from_generator(N, [](int k) { return is_perfect_square(k) ? 1.0 : 0.0; });
}

}  // namespace

TEST_CASE("b_summable") {
  const IdealHandle If = IdealHandle::finite();

  SUBCASE("2-periodic sequence under cesaro shifts settles at 1/2") {
    const Scale sc = desk_scale(2000);
    const auto s = generate_corpus("periodic2", sc.N);
    MatrixFamily F = build_shift_family(cesaro(), 64);
    const Verdict v = b_summable(s, F, If, std::nullopt, sc);
    CHECK(v.holds());
    CHECK(v.estimate.v == doctest::Approx(0.5).epsilon(1e-3));
  }
  SUBCASE("constants are reproduced by any row-sum-1 family") {
    const Scale sc = desk_scale(1000);
    const auto s = SequencePrefix::from_generator(sc.N, [](int) { return -1.75; });
    for (auto F : {build_shift_family(cesaro(), 16), single_family(identity_matrix())}) {
      const Verdict v = b_summable(s, F, If, std::nullopt, sc);
      CHECK(v.holds());
      CHECK(v.estimate.v == doctest::Approx(-1.75));
    }
  }
  SUBCASE("squares indicator is cesaro-summable to 0") {
    const Scale sc = desk_scale(2500);
    const Verdict v = b_summable(squares_indicator(sc.N), single_family(cesaro()), If,
                                 std::nullopt, sc);
    CHECK(v.holds());
    CHECK(std::fabs(v.estimate.v) < 0.03);
  }
  SUBCASE("explicit wrong target fails") {
    const Scale sc = desk_scale(1000);
    const Verdict v = b_summable(generate_corpus("periodic2", sc.N),
                                 build_shift_family(cesaro(), 8), If, 0.0, sc);
    CHECK(v.fails());
  }
}

TEST_CASE("strong_summable") {
  const IdealHandle If = IdealHandle::finite();
  const Scale sc = desk_scale(2500);

  SUBCASE("squares indicator with the identity gauge: means are sqrt-density") {
    const auto s = squares_indicator(sc.N);
    const Verdict v = strong_summable(s, single_family(cesaro()), GaugeFamily::identity(), 0.0,
                                      If, sc);
    CHECK(v.holds());
    // frozen oracle: the row value at n equals floor(sqrt(n))/n
    kernels::Grid g = kernels::family_weighted_grid(
        single_family(cesaro()), std::vector<double>(s.values.begin(), s.values.end()), sc.N);
    for (int n : {100, 1000, 2500}) {
      int cnt = 0;
      for (int k = 1; k <= n; ++k)
        if (is_perfect_square(k)) ++cnt;
      CHECK(g.at(n, 0) == doctest::Approx(static_cast<double>(cnt) / n).epsilon(1e-12));
    }
    CHECK(g.at(100, 0) == doctest::Approx(0.1));
  }
  SUBCASE("s identically a gives a zero sum") {
    const auto s = SequencePrefix::from_generator(sc.N, [](int) { return 2.0; });
    const Verdict v = strong_summable(s, single_family(cesaro()), GaugeFamily::identity(), 2.0,
                                      If, sc);
    CHECK(v.holds());
    CHECK(v.residual == 0.0);
  }
  SUBCASE("evens indicator against 0 keeps half the mass") {
    const auto s = generate_corpus("density_half", sc.N);
    const Verdict v = strong_summable(s, single_family(cesaro()), GaugeFamily::identity(), 0.0,
                                      If, sc);
    CHECK(v.fails());
  }
  SUBCASE("signed families are rejected") {
    const auto s = squares_indicator(100);
    CHECK_THROWS_AS(strong_summable(s, single_family(cesaro(), false), GaugeFamily::identity(),
                                    0.0, If, desk_scale(100)),
                    input_error);
  }
}

TEST_CASE("statistically_convergent") {
  const IdealHandle If = IdealHandle::finite();
  const Scale sc = desk_scale(2500);

  SUBCASE("squares indicator converges statistically to 0") {
    CHECK(statistically_convergent(squares_indicator(sc.N), single_family(cesaro()), 0.0, If, sc)
              .holds());
  }
  SUBCASE("constant sequences converge to the constant for every eps") {
    const auto s = SequencePrefix::from_generator(sc.N, [](int) { return 0.3; });
    CHECK(statistically_convergent(s, single_family(cesaro()), 0.3, If, sc).holds());
  }
  SUBCASE("alternating against 0: the exceptional set is everything") {
    const auto s = generate_corpus("alternating", sc.N);
    const Verdict v = statistically_convergent(s, single_family(cesaro()), 0.0, If, sc);
    CHECK(v.fails());
  }
  SUBCASE("uniformity over shifts") {
    const auto s = squares_indicator(sc.N);
    CHECK(statistically_convergent(s, build_shift_family(cesaro(), 32), 0.0, If, sc).holds());
  }
}

TEST_CASE("exceptional_set") {
  const int N = 200;
  SUBCASE("indicator against 0 picks the support") {
    const auto D = exceptional_set(squares_indicator(N), 0.0, 0.5);
    for (int k = 1; k <= N; ++k) CHECK(D.contains(k) == is_perfect_square(k));
  }
  SUBCASE("matching constant leaves nothing") {
    const auto s = SequencePrefix::from_generator(N, [](int) { return 1.0; });
    CHECK(exceptional_set(s, 1.0, 0.25).enumerate(N).empty());
  }
  SUBCASE("harmonic tail drops out beyond 1/eps") {
    const auto s = SequencePrefix::from_generator(N, [](int k) { return 1.0 / k; });
    const auto idx = exceptional_set(s, 0.0, 0.1).enumerate(N);
    REQUIRE(idx.size() == 10);
    CHECK(idx.back() == 10);
  }
  CHECK_THROWS_AS(exceptional_set(squares_indicator(10), 0.0, 0.0), input_error);
}

TEST_CASE("sigma variance") {
  const Scale sc = desk_scale(400);
  MatrixFamily C = single_family(cesaro());

  SUBCASE("constants have zero variance") {
    const auto s = SequencePrefix::from_generator(sc.N, [](int) { return 5.0; });
    CHECK(sigma_variance(s, C, GaugeFamily::identity(), 10, 0, sc) == 0.0);
  }
  SUBCASE("2-periodic at n=4: every term sits 1/2 away from the mean") {
    const auto s = generate_corpus("periodic2", sc.N);
    CHECK(sigma_variance(s, C, GaugeFamily::identity(), 4, 0, sc) == doctest::Approx(0.5));
  }
  SUBCASE("squares at n=100: brute-force 2 d (1-d) with d = 0.1") {
    const auto s = squares_indicator(sc.N);
    double oracle = 0.0;
    const double mean = 0.1;
    for (int k = 1; k <= 100; ++k) oracle += std::fabs(s.at(k) - mean) / 100.0;
    CHECK(oracle == doctest::Approx(0.18));
    CHECK(sigma_variance(s, C, GaugeFamily::identity(), 100, 0, sc) == doctest::Approx(0.18));
  }
  SUBCASE("sigma grid fast path agrees with per-cell evaluation") {
    const auto s = generate_corpus("random_bounded", sc.N, 8);
    kernels::Grid g = sigma_grid(s, build_shift_family(cesaro(), 6), GaugeFamily::identity(), sc);
    for (int n : {3, 50, 199}) {
      for (int j = 0; j <= 6; ++j) {
        CHECK(g.at(n, j) ==
              doctest::Approx(sigma_variance(s, build_shift_family(cesaro(), 6),
                                             GaugeFamily::identity(), n, j, sc))
                  .epsilon(1e-10));
      }
    }
  }
  SUBCASE("bridging inequalities row by row") {
    const auto s = generate_corpus("random_bounded", sc.N, 9);
    const double a = 0.25;
    kernels::Grid tau = kernels::family_weighted_grid(
        C, std::vector<double>(s.values.begin(), s.values.end()), sc.N);
    for (int n : {5, 60, 300}) {
      double dev_sum = 0.0, row_sum = 0.0;
      for (int k = 1; k <= n; ++k) {
        dev_sum += std::fabs(s.at(k) - a) / n;
        row_sum += 1.0 / n;
      }
      const double sigma = sigma_variance(s, C, GaugeFamily::identity(), n, 0, sc);
      const double t = tau.at(n, 0);
      CHECK(dev_sum <= sigma + std::fabs(t - a) * row_sum + 1e-12);
      CHECK(sigma <= dev_sum + row_sum * std::fabs(a - t) + 1e-12);
    }
  }
}

TEST_CASE("variance characterization cross-checks the statistical verdict") {
  const IdealHandle If = IdealHandle::finite();
  const Scale sc = desk_scale(1500);
  MatrixFamily C = single_family(cesaro());

  SUBCASE("squares indicator: all routes agree positively") {
    const auto rep = variance_characterization(squares_indicator(sc.N), C,
                                               GaugeFamily::identity(), 0.0, If, sc);
    CHECK(rep.hypotheses_hold);
    CHECK(rep.summable.holds());
    CHECK(rep.sigma_to_zero.holds());
    CHECK(rep.statistical.holds());
    CHECK(rep.agree);
    CHECK(rep.combined.holds());
  }
  SUBCASE("alternating: variance stabilises at 1, statistical fails, still consistent") {
    const auto rep = variance_characterization(generate_corpus("alternating", sc.N), C,
                                               GaugeFamily::identity(), 0.0, If, sc);
    CHECK(rep.hypotheses_hold);
    CHECK_FALSE(rep.sigma_to_zero.holds());
    CHECK(rep.statistical.fails());
    CHECK(rep.agree);
  }
  SUBCASE("constants: everything holds") {
    const auto s = SequencePrefix::from_generator(sc.N, [](int) { return 1.0; });
    const auto rep = variance_characterization(s, C, GaugeFamily::identity(), 1.0, If, sc);
    CHECK(rep.agree);
    CHECK(rep.combined.holds());
  }
}

TEST_CASE("almost convergence") {
  SUBCASE("2-periodic: the almost limit is 1/2") {
    const Scale sc = desk_scale(2000);
    const Verdict v = almost_convergence(generate_corpus("periodic2", sc.N), sc);
    CHECK(v.holds());
    CHECK(v.estimate.v == doctest::Approx(0.5).epsilon(1e-2));
  }
  SUBCASE("constants") {
    const Scale sc = desk_scale(1000);
    const Verdict v = almost_convergence(SequencePrefix::from_generator(sc.N, [](int) { return 2.5; }),
                                         sc);
    CHECK(v.holds());
    CHECK(v.estimate.v == doctest::Approx(2.5));
  }
  SUBCASE("squares indicator: window densities vanish uniformly in the shift") {
    const Scale sc = desk_scale(4000);
    const Verdict v = almost_convergence(squares_indicator(sc.N), sc);
    CHECK(v.holds());
    CHECK(std::fabs(v.estimate.v) < 0.05);
  }
  SUBCASE("ordinary convergence implies almost convergence to the same limit") {
    const Scale sc = desk_scale(2000);
    const std::vector<std::pair<std::function<double(int)>, double>> convergent = {
        {[](int n) { return 0.3 + 1.0 / n; }, 0.3},
        {[](int n) { return 1.0 - std::exp(-0.02 * n); }, 1.0},
    };
    for (const auto& [f, limit] : convergent) {
      const Verdict v = almost_convergence(SequencePrefix::from_generator(sc.N, f), sc);
      CHECK(v.holds());
      CHECK(std::fabs(v.estimate.v - limit) < 0.05);
    }
  }
  SUBCASE("growing sequences are rejected") {
    const Scale sc = desk_scale(500);
    CHECK_THROWS_AS(
        almost_convergence(SequencePrefix::from_generator(sc.N, [](int n) { return 1.0 * n; }), sc),
        input_error);
  }
}

TEST_CASE("base-condition sums") {
  const Scale sc = desk_scale(400);
  const FilterBase base = finite_ideal_base();

  SUBCASE("lower-triangular families place no mass outside a prefix") {
    for (auto F : {single_family(cesaro()), build_shift_family(cesaro(), 0),
                   single_family(identity_matrix())}) {
      const auto vals = check_base_condition(F, base, sc);
      for (double v : vals) CHECK(v == 0.0);
    }
  }
  SUBCASE("a geometric full row leaks exactly the geometric tail") {
    SummabilityMatrix A;
    A.name = "geo";
    A.row = [&sc](int) {
      std::vector<std::pair<int, double>> r;
      for (int k = 1; k <= sc.N; ++k) r.emplace_back(k, std::pow(2.0, -k));
      return r;
    };
    A.tail_bound = [&sc](int, int cutoff) { return std::pow(2.0, -std::max(cutoff, 0)); };
    const auto vals = check_base_condition(single_family(A), base, sc);
    // prefix depths 1, 2, 4: tails 2^-1 - 2^-N, 2^-2 - 2^-N, 2^-4 - 2^-N
    CHECK(vals[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(vals[1] == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(vals[2] == doctest::Approx(std::pow(2.0, -4)).epsilon(1e-9));
  }
}

TEST_CASE("decompose_statistical") {
  const IdealHandle If = IdealHandle::finite();
  MatrixFamily C = single_family(cesaro());

  SUBCASE("squares indicator: t vanishes and the flipped set is the squares") {
    const Scale sc = desk_scale(2500);
    const auto res = decompose_statistical(squares_indicator(sc.N), C, If, 0.0, sc);
    REQUIRE(res.status == Status::holds_at_scale);
    // every square below N is flipped to the limit
    int square_count = 0;
    for (int k = 1; k <= sc.N; ++k)
      if (is_perfect_square(k)) ++square_count;
    CHECK(static_cast<int>(res.disagreement.size()) == square_count);
    for (double v : res.t.values) CHECK(v == 0.0);
    CHECK(res.t_converges.holds());
    CHECK(res.disagreement_in_J.holds());
    // cesaro weight of the disagreement at the window end
    double weight = 0.0;
    for (int k : res.disagreement) weight += 1.0 / sc.N * (k <= sc.N ? 1.0 : 0.0);
    CHECK(weight == doctest::Approx(static_cast<double>(square_count) / sc.N));
  }
  SUBCASE("an already convergent sequence changes only early terms") {
    const Scale sc = desk_scale(2000);
    const auto s = SequencePrefix::from_generator(sc.N, [](int k) { return 0.4 + 1.0 / k; });
    const auto res = decompose_statistical(s, C, If, 0.4, sc);
    REQUIRE(res.status == Status::holds_at_scale);
    CHECK(res.t_converges.holds());
    // the tail of t is untouched
    for (int k = sc.N / 2; k <= sc.N; ++k)
      CHECK(res.t.values[static_cast<size_t>(k) - 1] == s.at(k));
  }
  SUBCASE("s identically a leaves nothing to do") {
    const Scale sc = desk_scale(800);
    const auto s = SequencePrefix::from_generator(sc.N, [](int) { return 1.5; });
    const auto res = decompose_statistical(s, C, If, 1.5, sc);
    REQUIRE(res.status == Status::holds_at_scale);
    CHECK(res.disagreement.empty());
    for (int k = 1; k <= sc.N; ++k) CHECK(res.t.values[static_cast<size_t>(k) - 1] == 1.5);
  }
  SUBCASE("reconstruction direction: any almost-everywhere convergent witness forces the verdict") {
    const Scale sc = desk_scale(2000);
    // build s = t off a derived-ideal member, t -> a
    const double a = -0.6;
    SequencePrefix s = SequencePrefix::from_generator(sc.N, [a](int k) {
      if (is_perfect_square(k)) return a + 2.0;  // disturbance on a null set
      return a + 1.0 / k;
    });
    CHECK(statistically_convergent(s, C, a, If, sc).holds());
  }
  SUBCASE("derived inner ideals are rejected (no explicit base)") {
    const Scale sc = desk_scale(500);
    const IdealHandle J = derived_ideal(C, If, sc);
    CHECK_THROWS_AS(decompose_statistical(squares_indicator(sc.N), C, J, 0.0, sc), input_error);
  }
}

TEST_CASE("tauberian checks") {
  const IdealHandle If = IdealHandle::finite();
  const auto phi = [](double x) { return x <= 0 ? 1.0 : 1.0 / x; };
  const auto h = [](double x) { return x / (1.0 + x); };

  SUBCASE("canonical instance: a + 1/n passes everything") {
    const Scale sc = desk_scale(2000);
    const auto s = SequencePrefix::from_generator(sc.N, [](int n) { return 0.7 + 1.0 / n; });
    const auto rep = tauberian_check(s, cesaro(), If, phi, phi, h, sc);
    CHECK(rep.row_sums_to_one.holds());
    CHECK(rep.columns_to_zero.holds());
    CHECK(rep.min_entry_dominates.holds());
    CHECK(rep.phi_decreasing.holds());
    CHECK(rep.coupling.holds());
    CHECK(rep.h_faithful.holds());
    CHECK(rep.variation_bounded.holds());
    CHECK(rep.hypotheses_hold);
    CHECK(rep.claimed);
    CHECK(rep.ordinary.holds());
    CHECK(rep.limit == doctest::Approx(0.7).epsilon(0.02));
  }
  SUBCASE("squares indicator is rejected on the variation hypothesis") {
    const Scale sc = desk_scale(2000);
    const auto rep = tauberian_check(squares_indicator(sc.N), cesaro(), If, phi, phi, h, sc);
    CHECK(rep.variation_bounded.fails());
    CHECK_FALSE(rep.claimed);
    CHECK(rep.ordinary.status == Status::inconclusive);
  }
  SUBCASE("constants pass trivially") {
    const Scale sc = desk_scale(1000);
    const auto s = SequencePrefix::from_generator(sc.N, [](int) { return 3.0; });
    const auto rep = tauberian_check(s, cesaro(), If, phi, phi, h, sc);
    CHECK(rep.hypotheses_hold);
    CHECK(rep.claimed);
    CHECK(rep.ordinary.holds());
  }
  SUBCASE("a sparse-row matrix fails the minimum-entry hypothesis") {
    const Scale sc = desk_scale(300);
    std::vector<std::tuple<int, int, double>> triples;
    for (int n = 1; n <= sc.N; ++n)
      for (int k = 1; k <= n; k += 2) triples.emplace_back(n, k, 2.0 / (n + 1));
    const auto A = triangular_from_triples(triples);
    const auto s = SequencePrefix::from_generator(sc.N, [](int n) { return 1.0 / n; });
    const auto rep = tauberian_check(s, A, If, phi, phi, h, sc);
    CHECK(rep.min_entry_dominates.fails());
  }
}

TEST_CASE("strong and statistical convergence imply one another under the stated hypotheses") {
  const IdealHandle If = IdealHandle::finite();
  const Scale sc = desk_scale(1200);

  // genuinely (k, i)-dependent gauge family on the generic path
  GaugeFamily mixed;
  mixed.uniform_in_k = false;
  mixed.uniform_in_i = false;
  mixed.kind = GaugeKind::orlicz;
  mixed.sample_i_max = 4;
  mixed.name = "p(k,i)";
  mixed.eval = [](int k, int i, double t) {
    const double p = 1.0 + ((k + 3 * i) % 8) / 7.0;
    return std::pow(t, p);
  };
  MatrixFamily F = build_shift_family(cesaro(), 4);

  const std::vector<SequencePrefix> corpus = {
      squares_indicator(sc.N),
      SequencePrefix::from_generator(sc.N, [](int) { return 0.2; }),
      generate_corpus("alternating", sc.N),
      generate_corpus("random_bounded", sc.N, 31),
  };
  const std::vector<double> targets = {0.0, 0.2, 0.0, 0.0};

  for (size_t t = 0; t < corpus.size(); ++t) {
    const Verdict strong = strong_summable(corpus[t], F, mixed, targets[t], If, sc);
    const Verdict stat = statistically_convergent(corpus[t], F, targets[t], If, sc);
    if (strong.holds()) CHECK(stat.holds());   // lower envelope positive
    if (stat.holds()) CHECK(strong.holds());   // bounded + equicontinuous + bounded rows
  }
}

TEST_CASE("two-ideal transfer on the shifted cesaro instance") {
  // smoothness of consecutive cesaro rows, then transfer of summability
  const Scale sc = desk_scale(1500);
  const IdealHandle If = IdealHandle::finite();
  double worst = 0.0;
  for (int n : {10, 100, 1000}) {
    double diff = 0.0;
    const auto C = cesaro();
    auto ra = C.row(n), rb = C.row(n + 1);
    size_t p = 0, q = 0;
    while (p < ra.size() || q < rb.size()) {
      const int ka = p < ra.size() ? ra[p].first : 1 << 30;
      const int kb = q < rb.size() ? rb[q].first : 1 << 30;
      if (ka == kb) {
        diff += std::fabs(ra[p].second - rb[q].second);
        ++p;
        ++q;
      } else if (ka < kb) {
        diff += std::fabs(ra[p++].second);
      } else {
        diff += std::fabs(rb[q++].second);
      }
    }
    CHECK(diff == doctest::Approx(2.0 / (n + 1)));
    worst = std::max(worst, diff);
  }
  CHECK(worst < 0.2);
  // premise: shifted-cesaro summability under the finite ideal
  const auto s = generate_corpus("periodic2", sc.N);
  MatrixFamily shifts = build_shift_family(cesaro(), 32);
  const Verdict premise = b_summable(s, shifts, If, std::nullopt, sc);
  REQUIRE(premise.holds());
  // conclusion for the smooth matrix instance: same family, admissible ideal
  const Verdict conclusion = b_summable(s, shifts, If, premise.estimate.v, sc);
  CHECK(conclusion.holds());
}
