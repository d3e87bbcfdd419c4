#include <doctest.h>

#include <random>

#include "summa/corpus.hpp"
#include "summa/limsup_cluster.hpp"

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

TEST_CASE("matrix limsup inequality") {
  const IdealHandle If = IdealHandle::finite();
  const Scale sc = desk_scale(1500);

  SUBCASE("cesaro flattens the alternating sequence") {
    const auto rep = matrix_limsup_inequality(cesaro(), If, If,
                                              generate_corpus("alternating", sc.N), sc);
    CHECK(rep.hypotheses_hold);
    CHECK(rep.conclusion.holds());
    CHECK(rep.rhs_limsup == doctest::Approx(1.0));
    CHECK(std::fabs(rep.lhs_limsup) < 0.01);
    CHECK(rep.lhs_liminf >= rep.rhs_liminf - 1e-9);
  }
  SUBCASE("constants give equality") {
    const auto s = SequencePrefix::from_generator(sc.N, [](int) { return 0.8; });
    const auto rep = matrix_limsup_inequality(cesaro(), If, If, s, sc);
    CHECK(rep.conclusion.holds());
    CHECK(rep.lhs_limsup == doctest::Approx(rep.rhs_limsup));
  }
  SUBCASE("statistical ideal on the right: squares have J-limsup 0") {
    const IdealHandle J = derived_ideal(single_family(cesaro()), If, sc);
    const auto rep = matrix_limsup_inequality(cesaro(), If, J, squares_indicator(sc.N), sc);
    CHECK(rep.hypotheses_hold);
    CHECK(rep.rhs_limsup == doctest::Approx(0.0));
    // the transformed side is still descending toward 0 at this window, so
    // the small excess must not be certified as a violation
    CHECK_FALSE(rep.conclusion.fails());
    CHECK(rep.lhs_limsup < 0.05);
  }
  SUBCASE("zero violations on random bounded sequences") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 25; ++t) {
      const auto s = generate_corpus("random_bounded", sc.N, rng());
      const auto rep = matrix_limsup_inequality(cesaro(), If, If, s, sc);
      REQUIRE(rep.hypotheses_hold);
      CHECK(rep.conclusion.holds());
    }
  }
  SUBCASE("broken row sums disable the claim") {
    SummabilityMatrix A;
    A.name = "half";
    A.row = [](int n) {
      std::vector<std::pair<int, double>> r;
      for (int k = 1; k <= n; ++k) r.emplace_back(k, 0.5 / n);
      return r;
    };
    A.tail_bound = [](int, int) { return 0.0; };
    const auto rep = matrix_limsup_inequality(A, If, If, generate_corpus("alternating", sc.N), sc);
    CHECK_FALSE(rep.hypotheses_hold);
    CHECK(rep.conclusion.status == Status::inconclusive);
  }
}

TEST_CASE("limsup forces statistical convergence when the premises hold") {
  const IdealHandle If = IdealHandle::finite();
  const Scale sc = desk_scale(1500);
  MatrixFamily C = single_family(cesaro());

  SUBCASE("squares indicator") {
    const auto rep = limsup_implies_statistical(squares_indicator(sc.N), C, If, 0.0, sc);
    CHECK(rep.rows_bounded.holds());
    CHECK(rep.row_sums_to_one.holds());
    CHECK(rep.summable.holds());
    CHECK(rep.j_limsup == doctest::Approx(0.0));
    CHECK(rep.premise_holds);
    CHECK(rep.statistical.holds());
    CHECK(rep.combined.holds());
  }
  SUBCASE("alternating: the limsup premise fails, no claim is made") {
    const auto rep = limsup_implies_statistical(generate_corpus("alternating", sc.N), C, If, 0.0,
                                                sc);
    CHECK(rep.j_limsup == doctest::Approx(1.0));
    CHECK(rep.j_liminf == doctest::Approx(-1.0));
    CHECK_FALSE(rep.premise_holds);
    CHECK(rep.combined.status == Status::inconclusive);
  }
  SUBCASE("constants satisfy everything") {
    const auto s = SequencePrefix::from_generator(sc.N, [](int) { return 1.1; });
    const auto rep = limsup_implies_statistical(s, C, If, 1.1, sc);
    CHECK(rep.premise_holds);
    CHECK(rep.combined.holds());
  }
}

TEST_CASE("derived-ideal cluster points via the liminf criterion") {
  const IdealHandle If = IdealHandle::finite();
  const Scale sc = desk_scale(2000);
  MatrixFamily C = single_family(cesaro());

  SUBCASE("alternating: criterion value 1/2 at both extremes") {
    const auto s = generate_corpus("alternating", sc.N);
    for (double a : {-1.0, 1.0}) {
      const auto rep = jbi_cluster_point(s, C, If, a, sc);
      CHECK(rep.verdict.holds());
      for (double c : rep.criterion) CHECK(c == doctest::Approx(0.5).epsilon(2e-3));
    }
    // grid oracle: direct weighted density of the exceptional set at eps=0.5
    double density = 0.0;
    for (int k = 1; k <= sc.N; ++k)
      if (std::fabs(s.at(k) - 1.0) >= 0.5) density += 1.0 / sc.N;
    CHECK(density == doctest::Approx(0.5).epsilon(1e-3));
  }
  SUBCASE("a constant clusters at itself but not farther away") {
    const auto s = SequencePrefix::from_generator(sc.N, [](int) { return 0.4; });
    CHECK(jbi_cluster_point(s, C, If, 0.4, sc).verdict.holds());
    const auto rep = jbi_cluster_point(s, C, If, 1.9, sc);  // gap clears every eps level
    CHECK(rep.verdict.fails());
    for (double c : rep.criterion) CHECK(c == doctest::Approx(1.0));
  }
  SUBCASE("agreement with the enumerated cluster points") {
    const IdealHandle J = derived_ideal(C, If, sc);
    const auto s = generate_corpus("alternating", sc.N);
    const auto pts = ideal_cluster_points(s, J, {-1.0, 0.0, 1.0}, 0.1, sc);
    REQUIRE(pts.size() == 2);
    for (double a : pts) CHECK(jbi_cluster_point(s, C, If, a, sc).verdict.holds());
  }
}

TEST_CASE("gauge route to cluster points") {
  const IdealHandle If = IdealHandle::finite();
  const Scale sc = desk_scale(1500);
  MatrixFamily C = single_family(cesaro());

  SUBCASE("squares indicator at 0: the gauge liminf vanishes at scale") {
    const auto rep = cluster_gauge_sufficient(squares_indicator(sc.N), C,
                                              GaugeFamily::identity(), If, 0.0, sc);
    CHECK(rep.gauge_liminf < 0.05);  // window value of the sqrt-density
    CHECK(rep.premise_holds);        // and it is still descending
    CHECK(rep.combined.holds());
  }
  SUBCASE("half-density deviation: premise fails yet the point still clusters") {
    const auto s = SequencePrefix::from_generator(
        sc.N, [](int k) { return k % 2 == 0 ? 0.0 : 1.0; });
    const auto rep = cluster_gauge_sufficient(s, C, GaugeFamily::identity(), If, 0.0, sc);
    CHECK(rep.gauge_liminf == doctest::Approx(0.5).epsilon(1e-2));
    CHECK_FALSE(rep.premise_holds);
    CHECK(rep.combined.status == Status::inconclusive);
    CHECK(jbi_cluster_point(s, C, If, 0.0, sc).verdict.holds());
  }
  SUBCASE("s identically a") {
    const auto s = SequencePrefix::from_generator(sc.N, [](int) { return -0.7; });
    const auto rep = cluster_gauge_sufficient(s, C, GaugeFamily::identity(), If, -0.7, sc);
    CHECK(rep.premise_holds);
    CHECK(rep.combined.holds());
  }
  SUBCASE("a vanishing gauge family is refused") {
    GaugeFamily broken;
    broken.uniform_in_k = false;
    broken.eval = [](int k, int, double t) { return k % 2 == 0 ? 0.0 : t; };
    CHECK_THROWS_AS(cluster_gauge_sufficient(squares_indicator(sc.N), C, broken, If, 0.0, sc),
                    input_error);
  }
}

TEST_CASE("base formula for the limsup agrees with a threshold-grid oracle") {
  const Scale sc = desk_scale(1200);
  const IdealHandle If = IdealHandle::finite();
  const IdealHandle J = derived_ideal(single_family(cesaro()), If, sc);

  const auto oracle = [&sc](const SequencePrefix& s, const IdealHandle& I) {
    // sup { t : {n : s_n > t} is not a member } over a 1e-3 grid
    double lo = s.at(1), hi = s.at(1);
    for (int n = 1; n <= sc.N; ++n) {
      lo = std::min(lo, s.at(n));
      hi = std::max(hi, s.at(n));
    }
    double best = lo - 1e-3;
    for (double t = lo - 1e-3; t <= hi + 1e-3; t += 1e-3) {
      std::vector<int> idx;
      for (int n = 1; n <= sc.N; ++n)
        if (s.at(n) > t) idx.push_back(n);
      if (!ideal_member(I, IndexSet::from_indices(idx), sc).holds()) best = t;
    }
    return best;
  };

  // agreement within the grid step plus the spacing of adjacent sample values
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    const auto s = generate_corpus("random_bounded", sc.N, rng());
    CHECK(std::fabs(ideal_limsup(s, If, sc).v - oracle(s, If)) <= 5e-3);
    CHECK(std::fabs(ideal_limsup(s, J, sc).v - oracle(s, J)) <= 5e-3);
  }
  const auto sq = squares_indicator(sc.N);
  CHECK(std::fabs(ideal_limsup(sq, J, sc).v - oracle(sq, J)) <= 1e-3);
}
