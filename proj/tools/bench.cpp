// Benchmark comparing the optimized kernels (prefix sums, Fenwick sliding
// windows, OpenMP) against the serial reference loops.
//
//   summa_bench [N] [i_max]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "summa/corpus.hpp"
#include "summa/kernels.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double time_ms(F&& f) {
  const auto t0 = clock_type::now();
  f();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

double checksum(const summa::kernels::Grid& g) {
  double s = 0.0;
  for (double v : g.data) s += v;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace summa;
  const int N = argc > 1 ? std::atoi(argv[1]) : 4096;
  const int i_max = argc > 2 ? std::atoi(argv[2]) : 32;

  const SequencePrefix noise = generate_corpus("random_bounded", N, 7);
  const SequencePrefix squares = generate_corpus("squares", N);
  MatrixFamily shifts = build_shift_family(cesaro(), i_max);
  MatrixFamily single = single_family(cesaro());

  std::printf("kernel benchmark, N=%d i_max=%d\n", N, i_max);
  std::printf("%-34s %12s %12s %9s %14s\n", "kernel", "serial-ms", "fast-ms", "speedup",
              "max-abs-diff");

  {
    std::vector<double> f(noise.values.begin(), noise.values.end());
    kernels::Grid ref, fast;
    const double t_ref = time_ms([&] { ref = kernels::family_weighted_grid_reference(shifts, f, N); });
    const double t_fast = time_ms([&] { fast = kernels::family_weighted_grid(shifts, f, N); });
    double diff = 0.0;
    for (size_t j = 0; j < ref.data.size(); ++j) diff = std::max(diff, std::fabs(ref.data[j] - fast.data[j]));
    std::printf("%-34s %12.2f %12.2f %8.1fx %14.3e\n", "family_weighted_grid (shifts)", t_ref,
                t_fast, t_ref / t_fast, diff);
  }
  {
    std::vector<double> s(noise.values.begin(), noise.values.end());
    kernels::Grid ref, fast;
    const double t_ref = time_ms([&] { ref = kernels::pair_indicator_grid_reference(single, s, 0.5, N); });
    const double t_fast = time_ms([&] { fast = kernels::pair_indicator_grid(single, s, 0.5, N); });
    double diff = 0.0;
    for (size_t j = 0; j < ref.data.size(); ++j) diff = std::max(diff, std::fabs(ref.data[j] - fast.data[j]));
    std::printf("%-34s %12.2f %12.2f %8.1fx %14.3e\n", "pair_indicator_grid (noise)", t_ref,
                t_fast, t_ref / t_fast, diff);
  }
  {
    std::vector<double> s(squares.values.begin(), squares.values.end());
    kernels::Grid ref, fast;
    const double t_ref = time_ms([&] { ref = kernels::pair_indicator_grid_reference(single, s, 0.5, N); });
    const double t_fast = time_ms([&] { fast = kernels::pair_indicator_grid(single, s, 0.5, N); });
    double diff = 0.0;
    for (size_t j = 0; j < ref.data.size(); ++j) diff = std::max(diff, std::fabs(ref.data[j] - fast.data[j]));
    std::printf("%-34s %12.2f %12.2f %8.1fx %14.3e\n", "pair_indicator_grid (two-valued)", t_ref,
                t_fast, t_ref / t_fast, diff);
  }
  {
    std::vector<double> s(noise.values.begin(), noise.values.end());
    kernels::Grid ref, fast;
    const double t_ref = time_ms([&] { ref = kernels::pair_power_grid_reference(single, s, 1, N); });
    const double t_fast = time_ms([&] { fast = kernels::pair_power_grid(single, s, 1, N); });
    double diff = 0.0;
    for (size_t j = 0; j < ref.data.size(); ++j) diff = std::max(diff, std::fabs(ref.data[j] - fast.data[j]));
    std::printf("%-34s %12.2f %12.2f %8.1fx %14.3e\n", "pair_power_grid p=1", t_ref, t_fast,
                t_ref / t_fast, diff);
  }
  {
    std::vector<double> f(noise.values.begin(), noise.values.end());
    kernels::Grid serial, parallel;
    const double t_serial = time_ms(
        [&] { serial = kernels::family_weighted_grid(shifts, f, N, kernels::Exec::serial); });
    const double t_parallel = time_ms(
        [&] { parallel = kernels::family_weighted_grid(shifts, f, N, kernels::Exec::parallel); });
    double diff = 0.0;
    for (size_t j = 0; j < serial.data.size(); ++j)
      diff = std::max(diff, std::fabs(serial.data[j] - parallel.data[j]));
    std::printf("%-34s %12.2f %12.2f %8.1fx %14.3e\n", "fast path serial vs openmp", t_serial,
                t_parallel, t_serial / t_parallel, diff);
  }

  std::printf("checksum guard: %.6f\n",
              checksum(kernels::family_weighted_grid(
                  single, std::vector<double>(noise.values.begin(), noise.values.end()), N)));
  return 0;
}
