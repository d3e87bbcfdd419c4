#include "summa/corpus.hpp"

#include <cmath>
#include <random>

namespace summa {

SequencePrefix generate_corpus(const std::string& name, int N, std::uint64_t seed) {
  if (N < 1) throw input_error("generate_corpus: N must be positive");
  if (name == "squares" || name == "tauberian_violator")
    return SequencePrefix::from_generator(N, [](int k) { return is_perfect_square(k) ? 1.0 : 0.0; });
  if (name == "periodic2")
    return SequencePrefix::from_generator(N, [](int k) { return k % 2 == 1 ? 1.0 : 0.0; });
  if (name == "alternating")
    return SequencePrefix::from_generator(N, [](int k) { return k % 2 == 0 ? 1.0 : -1.0; });
  if (name == "harmonic_drift")
    return SequencePrefix::from_generator(N, [](int k) { return 0.3 + 1.0 / k; });
  if (name == "tauberian_ok") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(-1.0, 1.0), uc(0.2, 2.0);
    const double a = ua(rng), c = uc(rng);
    constexpr double two_pi = 6.283185307179586476925286766559;
    return SequencePrefix::from_generator(N, [a, c](int k) {
      return a + c * std::sin(two_pi * k / 1024.0) / k;
    });
  }
  if (name == "density_half")
    return SequencePrefix::from_generator(N, [](int k) { return k % 2 == 0 ? 1.0 : 0.0; });
  if (name == "random_bounded") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SequencePrefix s;
    s.values.resize(static_cast<size_t>(N));
    for (auto& v : s.values) v = u(rng);
    return s;
  }
  throw input_error("generate_corpus: unknown corpus name '" + name + "'");
}

std::vector<std::string> corpus_names() {
  return {"squares",      "periodic2",   "alternating",    "harmonic_drift",
          "tauberian_ok", "tauberian_violator", "density_half", "random_bounded"};
}

std::vector<CorpusEntry> acceptance_corpus(int count, int N, std::uint64_t seed) {
  std::vector<CorpusEntry> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ulimit(-2.0, 2.0);
  std::uniform_real_distribution<double> uamp(0.25, 2.0);
  std::uniform_real_distribution<double> ubeta(1.6, 3.0);
  std::uniform_real_distribution<double> udrift(0.0, 1.0);
  std::uniform_int_distribution<int> ukind(0, 5);

  for (int i = 0; i < count; ++i) {
    CorpusEntry e;
    const int kind = ukind(rng);
    const double a = ulimit(rng);
    const double amp = uamp(rng);
    switch (kind) {
      case 0: {  // constant plus harmonic drift
        const double c = udrift(rng);
        e.name = "drift#" + std::to_string(i);
        e.s = SequencePrefix::from_generator(N, [a, c](int k) { return a + c / k; });
        e.limit = a;
        e.expect_statistical = true;
        break;
      }
      case 1:
      case 2: {  // sparse exceptional set {floor(j^beta)} of vanishing density
        const double beta = ubeta(rng);
        std::vector<std::uint8_t> mask(static_cast<size_t>(N), 0);
        for (int j = 1;; ++j) {
          const double pos = std::pow(static_cast<double>(j), beta);
          if (pos > N) break;
          mask[static_cast<size_t>(static_cast<int>(pos)) - 1] = 1;
        }
        const double c = udrift(rng) * 0.5;
        e.name = "sparse#" + std::to_string(i);
        e.s = SequencePrefix::from_generator(N, [a, amp, c, &mask](int k) {
          return a + (mask[static_cast<size_t>(k) - 1] ? amp : 0.0) + c / k;
        });
        e.limit = a;
        e.expect_statistical = true;
        break;
      }
      case 3: {  // two-valued with both densities 1/2: divergent
        e.name = "split#" + std::to_string(i);
        e.s = SequencePrefix::from_generator(
            N, [a, amp](int k) { return a + (k % 2 == 0 ? amp : -amp); });
        e.expect_statistical = false;
        break;
      }
      case 4: {  // bounded noise around a on a positive-density set: divergent
        auto noise = std::make_shared<std::vector<double>>(static_cast<size_t>(N));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto& v : *noise) v = u(rng);
        e.name = "noise#" + std::to_string(i);
        e.s = SequencePrefix::from_generator(
            N, [a, amp, noise](int k) { return a + amp * (*noise)[static_cast<size_t>(k) - 1]; });
        e.expect_statistical = false;
        break;
      }
      default: {  // exact constant
        e.name = "const#" + std::to_string(i);
        e.s = SequencePrefix::from_generator(N, [a](int) { return a; });
        e.limit = a;
        e.expect_statistical = true;
        break;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace summa
