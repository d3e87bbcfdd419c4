#pragma once

#include <cstdint>

#include "summa/core.hpp"

namespace summa {

// Named generators, reproducible under a fixed seed. Analytic behaviour:
//   squares            indicator of perfect squares; statistically null
//   periodic2          1,0,1,0,...; almost convergent to 1/2
//   alternating        (-1)^n; statistically divergent
//   harmonic_drift     0.3 + 1/n; ordinary limit 0.3
//   tauberian_ok       a + c sin(2 pi n / 1024)/n; limit a, |Δs_n| = O(1/n)
//   tauberian_violator squares indicator (unit jumps at square boundaries)
//   density_half       indicator of the even numbers
//   random_bounded     iid uniform [-1, 1]
SequencePrefix generate_corpus(const std::string& name, int N, std::uint64_t seed = 0);

std::vector<std::string> corpus_names();

// A labelled sequence with its analytic statistical limit when one exists.
struct CorpusEntry {
  std::string name;
  SequencePrefix s;
  std::optional<double> limit;   // statistical limit when expect_statistical
  bool expect_statistical = false;
};

// Mixed corpus for implication sweeps: sparse-exceptional convergent members
// (with known limits), drifting variants, and divergent members.
std::vector<CorpusEntry> acceptance_corpus(int count, int N, std::uint64_t seed);

}  // namespace summa
