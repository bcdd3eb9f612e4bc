#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "erglab/dynamics.hpp"

namespace erglab {

// All sampling goes through rand_below so that streams are identical across
// platforms; standard distributions are implementation-defined.
using Rng = std::mt19937_64;

std::uint64_t rand_below(Rng& rng, std::uint64_t n); // uniform in [0, n)

std::vector<int> random_permutation(Rng& rng, int m);

// Uniform element of the centralizer of t: permute the cycles of equal
// length and rotate each one.
Transformation random_centralizer_element(Rng& rng, const Transformation& t);

// Random pair of commuting permutations with weights constant on the orbits
// of the group they generate, so the system always validates.
CommutingSystem random_commuting_system(Rng& rng, int max_points);

Observable random_observable_unit(Rng& rng, int m);   // values in [0, 1]
Observable random_observable_band(Rng& rng, int m);   // values in [-1, 1]
Observable random_observable_nonneg(Rng& rng, int m); // values in [0, 2]

std::vector<int> random_nonempty_subset(Rng& rng, int m);

// Fixed-seed test bed: 20 random systems on at most 8 points plus small
// named rotations, a product, and identity pairs.
std::vector<CommutingSystem> standard_corpus();

} // namespace erglab
