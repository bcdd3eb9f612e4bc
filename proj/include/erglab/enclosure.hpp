#pragma once

#include <vector>

#include "erglab/rational.hpp"

namespace erglab {

// Certified sign of sum_j c[j] * cos(2 pi j / b) via interval evaluation
// with directed rounding, doubling precision until the enclosure excludes
// zero. Call only when the value is known to be nonzero (an exact
// cyclotomic zero test must run first), otherwise this cannot terminate.
int certified_sign_cosine_sum(const std::vector<Rat>& c, int b);

// Decide lhs <= s0^(1/4) + s1^(1/4) + s2^(1/4) for nonnegative rationals.
// Exact when every fourth root is rational; otherwise certified by interval
// refinement, which terminates because a sum of fourth roots of rationals
// is rational only when each summand's root is.
bool leq_sum_fourth_roots(const Rat& lhs, const Rat& s0, const Rat& s1,
                          const Rat& s2);

} // namespace erglab
