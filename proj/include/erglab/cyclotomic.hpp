#pragma once

#include <vector>

#include "erglab/rational.hpp"

namespace erglab {

// Element of Q[x]/(x^b - 1); coefficient j belongs to the b-th root of
// unity raised to j. Complex conjugation is index negation.
struct CycVec {
    int b = 1;
    std::vector<Rat> c;
};

inline constexpr int kMaxCyclotomicOrder = 4096;

CycVec cyc_zero(int b);
CycVec cyc_mul(const CycVec& a, const CycVec& b);
CycVec cyc_conj(const CycVec& a);

// Coefficients of the b-th cyclotomic polynomial, constant term first,
// monic of degree phi(b).
const std::vector<Rat>& cyclotomic_polynomial(int b);

// Remainder of a (as a polynomial of degree < b) modulo the b-th
// cyclotomic polynomial; the element vanishes at the primitive root
// exactly when the remainder is zero.
std::vector<Rat> reduce_mod_cyclotomic(const CycVec& a);
bool vanishes_at_root(const CycVec& a);

} // namespace erglab
