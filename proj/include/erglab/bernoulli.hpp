#pragma once

#include <vector>

#include "erglab/rational.hpp"

namespace erglab {

inline constexpr unsigned long long kMaxAssignments = 1ull << 22;

// One independent two-sided sequence of letters with the given marginal.
struct BernoulliComponent {
    int alphabet = 0;
    std::vector<Rat> probs;
};

struct BernoulliSpec {
    std::vector<BernoulliComponent> components;
};

BernoulliSpec make_bernoulli_spec(std::vector<BernoulliComponent> components);

// Function of finitely many coordinates. coords[c] lists the coordinates
// read from component c; table is indexed in mixed radix over the slots in
// declaration order (component by component, later slots fastest).
struct CylinderObservable {
    std::vector<std::vector<long long>> coords;
    std::vector<Rat> table;
};

CylinderObservable make_cylinder(const BernoulliSpec& spec,
                                 std::vector<std::vector<long long>> coords,
                                 std::vector<Rat> table);

// The observable with every coordinate translated by the per-component shift.
struct ShiftTerm {
    CylinderObservable observable;
    std::vector<long long> shifts;
};

// Integral of the product of the shifted observables: touched coordinates
// are enumerated jointly, every coordinate weighted independently.
Rat exact_correlation(const BernoulliSpec& spec,
                      const std::vector<ShiftTerm>& terms);

// Three uniform ternary sequences.
BernoulliSpec counterexample_spec();
// The 27-entry 0/1 table, index i * 9 + j * 3 + k; 16 ones in total.
CylinderObservable counterexample_table();
// mu(A) = 16/27, computed by integration, not hardcoded.
Rat counterexample_mu();
// The three shifted copies of the table whose product has integral 145/729.
std::vector<ShiftTerm> counterexample_terms(long long n); // ZeroShift at n = 0
// mu(A and T1^-n A and T2^-n A): 145/729 for n != 0, mu(A) for n = 0.
Rat counterexample_value(long long n);

struct PowerCertificate {
    unsigned long long l = 0;
    Rat lhs; // (145/729)^l
    Rat rhs; // c * ((16/27)^3)^l
    bool certificate = false;
};

// Minimal l with (145/729)^l < c * ((16/27)^3)^l, found by exact iteration.
PowerCertificate counterexample_power(const Rat& c);

} // namespace erglab
