#pragma once

#include <array>
#include <optional>
#include <vector>

#include "erglab/box.hpp"
#include "erglab/dynamics.hpp"

namespace erglab {

// Hard cap on the number of scan steps any full-period loop may take.
inline constexpr unsigned long long kMaxScanSteps = 1ull << 22;

// I_n = integral of f0 . (f1 o t1^n) . (f2 o t2^n).
Rat multi_corr(const CommutingSystem& sys, const Observable& f0,
               const Observable& f1, const Observable& f2, long long n);

struct RecurrenceReport {
    Rat measure_a;
    Rat threshold; // mu(A)^exponent - epsilon
    int exponent = 4;
    unsigned long long period = 1;
    unsigned long long scanned = 0;
    bool complete = true; // whole period scanned
    std::vector<unsigned long long> hits;
    std::vector<Rat> values; // I_n for n in [0, scanned)
    unsigned long long max_gap = 0; // cyclic gap when complete
    bool syndetic = false;
    bool ergodic = true;
};

// Scans mu(A and t1^-n A and t2^-n A) > threshold over one period, or over
// [0, horizon) when given. Non-ergodic systems are rejected unless
// allow_nonergodic is set; the report then carries ergodic = false.
RecurrenceReport recurrence_set(const CommutingSystem& sys,
                                const std::vector<int>& a, int exponent,
                                const Rat& epsilon,
                                std::optional<unsigned long long> horizon = {},
                                bool allow_nonergodic = false);

struct CesaroBound {
    Rat t;
    int order = 1;    // denominator of t
    bool exact = true; // decided without interval refinement
    double avg_abs = 0.0;                // presentation only
    std::optional<Rat> avg_abs_fourth;   // present when |avg|^4 is rational
    std::array<Rat, 3> bounds;           // seminorm fourth powers
    bool holds = false;
};

// |period-average of e(nt) I_n(f0,f1,f2)|^4 against the three seminorm
// fourth powers of f0 over (t1,t2), f1 over (t1,t3), f2 over (t2,t3).
// Requires |f_i| <= 1 pointwise and denominator of t dividing the period.
CesaroBound cesaro_bound_check(const CommutingSystem& sys, const Observable& f0,
                               const Observable& f1, const Observable& f2,
                               const Rat& t,
                               std::size_t tuple_budget = kDefaultTupleBudget);

struct PairwiseProjections {
    Observable h;
    Observable g0; // E(h | I(t1) v I(t2))
    Observable g1; // E(h | I(t1) v I(t3))
    Observable g2; // E(h | I(t2) v I(t3))
};

PairwiseProjections pairwise_projections(const CommutingSystem& sys,
                                         const Observable& f);

// J_n = I_n(g0, g1, g2).
Rat j_sequence(const CommutingSystem& sys, const Observable& f, long long n);

struct J0Check {
    Rat j0;
    Rat bound; // (integral of f)^4
    bool holds = false;
};

// J_0 >= (integral of f)^4, exact; requires 0 <= f <= 1.
J0Check j0_lower_bound_check(const CommutingSystem& sys, const Observable& f);

struct DiffBound {
    Rat avg_abs;              // |period-average of I_n - J_n|, exact
    std::array<Rat, 3> bounds; // seminorm fourth powers of h - g_i
    double bound_sum = 0.0;   // presentation: sum of the fourth roots
    bool holds = false;
    bool exact_zero = false;  // both sides vanish exactly
};

// |avg (I_n - J_n)| <= sum of the three fourth roots; certified decision.
// Requires 0 <= f <= 1.
DiffBound diff_bound_check(const CommutingSystem& sys, const Observable& f,
                           std::size_t tuple_budget = kDefaultTupleBudget);

struct Khintchine3 {
    RecurrenceReport report;
    Rat i0;    // integral of f . fhat . ftilde
    Rat bound; // (integral of f)^3
    bool holds = false;
};

// Z_p x Z_q with t1 = (+1, id), t2 = (id, +1); exponent-3 scan plus the
// exact lower bound for I_0(f, fhat, ftilde) with conditioning on the
// common rotation factor Z_gcd(p,q).
Khintchine3 product_rotation_khintchine3(int p, int q, const std::vector<int>& a,
                                         const Rat& epsilon);

} // namespace erglab
