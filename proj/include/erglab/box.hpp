#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "erglab/dynamics.hpp"

namespace erglab {

// Worst case documented for the point limit of 40: 40^4 tuples.
inline constexpr std::size_t kDefaultTupleBudget = 2'560'000;

// Coupling of the measure with itself, supported on pairs sharing an orbit
// atom; both marginals equal the base measure.
struct PairMeasure {
    int points = 0;
    std::vector<std::pair<int, int>> support;
    std::vector<Rat> mass;
    std::unordered_map<std::uint64_t, int> index;
    int find(int x, int y) const;
    int size() const { return static_cast<int>(support.size()); }
};

// Two-stage relatively independent product on 4-tuples
// (x00, x01, x10, x11); tuple i is (pair p_i, pair q_i) of mu1-support pairs.
struct QuadMeasure {
    PairMeasure mu1;
    std::vector<std::pair<int, int>> support;
    std::vector<Rat> mass;
    std::unordered_map<std::uint64_t, int> index;
    int size() const { return static_cast<int>(support.size()); }
    std::array<int, 4> tuple(int i) const;
    // -1 when the tuple carries no mass.
    int find(int x00, int x01, int x10, int x11) const;
};

PairMeasure relative_square(const CommutingSystem& sys, Which over,
                            std::size_t tuple_budget = kDefaultTupleBudget);

// The box measure of the pair (ta, tb): stage 1 couples over I(ta), stage 2
// couples mu1 with itself over the orbits of tb x tb on its support.
QuadMeasure box_measure_pair(const WeightedSpace& sp, const Transformation& ta,
                             const Transformation& tb,
                             std::size_t tuple_budget = kDefaultTupleBudget);
QuadMeasure box_measure(const CommutingSystem& sys,
                        std::size_t tuple_budget = kDefaultTupleBudget);

struct SeminormValue {
    Rat fourth_power;
    double root = 0.0; // presentation only
};

SeminormValue seminorm4(const Observable& f, const QuadMeasure& qm);
SeminormValue seminorm4(const Observable& f, const CommutingSystem& sys,
                        std::size_t tuple_budget = kDefaultTupleBudget);

// Exact full-period double average of
//   integral of f . ta^n1 f . tb^n2 f . ta^n1 tb^n2 f
// over n1 in [0, order(ta)) and n2 in [0, order(tb)).
Rat seminorm4_by_averages(const WeightedSpace& sp, const Transformation& ta,
                          const Transformation& tb, const Observable& f);
Rat seminorm4_by_averages(const Observable& f, const CommutingSystem& sys);

// Connected components of the support relation
// { x00 ~ (x01, x10, x11) : mass > 0 }, projected to the first coordinate.
Partition g_algebra(const CommutingSystem& sys,
                    std::size_t tuple_budget = kDefaultTupleBudget);

struct MagicVerdict {
    bool verdict = false;
    std::optional<Observable> witness; // kernel element with positive seminorm
    Rat witness_seminorm4;
};

// A system is magic when the seminorm vanishes exactly on the kernel of
// E(. | I(t1) v I(t2)). Checked on a block-local kernel basis.
MagicVerdict is_magic(const CommutingSystem& sys,
                      std::size_t tuple_budget = kDefaultTupleBudget);

struct MagicExtension {
    CommutingSystem ext;
    std::vector<int> factor; // pi_00: extension point -> base point
    QuadMeasure box;         // the box measure the extension lives on
};

// Extension on the support of the box measure with t1* = T1 x id x T1 x id,
// t2* = T2 x T2 x id x id; the factor map is the first coordinate.
MagicExtension magic_extension(const CommutingSystem& sys,
                               std::size_t tuple_budget = kDefaultTupleBudget);

} // namespace erglab
