#pragma once

#include <vector>

#include "erglab/rational.hpp"

namespace erglab {

// Finite probability space: points are 0..size-1, every weight positive,
// weights sum to 1 exactly.
struct WeightedSpace {
    std::vector<Rat> w;
    int size() const { return static_cast<int>(w.size()); }
};

WeightedSpace make_space(std::vector<Rat> weights);

// A finite sigma-algebra is exactly a partition into atoms. Canonical form:
// blocks ordered by smallest member, block_of consistent with blocks.
struct Partition {
    std::vector<int> block_of;
    std::vector<std::vector<int>> blocks;
    int size() const { return static_cast<int>(block_of.size()); }
    int count() const { return static_cast<int>(blocks.size()); }
};

Partition partition_from_block_of(const std::vector<int>& raw);
Partition singleton_partition(int m);
Partition trivial_partition(int m);
Partition join_partitions(const Partition& p, const Partition& q);
bool same_partition(const Partition& p, const Partition& q);
// True when every p-block is contained in a q-block.
bool refines(const Partition& p, const Partition& q);

// Total rational-valued function on a space; paired with its space at every
// call site, sizes are checked there.
struct Observable {
    std::vector<Rat> v;
    int size() const { return static_cast<int>(v.size()); }
};

Observable const_observable(int m, const Rat& c);
Observable indicator(int m, const std::vector<int>& points);

Rat integrate(const WeightedSpace& sp, const Observable& f);
Observable cond_exp(const WeightedSpace& sp, const Observable& f, const Partition& p);

struct HolderBound {
    Rat lhs;
    Rat rhs;
    bool holds;
};

// lhs = integral of f * prod_i E(f|P_i), rhs = (integral of f)^(k+1).
// The inequality lhs >= rhs holds for every nonnegative f.
HolderBound holder_product_bound(const WeightedSpace& sp, const Observable& f,
                                 const std::vector<Partition>& parts);

} // namespace erglab
