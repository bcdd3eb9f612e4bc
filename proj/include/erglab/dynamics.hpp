#pragma once

#include <vector>

#include "erglab/space.hpp"

namespace erglab {

// Invertible map of the point set, both directions stored and validated.
struct Transformation {
    std::vector<int> fwd;
    std::vector<int> inv;
    int size() const { return static_cast<int>(fwd.size()); }
    int operator()(int x) const { return fwd[x]; }
};

Transformation make_transformation(std::vector<int> fwd);
Transformation identity_transformation(int m);
Transformation inverse(const Transformation& t);
// compose(a, b)(x) = a(b(x))
Transformation compose(const Transformation& a, const Transformation& b);
// t^n for any integer n (negative uses the inverse).
Transformation transformation_power(const Transformation& t, long long n);
// lcm of cycle lengths; SizeLimitExceeded if it does not fit 63 bits.
unsigned long long transformation_order(const Transformation& t);
Partition orbit_partition(const Transformation& t);

enum class Which { T1, T2, T3 };

// Two commuting measure-preserving transformations; t3 = t1 o t2^{-1} is
// always derived, never supplied.
struct CommutingSystem {
    WeightedSpace space;
    Transformation t1, t2, t3;
    int size() const { return space.size(); }
    std::string name;
};

CommutingSystem validate_system(const WeightedSpace& sp, const Transformation& t1,
                                const Transformation& t2);

const Transformation& pick(const CommutingSystem& sys, Which w);
Partition invariant_partition(const CommutingSystem& sys, Which w);
// Orbits of the group generated by t1 and t2.
Partition group_orbit_partition(const CommutingSystem& sys);
bool is_ergodic(const CommutingSystem& sys);

// lcm of the two transformation orders.
unsigned long long system_period(const CommutingSystem& sys);

struct ErgodicComponent {
    std::vector<int> support;   // ascending original point ids
    WeightedSpace measure;      // conditional weights, indexed like support
    Rat mass;                   // mu(support)
    int index;
};

std::vector<ErgodicComponent> ergodic_components(const CommutingSystem& sys);
// The component as a system in its own right (points reindexed to 0..k-1).
CommutingSystem component_system(const CommutingSystem& sys, const ErgodicComponent& c);
Observable restrict_observable(const Observable& f, const std::vector<int>& support);

enum class Pairing { T1xId_IdxT2, T1xT1_T2xT2 };

// Cartesian product; point (a, b) gets index a * B.size() + b.
CommutingSystem product_system(const CommutingSystem& a, const CommutingSystem& b,
                               Pairing pairing);

// Uniform Z_N with t1 = +a1, t2 = +a2 (mod N).
CommutingSystem rotation_system(int n, long long a1, long long a2);

// Common rotation factor of Z_p and Z_q: Z_g with g = gcd(p, q);
// proj_i(x) = x mod g.
struct RotationFactor {
    int g;
    std::vector<int> proj1, proj2;
};
RotationFactor common_rotation_factor(int p, int q);

// proj maps big-system points onto factor points. Checked: surjectivity,
// measure pushforward, and intertwining with both transformations.
Observable lift_observable(const CommutingSystem& big, const CommutingSystem& factor,
                           const std::vector<int>& proj, const Observable& f_on_factor);

} // namespace erglab
