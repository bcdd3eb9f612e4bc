#include "doctest.h"

#include "erglab/dynamics.hpp"
#include "erglab/randomgen.hpp"

using namespace erglab;

namespace {

WeightedSpace uniform_space(int m) {
    return make_space(std::vector<Rat>(m, Rat(1, m)));
}

} // namespace

TEST_CASE("transformations validate bijectivity") {
    CHECK_NOTHROW(make_transformation({1, 2, 0}));
    CHECK_THROWS_AS(make_transformation({0, 0, 1}), Error);
    CHECK_THROWS_AS(make_transformation({0, 1, 3}), Error);
    CHECK_THROWS_AS(make_transformation({}), Error);

    Transformation t = make_transformation({2, 0, 1});
    CHECK(t(0) == 2);
    CHECK(t.inv[2] == 0);
    CHECK(inverse(t).fwd == std::vector<int>{1, 2, 0});
}

TEST_CASE("compose, powers, and order") {
    Transformation a = make_transformation({1, 2, 3, 0}); // +1 mod 4
    Transformation b = make_transformation({2, 3, 0, 1}); // +2 mod 4

    CHECK(compose(a, a).fwd == b.fwd);
    CHECK(compose(a, inverse(a)).fwd == identity_transformation(4).fwd);

    CHECK(transformation_power(a, 0).fwd == identity_transformation(4).fwd);
    CHECK(transformation_power(a, 5).fwd == a.fwd);
    CHECK(transformation_power(a, -1).fwd == inverse(a).fwd);
    CHECK(transformation_power(a, -7).fwd == a.fwd);

    CHECK(transformation_order(a) == 4);
    CHECK(transformation_order(b) == 2);
    CHECK(transformation_order(identity_transformation(5)) == 1);

    // (0 1)(2 3 4): order 6
    Transformation c = make_transformation({1, 0, 3, 4, 2});
    CHECK(transformation_order(c) == 6);
    Partition orbits = orbit_partition(c);
    CHECK(orbits.count() == 2);
    CHECK(orbits.blocks[0] == std::vector<int>{0, 1});
    CHECK(orbits.blocks[1] == std::vector<int>{2, 3, 4});
}

TEST_CASE("system validation catches the standard failures") {
    WeightedSpace z4 = uniform_space(4);

    // swap(0,1) and swap(1,2) do not commute
    Transformation s01 = make_transformation({1, 0, 2, 3});
    Transformation s12 = make_transformation({0, 2, 1, 3});
    try {
        validate_system(z4, s01, s12);
        FAIL("non-commuting pair was accepted");
    } catch (const Error& e) {
        CHECK(e.kind == ErrKind::DoesNotCommute);
    }

    // moving mass between unequal weights
    WeightedSpace lop = make_space({Rat(1, 2), Rat(1, 4), Rat(1, 4)});
    Transformation swap01 = make_transformation({1, 0, 2});
    try {
        validate_system(lop, swap01, identity_transformation(3));
        FAIL("non-measure-preserving map was accepted");
    } catch (const Error& e) {
        CHECK(e.kind == ErrKind::NotMeasurePreserving);
    }

    try {
        validate_system(z4, s01, identity_transformation(3));
        FAIL("size mismatch was accepted");
    } catch (const Error& e) {
        CHECK(e.kind == ErrKind::SpaceMismatch);
    }
}

TEST_CASE("the derived third transformation is t1 after t2 inverse") {
    CommutingSystem sys = rotation_system(6, 2, 3);
    CHECK(sys.t3.fwd[0] == 5); // +2 - 3 = -1 mod 6
    CHECK(sys.t3.fwd == compose(sys.t1, inverse(sys.t2)).fwd);
    CHECK(pick(sys, Which::T3).fwd == sys.t3.fwd);

    CommutingSystem idid = validate_system(uniform_space(3),
                                           identity_transformation(3),
                                           identity_transformation(3));
    CHECK(idid.t3.fwd == identity_transformation(3).fwd);
}

TEST_CASE("rotation systems and their orbit structure") {
    CommutingSystem sys = rotation_system(6, 2, 3);
    CHECK(sys.size() == 6);
    CHECK(sys.space.w[0] == Rat(1, 6));
    CHECK(transformation_order(sys.t1) == 3);
    CHECK(transformation_order(sys.t2) == 2);
    CHECK(system_period(sys) == 6);

    CHECK(invariant_partition(sys, Which::T1).count() == 2);
    CHECK(invariant_partition(sys, Which::T2).count() == 3);
    CHECK(invariant_partition(sys, Which::T3).count() == 1);
    CHECK(group_orbit_partition(sys).count() == 1);
    CHECK(is_ergodic(sys));

    // join of the two invariant partitions is the singleton partition
    Partition join = join_partitions(invariant_partition(sys, Which::T1),
                                     invariant_partition(sys, Which::T2));
    CHECK(same_partition(join, singleton_partition(6)));
}

TEST_CASE("product systems pair the actions both ways") {
    CommutingSystem z2 = rotation_system(2, 1, 0);
    CommutingSystem z3 = rotation_system(3, 0, 1);
    CommutingSystem prod = product_system(z2, z3, Pairing::T1xId_IdxT2);
    CHECK(prod.size() == 6);
    CHECK(prod.space.w[0] == Rat(1, 6));
    // (x, y) -> x * 3 + y; t1 adds 1 to x, t2 adds 1 to y
    CHECK(prod.t1.fwd[0] == 3);
    CHECK(prod.t2.fwd[0] == 1);
    CHECK(prod.t2.fwd[2] == 0);
    CHECK(is_ergodic(prod));
    CHECK(system_period(prod) == 6);

    CHECK(invariant_partition(prod, Which::T1).count() == 3);
    CHECK(invariant_partition(prod, Which::T2).count() == 2);
    CHECK(invariant_partition(prod, Which::T3).count() == 1);

    CommutingSystem diag = product_system(z2, z3, Pairing::T1xT1_T2xT2);
    CHECK(diag.size() == 6);
    CHECK_NOTHROW(validate_system(diag.space, diag.t1, diag.t2));
}

TEST_CASE("ergodic components normalize and restrict") {
    WeightedSpace sp = make_space({Rat(1, 2), Rat(1, 3), Rat(1, 6)});
    CommutingSystem sys = validate_system(sp, identity_transformation(3),
                                          identity_transformation(3));
    CHECK_FALSE(is_ergodic(sys));

    auto comps = ergodic_components(sys);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0].mass == Rat(1, 2));
    CHECK(comps[1].mass == Rat(1, 3));
    CHECK(comps[2].mass == Rat(1, 6));

    Rat total = 0;
    for (const auto& c : comps) total += c.mass;
    CHECK(total == 1);

    CommutingSystem one = component_system(sys, comps[1]);
    CHECK(one.size() == 1);
    CHECK(one.space.w[0] == 1);

    Observable f;
    f.v = {Rat(5), Rat(7), Rat(9)};
    Observable rf = restrict_observable(f, comps[1].support);
    REQUIRE(rf.size() == 1);
    CHECK(rf.v[0] == 7);
}

TEST_CASE("ergodic components of an ergodic system") {
    CommutingSystem sys = rotation_system(5, 2, 3);
    auto comps = ergodic_components(sys);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].mass == 1);
    CHECK(comps[0].support.size() == 5);
    CommutingSystem whole = component_system(sys, comps[0]);
    CHECK(whole.size() == 5);
    CHECK(whole.space.w == sys.space.w);
}

TEST_CASE("common rotation factor is the gcd rotation") {
    RotationFactor rf = common_rotation_factor(4, 6);
    CHECK(rf.g == 2);
    CHECK(rf.proj1 == std::vector<int>{0, 1, 0, 1});
    CHECK(rf.proj2 == std::vector<int>{0, 1, 0, 1, 0, 1});

    RotationFactor co = common_rotation_factor(2, 3);
    CHECK(co.g == 1);
    CHECK(co.proj1 == std::vector<int>{0, 0});
}

TEST_CASE("lifting along a factor map validates and preserves integrals") {
    CommutingSystem z2 = rotation_system(2, 1, 0);
    CommutingSystem z3 = rotation_system(3, 0, 1);
    CommutingSystem prod = product_system(z2, z3, Pairing::T1xId_IdxT2);

    // projecting to the second coordinate intertwines (id, +1)
    std::vector<int> proj(6);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 3; ++y) proj[x * 3 + y] = y;
    CommutingSystem factor = rotation_system(3, 0, 1);

    Observable f;
    f.v = {Rat(1, 2), Rat(1, 3), Rat(1, 5)};
    Observable lifted = lift_observable(prod, factor, proj, f);
    REQUIRE(lifted.size() == 6);
    for (int p = 0; p < 6; ++p) CHECK(lifted.v[p] == f.v[proj[p]]);
    CHECK(integrate(prod.space, lifted) == integrate(factor.space, f));

    // projecting to the first coordinate cannot intertwine a +1 second map
    std::vector<int> bad(6);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 3; ++y) bad[x * 3 + y] = x;
    CommutingSystem z2f = rotation_system(2, 1, 1);
    Observable g;
    g.v = {Rat(1), Rat(2)};
    try {
        lift_observable(prod, z2f, bad, g);
        FAIL("projection that breaks t2 was accepted");
    } catch (const Error& e) {
        CHECK(e.kind == ErrKind::NotAFactorMap);
    }
}

TEST_CASE("random commuting systems validate across many seeds") {
    Rng rng(414);
    for (int it = 0; it < 200; ++it) {
        CommutingSystem sys = random_commuting_system(rng, 8);
        CHECK(sys.size() >= 1);
        CHECK(sys.size() <= 8);
        CHECK_NOTHROW(validate_system(sys.space, sys.t1, sys.t2));
        CHECK(compose(sys.t1, sys.t2).fwd == compose(sys.t2, sys.t1).fwd);
    }
}

TEST_CASE("random centralizer elements commute with their base") {
    Rng rng(415);
    for (int it = 0; it < 200; ++it) {
        int m = 1 + static_cast<int>(rand_below(rng, 10));
        Transformation t = make_transformation(random_permutation(rng, m));
        Transformation c = random_centralizer_element(rng, t);
        CHECK(compose(t, c).fwd == compose(c, t).fwd);
    }
}

TEST_CASE("rand_below stays in range and hits every residue") {
    Rng rng(416);
    std::vector<int> seen(5, 0);
    for (int it = 0; it < 500; ++it) {
        std::uint64_t v = rand_below(rng, 5);
        REQUIRE(v < 5);
        ++seen[static_cast<int>(v)];
    }
    for (int r = 0; r < 5; ++r) CHECK(seen[r] > 0);
}

TEST_CASE("the standard corpus is deterministic and small") {
    auto corpus = standard_corpus();
    CHECK(corpus.size() >= 20);
    for (const auto& sys : corpus) {
        CHECK(sys.size() <= 8);
        CHECK_FALSE(sys.name.empty());
        CHECK_NOTHROW(validate_system(sys.space, sys.t1, sys.t2));
    }
    auto again = standard_corpus();
    REQUIRE(again.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(again[i].name == corpus[i].name);
        CHECK(again[i].t1.fwd == corpus[i].t1.fwd);
        CHECK(again[i].t2.fwd == corpus[i].t2.fwd);
        CHECK(again[i].space.w == corpus[i].space.w);
    }
}
