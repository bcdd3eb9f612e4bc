#include "doctest.h"

#include "erglab/randomgen.hpp"
#include "erglab/space.hpp"

using namespace erglab;

namespace {

WeightedSpace uniform_space(int m) {
    return make_space(std::vector<Rat>(m, Rat(1, m)));
}

Rat q(long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

} // namespace

TEST_CASE("space construction validates weights") {
    CHECK_NOTHROW(uniform_space(4));
    CHECK_NOTHROW(make_space({q(1, 2), q(1, 3), q(1, 6)}));

    CHECK_THROWS_AS(make_space({}), Error);
    CHECK_THROWS_AS(make_space({q(1, 2), q(1, 2), Rat(0)}), Error);
    CHECK_THROWS_AS(make_space({q(3, 4), q(-1, 4), q(1, 2)}), Error);
    try {
        make_space({q(1, 2), q(1, 3)});
        FAIL("weights that sum to 5/6 were accepted");
    } catch (const Error& e) {
        CHECK(e.kind == ErrKind::WeightsDontSumToOne);
    }
}

TEST_CASE("integrate is the exact weighted sum") {
    WeightedSpace z4 = uniform_space(4);
    CHECK(integrate(z4, const_observable(4, q(2, 7))) == q(2, 7));
    CHECK(integrate(z4, indicator(4, {0})) == q(1, 4));

    WeightedSpace sp = make_space({q(1, 2), q(1, 3), q(1, 6)});
    Observable f;
    f.v = {Rat(0), Rat(1), Rat(2)};
    CHECK(integrate(sp, f) == q(2, 3));
}

TEST_CASE("indicator rejects out-of-range points") {
    CHECK_THROWS_AS(indicator(3, {0, 3}), Error);
    CHECK_THROWS_AS(indicator(3, {-1}), Error);
    Observable f = indicator(3, {1, 1, 2});
    CHECK(f.v[0] == 0);
    CHECK(f.v[1] == 1);
    CHECK(f.v[2] == 1);
}

TEST_CASE("partitions canonicalize by first occurrence") {
    Partition p = partition_from_block_of({7, 3, 7, 3, 9});
    CHECK(p.count() == 3);
    CHECK(p.block_of == std::vector<int>{0, 1, 0, 1, 2});
    CHECK(p.blocks[0] == std::vector<int>{0, 2});
    CHECK(p.blocks[2] == std::vector<int>{4});

    CHECK(same_partition(p, partition_from_block_of({0, 1, 0, 1, 2})));
    CHECK_FALSE(same_partition(p, singleton_partition(5)));
}

TEST_CASE("join of partitions is the common refinement") {
    Partition rows = partition_from_block_of({0, 0, 1, 1});
    Partition cols = partition_from_block_of({0, 1, 0, 1});
    Partition j = join_partitions(rows, cols);
    CHECK(same_partition(j, singleton_partition(4)));

    CHECK(same_partition(join_partitions(rows, trivial_partition(4)), rows));
    CHECK(same_partition(join_partitions(rows, rows), rows));

    CHECK(refines(j, rows));
    CHECK(refines(rows, trivial_partition(4)));
    CHECK_FALSE(refines(rows, cols));
}

TEST_CASE("partition join lattice laws on random triples") {
    Rng rng(411);
    for (int it = 0; it < 50; ++it) {
        int m = 1 + static_cast<int>(rand_below(rng, 9));
        auto rand_part = [&] {
            std::vector<int> raw(m);
            for (int x = 0; x < m; ++x)
                raw[x] = static_cast<int>(rand_below(rng, 4));
            return partition_from_block_of(raw);
        };
        Partition a = rand_part(), b = rand_part(), c = rand_part();
        CHECK(same_partition(join_partitions(a, b), join_partitions(b, a)));
        CHECK(same_partition(join_partitions(a, join_partitions(b, c)),
                             join_partitions(join_partitions(a, b), c)));
        CHECK(same_partition(join_partitions(a, a), a));
    }
}

TEST_CASE("conditional expectation averages over atoms") {
    WeightedSpace z4 = uniform_space(4);
    Observable f = indicator(4, {0});
    Partition p = partition_from_block_of({0, 1, 0, 1});
    Observable g = cond_exp(z4, f, p);
    CHECK(g.v == std::vector<Rat>{q(1, 2), Rat(0), q(1, 2), Rat(0)});

    CHECK(cond_exp(z4, f, singleton_partition(4)).v == f.v);
    Observable avg = cond_exp(z4, f, trivial_partition(4));
    for (const Rat& x : avg.v) CHECK(x == q(1, 4));
}

TEST_CASE("conditional expectation is a projection with the tower property") {
    Rng rng(412);
    for (int it = 0; it < 30; ++it) {
        int m = 2 + static_cast<int>(rand_below(rng, 8));
        CommutingSystem sys = random_commuting_system(rng, m);
        const WeightedSpace& sp = sys.space;
        Observable f = random_observable_band(rng, sp.size());

        std::vector<int> raw(sp.size());
        for (int x = 0; x < sp.size(); ++x)
            raw[x] = static_cast<int>(rand_below(rng, 3));
        Partition q_fine = partition_from_block_of(raw);
        for (int x = 0; x < sp.size(); ++x) raw[x] %= 2;
        Partition p_coarse = join_partitions(partition_from_block_of(raw),
                                             trivial_partition(sp.size()));

        Observable ef = cond_exp(sp, f, q_fine);
        CHECK(integrate(sp, ef) == integrate(sp, f));
        CHECK(cond_exp(sp, ef, q_fine).v == ef.v);

        Partition q_joined = join_partitions(q_fine, p_coarse);
        Observable via_q = cond_exp(sp, cond_exp(sp, f, q_joined), p_coarse);
        CHECK(via_q.v == cond_exp(sp, f, p_coarse).v);
    }
}

TEST_CASE("cond_exp rejects mismatched sizes") {
    WeightedSpace z4 = uniform_space(4);
    CHECK_THROWS_AS(cond_exp(z4, indicator(3, {0}), singleton_partition(4)),
                    Error);
    CHECK_THROWS_AS(cond_exp(z4, indicator(4, {0}), singleton_partition(3)),
                    Error);
}

TEST_CASE("product bound on the worked example") {
    WeightedSpace z4 = uniform_space(4);
    Observable f = indicator(4, {0});
    Partition p1 = partition_from_block_of({0, 0, 1, 1});
    Partition p2 = partition_from_block_of({0, 1, 0, 1});
    HolderBound hb = holder_product_bound(z4, f, {p1, p2});
    CHECK(hb.lhs == q(1, 16));
    CHECK(hb.rhs == q(1, 64));
    CHECK(hb.holds);
}

TEST_CASE("product bound equality cases") {
    WeightedSpace sp = make_space({q(1, 2), q(1, 3), q(1, 6)});
    Observable c = const_observable(3, q(2, 5));
    Partition p = partition_from_block_of({0, 1, 0});
    HolderBound hb = holder_product_bound(sp, c, {p, trivial_partition(3), p});
    CHECK(hb.lhs == rat_pow(q(2, 5), 4));
    CHECK(hb.rhs == hb.lhs);
    CHECK(hb.holds);

    Observable f;
    f.v = {q(1, 2), Rat(2), Rat(0)};
    HolderBound one = holder_product_bound(sp, f, {trivial_partition(3)});
    CHECK(one.lhs == integrate(sp, f) * integrate(sp, f));
    CHECK(one.rhs == one.lhs);
}

TEST_CASE("product bound rejects negative observables") {
    WeightedSpace z2 = uniform_space(2);
    Observable f;
    f.v = {Rat(1), Rat(-1)};
    CHECK_THROWS_AS(holder_product_bound(z2, f, {trivial_partition(2)}), Error);
}

TEST_CASE("product bound holds on random nonnegative inputs") {
    Rng rng(413);
    for (int it = 0; it < 200; ++it) {
        int m = 1 + static_cast<int>(rand_below(rng, 10));
        CommutingSystem sys = random_commuting_system(rng, m);
        Observable f = random_observable_nonneg(rng, sys.size());
        int k = 1 + static_cast<int>(rand_below(rng, 4));
        std::vector<Partition> parts;
        for (int i = 0; i < k; ++i) {
            std::vector<int> raw(sys.size());
            for (int x = 0; x < sys.size(); ++x)
                raw[x] = static_cast<int>(rand_below(rng, 1 + rand_below(rng, 4)));
            parts.push_back(partition_from_block_of(raw));
        }
        HolderBound hb = holder_product_bound(sys.space, f, parts);
        CHECK(hb.holds);
        CHECK(hb.lhs >= hb.rhs);
    }
}
