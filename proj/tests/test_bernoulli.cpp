#include "doctest.h"

#include "erglab/bernoulli.hpp"

using namespace erglab;

namespace {

BernoulliSpec coin_and_die() {
    BernoulliComponent coin{2, {Rat(1, 3), Rat(2, 3)}};
    BernoulliComponent die{3, {Rat(1, 2), Rat(1, 4), Rat(1, 4)}};
    return make_bernoulli_spec({coin, die});
}

} // namespace

TEST_CASE("component specs validate their marginals") {
    CHECK_NOTHROW(coin_and_die());
    CHECK_THROWS_AS(make_bernoulli_spec({}), Error);
    CHECK_THROWS_AS(make_bernoulli_spec({BernoulliComponent{2, {Rat(1), Rat(1)}}}),
                    Error);
    CHECK_THROWS_AS(make_bernoulli_spec({BernoulliComponent{3, {Rat(1, 2), Rat(1, 2)}}}),
                    Error);
    CHECK_THROWS_AS(
        make_bernoulli_spec({BernoulliComponent{1, {Rat(2)}},
                             BernoulliComponent{1, {Rat(-1)}}}),
        Error);
}

TEST_CASE("cylinder tables must cover the mixed radix exactly") {
    BernoulliSpec spec = coin_and_die();
    // y0 and z-5: 2 * 3 = 6 entries, z varies fastest
    std::vector<Rat> six(6, Rat(1, 7));
    CHECK_NOTHROW(make_cylinder(spec, {{0}, {-5}}, six));
    CHECK_THROWS_AS(make_cylinder(spec, {{0}, {-5}}, {Rat(1), Rat(2)}), Error);
    CHECK_THROWS_AS(make_cylinder(spec, {{0}}, six), Error);
}

TEST_CASE("an unshifted cylinder integrates against the marginals") {
    BernoulliSpec spec = coin_and_die();
    std::vector<Rat> table = {Rat(1), Rat(2), Rat(3), Rat(4), Rat(5), Rat(6)};
    CylinderObservable f = make_cylinder(spec, {{0}, {-5}}, table);
    Rat direct = 0;
    const auto& py = spec.components[0].probs;
    const auto& pz = spec.components[1].probs;
    for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 3; ++z) direct += py[y] * pz[z] * table[y * 3 + z];
    CHECK(exact_correlation(spec, {ShiftTerm{f, {0, 0}}}) == direct);
}

TEST_CASE("terms on disjoint coordinates multiply") {
    BernoulliSpec spec = coin_and_die();
    std::vector<Rat> table = {Rat(2), Rat(5)};
    CylinderObservable f = make_cylinder(spec, {{0}, {}}, table);
    Rat single = exact_correlation(spec, {ShiftTerm{f, {0, 0}}});
    Rat pair = exact_correlation(spec, {ShiftTerm{f, {0, 0}},
                                        ShiftTerm{f, {7, 0}}});
    CHECK(single == Rat(2) * Rat(1, 3) + Rat(5) * Rat(2, 3));
    CHECK(pair == single * single);

    // overlapping coordinates couple instead
    Rat same = exact_correlation(spec, {ShiftTerm{f, {0, 0}},
                                        ShiftTerm{f, {0, 0}}});
    CHECK(same == Rat(4) * Rat(1, 3) + Rat(25) * Rat(2, 3));
}

TEST_CASE("shift lists must match the component count") {
    BernoulliSpec spec = coin_and_die();
    CylinderObservable f =
        make_cylinder(spec, {{0}, {}}, {Rat(1), Rat(0)});
    CHECK_THROWS_AS(exact_correlation(spec, {ShiftTerm{f, {0}}}), Error);
}

TEST_CASE("the assignment budget rejects oversized joint supports") {
    BernoulliSpec spec = make_bernoulli_spec(
        {BernoulliComponent{3, {Rat(1, 3), Rat(1, 3), Rat(1, 3)}}});
    std::vector<Rat> table(243, Rat(1)); // reads five coordinates
    CylinderObservable f = make_cylinder(spec, {{0, 1, 2, 3, 4}}, table);
    try {
        exact_correlation(spec, {ShiftTerm{f, {0}}, ShiftTerm{f, {5}},
                                 ShiftTerm{f, {10}}});
        FAIL("3^15 joint assignments were not rejected");
    } catch (const Error& e) {
        CHECK(e.kind == ErrKind::SizeLimitExceeded);
    }
}

TEST_CASE("the three-sequence set has the stated measure") {
    CylinderObservable table = counterexample_table();
    REQUIRE(table.table.size() == 27);
    int ones = 0;
    for (const Rat& v : table.table) {
        CHECK((v == 0 || v == 1));
        if (v == 1) ++ones;
    }
    CHECK(ones == 16);
    CHECK(counterexample_mu() == Rat(16, 27));
    CHECK(counterexample_value(0) == Rat(16, 27));
}

TEST_CASE("shifted correlations match a direct six-coordinate enumeration") {
    const std::vector<Rat>& t = counterexample_table().table;
    auto lookup = [&](int i, int j, int k) { return t[i * 9 + j * 3 + k]; };
    // coordinates: a = y_0, b = y_-n, c = z_0, d = z_-n, e = w_0, g = w_-n
    Rat direct = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    for (int e = 0; e < 3; ++e)
                        for (int g = 0; g < 3; ++g)
                            direct += lookup(a, c, e) * lookup(b, c, g) *
                                      lookup(a, d, g);
    direct /= 729;
    CHECK(direct == Rat(145, 729));

    for (long long n : {1ll, -1ll, 5ll, -7ll, 100ll})
        CHECK(counterexample_value(n) == Rat(145, 729));

    BernoulliSpec spec = counterexample_spec();
    CHECK(exact_correlation(spec, counterexample_terms(1)) == Rat(145, 729));
    CHECK(exact_correlation(spec, counterexample_terms(-7)) == Rat(145, 729));
}

TEST_CASE("zero shift is a separate code path") {
    CHECK_THROWS_AS(counterexample_terms(0), Error);
    try {
        counterexample_terms(0);
    } catch (const Error& e) {
        CHECK(e.kind == ErrKind::ZeroShift);
    }
}

TEST_CASE("the correlation sits below 96 percent of the cube") {
    Rat value = counterexample_value(3);
    Rat cube = rat_pow(counterexample_mu(), 3);
    CHECK(cube == Rat(4096, 19683));
    CHECK(value < Rat(24, 25) * cube);
    CHECK(value * 19683 == 3915); // the same number scaled to 3^9
}

TEST_CASE("minimal amplification powers match a brute-force loop") {
    Rat ratio = (counterexample_value(1)) / rat_pow(counterexample_mu(), 3);
    CHECK(ratio == Rat(3915, 4096));

    auto brute = [&](const Rat& c) {
        unsigned long long l = 1;
        Rat pow = ratio;
        while (!(pow < c)) {
            pow *= ratio;
            ++l;
        }
        return l;
    };

    struct Case {
        Rat c;
        unsigned long long expected;
    };
    std::vector<Case> cases = {{Rat(1), 1},
                               {Rat(24, 25), 1},
                               {Rat(1, 2), 16},
                               {Rat(1, 100), 102}};
    for (const Case& cs : cases) {
        PowerCertificate pc = counterexample_power(cs.c);
        CHECK(pc.l == cs.expected);
        CHECK(pc.l == brute(cs.c));
        CHECK(pc.certificate);
        CHECK(pc.lhs == rat_pow(Rat(145, 729), static_cast<unsigned long>(pc.l)));
        CHECK(pc.rhs ==
              cs.c * rat_pow(Rat(4096, 19683), static_cast<unsigned long>(pc.l)));
        CHECK(pc.lhs < pc.rhs);
        if (pc.l > 1) {
            // one power less does not certify
            Rat prev = rat_pow(ratio, static_cast<unsigned long>(pc.l - 1));
            CHECK(!(prev < cs.c));
        }
    }
}

TEST_CASE("amplification rejects constants outside the unit interval") {
    CHECK_THROWS_AS(counterexample_power(Rat(0)), Error);
    CHECK_THROWS_AS(counterexample_power(Rat(-1, 2)), Error);
    CHECK_THROWS_AS(counterexample_power(Rat(3, 2)), Error);
    CHECK_NOTHROW(counterexample_power(Rat(1)));
}
