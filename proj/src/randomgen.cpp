#include "erglab/randomgen.hpp"

#include <algorithm>

#include "erglab/errors.hpp"

namespace erglab {

std::uint64_t rand_below(Rng& rng, std::uint64_t n) {
    if (n == 0) throw Error(ErrKind::OutOfRange, "rand_below needs n >= 1");
    // Rejection keeps the draw unbiased.
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % n;
}

std::vector<int> random_permutation(Rng& rng, int m) {
    std::vector<int> p(m);
    for (int i = 0; i < m; ++i) p[i] = i;
    for (int i = m - 1; i > 0; --i) {
        int j = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(i) + 1));
        std::swap(p[i], p[j]);
    }
    return p;
}

Transformation random_centralizer_element(Rng& rng, const Transformation& t) {
    const int m = t.size();
    std::vector<std::vector<int>> cycles;
    std::vector<char> seen(m, 0);
    for (int x = 0; x < m; ++x) {
        if (seen[x]) continue;
        cycles.emplace_back();
        for (int y = x; !seen[y]; y = t.fwd[y]) {
            seen[y] = 1;
            cycles.back().push_back(y);
        }
    }
    // Group cycles by length, shuffle within each group, rotate each cycle.
    std::vector<int> order(cycles.size());
    for (std::size_t i = 0; i < cycles.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return cycles[a].size() < cycles[b].size();
    });

    std::vector<int> fwd(m);
    std::size_t lo = 0;
    while (lo < order.size()) {
        std::size_t hi = lo;
        while (hi < order.size() &&
               cycles[order[hi]].size() == cycles[order[lo]].size())
            ++hi;
        std::vector<int> group(order.begin() + lo, order.begin() + hi);
        std::vector<int> target = group;
        for (std::size_t i = target.size() - 1; i > 0; --i)
            std::swap(target[i], target[rand_below(rng, i + 1)]);
        const std::size_t len = cycles[group[0]].size();
        for (std::size_t i = 0; i < group.size(); ++i) {
            const auto& src = cycles[group[i]];
            const auto& dst = cycles[target[i]];
            std::size_t offset = rand_below(rng, len);
            for (std::size_t k = 0; k < len; ++k)
                fwd[src[k]] = dst[(k + offset) % len];
        }
        lo = hi;
    }
    return make_transformation(std::move(fwd));
}

CommutingSystem random_commuting_system(Rng& rng, int max_points) {
    if (max_points < 1)
        throw Error(ErrKind::OutOfRange, "max_points must be at least 1");
    int m = 1 + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(max_points)));
    Transformation t1 = make_transformation(random_permutation(rng, m));
    Transformation t2 = random_centralizer_element(rng, t1);

    // Weights constant on the orbits of <t1, t2> are preserved by both.
    std::vector<int> rep(m);
    for (int x = 0; x < m; ++x) rep[x] = x;
    auto root = [&](int x) {
        while (rep[x] != x) x = rep[x] = rep[rep[x]];
        return x;
    };
    for (int x = 0; x < m; ++x) {
        int a = root(x), b = root(t1.fwd[x]);
        if (a != b) rep[std::max(a, b)] = std::min(a, b);
        a = root(x);
        b = root(t2.fwd[x]);
        if (a != b) rep[std::max(a, b)] = std::min(a, b);
    }
    std::vector<unsigned long> value(m, 0);
    for (int x = 0; x < m; ++x) {
        int r = root(x);
        if (value[r] == 0) value[r] = 1 + static_cast<unsigned long>(rand_below(rng, 8));
    }
    Rat denom = 0;
    for (int x = 0; x < m; ++x) denom += value[root(x)];
    std::vector<Rat> w(m);
    for (int x = 0; x < m; ++x) w[x] = Rat(value[root(x)]) / denom;
    return validate_system(make_space(std::move(w)), t1, t2);
}

namespace {

Observable random_fraction_observable(Rng& rng, int m, bool negative, bool wide) {
    Observable f{std::vector<Rat>(m)};
    for (int x = 0; x < m; ++x) {
        unsigned long q = 1 + static_cast<unsigned long>(rand_below(rng, 8));
        unsigned long span = wide ? 2 * q : q;
        long p = static_cast<long>(rand_below(rng, span + 1));
        if (negative && rand_below(rng, 2)) p = -p;
        f.v[x] = Rat(p, q);
        f.v[x].canonicalize();
    }
    return f;
}

} // namespace

Observable random_observable_unit(Rng& rng, int m) {
    return random_fraction_observable(rng, m, false, false);
}

Observable random_observable_band(Rng& rng, int m) {
    return random_fraction_observable(rng, m, true, false);
}

Observable random_observable_nonneg(Rng& rng, int m) {
    return random_fraction_observable(rng, m, false, true);
}

std::vector<int> random_nonempty_subset(Rng& rng, int m) {
    std::vector<int> out;
    while (out.empty()) {
        out.clear();
        for (int x = 0; x < m; ++x)
            if (rand_below(rng, 2)) out.push_back(x);
    }
    return out;
}

std::vector<CommutingSystem> standard_corpus() {
    std::vector<CommutingSystem> corpus;
    Rng rng(0x5EEDC0DE2024ULL);
    for (int i = 0; i < 20; ++i) {
        CommutingSystem sys = random_commuting_system(rng, 8);
        sys.name = "random-" + std::to_string(i);
        corpus.push_back(std::move(sys));
    }

    CommutingSystem z3 = rotation_system(3, 1, 1);
    z3.name = "Z3 (+1,+1)";
    corpus.push_back(std::move(z3));

    CommutingSystem z2z3 = product_system(rotation_system(2, 1, 0),
                                          rotation_system(3, 0, 1),
                                          Pairing::T1xId_IdxT2);
    z2z3.name = "Z2 x Z3";
    corpus.push_back(std::move(z2z3));

    CommutingSystem id3 = validate_system(
        make_space({Rat(1, 2), Rat(1, 3), Rat(1, 6)}),
        identity_transformation(3), identity_transformation(3));
    id3.name = "identity-3";
    corpus.push_back(std::move(id3));

    CommutingSystem id1 = validate_system(make_space({Rat(1)}),
                                          identity_transformation(1),
                                          identity_transformation(1));
    id1.name = "one-point";
    corpus.push_back(std::move(id1));

    CommutingSystem z6 = rotation_system(6, 2, 3);
    z6.name = "Z6 (+2,+3)";
    corpus.push_back(std::move(z6));
    return corpus;
}

} // namespace erglab
