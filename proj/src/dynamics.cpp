#include "erglab/dynamics.hpp"

#include <algorithm>
#include <numeric>

namespace erglab {

Transformation make_transformation(std::vector<int> fwd) {
    int m = static_cast<int>(fwd.size());
    if (m == 0) throw Error(ErrKind::ValidationError, "transformation on an empty point set");
    std::vector<int> inv(m, -1);
    for (int x = 0; x < m; ++x) {
        int y = fwd[x];
        if (y < 0 || y >= m)
            throw Error(ErrKind::NotBijective, "image out of range at point " + std::to_string(x));
        if (inv[y] != -1)
            throw Error(ErrKind::NotBijective,
                        "points " + std::to_string(inv[y]) + " and " + std::to_string(x) +
                            " both map to " + std::to_string(y));
        inv[y] = x;
    }
    return Transformation{std::move(fwd), std::move(inv)};
}

Transformation identity_transformation(int m) {
    std::vector<int> f(m);
    std::iota(f.begin(), f.end(), 0);
    return make_transformation(std::move(f));
}

Transformation inverse(const Transformation& t) {
    return Transformation{t.inv, t.fwd};
}

Transformation compose(const Transformation& a, const Transformation& b) {
    if (a.size() != b.size())
        throw Error(ErrKind::SpaceMismatch, "composing transformations of different spaces");
    int m = a.size();
    std::vector<int> f(m);
    for (int x = 0; x < m; ++x) f[x] = a.fwd[b.fwd[x]];
    return make_transformation(std::move(f));
}

Transformation transformation_power(const Transformation& t, long long n) {
    int m = t.size();
    Transformation base = n >= 0 ? t : inverse(t);
    unsigned long long e = n >= 0 ? static_cast<unsigned long long>(n)
                                  : static_cast<unsigned long long>(-(n + 1)) + 1;
    Transformation acc = identity_transformation(m);
    while (e > 0) {
        if (e & 1) acc = compose(acc, base);
        base = compose(base, base);
        e >>= 1;
    }
    return acc;
}

unsigned long long transformation_order(const Transformation& t) {
    int m = t.size();
    std::vector<char> seen(m, 0);
    mpz_class l = 1;
    for (int x = 0; x < m; ++x) {
        if (seen[x]) continue;
        unsigned long long len = 0;
        for (int y = x; !seen[y]; y = t.fwd[y]) {
            seen[y] = 1;
            ++len;
        }
        mpz_class cl(static_cast<unsigned long>(len));
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), cl.get_mpz_t());
    }
    if (!l.fits_ulong_p() || l.get_ui() > (1ull << 62))
        throw Error(ErrKind::SizeLimitExceeded, "transformation order exceeds 2^62");
    return l.get_ui();
}

Partition orbit_partition(const Transformation& t) {
    int m = t.size();
    std::vector<int> block(m, -1);
    int next = 0;
    for (int x = 0; x < m; ++x) {
        if (block[x] != -1) continue;
        for (int y = x; block[y] == -1; y = t.fwd[y]) block[y] = next;
        ++next;
    }
    return partition_from_block_of(block);
}

CommutingSystem validate_system(const WeightedSpace& sp, const Transformation& t1,
                                const Transformation& t2) {
    int m = sp.size();
    if (t1.size() != m || t2.size() != m)
        throw Error(ErrKind::SpaceMismatch, "transformation size differs from space size");
    // Bijectivity was established at construction; re-check the stored inverses.
    for (int x = 0; x < m; ++x) {
        if (t1.inv[t1.fwd[x]] != x || t2.inv[t2.fwd[x]] != x)
            throw Error(ErrKind::NotBijective, "stored inverse is inconsistent");
    }
    for (int x = 0; x < m; ++x) {
        if (sp.w[t1.fwd[x]] != sp.w[x])
            throw Error(ErrKind::NotMeasurePreserving,
                        "t1 changes the weight of point " + std::to_string(x));
        if (sp.w[t2.fwd[x]] != sp.w[x])
            throw Error(ErrKind::NotMeasurePreserving,
                        "t2 changes the weight of point " + std::to_string(x));
    }
    for (int x = 0; x < m; ++x) {
        if (t1.fwd[t2.fwd[x]] != t2.fwd[t1.fwd[x]])
            throw Error(ErrKind::DoesNotCommute,
                        "t1 t2 != t2 t1 at point " + std::to_string(x));
    }
    CommutingSystem sys;
    sys.space = sp;
    sys.t1 = t1;
    sys.t2 = t2;
    sys.t3 = compose(t1, inverse(t2));
    return sys;
}

const Transformation& pick(const CommutingSystem& sys, Which w) {
    switch (w) {
        case Which::T1: return sys.t1;
        case Which::T2: return sys.t2;
        case Which::T3: return sys.t3;
    }
    throw Error(ErrKind::Internal, "bad Which");
}

Partition invariant_partition(const CommutingSystem& sys, Which w) {
    return orbit_partition(pick(sys, w));
}

namespace {
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};
} // namespace

Partition group_orbit_partition(const CommutingSystem& sys) {
    int m = sys.size();
    UnionFind uf(m);
    for (int x = 0; x < m; ++x) {
        uf.unite(x, sys.t1.fwd[x]);
        uf.unite(x, sys.t2.fwd[x]);
    }
    std::vector<int> block(m);
    for (int x = 0; x < m; ++x) block[x] = uf.find(x);
    return partition_from_block_of(block);
}

bool is_ergodic(const CommutingSystem& sys) {
    return group_orbit_partition(sys).count() == 1;
}

unsigned long long system_period(const CommutingSystem& sys) {
    mpz_class a(static_cast<unsigned long>(transformation_order(sys.t1)));
    mpz_class b(static_cast<unsigned long>(transformation_order(sys.t2)));
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (!l.fits_ulong_p() || l.get_ui() > (1ull << 62))
        throw Error(ErrKind::SizeLimitExceeded, "system period exceeds 2^62");
    return l.get_ui();
}

std::vector<ErgodicComponent> ergodic_components(const CommutingSystem& sys) {
    Partition orbits = group_orbit_partition(sys);
    std::vector<ErgodicComponent> out;
    for (int b = 0; b < orbits.count(); ++b) {
        ErgodicComponent c;
        c.support = orbits.blocks[b];
        c.index = b;
        c.mass = 0;
        for (int x : c.support) c.mass += sys.space.w[x];
        std::vector<Rat> w;
        w.reserve(c.support.size());
        for (int x : c.support) w.push_back(sys.space.w[x] / c.mass);
        c.measure = make_space(std::move(w));
        out.push_back(std::move(c));
    }
    return out;
}

CommutingSystem component_system(const CommutingSystem& sys, const ErgodicComponent& c) {
    int k = static_cast<int>(c.support.size());
    std::vector<int> to_local(sys.size(), -1);
    for (int i = 0; i < k; ++i) to_local[c.support[i]] = i;
    auto restrict_map = [&](const Transformation& t) {
        std::vector<int> f(k);
        for (int i = 0; i < k; ++i) {
            int img = to_local[t.fwd[c.support[i]]];
            if (img < 0) throw Error(ErrKind::Internal, "component support not invariant");
            f[i] = img;
        }
        return make_transformation(std::move(f));
    };
    return validate_system(c.measure, restrict_map(sys.t1), restrict_map(sys.t2));
}

Observable restrict_observable(const Observable& f, const std::vector<int>& support) {
    Observable out;
    out.v.reserve(support.size());
    for (int x : support) out.v.push_back(f.v[x]);
    return out;
}

CommutingSystem product_system(const CommutingSystem& a, const CommutingSystem& b,
                               Pairing pairing) {
    int ma = a.size(), mb = b.size();
    std::vector<Rat> w;
    w.reserve(static_cast<std::size_t>(ma) * mb);
    for (int x = 0; x < ma; ++x)
        for (int y = 0; y < mb; ++y) w.push_back(a.space.w[x] * b.space.w[y]);
    auto pair_map = [&](const Transformation& ta, const Transformation& tb) {
        std::vector<int> f(static_cast<std::size_t>(ma) * mb);
        for (int x = 0; x < ma; ++x)
            for (int y = 0; y < mb; ++y)
                f[static_cast<std::size_t>(x) * mb + y] = ta.fwd[x] * mb + tb.fwd[y];
        return make_transformation(std::move(f));
    };
    Transformation u1, u2;
    if (pairing == Pairing::T1xId_IdxT2) {
        u1 = pair_map(a.t1, identity_transformation(mb));
        u2 = pair_map(identity_transformation(ma), b.t2);
    } else {
        u1 = pair_map(a.t1, b.t1);
        u2 = pair_map(a.t2, b.t2);
    }
    return validate_system(make_space(std::move(w)), u1, u2);
}

CommutingSystem rotation_system(int n, long long a1, long long a2) {
    if (n < 1) throw Error(ErrKind::OutOfRange, "rotation_system needs N >= 1");
    auto rot = [&](long long a) {
        long long r = ((a % n) + n) % n;
        std::vector<int> f(n);
        for (int x = 0; x < n; ++x) f[x] = static_cast<int>((x + r) % n);
        return make_transformation(std::move(f));
    };
    std::vector<Rat> w(n, Rat(1, n));
    return validate_system(make_space(std::move(w)), rot(a1), rot(a2));
}

RotationFactor common_rotation_factor(int p, int q) {
    if (p < 1 || q < 1) throw Error(ErrKind::OutOfRange, "common_rotation_factor needs p, q >= 1");
    RotationFactor out;
    out.g = static_cast<int>(std::gcd(p, q));
    out.proj1.resize(p);
    out.proj2.resize(q);
    for (int x = 0; x < p; ++x) out.proj1[x] = x % out.g;
    for (int x = 0; x < q; ++x) out.proj2[x] = x % out.g;
    return out;
}

Observable lift_observable(const CommutingSystem& big, const CommutingSystem& factor,
                           const std::vector<int>& proj, const Observable& f_on_factor) {
    int m = big.size(), k = factor.size();
    if (static_cast<int>(proj.size()) != m)
        throw Error(ErrKind::NotAFactorMap, "projection not defined on every point");
    if (f_on_factor.size() != k)
        throw Error(ErrKind::SpaceMismatch, "observable not on the factor space");
    std::vector<Rat> pushed(k, Rat(0));
    for (int x = 0; x < m; ++x) {
        int y = proj[x];
        if (y < 0 || y >= k)
            throw Error(ErrKind::NotAFactorMap, "projection image out of range");
        pushed[y] += big.space.w[x];
    }
    for (int y = 0; y < k; ++y)
        if (pushed[y] != factor.space.w[y])
            throw Error(ErrKind::NotAFactorMap,
                        "projection does not push the measure to the factor measure");
    for (int x = 0; x < m; ++x) {
        if (proj[big.t1.fwd[x]] != factor.t1.fwd[proj[x]])
            throw Error(ErrKind::NotAFactorMap, "projection does not intertwine t1");
        if (proj[big.t2.fwd[x]] != factor.t2.fwd[proj[x]])
            throw Error(ErrKind::NotAFactorMap, "projection does not intertwine t2");
    }
    Observable out{std::vector<Rat>(m)};
    for (int x = 0; x < m; ++x) out.v[x] = f_on_factor.v[proj[x]];
    return out;
}

} // namespace erglab
