#include "erglab/space.hpp"

#include <algorithm>
#include <unordered_map>

namespace erglab {

WeightedSpace make_space(std::vector<Rat> weights) {
    if (weights.empty())
        throw Error(ErrKind::NonPositiveWeight, "space needs at least one point");
    Rat sum = 0;
    for (auto& w : weights) {
        w.canonicalize();
        if (sgn(w) <= 0)
            throw Error(ErrKind::NonPositiveWeight,
                        "non-positive weight " + rat_str(w));
        sum += w;
    }
    if (sum != 1)
        throw Error(ErrKind::WeightsDontSumToOne,
                    "weights sum to " + rat_str(sum));
    return WeightedSpace{std::move(weights)};
}

Partition partition_from_block_of(const std::vector<int>& raw) {
    Partition p;
    p.block_of.assign(raw.size(), -1);
    std::unordered_map<int, int> remap;
    for (std::size_t x = 0; x < raw.size(); ++x) {
        auto [it, fresh] = remap.try_emplace(raw[x], static_cast<int>(p.blocks.size()));
        if (fresh) p.blocks.emplace_back();
        p.block_of[x] = it->second;
        p.blocks[it->second].push_back(static_cast<int>(x));
    }
    return p;
}

Partition singleton_partition(int m) {
    std::vector<int> b(m);
    for (int i = 0; i < m; ++i) b[i] = i;
    return partition_from_block_of(b);
}

Partition trivial_partition(int m) {
    return partition_from_block_of(std::vector<int>(m, 0));
}

Partition join_partitions(const Partition& p, const Partition& q) {
    if (p.size() != q.size())
        throw Error(ErrKind::SpaceMismatch, "join of partitions over different spaces");
    int m = p.size();
    std::vector<int> key(m);
    std::unordered_map<long long, int> remap;
    for (int x = 0; x < m; ++x) {
        long long k = static_cast<long long>(p.block_of[x]) * (m + 1) + q.block_of[x];
        auto [it, fresh] = remap.try_emplace(k, static_cast<int>(remap.size()));
        (void)fresh;
        key[x] = it->second;
    }
    return partition_from_block_of(key);
}

bool same_partition(const Partition& p, const Partition& q) {
    return p.block_of == q.block_of;
}

bool refines(const Partition& p, const Partition& q) {
    if (p.size() != q.size()) return false;
    std::vector<int> image(p.count(), -1);
    for (int x = 0; x < p.size(); ++x) {
        int b = p.block_of[x];
        if (image[b] == -1) image[b] = q.block_of[x];
        else if (image[b] != q.block_of[x]) return false;
    }
    return true;
}

Observable const_observable(int m, const Rat& c) {
    return Observable{std::vector<Rat>(m, c)};
}

Observable indicator(int m, const std::vector<int>& points) {
    Observable f{std::vector<Rat>(m, Rat(0))};
    for (int x : points) {
        if (x < 0 || x >= m)
            throw Error(ErrKind::OutOfRange, "indicator point out of range");
        f.v[x] = 1;
    }
    return f;
}

static void check_sizes(int a, int b, const char* what) {
    if (a != b) throw Error(ErrKind::SpaceMismatch, what);
}

Rat integrate(const WeightedSpace& sp, const Observable& f) {
    check_sizes(sp.size(), f.size(), "integrate: observable on a different space");
    Rat s = 0;
    for (int x = 0; x < sp.size(); ++x) s += sp.w[x] * f.v[x];
    return s;
}

Observable cond_exp(const WeightedSpace& sp, const Observable& f, const Partition& p) {
    check_sizes(sp.size(), f.size(), "cond_exp: observable on a different space");
    check_sizes(sp.size(), p.size(), "cond_exp: partition over a different space");
    Observable out{std::vector<Rat>(sp.size())};
    for (const auto& block : p.blocks) {
        Rat mass = 0, acc = 0;
        for (int x : block) {
            mass += sp.w[x];
            acc += sp.w[x] * f.v[x];
        }
        Rat avg = acc / mass;
        for (int x : block) out.v[x] = avg;
    }
    return out;
}

HolderBound holder_product_bound(const WeightedSpace& sp, const Observable& f,
                                 const std::vector<Partition>& parts) {
    check_sizes(sp.size(), f.size(), "holder_product_bound: observable space");
    for (const auto& x : f.v)
        if (sgn(x) < 0)
            throw Error(ErrKind::NegativeObservable,
                        "holder_product_bound needs f >= 0, got " + rat_str(x));
    Observable prod = f;
    for (const auto& p : parts) {
        Observable e = cond_exp(sp, f, p);
        for (int x = 0; x < sp.size(); ++x) prod.v[x] *= e.v[x];
    }
    HolderBound out;
    out.lhs = integrate(sp, prod);
    out.rhs = rat_pow(integrate(sp, f), static_cast<unsigned long>(parts.size()) + 1);
    out.holds = out.lhs >= out.rhs;
    return out;
}

} // namespace erglab
