#include "erglab/recurrence.hpp"

#include <algorithm>
#include <cmath>

#include "erglab/cyclotomic.hpp"
#include "erglab/enclosure.hpp"
#include "erglab/errors.hpp"

namespace erglab {

namespace {

void check_space(const CommutingSystem& sys, const Observable& f,
                 const char* what) {
    if (f.size() != sys.size())
        throw Error(ErrKind::SpaceMismatch,
                    std::string(what) + " has " + std::to_string(f.size()) +
                        " entries, space has " + std::to_string(sys.size()));
}

void check_unit_band(const Observable& f, const char* what) {
    for (const Rat& v : f.v)
        if (v > 1 || v < -1)
            throw Error(ErrKind::ObservableOutOfRange,
                        std::string(what) + " leaves [-1, 1] with value " +
                            rat_str(v));
}

void check_01(const Observable& f, const char* what) {
    for (const Rat& v : f.v)
        if (sgn(v) < 0 || v > 1)
            throw Error(ErrKind::ObservableOutOfRange,
                        std::string(what) + " leaves [0, 1] with value " +
                            rat_str(v));
}

void check_scan_length(unsigned long long steps) {
    if (steps > kMaxScanSteps)
        throw Error(ErrKind::SizeLimitExceeded,
                    "scan needs " + std::to_string(steps) + " steps, limit is " +
                        std::to_string(kMaxScanSteps));
}

// Walks n = 0, 1, ... keeping T1^n and T2^n as point maps; calls visit with
// the two maps at every n in [0, steps).
template <typename F>
void scan_period(const CommutingSystem& sys, unsigned long long steps, F visit) {
    const int m = sys.size();
    std::vector<int> p1(m), p2(m);
    for (int x = 0; x < m; ++x) p1[x] = p2[x] = x;
    for (unsigned long long n = 0; n < steps; ++n) {
        visit(p1, p2);
        for (int x = 0; x < m; ++x) {
            p1[x] = sys.t1.fwd[p1[x]];
            p2[x] = sys.t2.fwd[p2[x]];
        }
    }
}

std::array<Rat, 3> seminorm_bounds(const CommutingSystem& sys, const Observable& a0,
                                   const Observable& a1, const Observable& a2,
                                   std::size_t budget) {
    return {
        seminorm4(a0, box_measure_pair(sys.space, sys.t1, sys.t2, budget)).fourth_power,
        seminorm4(a1, box_measure_pair(sys.space, sys.t1, sys.t3, budget)).fourth_power,
        seminorm4(a2, box_measure_pair(sys.space, sys.t2, sys.t3, budget)).fourth_power,
    };
}

} // namespace

Rat multi_corr(const CommutingSystem& sys, const Observable& f0,
               const Observable& f1, const Observable& f2, long long n) {
    check_space(sys, f0, "f0");
    check_space(sys, f1, "f1");
    check_space(sys, f2, "f2");
    Transformation u1 = transformation_power(sys.t1, n);
    Transformation u2 = transformation_power(sys.t2, n);
    Rat acc = 0;
    for (int x = 0; x < sys.size(); ++x) {
        if (sgn(f0.v[x]) == 0) continue;
        acc += sys.space.w[x] * f0.v[x] * f1.v[u1.fwd[x]] * f2.v[u2.fwd[x]];
    }
    return acc;
}

RecurrenceReport recurrence_set(const CommutingSystem& sys,
                                const std::vector<int>& a, int exponent,
                                const Rat& epsilon,
                                std::optional<unsigned long long> horizon,
                                bool allow_nonergodic) {
    if (exponent != 3 && exponent != 4)
        throw Error(ErrKind::OutOfRange,
                    "exponent must be 3 or 4, got " + std::to_string(exponent));
    if (sgn(epsilon) <= 0)
        throw Error(ErrKind::NonPositiveEpsilon,
                    "epsilon must be positive, got " + rat_str(epsilon));
    if (a.empty()) throw Error(ErrKind::EmptySet, "the set A is empty");
    std::vector<int> pts = a;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.front() < 0 || pts.back() >= sys.size())
        throw Error(ErrKind::OutOfRange, "A contains a point outside the space");

    RecurrenceReport rep;
    rep.ergodic = is_ergodic(sys);
    if (!rep.ergodic && !allow_nonergodic)
        throw Error(ErrKind::ValidationError,
                    "system is not ergodic; pass the override to scan anyway");

    std::vector<char> in_a(sys.size(), 0);
    rep.measure_a = 0;
    for (int x : pts) {
        in_a[x] = 1;
        rep.measure_a += sys.space.w[x];
    }
    rep.exponent = exponent;
    rep.threshold = rat_pow(rep.measure_a, static_cast<unsigned long>(exponent)) -
                    epsilon;
    rep.period = system_period(sys);
    rep.scanned = horizon ? std::min(*horizon, rep.period) : rep.period;
    rep.complete = rep.scanned == rep.period;
    check_scan_length(rep.scanned);

    // T1^n x and T2^n x tracked per member of A only.
    std::vector<int> p1 = pts, p2 = pts;
    rep.values.reserve(rep.scanned);
    for (unsigned long long n = 0; n < rep.scanned; ++n) {
        Rat corr = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (in_a[p1[i]] && in_a[p2[i]]) corr += sys.space.w[pts[i]];
        if (corr > rep.threshold) rep.hits.push_back(n);
        rep.values.push_back(std::move(corr));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            p1[i] = sys.t1.fwd[p1[i]];
            p2[i] = sys.t2.fwd[p2[i]];
        }
    }

    rep.syndetic = !rep.hits.empty();
    rep.max_gap = 0;
    for (std::size_t i = 1; i < rep.hits.size(); ++i)
        rep.max_gap = std::max(rep.max_gap, rep.hits[i] - rep.hits[i - 1]);
    if (rep.complete && !rep.hits.empty())
        rep.max_gap = std::max(rep.max_gap,
                               rep.period - rep.hits.back() + rep.hits.front());
    return rep;
}

CesaroBound cesaro_bound_check(const CommutingSystem& sys, const Observable& f0,
                               const Observable& f1, const Observable& f2,
                               const Rat& t, std::size_t tuple_budget) {
    check_space(sys, f0, "f0");
    check_space(sys, f1, "f1");
    check_space(sys, f2, "f2");
    check_unit_band(f0, "f0");
    check_unit_band(f1, "f1");
    check_unit_band(f2, "f2");

    CesaroBound out;
    out.t = t;
    unsigned long long period = system_period(sys);
    check_scan_length(period);

    Rat tc = t;
    tc.canonicalize();
    mpz_class den = tc.get_den();
    if (!den.fits_sint_p() ||
        mpz_class(static_cast<unsigned long>(period)) % den != 0)
        throw Error(ErrKind::OutOfRange,
                    "denominator of t must divide the period " +
                        std::to_string(period));
    const int b = static_cast<int>(den.get_si());
    out.order = b;
    mpz_class num_mod = tc.get_num() % b;
    if (num_mod < 0) num_mod += b;
    const int step = static_cast<int>(num_mod.get_si());

    // Average of e(nt) I_n as a coefficient vector over the b-th roots.
    CycVec avg = cyc_zero(b);
    int phase = 0;
    scan_period(sys, period, [&](const std::vector<int>& p1, const std::vector<int>& p2) {
        Rat corr = 0;
        for (int x = 0; x < sys.size(); ++x) {
            if (sgn(f0.v[x]) == 0) continue;
            corr += sys.space.w[x] * f0.v[x] * f1.v[p1[x]] * f2.v[p2[x]];
        }
        avg.c[phase] += corr;
        phase += step;
        if (phase >= b) phase -= b;
    });
    Rat inv_p(1, static_cast<unsigned long>(period));
    for (Rat& coef : avg.c) coef *= inv_p;

    out.bounds = seminorm_bounds(sys, f0, f1, f2, tuple_budget);
    Rat min_bound = std::min({out.bounds[0], out.bounds[1], out.bounds[2]});

    if (b == 1) {
        Rat m4 = rat_pow(avg.c[0], 4);
        out.exact = true;
        out.avg_abs_fourth = m4;
        out.avg_abs = std::abs(rat_double(avg.c[0]));
        out.holds = m4 <= min_bound;
        return out;
    }

    CycVec m2 = cyc_mul(avg, cyc_conj(avg));
    CycVec m4 = cyc_mul(m2, m2);
    std::vector<Rat> rem = reduce_mod_cyclotomic(m4);
    bool constant = true;
    for (std::size_t j = 1; j < rem.size(); ++j)
        if (sgn(rem[j]) != 0) constant = false;
    if (constant && !rem.empty()) out.avg_abs_fourth = rem[0];

    double m4d = 0;
    for (int j = 0; j < b; ++j)
        m4d += rat_double(m4.c[j]) * std::cos(2.0 * M_PI * j / b);
    out.avg_abs = std::pow(std::max(m4d, 0.0), 0.25);

    CycVec z = cyc_zero(b);
    for (int j = 0; j < b; ++j) z.c[j] = -m4.c[j];
    z.c[0] += min_bound;
    if (vanishes_at_root(z)) {
        out.exact = true;
        out.holds = true; // equality
    } else if (constant) {
        out.exact = true;
        out.holds = rem[0] <= min_bound;
    } else {
        out.exact = false;
        out.holds = certified_sign_cosine_sum(z.c, b) > 0;
    }
    return out;
}

PairwiseProjections pairwise_projections(const CommutingSystem& sys,
                                         const Observable& f) {
    check_space(sys, f, "f");
    Partition i1 = invariant_partition(sys, Which::T1);
    Partition i2 = invariant_partition(sys, Which::T2);
    Partition i3 = invariant_partition(sys, Which::T3);
    PairwiseProjections out;
    out.h = f;
    out.g0 = cond_exp(sys.space, f, join_partitions(i1, i2));
    out.g1 = cond_exp(sys.space, f, join_partitions(i1, i3));
    out.g2 = cond_exp(sys.space, f, join_partitions(i2, i3));
    return out;
}

Rat j_sequence(const CommutingSystem& sys, const Observable& f, long long n) {
    PairwiseProjections p = pairwise_projections(sys, f);
    return multi_corr(sys, p.g0, p.g1, p.g2, n);
}

J0Check j0_lower_bound_check(const CommutingSystem& sys, const Observable& f) {
    check_space(sys, f, "f");
    check_01(f, "f");
    J0Check out;
    out.j0 = j_sequence(sys, f, 0);
    out.bound = rat_pow(integrate(sys.space, f), 4);
    out.holds = out.j0 >= out.bound;
    return out;
}

DiffBound diff_bound_check(const CommutingSystem& sys, const Observable& f,
                           std::size_t tuple_budget) {
    check_space(sys, f, "f");
    check_01(f, "f");
    PairwiseProjections pr = pairwise_projections(sys, f);

    unsigned long long period = system_period(sys);
    check_scan_length(period);
    Rat acc = 0;
    scan_period(sys, period, [&](const std::vector<int>& p1, const std::vector<int>& p2) {
        for (int x = 0; x < sys.size(); ++x) {
            const Rat& w = sys.space.w[x];
            acc += w * f.v[x] * f.v[p1[x]] * f.v[p2[x]];
            acc -= w * pr.g0.v[x] * pr.g1.v[p1[x]] * pr.g2.v[p2[x]];
        }
    });
    acc /= static_cast<unsigned long>(period);

    DiffBound out;
    out.avg_abs = abs(acc);
    Observable d0{pr.h.v}, d1{pr.h.v}, d2{pr.h.v};
    for (int x = 0; x < sys.size(); ++x) {
        d0.v[x] -= pr.g0.v[x];
        d1.v[x] -= pr.g1.v[x];
        d2.v[x] -= pr.g2.v[x];
    }
    out.bounds = seminorm_bounds(sys, d0, d1, d2, tuple_budget);
    out.holds = leq_sum_fourth_roots(out.avg_abs, out.bounds[0], out.bounds[1],
                                     out.bounds[2]);
    out.exact_zero = sgn(out.avg_abs) == 0 && sgn(out.bounds[0]) == 0 &&
                     sgn(out.bounds[1]) == 0 && sgn(out.bounds[2]) == 0;
    out.bound_sum = std::pow(rat_double(out.bounds[0]), 0.25) +
                    std::pow(rat_double(out.bounds[1]), 0.25) +
                    std::pow(rat_double(out.bounds[2]), 0.25);
    return out;
}

Khintchine3 product_rotation_khintchine3(int p, int q, const std::vector<int>& a,
                                         const Rat& epsilon) {
    if (p < 1 || q < 1)
        throw Error(ErrKind::OutOfRange, "rotation orders must be positive");
    CommutingSystem sys = product_system(rotation_system(p, 1, 0),
                                         rotation_system(q, 0, 1),
                                         Pairing::T1xId_IdxT2);
    sys.name = "Z" + std::to_string(p) + " x Z" + std::to_string(q);

    Khintchine3 out;
    out.report = recurrence_set(sys, a, 3, epsilon);

    RotationFactor rf = common_rotation_factor(p, q);
    std::vector<int> hat_key(sys.size()), tilde_key(sys.size());
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < q; ++y) {
            hat_key[x * q + y] = rf.proj1[x] * q + y;
            tilde_key[x * q + y] = x * rf.g + rf.proj2[y];
        }
    Observable f = indicator(sys.size(), a);
    Observable fhat = cond_exp(sys.space, f, partition_from_block_of(hat_key));
    Observable ftilde = cond_exp(sys.space, f, partition_from_block_of(tilde_key));

    out.i0 = multi_corr(sys, f, fhat, ftilde, 0);
    out.bound = rat_pow(integrate(sys.space, f), 3);
    out.holds = out.i0 >= out.bound;
    return out;
}

} // namespace erglab
