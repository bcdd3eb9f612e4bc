#include "erglab/bernoulli.hpp"

#include <algorithm>

#include "erglab/errors.hpp"
#include "erglab/space.hpp"

namespace erglab {

namespace {

unsigned long long table_size_for(const BernoulliSpec& spec,
                                  const std::vector<std::vector<long long>>& coords) {
    if (coords.size() != spec.components.size())
        throw Error(ErrKind::SpaceMismatch,
                    "cylinder declares coordinates for " +
                        std::to_string(coords.size()) + " components, spec has " +
                        std::to_string(spec.components.size()));
    unsigned long long total = 1;
    for (std::size_t c = 0; c < coords.size(); ++c) {
        for (std::size_t k = 0; k < coords[c].size(); ++k) {
            total *= static_cast<unsigned long long>(spec.components[c].alphabet);
            if (total > kMaxAssignments)
                throw Error(ErrKind::SizeLimitExceeded,
                            "cylinder table exceeds " +
                                std::to_string(kMaxAssignments) + " entries");
        }
    }
    return total;
}

} // namespace

BernoulliSpec make_bernoulli_spec(std::vector<BernoulliComponent> components) {
    if (components.empty())
        throw Error(ErrKind::ValidationError, "spec needs at least one component");
    for (auto& comp : components) {
        if (comp.alphabet < 1 ||
            comp.probs.size() != static_cast<std::size_t>(comp.alphabet))
            throw Error(ErrKind::ValidationError,
                        "alphabet size does not match the probability vector");
        make_space(comp.probs); // positivity and total mass
    }
    return BernoulliSpec{std::move(components)};
}

CylinderObservable make_cylinder(const BernoulliSpec& spec,
                                 std::vector<std::vector<long long>> coords,
                                 std::vector<Rat> table) {
    unsigned long long want = table_size_for(spec, coords);
    if (table.size() != want)
        throw Error(ErrKind::ValidationError,
                    "cylinder table has " + std::to_string(table.size()) +
                        " entries, the declared coordinates need " +
                        std::to_string(want));
    return CylinderObservable{std::move(coords), std::move(table)};
}

Rat exact_correlation(const BernoulliSpec& spec,
                      const std::vector<ShiftTerm>& terms) {
    const std::size_t nc = spec.components.size();
    for (const ShiftTerm& t : terms) {
        if (t.shifts.size() != nc)
            throw Error(ErrKind::SpaceMismatch,
                        "shift vector does not cover every component");
        unsigned long long want = table_size_for(spec, t.observable.coords);
        if (t.observable.table.size() != want)
            throw Error(ErrKind::ValidationError, "cylinder table size is wrong");
    }

    // Global slots: the union of touched absolute coordinates per component.
    std::vector<std::vector<long long>> touched(nc);
    for (const ShiftTerm& t : terms)
        for (std::size_t c = 0; c < nc; ++c)
            for (long long coord : t.observable.coords[c])
                touched[c].push_back(coord + t.shifts[c]);
    std::vector<std::size_t> base(nc + 1, 0);
    for (std::size_t c = 0; c < nc; ++c) {
        auto& v = touched[c];
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        base[c + 1] = base[c] + v.size();
    }
    const std::size_t slots = base[nc];

    std::vector<int> radix(slots);
    std::vector<const std::vector<Rat>*> slot_probs(slots);
    unsigned long long assignments = 1;
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t k = 0; k < touched[c].size(); ++k) {
            radix[base[c] + k] = spec.components[c].alphabet;
            slot_probs[base[c] + k] = &spec.components[c].probs;
            assignments *= static_cast<unsigned long long>(radix[base[c] + k]);
            if (assignments > kMaxAssignments)
                throw Error(ErrKind::SizeLimitExceeded,
                            "correlation needs more than " +
                                std::to_string(kMaxAssignments) + " assignments");
        }

    // Per term, the global slot of each table slot plus its stride.
    struct Plan {
        std::vector<std::size_t> slot;
        std::vector<unsigned long long> stride;
        const std::vector<Rat>* table;
    };
    std::vector<Plan> plans;
    plans.reserve(terms.size());
    for (const ShiftTerm& t : terms) {
        Plan plan;
        plan.table = &t.observable.table;
        for (std::size_t c = 0; c < nc; ++c)
            for (long long coord : t.observable.coords[c]) {
                long long abs_coord = coord + t.shifts[c];
                const auto& v = touched[c];
                std::size_t k = static_cast<std::size_t>(
                    std::lower_bound(v.begin(), v.end(), abs_coord) - v.begin());
                plan.slot.push_back(base[c] + k);
            }
        plan.stride.assign(plan.slot.size(), 1);
        for (std::size_t s = plan.slot.size(); s-- > 1;)
            plan.stride[s - 1] =
                plan.stride[s] * static_cast<unsigned long long>(radix[plan.slot[s]]);
        plans.push_back(std::move(plan));
    }

    Rat total = 0;
    std::vector<int> letter(slots, 0);
    auto descend = [&](auto&& self, std::size_t s, const Rat& weight) -> void {
        if (s == slots) {
            Rat val = weight;
            for (const Plan& plan : plans) {
                unsigned long long idx = 0;
                for (std::size_t k = 0; k < plan.slot.size(); ++k)
                    idx += plan.stride[k] *
                           static_cast<unsigned long long>(letter[plan.slot[k]]);
                const Rat& entry = (*plan.table)[idx];
                if (sgn(entry) == 0) return;
                val *= entry;
            }
            total += val;
            return;
        }
        for (int l = 0; l < radix[s]; ++l) {
            letter[s] = l;
            self(self, s + 1, Rat(weight * (*slot_probs[s])[l]));
        }
    };
    descend(descend, 0, Rat(1));
    return total;
}

BernoulliSpec counterexample_spec() {
    Rat third(1, 3);
    BernoulliComponent seq{3, {third, third, third}};
    return make_bernoulli_spec({seq, seq, seq});
}

CylinderObservable counterexample_table() {
    // Row j, column i, inner index k; 16 ones.
    static const int rows[3][9] = {
        {0, 0, 1, 0, 0, 1, 1, 1, 1}, // j = 0: i = 0, 1, 2
        {0, 1, 1, 0, 0, 1, 1, 1, 0}, // j = 1
        {1, 1, 0, 1, 1, 1, 1, 0, 0}, // j = 2
    };
    std::vector<Rat> table(27);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                table[i * 9 + j * 3 + k] = rows[j][i * 3 + k];
    return make_cylinder(counterexample_spec(), {{0}, {0}, {0}}, std::move(table));
}

Rat counterexample_mu() {
    return exact_correlation(counterexample_spec(),
                             {ShiftTerm{counterexample_table(), {0, 0, 0}}});
}

std::vector<ShiftTerm> counterexample_terms(long long n) {
    if (n == 0)
        throw Error(ErrKind::ZeroShift,
                    "the three-term integrand needs a nonzero shift");
    CylinderObservable f = counterexample_table();
    return {
        ShiftTerm{f, {0, 0, 0}},
        ShiftTerm{f, {-n, 0, -n}},
        ShiftTerm{f, {0, -n, -n}},
    };
}

Rat counterexample_value(long long n) {
    if (n == 0) return counterexample_mu();
    Rat v = exact_correlation(counterexample_spec(), counterexample_terms(n));
    Rat scaled_cube = Rat(24, 25) * rat_pow(counterexample_mu(), 3);
    if (v >= scaled_cube)
        throw Error(ErrKind::Internal,
                    "correlation " + rat_str(v) + " is not below 0.96 mu(A)^3");
    return v;
}

PowerCertificate counterexample_power(const Rat& c) {
    if (sgn(c) <= 0 || c > 1)
        throw Error(ErrKind::OutOfRange,
                    "c must lie in (0, 1], got " + rat_str(c));
    Rat value = counterexample_value(1);
    Rat cube = rat_pow(counterexample_mu(), 3);
    Rat ratio = value / cube;

    PowerCertificate out;
    Rat pow = ratio;
    out.l = 1;
    while (pow >= c) {
        pow *= ratio;
        ++out.l;
        if (out.l > kMaxAssignments)
            throw Error(ErrKind::SizeLimitExceeded,
                        "no admissible exponent below " +
                            std::to_string(kMaxAssignments));
    }
    out.lhs = rat_pow(value, static_cast<unsigned long>(out.l));
    out.rhs = c * rat_pow(cube, static_cast<unsigned long>(out.l));
    out.certificate = out.lhs < out.rhs;
    return out;
}

} // namespace erglab
