#include "erglab/cyclotomic.hpp"

#include <map>

#include "erglab/errors.hpp"

namespace erglab {

namespace {

void check_order(int b) {
    if (b < 1) throw Error(ErrKind::OutOfRange, "root-of-unity order must be positive");
    if (b > kMaxCyclotomicOrder)
        throw Error(ErrKind::SizeLimitExceeded,
                    "root-of-unity order " + std::to_string(b) + " exceeds " +
                        std::to_string(kMaxCyclotomicOrder));
}

using Poly = std::vector<Rat>; // constant term first

void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Quotient of num by a monic divisor; the remainder must vanish.
Poly divide_exact(Poly num, const Poly& div) {
    const int dd = static_cast<int>(div.size()) - 1;
    Poly quot(num.size() >= div.size() ? num.size() - dd : 0, Rat(0));
    for (int k = static_cast<int>(num.size()) - 1; k >= dd; --k) {
        if (sgn(num[k]) == 0) continue;
        Rat coef = num[k]; // div is monic
        quot[k - dd] = coef;
        for (int i = 0; i <= dd; ++i) num[k - dd + i] -= coef * div[i];
    }
    trim(num);
    if (!num.empty())
        throw Error(ErrKind::Internal, "cyclotomic factor division left a remainder");
    return quot;
}

} // namespace

CycVec cyc_zero(int b) {
    check_order(b);
    CycVec v;
    v.b = b;
    v.c.assign(b, Rat(0));
    return v;
}

CycVec cyc_mul(const CycVec& a, const CycVec& b) {
    if (a.b != b.b)
        throw Error(ErrKind::SpaceMismatch, "cyclotomic orders differ");
    CycVec out = cyc_zero(a.b);
    for (int i = 0; i < a.b; ++i) {
        if (sgn(a.c[i]) == 0) continue;
        for (int j = 0; j < a.b; ++j) {
            if (sgn(b.c[j]) == 0) continue;
            int k = i + j;
            if (k >= a.b) k -= a.b;
            out.c[k] += a.c[i] * b.c[j];
        }
    }
    return out;
}

CycVec cyc_conj(const CycVec& a) {
    CycVec out = cyc_zero(a.b);
    for (int j = 0; j < a.b; ++j) out.c[(a.b - j) % a.b] = a.c[j];
    return out;
}

const std::vector<Rat>& cyclotomic_polynomial(int b) {
    check_order(b);
    static std::map<int, Poly> memo;
    auto it = memo.find(b);
    if (it != memo.end()) return it->second;

    Poly num(b + 1, Rat(0)); // x^b - 1
    num[0] = -1;
    num[b] = 1;
    for (int d = 1; d < b; ++d)
        if (b % d == 0) num = divide_exact(std::move(num), cyclotomic_polynomial(d));
    return memo.emplace(b, std::move(num)).first->second;
}

std::vector<Rat> reduce_mod_cyclotomic(const CycVec& a) {
    const Poly& phi = cyclotomic_polynomial(a.b);
    const int deg = static_cast<int>(phi.size()) - 1;
    Poly r = a.c;
    for (int k = a.b - 1; k >= deg; --k) {
        if (sgn(r[k]) == 0) continue;
        Rat coef = r[k];
        for (int i = 0; i <= deg; ++i) r[k - deg + i] -= coef * phi[i];
    }
    r.resize(deg);
    return r;
}

bool vanishes_at_root(const CycVec& a) {
    for (const Rat& coef : reduce_mod_cyclotomic(a))
        if (sgn(coef) != 0) return false;
    return true;
}

} // namespace erglab
