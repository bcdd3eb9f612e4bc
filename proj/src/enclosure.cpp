#include "erglab/enclosure.hpp"

#include <mpfr.h>

#include "erglab/errors.hpp"

namespace erglab {

namespace {

constexpr mpfr_prec_t kStartPrec = 128;
constexpr mpfr_prec_t kMaxPrec = 1 << 20;

struct Mp {
    mpfr_t x;
    explicit Mp(mpfr_prec_t p) { mpfr_init2(x, p); }
    ~Mp() { mpfr_clear(x); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
};

} // namespace

int certified_sign_cosine_sum(const std::vector<Rat>& c, int b) {
    if (b < 1 || static_cast<int>(c.size()) > b)
        throw Error(ErrKind::OutOfRange, "cosine sum has more terms than the order");
    for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
        Mp pi_lo(prec), pi_hi(prec), two_pi_lo(prec);
        mpfr_const_pi(pi_lo.x, MPFR_RNDD);
        mpfr_const_pi(pi_hi.x, MPFR_RNDU);
        mpfr_mul_ui(two_pi_lo.x, pi_lo.x, 2, MPFR_RNDD);

        Mp sum_lo(prec), sum_hi(prec);
        mpfr_set_zero(sum_lo.x, 1);
        mpfr_set_zero(sum_hi.x, 1);
        Mp th_lo(prec), th_hi(prec), lo(prec), hi(prec), t(prec), term(prec);
        for (int j = 0; j < static_cast<int>(c.size()); ++j) {
            if (sgn(c[j]) == 0) continue;
            if (j == 0) {
                mpfr_set_ui(lo.x, 1, MPFR_RNDD);
                mpfr_set_ui(hi.x, 1, MPFR_RNDU);
            } else {
                mpfr_mul_ui(th_lo.x, pi_lo.x, 2u * static_cast<unsigned>(j), MPFR_RNDD);
                mpfr_div_ui(th_lo.x, th_lo.x, static_cast<unsigned>(b), MPFR_RNDD);
                mpfr_mul_ui(th_hi.x, pi_hi.x, 2u * static_cast<unsigned>(j), MPFR_RNDU);
                mpfr_div_ui(th_hi.x, th_hi.x, static_cast<unsigned>(b), MPFR_RNDU);
                // cos on a subinterval of (0, 2 pi]: endpoint values, with
                // the floor forced to -1 when pi may lie inside and the
                // ceiling forced to 1 when 2 pi may.
                mpfr_cos(lo.x, th_lo.x, MPFR_RNDD);
                mpfr_cos(t.x, th_hi.x, MPFR_RNDD);
                mpfr_min(lo.x, lo.x, t.x, MPFR_RNDD);
                mpfr_cos(hi.x, th_lo.x, MPFR_RNDU);
                mpfr_cos(t.x, th_hi.x, MPFR_RNDU);
                mpfr_max(hi.x, hi.x, t.x, MPFR_RNDU);
                if (mpfr_cmp(th_lo.x, pi_hi.x) <= 0 && mpfr_cmp(th_hi.x, pi_lo.x) >= 0)
                    mpfr_set_si(lo.x, -1, MPFR_RNDD);
                if (mpfr_cmp(th_hi.x, two_pi_lo.x) >= 0)
                    mpfr_set_ui(hi.x, 1, MPFR_RNDU);
            }
            if (sgn(c[j]) > 0) {
                mpfr_mul_q(term.x, lo.x, c[j].get_mpq_t(), MPFR_RNDD);
                mpfr_add(sum_lo.x, sum_lo.x, term.x, MPFR_RNDD);
                mpfr_mul_q(term.x, hi.x, c[j].get_mpq_t(), MPFR_RNDU);
                mpfr_add(sum_hi.x, sum_hi.x, term.x, MPFR_RNDU);
            } else {
                mpfr_mul_q(term.x, hi.x, c[j].get_mpq_t(), MPFR_RNDD);
                mpfr_add(sum_lo.x, sum_lo.x, term.x, MPFR_RNDD);
                mpfr_mul_q(term.x, lo.x, c[j].get_mpq_t(), MPFR_RNDU);
                mpfr_add(sum_hi.x, sum_hi.x, term.x, MPFR_RNDU);
            }
        }
        if (mpfr_sgn(sum_lo.x) > 0) return 1;
        if (mpfr_sgn(sum_hi.x) < 0) return -1;
    }
    throw Error(ErrKind::Internal,
                "cosine sum enclosure did not separate from zero; "
                "exact zero test was skipped");
}

bool leq_sum_fourth_roots(const Rat& lhs, const Rat& s0, const Rat& s1,
                          const Rat& s2) {
    const Rat* s[3] = {&s0, &s1, &s2};
    for (const Rat* v : s)
        if (sgn(*v) < 0)
            throw Error(ErrKind::OutOfRange, "fourth root of a negative value");
    if (sgn(lhs) <= 0) return true;

    Rat roots[3];
    bool all_exact = true;
    for (int i = 0; i < 3; ++i) all_exact = rat_fourth_root(*s[i], roots[i]) && all_exact;
    if (all_exact) return lhs <= roots[0] + roots[1] + roots[2];

    // The sum is irrational here, so it cannot equal lhs and the enclosure
    // eventually lands strictly on one side.
    for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
        Mp total_lo(prec), total_hi(prec), t(prec);
        mpfr_set_zero(total_lo.x, 1);
        mpfr_set_zero(total_hi.x, 1);
        for (int i = 0; i < 3; ++i) {
            mpfr_set_q(t.x, s[i]->get_mpq_t(), MPFR_RNDD);
            mpfr_rootn_ui(t.x, t.x, 4, MPFR_RNDD);
            mpfr_add(total_lo.x, total_lo.x, t.x, MPFR_RNDD);
            mpfr_set_q(t.x, s[i]->get_mpq_t(), MPFR_RNDU);
            mpfr_rootn_ui(t.x, t.x, 4, MPFR_RNDU);
            mpfr_add(total_hi.x, total_hi.x, t.x, MPFR_RNDU);
        }
        if (mpfr_cmp_q(total_lo.x, lhs.get_mpq_t()) >= 0) return true;
        if (mpfr_cmp_q(total_hi.x, lhs.get_mpq_t()) < 0) return false;
    }
    throw Error(ErrKind::Internal, "fourth-root enclosure did not converge");
}

} // namespace erglab
