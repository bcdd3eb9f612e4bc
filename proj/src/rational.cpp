#include "erglab/rational.hpp"

#include <cctype>
#include <cstdio>

namespace erglab {

const char* err_kind_name(ErrKind k) {
    switch (k) {
        case ErrKind::NonPositiveWeight: return "NonPositiveWeight";
        case ErrKind::WeightsDontSumToOne: return "WeightsDontSumToOne";
        case ErrKind::SpaceMismatch: return "SpaceMismatch";
        case ErrKind::NegativeObservable: return "NegativeObservable";
        case ErrKind::ObservableOutOfRange: return "ObservableOutOfRange";
        case ErrKind::NotBijective: return "NotBijective";
        case ErrKind::NotMeasurePreserving: return "NotMeasurePreserving";
        case ErrKind::DoesNotCommute: return "DoesNotCommute";
        case ErrKind::NotAFactorMap: return "NotAFactorMap";
        case ErrKind::EmptySet: return "EmptySet";
        case ErrKind::NonPositiveEpsilon: return "NonPositiveEpsilon";
        case ErrKind::ZeroShift: return "ZeroShift";
        case ErrKind::OutOfRange: return "OutOfRange";
        case ErrKind::UnknownSuite: return "UnknownSuite";
        case ErrKind::ParseError: return "ParseError";
        case ErrKind::ValidationError: return "ValidationError";
        case ErrKind::SizeLimitExceeded: return "SizeLimitExceeded";
        case ErrKind::Internal: return "Internal";
    }
    return "Unknown";
}

Rat rat_parse(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw Error(ErrKind::ParseError, "empty rational literal");
    mpq_class q;
    if (q.set_str(t, 10) != 0)
        throw Error(ErrKind::ParseError, "bad rational literal: \"" + s + "\"");
    if (q.get_den() == 0)
        throw Error(ErrKind::ParseError, "zero denominator in rational: \"" + s + "\"");
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double rat_double(const Rat& r) { return r.get_d(); }

Rat rat_pow(const Rat& base, unsigned long e) {
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    out.canonicalize();
    return out;
}

bool rat_fourth_root(const Rat& r, Rat& root) {
    if (sgn(r) < 0) return false;
    Rat c = r;
    c.canonicalize();
    mpz_class rn, rd;
    if (!mpz_root(rn.get_mpz_t(), c.get_num().get_mpz_t(), 4)) return false;
    if (!mpz_root(rd.get_mpz_t(), c.get_den().get_mpz_t(), 4)) return false;
    root = Rat(rn, rd);
    root.canonicalize();
    return true;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(bytes)));
    return buf;
}

} // namespace erglab
