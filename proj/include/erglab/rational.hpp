#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "erglab/errors.hpp"

namespace erglab {

// All measure and observable arithmetic is exact; doubles appear only in
// presentation fields of reports.
using Rat = mpq_class;

// Parses "p/q" or "p" (base 10). Rejects zero denominators and garbage.
Rat rat_parse(const std::string& s);

// Canonical form: "p/q" with q > 0 and gcd(p,q) = 1, or plain "p" when q = 1.
std::string rat_str(const Rat& r);

double rat_double(const Rat& r);

Rat rat_pow(const Rat& base, unsigned long e);

// If r >= 0 has an exact rational fourth root, stores it and returns true.
bool rat_fourth_root(const Rat& r, Rat& root);

// FNV-1a 64-bit, used for input digests in reports.
std::uint64_t fnv1a(const std::string& bytes);
std::string digest_hex(const std::string& bytes);

} // namespace erglab
