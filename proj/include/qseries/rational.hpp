#pragma once

#include <gmpxx.h>
#include <string>

namespace qseries {

/// Exact rational coefficient type. GMP keeps values canonical
/// (reduced, positive denominator) through arithmetic.
using Rat = mpq_class;

inline Rat rat(long long num, long long den = 1) {
    Rat r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

/// Parses "n" or "n/d"; exact, no decimals.
inline Rat rat_from_string(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Rat rat_pow(const Rat& base, unsigned long k) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), k);
    return r;
}

} // namespace qseries
