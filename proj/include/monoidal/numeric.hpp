#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "monoidal/errors.hpp"

namespace monoidal {

// Arbitrary-precision scalars. GMP keeps rationals canonical (reduced,
// positive denominator), which is exactly the representation invariant
// the rest of the kernel relies on for structural equality.
using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigRat make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw KernelError(ErrorCode::InvalidArgument, "zero denominator");
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

/// Falling product (s+1)(s+2)...(s+p), i.e. (s+p)!/s!, computed without
/// forming either factorial.
inline BigInt falling_ratio(const BigInt& s, unsigned long p) {
    BigInt acc = 1;
    BigInt factor = s;
    for (unsigned long i = 0; i < p; ++i) {
        factor += 1;
        acc *= factor;
    }
    return acc;
}

inline BigInt factorial(unsigned long n) {
    BigInt acc;
    mpz_fac_ui(acc.get_mpz_t(), n);
    return acc;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt acc;
    mpz_bin_uiui(acc.get_mpz_t(), n, k);
    return acc;
}

/// Narrowing helper for degrees used as loop bounds; desk-scale inputs only.
inline unsigned long to_ulong(const BigInt& z, const char* what) {
    if (z < 0 || !z.fits_ulong_p())
        throw KernelError(ErrorCode::InvalidArgument, std::string(what) + " out of range");
    return z.get_ui();
}

} // namespace monoidal
