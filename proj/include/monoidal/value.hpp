#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "monoidal/numeric.hpp"

namespace monoidal {

/// Element re + im*i of the Gaussian rationals, with i^2 = -1. Components are
/// kept canonical by BigRat.
struct Gaussian {
    BigRat re;
    BigRat im;
    bool operator==(const Gaussian&) const = default;
};

/// Residue in [0, mod); the modulus travels with the value so mixed-modulus
/// arithmetic is detectable.
struct ModIntValue {
    std::uint64_t mod = 0;
    std::uint64_t val = 0;
    bool operator==(const ModIntValue&) const = default;
};

class MonoidRingElement;
struct NilpotentPoly;

/// Type-erased ring element. The first four alternatives are the shipped
/// scalar rings; the boxed alternatives let monoid rings and nilpotent
/// quotients act as coefficient rings themselves.
using Value = std::variant<BigInt, BigRat, Gaussian, ModIntValue,
                           std::shared_ptr<const MonoidRingElement>,
                           std::shared_ptr<const NilpotentPoly>>;

/// Truncated polynomial in one variable y with y^k = 0; coefficient i of y^i,
/// trailing zeros trimmed. Element of R[y]/(y^k).
struct NilpotentPoly {
    std::vector<Value> coeffs;
};

} // namespace monoidal
