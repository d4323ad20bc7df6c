#pragma once

#include <string>
#include <utility>
#include <vector>

#include "monoidal/ring.hpp"

namespace monoidal {

/// How a coefficient participates in term rendering: an extractable sign, the
/// magnitude text, and whether the text is a composite expression that needs
/// parentheses next to a monomial.
struct CoefDisplay {
    int sign = 1;
    std::string magnitude;
    bool composite = false;
};

CoefDisplay coefficient_display(const RingDescriptor& ring, const Value& v);

/// Renders a term sequence in the canonical text grammar
///   term := coef | coef "*" mono | mono
/// joining with " + " / " - " (signs absorbed into the separator), exponent-1
/// and coefficient-1 omitted. `terms` carries (monomial text, coefficient);
/// an empty monomial text marks a constant term. Empty input renders "0".
std::string format_term_sequence(const RingDescriptor& ring,
                                 const std::vector<std::pair<std::string, Value>>& terms);

} // namespace monoidal
