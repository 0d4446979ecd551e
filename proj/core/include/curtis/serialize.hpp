#pragma once

#include <cstdint>
#include <string>

#include "curtis/coherent.hpp"
#include "curtis/finite.hpp"

namespace curtis {

inline constexpr int kSchemaVersion = 1;

/// JSON text for a tuple: a `convention` block plus per-partition monomial -> coefficient lists.
/// Coefficients are {"E", "num", "den", "text"} with num the power-basis numerator in Q(zeta_E).
std::string tuple_to_json(const CoherentTuple& t, int indent = 2);
/// Inverse of tuple_to_json; throws DomainError on a schema mismatch.
CoherentTuple tuple_from_json(const std::string& text);

std::string finite_tuple_to_json(const FiniteCoherentTuple& t, int indent = 2);
FiniteCoherentTuple finite_tuple_from_json(const std::string& text);

}  // namespace curtis
