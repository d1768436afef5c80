#pragma once

#include <span>

#include "storen/algebra/field_element.hpp"

namespace storen {

/// P(point) for P(Y) = sum_i coeffs[i] * Y^i, by Horner's rule from the top coefficient.
/// Throws Usage on an empty coefficient list or mixed moduli.
FieldElement poly_eval_horner(std::span<const FieldElement> coeffs, const FieldElement& point);

}  // namespace storen
