#include "storen/algebra/polynomial.hpp"

#include "storen/error.hpp"

namespace storen {

FieldElement poly_eval_horner(std::span<const FieldElement> coeffs, const FieldElement& point) {
  require(!coeffs.empty(), ErrorKind::Usage, "poly_eval_horner: empty coefficient sequence");
  FieldElement acc = FieldElement::zero(point.modulus());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= point;
    acc += *it;
  }
  return acc;
}

}  // namespace storen
