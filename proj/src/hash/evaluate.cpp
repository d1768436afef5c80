#include "storen/hash/evaluate.hpp"

#include "storen/algebra/polynomial.hpp"
#include "storen/error.hpp"

namespace storen {

FieldElement hash_eval(const HashFamily& fam, const Message& x, std::uint64_t index) {
  const PrimeModulus m = fam.coordinate_modulus(index);
  check_conforms(fam, x);
  if (fam.kind() == FamilyKind::Polynomial) {
    return poly_eval_horner(x.as_symbols(), FieldElement(index - 1, m));
  }
  return {mod_small(x.as_natural(), m.value()), m};
}

StreamingHash::StreamingHash(const HashFamily& fam, std::uint64_t index)
    : fam_(&fam), modulus_(fam.coordinate_modulus(index).value()), point_(index - 1) {
  if (fam.kind() == FamilyKind::Polynomial) {
    step_ = point_ == 0 ? 0 : pow_mod(point_, modulus_ - 2, modulus_);
  } else {
    step_ = pow_mod(2, BigNat::kLimbBits, modulus_);
  }
}

void StreamingHash::push(std::uint64_t symbol) {
  const std::uint64_t p = modulus_;
  if (fam_->kind() == FamilyKind::Polynomial) {
    if (count_ >= fam_->k()) fail(ErrorKind::MalformedInput, "stream longer than k symbols");
    if (symbol >= p) fail(ErrorKind::MalformedInput, "stream symbol out of field range");
    if (point_ == 0) {
      // P(0) = x_0.
      if (count_ == 0) acc_ = symbol;
    } else {
      acc_ = add_mod(mul_mod(acc_, step_, p), symbol, p);
    }
    ++count_;
    return;
  }
  if (symbol >> BigNat::kLimbBits) fail(ErrorKind::MalformedInput, "digit exceeds base 2^32");
  if (count_ >= fam_->max_message_digits()) fail(ErrorKind::MalformedInput, "stream longer than the CRT message space");
  if (order_ == 0) {
    const std::uint32_t bound = fam_->message_bound_digits()[count_];
    if (symbol != bound) order_ = symbol < bound ? -1 : 1;
  }
  acc_ = add_mod(mul_mod(acc_, step_, p), symbol % p, p);
  ++count_;
}

FieldElement StreamingHash::finish() const {
  const PrimeModulus m = PrimeModulus::trusted(modulus_);
  if (fam_->kind() == FamilyKind::Polynomial) {
    if (count_ != fam_->k()) fail(ErrorKind::MalformedInput, "stream length differs from k");
    if (point_ == 0) return {acc_, m};
    // acc = sum_i x_i point^{i-(k-1)}
    return FieldElement(acc_, m) * FieldElement(point_, m).pow(fam_->k() - 1);
  }
  // Digit prefixes are compared against the bound only when the stream is full length;
  // shorter streams are below the bound automatically.
  if (count_ == fam_->max_message_digits() && order_ > 0) {
    fail(ErrorKind::MalformedInput, "streamed value exceeds the CRT message space");
  }
  return {acc_, m};
}

}  // namespace storen
