#include "perhom/field.hpp"

#include "perhom/errors.hpp"

namespace perhom {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31)) throw InvalidInput("p out of range (must be < 2^31)");
  if (!is_prime(p)) throw InvalidInput("p not prime: " + std::to_string(p));
  return Field(static_cast<std::uint32_t>(p));
}

std::string Field::to_string() const {
  return is_rational() ? std::string("Q") : "F_" + std::to_string(p_);
}

void require_same_field(const Field& a, const Field& b, const char* what) {
  if (!(a == b)) {
    throw FieldMismatch(std::string(what) + ": field mismatch (" + a.to_string() + " vs " +
                        b.to_string() + ")");
  }
}

}  // namespace perhom
