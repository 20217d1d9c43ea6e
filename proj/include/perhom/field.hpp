#pragma once

#include <cstdint>
#include <string>

namespace perhom {

/// The coefficient field: either the rationals or a prime field F_p with p < 2^31.
class Field {
 public:
  static Field rationals() { return Field(0); }
  /// Throws InvalidInput unless p is a prime in [2, 2^31).
  static Field prime(std::uint64_t p);

  bool is_rational() const { return p_ == 0; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const { return p_; }

  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

bool is_prime(std::uint64_t p);

/// Throws FieldMismatch when a and b differ; `what` names the operation.
void require_same_field(const Field& a, const Field& b, const char* what);

}  // namespace perhom
