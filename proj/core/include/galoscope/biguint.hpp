#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace galoscope {

// Arbitrary-precision unsigned integer, base 1e9 limbs, little-endian.
// Group orders are products of many small factors (orbit sizes, factorials,
// powers of two), so multiplication by a machine word plus comparison and
// decimal I/O is the entire interface we need.
class BigUint {
public:
  BigUint() : limbs_{0} {}
  explicit BigUint(std::uint64_t v);

  // Parses a non-empty decimal string (digits only). Throws InputError on junk.
  static BigUint from_decimal(const std::string& text);
  static BigUint factorial(unsigned n);
  static BigUint pow2(unsigned n);

  BigUint& operator*=(std::uint64_t f);
  BigUint operator*(const BigUint& rhs) const;
  BigUint& operator*=(const BigUint& rhs) { return *this = *this * rhs; }

  bool operator==(const BigUint& rhs) const { return limbs_ == rhs.limbs_; }
  bool operator!=(const BigUint& rhs) const { return !(*this == rhs); }
  bool operator<(const BigUint& rhs) const;

  bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }
  // Fits in uint64? Then value(), else throws.
  bool fits_u64() const;
  std::uint64_t value_u64() const;

  std::string to_string() const;
  std::size_t decimal_digits() const { return to_string().size(); }

private:
  static constexpr std::uint32_t kBase = 1000000000u;
  std::vector<std::uint32_t> limbs_;
  void trim();
};

}  // namespace galoscope
