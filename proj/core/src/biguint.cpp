#include "galoscope/biguint.hpp"

#include <algorithm>
#include <cstdio>

#include "galoscope/errors.hpp"

namespace galoscope {

BigUint::BigUint(std::uint64_t v) {
  do {
    limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
    v /= kBase;
  } while (v != 0);
}

void BigUint::trim() {
  while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::from_decimal(const std::string& text) {
  if (text.empty()) throw InputError("biguint", "empty decimal string");
  BigUint out(0);
  for (char c : text) {
    if (c < '0' || c > '9')
      throw InputError("biguint", "non-digit in decimal string: '" + text + "'");
    out *= 10;
    std::uint64_t carry = static_cast<std::uint64_t>(c - '0');
    for (std::size_t i = 0; i < out.limbs_.size() && carry; ++i) {
      carry += out.limbs_[i];
      out.limbs_[i] = static_cast<std::uint32_t>(carry % kBase);
      carry /= kBase;
    }
    while (carry) {
      out.limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
      carry /= kBase;
    }
  }
  return out;
}

BigUint BigUint::factorial(unsigned n) {
  BigUint out(1);
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

BigUint BigUint::pow2(unsigned n) {
  BigUint out(1);
  for (unsigned i = 0; i < n; ++i) out *= 2;
  return out;
}

BigUint& BigUint::operator*=(std::uint64_t f) {
  if (f == 0) {
    limbs_.assign(1, 0);
    return *this;
  }
  // limb < 1e9 and f < 2^64, so limb*f + carry fits in 128 bits.
  unsigned __int128 carry = 0;
  for (auto& limb : limbs_) {
    unsigned __int128 cur = static_cast<unsigned __int128>(limb) * f + carry;
    limb = static_cast<std::uint32_t>(cur % kBase);
    carry = cur / kBase;
  }
  while (carry) {
    limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
    carry /= kBase;
  }
  trim();
  return *this;
}

BigUint BigUint::operator*(const BigUint& rhs) const {
  BigUint out;
  out.limbs_.assign(limbs_.size() + rhs.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < rhs.limbs_.size() || carry; ++j) {
      unsigned __int128 cur = out.limbs_[i + j] + carry;
      if (j < rhs.limbs_.size())
        cur += static_cast<unsigned __int128>(limbs_[i]) * rhs.limbs_[j];
      out.limbs_[i + j] = static_cast<std::uint32_t>(cur % kBase);
      carry = static_cast<std::uint64_t>(cur / kBase);
    }
  }
  out.trim();
  return out;
}

bool BigUint::operator<(const BigUint& rhs) const {
  if (limbs_.size() != rhs.limbs_.size()) return limbs_.size() < rhs.limbs_.size();
  for (std::size_t i = limbs_.size(); i-- > 0;)
    if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] < rhs.limbs_[i];
  return false;
}

bool BigUint::fits_u64() const {
  // 3 limbs max: 1e27 > 2^64, so check by reconstructing with overflow guard.
  if (limbs_.size() > 3) return false;
  unsigned __int128 v = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
  return v <= static_cast<unsigned __int128>(UINT64_MAX);
}

std::uint64_t BigUint::value_u64() const {
  if (!fits_u64()) throw InputError("biguint", "value does not fit in 64 bits");
  std::uint64_t v = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
  return v;
}

std::string BigUint::to_string() const {
  std::string out = std::to_string(limbs_.back());
  char buf[10];
  for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
    std::snprintf(buf, sizeof buf, "%09u", limbs_[i]);
    out += buf;
  }
  return out;
}

}  // namespace galoscope
