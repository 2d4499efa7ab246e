#ifndef POLPROJ_BIGINT_HPP
#define POLPROJ_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace polproj {

// Unsigned big integer, little-endian base 2^32. Only what exact group
// orders need: multiply by machine words, compare, print in decimal.
class BigUint {
public:
  BigUint() : limbs_{0} {}
  explicit BigUint(uint64_t v) {
    limbs_.push_back(static_cast<uint32_t>(v & 0xffffffffu));
    if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
    trim();
  }

  static BigUint one() { return BigUint(1); }

  void mul_u64(uint64_t m) {
    if (m == 0) { limbs_.assign(1, 0); return; }
    BigUint factor(m);
    *this = mul(*this, factor);
  }

  static BigUint mul(const BigUint& a, const BigUint& b) {
    BigUint r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        uint64_t cur = static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                       r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
      size_t k = i + b.limbs_.size();
      while (carry) {
        uint64_t cur = r.limbs_[k] + carry;
        r.limbs_[k] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
        ++k;
      }
    }
    r.trim();
    return r;
  }

  // Exact division by a machine word; caller guarantees divisibility.
  void div_u32(uint32_t d) {
    uint64_t rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | limbs_[i];
      limbs_[i] = static_cast<uint32_t>(cur / d);
      rem = cur % d;
    }
    trim();
  }

  int compare(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size())
      return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (size_t i = limbs_.size(); i-- > 0;)
      if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    return 0;
  }
  bool operator==(const BigUint& o) const { return compare(o) == 0; }
  bool operator!=(const BigUint& o) const { return compare(o) != 0; }
  bool operator<(const BigUint& o) const { return compare(o) < 0; }

  bool fits_u64() const { return limbs_.size() <= 2; }
  uint64_t as_u64() const {
    uint64_t v = limbs_[0];
    if (limbs_.size() > 1) v |= static_cast<uint64_t>(limbs_[1]) << 32;
    return v;
  }

  std::string to_string() const {
    std::vector<uint32_t> tmp = limbs_;
    std::string out;
    bool all_zero = false;
    while (!all_zero) {
      uint64_t rem = 0;
      all_zero = true;
      for (size_t i = tmp.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | tmp[i];
        tmp[i] = static_cast<uint32_t>(cur / 1000000000u);
        rem = cur % 1000000000u;
        if (tmp[i]) all_zero = false;
      }
      std::string chunk = std::to_string(rem);
      if (!all_zero)
        chunk = std::string(9 - chunk.size(), '0') + chunk;
      out = chunk + out;
    }
    return out.empty() ? "0" : out;
  }

private:
  void trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
  }
  std::vector<uint32_t> limbs_;
};

inline BigUint factorial_big(unsigned n) {
  BigUint r(1);
  for (unsigned i = 2; i <= n; ++i) r.mul_u64(i);
  return r;
}

} // namespace polproj

#endif
