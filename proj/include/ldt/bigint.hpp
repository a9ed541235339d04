#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldt/common.hpp"

namespace ldt {

// Unsigned big integer, base 2^32 limbs. Just enough for exact subspace
// counts (values up to ~q^(m*k), a few hundred bits at the caps).
class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v) {
    if (v) limbs_.push_back(static_cast<std::uint32_t>(v));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
  }

  bool is_zero() const { return limbs_.empty(); }

  BigUint& operator+=(const BigUint& o) {
    std::uint64_t carry = 0;
    std::size_t n = std::max(limbs_.size(), o.limbs_.size());
    limbs_.resize(n, 0);
    for (std::size_t i = 0; i < n; i++) {
      std::uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
      limbs_[i] = static_cast<std::uint32_t>(s);
      carry = s >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
  }
  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }

  // this -= o, requires this >= o
  BigUint& operator-=(const BigUint& o) {
    if (cmp(o) < 0) fail(Errc::Overflow, "BigUint underflow");
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); i++) {
      std::int64_t d = static_cast<std::int64_t>(limbs_[i]) - borrow - (i < o.limbs_.size() ? o.limbs_[i] : 0);
      borrow = d < 0;
      limbs_[i] = static_cast<std::uint32_t>(d + (borrow << 32));
    }
    trim();
    return *this;
  }
  friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }

  BigUint& mul_small(std::uint32_t f) {
    if (f == 0) {
      limbs_.clear();
      return *this;
    }
    std::uint64_t carry = 0;
    for (auto& l : limbs_) {
      std::uint64_t p = static_cast<std::uint64_t>(l) * f + carry;
      l = static_cast<std::uint32_t>(p);
      carry = p >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
  }

  // divide by small, return remainder; requires f != 0
  std::uint32_t divmod_small(std::uint32_t f) {
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | limbs_[i];
      limbs_[i] = static_cast<std::uint32_t>(cur / f);
      rem = cur % f;
    }
    trim();
    return static_cast<std::uint32_t>(rem);
  }

  int cmp(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;)
      if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    return 0;
  }
  friend bool operator==(const BigUint& a, const BigUint& b) { return a.cmp(b) == 0; }
  friend bool operator<(const BigUint& a, const BigUint& b) { return a.cmp(b) < 0; }
  friend bool operator<=(const BigUint& a, const BigUint& b) { return a.cmp(b) <= 0; }

  bool fits_u64() const { return limbs_.size() <= 2; }
  std::uint64_t as_u64() const {
    if (!fits_u64()) fail(Errc::Overflow, "BigUint does not fit in u64");
    std::uint64_t v = 0;
    if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
  }

  std::string str() const {
    if (is_zero()) return "0";
    BigUint t = *this;
    std::string s;
    while (!t.is_zero()) s.push_back(static_cast<char>('0' + t.divmod_small(10)));
    return std::string(s.rbegin(), s.rend());
  }

 private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }
  std::vector<std::uint32_t> limbs_;
};

// Gaussian binomial [m k]_q: number of k-dimensional linear subspaces of F_q^m.
BigUint gaussian_binomial(int m, int k, std::uint32_t q);

// h(n,t,j): number of t-dim subspaces of F_q^n containing a fixed j-dim
// subspace; equals [n-j t-j]_q.
BigUint count_containing(int n, int t, int j, std::uint32_t q);

}  // namespace ldt
