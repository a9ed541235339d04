#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ldt/common.hpp"

namespace ldt {

// GF(q), q = p^e <= 2^16. Element n in [0, q) encodes the polynomial whose
// base-p digits are the coefficients of n (low digit = constant term).
// Extension multiplication runs on log/antilog tables over a fixed primitive
// element; for q <= 256 dense add/mul tables make every op a single lookup.
// Immutable after construction, safe for concurrent reads.
class FieldCtx {
 public:
  static FieldCtx make(std::uint32_t p, std::uint32_t e,
                       std::optional<std::vector<Fel>> reduction_poly = std::nullopt);

  std::uint32_t p = 0, e = 0, q = 0;
  // monic, degree e, coefficients low-to-high (size e+1); empty when e == 1
  std::vector<Fel> reduction_poly;

  Fel add(Fel a, Fel b) const {
    if (!add_tab_.empty()) return add_tab_[a * q + b];
    return add_slow(a, b);
  }
  Fel sub(Fel a, Fel b) const { return add(a, neg(b)); }
  Fel neg(Fel a) const {
    if (!neg_tab_.empty()) return neg_tab_[a];
    return neg_slow(a);
  }
  Fel mul(Fel a, Fel b) const {
    if (!mul_tab_.empty()) return mul_tab_[a * q + b];
    return mul_slow(a, b);
  }
  Fel inv(Fel a) const {
    if (a == 0) fail(Errc::DivisionByZero, "inverse of zero");
    if (!inv_tab_.empty()) return inv_tab_[a];
    return inv_slow(a);
  }
  Fel pow(Fel a, std::uint64_t n) const;

  bool prime_field() const { return e == 1; }
  bool same_as(const FieldCtx& o) const {
    return p == o.p && e == o.e && reduction_poly == o.reduction_poly;
  }

  // log/antilog over the chosen primitive element (e > 1 only, test surface)
  std::uint32_t log_of(Fel a) const;
  Fel antilog_of(std::uint32_t i) const;

 private:
  Fel add_slow(Fel a, Fel b) const;
  Fel neg_slow(Fel a) const;
  Fel mul_slow(Fel a, Fel b) const;
  Fel inv_slow(Fel a) const;

  std::vector<Fel> add_tab_, mul_tab_, neg_tab_, inv_tab_;  // dense, q <= 256
  std::vector<std::uint32_t> log_;                          // e > 1
  std::vector<Fel> alog_;                                   // e > 1
};

// Deterministic default modulus: lexicographically smallest monic irreducible
// of degree e over GF(p), ordered by the integer encoding of the non-leading
// coefficients.
std::vector<Fel> default_reduction_poly(std::uint32_t p, std::uint32_t e);

bool is_prime_u32(std::uint32_t n);

}  // namespace ldt
