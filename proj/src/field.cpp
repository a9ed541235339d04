#include "ldt/field.hpp"

#include <algorithm>

namespace ldt {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; d++)
    if (n % d == 0) return false;
  return true;
}

namespace {

// dense polynomials over GF(p), coefficients low-to-high, trailing zeros trimmed
using PPoly = std::vector<Fel>;

void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmul(const PPoly& a, const PPoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); i++)
    for (std::size_t j = 0; j < b.size(); j++)
      c[i + j] = static_cast<Fel>((c[i + j] + static_cast<std::uint32_t>(a[i]) * b[j]) % p);
  ptrim(c);
  return c;
}

// remainder of a mod b, b monic
PPoly pmod(PPoly a, const PPoly& b, std::uint32_t p) {
  ptrim(a);
  while (a.size() >= b.size()) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); i++) {
      std::uint32_t v = a[shift + i] + p * p - lead * b[i] % p;
      a[shift + i] = static_cast<Fel>(v % p);
    }
    ptrim(a);
  }
  return a;
}

PPoly poly_of_encoding(std::uint32_t v, std::uint32_t p) {
  PPoly a;
  while (v) {
    a.push_back(static_cast<Fel>(v % p));
    v /= p;
  }
  return a;
}

std::uint32_t encoding_of_poly(const PPoly& a, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return v;
}

bool poly_is_irreducible(const PPoly& f, std::uint32_t p) {
  std::uint32_t e = static_cast<std::uint32_t>(f.size()) - 1;
  // trial division against every monic polynomial of degree 1..e/2
  for (std::uint32_t d = 1; 2 * d <= e; d++) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; i++) count *= p;
    for (std::uint64_t v = 0; v < count; v++) {
      PPoly g = poly_of_encoding(static_cast<std::uint32_t>(v), p);
      g.resize(d + 1, 0);
      g[d] = 1;
      if (pmod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Fel> default_reduction_poly(std::uint32_t p, std::uint32_t e) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; i++) count *= p;
  for (std::uint64_t v = 0; v < count; v++) {
    PPoly f = poly_of_encoding(static_cast<std::uint32_t>(v), p);
    f.resize(e + 1, 0);
    f[e] = 1;
    if (poly_is_irreducible(f, p)) return f;
  }
  fail(Errc::Reducible, "no irreducible polynomial found");
}

Fel FieldCtx::add_slow(Fel a, Fel b) const {
  if (e == 1) return static_cast<Fel>((static_cast<std::uint32_t>(a) + b) % p);
  std::uint32_t x = a, y = b, out = 0, mul = 1;
  for (std::uint32_t i = 0; i < e; i++) {
    out += mul * ((x % p + y % p) % p);
    x /= p;
    y /= p;
    mul *= p;
  }
  return static_cast<Fel>(out);
}

Fel FieldCtx::neg_slow(Fel a) const {
  if (e == 1) return static_cast<Fel>(a == 0 ? 0 : p - a);
  std::uint32_t x = a, out = 0, mul = 1;
  for (std::uint32_t i = 0; i < e; i++) {
    std::uint32_t d = x % p;
    out += mul * (d == 0 ? 0 : p - d);
    x /= p;
    mul *= p;
  }
  return static_cast<Fel>(out);
}

Fel FieldCtx::mul_slow(Fel a, Fel b) const {
  if (e == 1) return static_cast<Fel>(static_cast<std::uint32_t>(a) * b % p);
  if (a == 0 || b == 0) return 0;
  return alog_[(log_[a] + log_[b]) % (q - 1)];
}

Fel FieldCtx::inv_slow(Fel a) const {
  if (e == 1) {
    // Fermat
    Fel r = 1, base = a;
    std::uint32_t n = p - 2;
    while (n) {
      if (n & 1) r = static_cast<Fel>(static_cast<std::uint32_t>(r) * base % p);
      base = static_cast<Fel>(static_cast<std::uint32_t>(base) * base % p);
      n >>= 1;
    }
    return r;
  }
  return alog_[(q - 1 - log_[a]) % (q - 1)];
}

Fel FieldCtx::pow(Fel a, std::uint64_t n) const {
  Fel r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

std::uint32_t FieldCtx::log_of(Fel a) const {
  if (e == 1 || a == 0) fail(Errc::OutOfRange, "log table undefined");
  return log_[a];
}

Fel FieldCtx::antilog_of(std::uint32_t i) const {
  if (e == 1) fail(Errc::OutOfRange, "log table undefined");
  return alog_[i % (q - 1)];
}

FieldCtx FieldCtx::make(std::uint32_t p, std::uint32_t e, std::optional<std::vector<Fel>> reduction_poly) {
  if (!is_prime_u32(p)) fail(Errc::NotPrime, "p = " + std::to_string(p));
  if (e < 1) fail(Errc::OutOfRange, "extension degree must be >= 1");
  std::uint64_t q64 = 1;
  for (std::uint32_t i = 0; i < e; i++) {
    q64 *= p;
    if (q64 > (1ULL << 16)) fail(Errc::TooLarge, "q exceeds 2^16");
  }
  FieldCtx F;
  F.p = p;
  F.e = e;
  F.q = static_cast<std::uint32_t>(q64);

  if (e > 1) {
    std::vector<Fel> red = reduction_poly ? *reduction_poly : default_reduction_poly(p, e);
    if (red.size() != e + 1 || red[e] != 1) fail(Errc::FormatError, "reduction polynomial must be monic of degree e");
    for (Fel c : red)
      if (c >= p) fail(Errc::FormatError, "reduction polynomial coefficient out of range");
    if (!poly_is_irreducible(red, p)) fail(Errc::Reducible, "reduction polynomial is reducible");
    F.reduction_poly = red;

    // log/antilog over the smallest primitive element (in encoding order)
    F.log_.assign(F.q, 0);
    F.alog_.assign(F.q - 1, 0);
    for (std::uint32_t g = 2; g < F.q; g++) {
      std::vector<std::uint32_t> alog;
      alog.reserve(F.q - 1);
      PPoly gp = poly_of_encoding(g, p);
      PPoly cur = {1};
      bool primitive = true;
      for (std::uint32_t i = 0; i < F.q - 1; i++) {
        std::uint32_t enc = encoding_of_poly(cur, p);
        if (enc == 1 && i > 0) {
          primitive = false;
          break;
        }
        alog.push_back(enc);
        cur = pmod(pmul(cur, gp, p), F.reduction_poly, p);
      }
      if (primitive && encoding_of_poly(cur, p) == 1) {
        for (std::uint32_t i = 0; i < F.q - 1; i++) {
          F.alog_[i] = static_cast<Fel>(alog[i]);
          F.log_[alog[i]] = i;
        }
        break;
      }
      if (g + 1 == F.q) fail(Errc::Reducible, "no primitive element found (modulus not irreducible?)");
    }
  } else if (reduction_poly && !reduction_poly->empty()) {
    fail(Errc::FormatError, "reduction polynomial given for prime field");
  }

  if (F.q <= 256) {
    F.add_tab_.resize(F.q * F.q);
    F.mul_tab_.resize(F.q * F.q);
    F.neg_tab_.resize(F.q);
    F.inv_tab_.resize(F.q);
    for (std::uint32_t a = 0; a < F.q; a++) {
      F.neg_tab_[a] = F.neg_slow(static_cast<Fel>(a));
      F.inv_tab_[a] = a == 0 ? 0 : F.inv_slow(static_cast<Fel>(a));
      for (std::uint32_t b = 0; b < F.q; b++) {
        F.add_tab_[a * F.q + b] = F.add_slow(static_cast<Fel>(a), static_cast<Fel>(b));
        F.mul_tab_[a * F.q + b] = F.mul_slow(static_cast<Fel>(a), static_cast<Fel>(b));
      }
    }
  }
  return F;
}

const char* errc_name(Errc e) {
  switch (e) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::Reducible: return "Reducible";
    case Errc::TooLarge: return "TooLarge";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::DependentDirections: return "DependentDirections";
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::Underdetermined: return "Underdetermined";
    case Errc::NotContained: return "NotContained";
    case Errc::WeightMismatch: return "WeightMismatch";
    case Errc::FormatError: return "FormatError";
    case Errc::HeaderMismatch: return "HeaderMismatch";
    case Errc::MissingEntry: return "MissingEntry";
    case Errc::DegreeViolation: return "DegreeViolation";
    case Errc::SpecInvalid: return "SpecInvalid";
    case Errc::EmptyConditional: return "EmptyConditional";
    case Errc::NotCorrectable: return "NotCorrectable";
    case Errc::DegreeTooHigh: return "DegreeTooHigh";
    case Errc::NoCandidate: return "NoCandidate";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NotBiRegular: return "NotBiRegular";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::CoDegreeViolated: return "CoDegreeViolated";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

int exit_code_for(Errc e) {
  switch (e) {
    case Errc::CapExceeded:
    case Errc::TooLarge:
      return 3;
    case Errc::NoCandidate:
    case Errc::NoConvergence:
    case Errc::NotCorrectable:
      return 4;
    default:
      return 2;
  }
}

}  // namespace ldt
