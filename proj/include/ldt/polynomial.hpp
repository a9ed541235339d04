#pragma once

#include <cstdint>
#include <vector>

#include "ldt/field.hpp"
#include "ldt/geometry.hpp"
#include "ldt/rational.hpp"
#include "ldt/rng.hpp"

namespace ldt {

// Monomial basis for k variables, total degree <= d, graded-lex order:
// degree ascending, and within a degree exponent tuples descending
// lexicographically ((2,0,0), (1,1,0), (1,0,1), (0,2,0), ...). Cached.
struct MonoBasis {
  int k = 0, d = 0;
  std::vector<std::vector<std::uint8_t>> exps;  // one tuple per monomial
  std::vector<int> rank;                         // (d+1)-adic packed exponent -> index
  int index_of(const std::uint8_t* e) const;
  int n() const { return static_cast<int>(exps.size()); }
};
const MonoBasis& mono_basis(int k, int d);

// Dense coefficient vector over the graded-lex basis; length C(k+d, d).
// Coefficient equality is function equality whenever d < q.
struct Poly {
  std::uint16_t k = 0;
  std::uint16_t d = 0;
  std::vector<Fel> c;

  bool operator==(const Poly& o) const = default;
  bool operator<(const Poly& o) const {
    if (k != o.k) return k < o.k;
    if (d != o.d) return d < o.d;
    return c < o.c;
  }
  bool is_zero() const {
    for (Fel v : c) if (v) return false;
    return true;
  }
  int degree() const;  // actual total degree of nonzero support, -1 for zero
};

Poly zero_poly(int k, int d);
Poly constant_poly(int k, int d, Fel v);
Poly random_poly(const FieldCtx& F, int k, int d, Rng& rng);

Fel evaluate(const FieldCtx& F, const Poly& p, const std::vector<Fel>& t);

// Monomial values over the whole local grid of F_q^k, local-rank point order
// (point r has coordinates r base q, coordinate 0 fastest). values[r*n + j]
// is monomial j at point r. Cached per (q, k, d).
struct EvalGrid {
  std::uint32_t npoints = 0;
  int nmono = 0;
  std::vector<Fel> values;
};
const EvalGrid& eval_grid(const FieldCtx& F, int k, int d);

// evaluate p on the whole grid (local-rank order)
void evaluate_grid(const FieldCtx& F, const Poly& p, std::vector<Fel>& out);

// Unique degree-<= d fit through the samples, by exact Gaussian elimination.
// Throws Inconsistent when no degree-d polynomial matches, Underdetermined
// when the samples do not pin the coefficients down.
Poly interpolate(const FieldCtx& F, const std::vector<std::vector<Fel>>& points, const std::vector<Fel>& values,
                 int k, int d);

// The unique degree-<= d polynomial on R's chart agreeing with p (a polynomial
// on S's chart) everywhere on R. Computed by substituting R's parameterization
// into p. Requires R inside S.
Poly restrict_poly(const FieldCtx& F, const Poly& p, const AffineSubspace& S, const AffineSubspace& R);

// independent route for cross-checks: sample R's grid and interpolate
Poly restrict_poly_interp(const FieldCtx& F, const Poly& p, const AffineSubspace& S, const AffineSubspace& R);

// exact fraction of points of F_q^k where the two polynomials agree
Rat agreement_fraction(const FieldCtx& F, const Poly& a, const Poly& b);

Poly poly_mul(const FieldCtx& F, const Poly& a, const Poly& b, int dcap);

}  // namespace ldt
