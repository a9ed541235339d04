#include "doctest.h"
#include "ldt/polynomial.hpp"

using namespace ldt;

namespace {

// naive evaluation oracle: explicit power products per monomial
Fel eval_naive(const FieldCtx& F, const Poly& p, const std::vector<Fel>& t) {
  const MonoBasis& b = mono_basis(p.k, p.d);
  Fel acc = 0;
  for (int j = 0; j < b.n(); j++) {
    Fel term = p.c[j];
    for (int i = 0; i < p.k; i++)
      for (int e = 0; e < b.exps[j][i]; e++) term = F.mul(term, t[i]);
    acc = F.add(acc, term);
  }
  return acc;
}

std::vector<std::vector<Fel>> all_points(const FieldCtx& F, int k) {
  std::uint64_t n = 1;
  for (int i = 0; i < k; i++) n *= F.q;
  std::vector<std::vector<Fel>> pts;
  for (std::uint64_t r = 0; r < n; r++) {
    std::vector<Fel> t(k);
    std::uint64_t v = r;
    for (int i = 0; i < k; i++) {
      t[i] = static_cast<Fel>(v % F.q);
      v /= F.q;
    }
    pts.push_back(t);
  }
  return pts;
}

}  // namespace

TEST_CASE("graded-lex monomial order") {
  const MonoBasis& b = mono_basis(3, 2);
  REQUIRE(b.n() == 10);
  std::vector<std::vector<std::uint8_t>> want = {
      {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
      {2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  for (int i = 0; i < 10; i++) CHECK(b.exps[i] == want[i]);
}

TEST_CASE("evaluate matches the naive oracle on all of GF(3)^3") {
  FieldCtx F = FieldCtx::make(3, 1);
  Rng rng(1);
  for (int trial = 0; trial < 20; trial++) {
    Poly p = random_poly(F, 3, 2, rng);
    for (const auto& t : all_points(F, 3)) CHECK(evaluate(F, p, t) == eval_naive(F, p, t));
  }
  // x1 x2 at (2,3) over GF(5) is 6 mod 5 = 1
  FieldCtx F5 = FieldCtx::make(5, 1);
  Poly p = zero_poly(2, 2);
  const MonoBasis& b = mono_basis(2, 2);
  std::uint8_t e[2] = {1, 1};
  p.c[b.index_of(e)] = 1;
  CHECK(evaluate(F5, p, {2, 3}) == 1);
  Poly z = zero_poly(3, 2);
  CHECK(evaluate(F5, z, {4, 4, 4}) == 0);
}

TEST_CASE("evaluate_grid equals pointwise evaluate") {
  for (auto [p, e] : {std::pair<int, int>{5, 1}, {2, 3}}) {
    FieldCtx F = FieldCtx::make(p, e);
    Rng rng(2);
    Poly poly = random_poly(F, 2, 2, rng);
    std::vector<Fel> vals;
    evaluate_grid(F, poly, vals);
    auto pts = all_points(F, 2);
    REQUIRE(vals.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); i++) CHECK(vals[i] == evaluate(F, poly, pts[i]));
  }
}

TEST_CASE("interpolation recovers polynomials and rejects higher degree") {
  FieldCtx F = FieldCtx::make(5, 1);
  // univariate line through (0,1),(1,2),(2,3) is x + 1
  Poly p = interpolate(F, {{0}, {1}, {2}}, {1, 2, 3}, 1, 1);
  CHECK(p.c == std::vector<Fel>{1, 1});

  Rng rng(3);
  for (int trial = 0; trial < 10; trial++) {
    Poly want = random_poly(F, 2, 2, rng);
    auto pts = all_points(F, 2);
    std::vector<Fel> vals;
    for (const auto& t : pts) vals.push_back(evaluate(F, want, t));
    CHECK(interpolate(F, pts, vals, 2, 2) == want);
  }

  // degree-3 data cannot be fit with d = 2 over GF(7)^2
  FieldCtx F7 = FieldCtx::make(7, 1);
  for (int trial = 0; trial < 10; trial++) {
    Poly p3 = random_poly(F7, 2, 3, rng);
    const MonoBasis& b3 = mono_basis(2, 3);
    std::uint8_t cube[2] = {3, 0};
    p3.c[b3.index_of(cube)] = static_cast<Fel>(1 + rng.below(6));
    auto pts = all_points(F7, 2);
    std::vector<Fel> vals;
    for (const auto& t : pts) vals.push_back(evaluate(F7, p3, t));
    CHECK_THROWS_AS(interpolate(F7, pts, vals, 2, 2), Error);
  }

  CHECK_THROWS_AS(interpolate(F, {{0}, {1}}, {1, 2}, 1, 2), Error);  // underdetermined
}

TEST_CASE("restriction agrees with direct evaluation on the target") {
  FieldCtx F = FieldCtx::make(5, 1);
  Rng rng(4);
  AffineSubspace whole = whole_space(4);
  for (int trial = 0; trial < 30; trial++) {
    Poly g = random_poly(F, 4, 2, rng);
    AffineSubspace C = sample_uniform(F, SubspaceFamily::all(4, 3), rng);
    Poly pc = restrict_poly(F, g, whole, C);
    AffineSubspace Lloc = sample_uniform(F, SubspaceFamily::all(3, 1), rng);
    AffineSubspace L = lift_to_global(F, C, Lloc);
    Poly pl = restrict_poly(F, pc, C, L);
    // pointwise oracle on every point of the line
    for (const Point& y : points_of(F, L)) {
      Fel via_line = evaluate(F, pl, local_coords(L, y));
      Fel via_global = evaluate(F, g, local_coords(whole, y));
      CHECK(via_line == via_global);
    }
    // transitivity: restricting through the cube equals restricting directly
    CHECK(pl == restrict_poly(F, g, whole, L));
  }
}

TEST_CASE("restriction identity and constants") {
  FieldCtx F = FieldCtx::make(5, 1);
  Rng rng(5);
  AffineSubspace C = sample_uniform(F, SubspaceFamily::all(4, 2), rng);
  Poly p = random_poly(F, 2, 2, rng);
  CHECK(restrict_poly(F, p, C, C) == p);
  Poly c7 = constant_poly(4, 2, 3);
  AffineSubspace whole = whole_space(4);
  Poly restr = restrict_poly(F, c7, whole, C);
  CHECK(restr == constant_poly(2, 2, 3));
  AffineSubspace outside = canonicalize(F, {0, 0, 0, 0}, {{1, 0, 0, 0}});
  AffineSubspace other = canonicalize(F, {0, 0, 0, 1}, {{1, 0, 0, 0}});
  CHECK_THROWS_AS(restrict_poly(F, p, C, other), Error);
  (void)outside;
}

TEST_CASE("substitution and interpolation restriction routes agree") {
  for (std::uint32_t q : {3u, 5u}) {
    FieldCtx F = FieldCtx::make(q, 1);
    Rng rng(6 + q);
    AffineSubspace whole = whole_space(4);
    for (int trial = 0; trial < 100; trial++) {
      Poly g = random_poly(F, 4, 2, rng);
      int k = 1 + static_cast<int>(rng.below(3));
      AffineSubspace S = sample_uniform(F, SubspaceFamily::all(4, k), rng);
      CHECK(restrict_poly(F, g, whole, S) == restrict_poly_interp(F, g, whole, S));
    }
  }
}

TEST_CASE("agreement fraction and the Schwartz-Zippel bound") {
  FieldCtx F = FieldCtx::make(5, 1);
  Rng rng(7);
  Poly a = random_poly(F, 3, 2, rng);
  CHECK(agreement_fraction(F, a, a) == Rat(1));
  // x vs x + 1 never agree
  Poly x1 = zero_poly(1, 1), x2 = zero_poly(1, 1);
  x1.c[1] = 1;
  x2.c[1] = 1;
  x2.c[0] = 1;
  CHECK(agreement_fraction(F, x1, x2) == Rat(0));
  // distinct degree-2 polynomials agree on at most d/q of GF(5)^3
  Rat bound(2, 5);
  for (int trial = 0; trial < 100; trial++) {
    Poly p1 = random_poly(F, 3, 2, rng);
    Poly p2 = random_poly(F, 3, 2, rng);
    if (p1 == p2) continue;
    CHECK(agreement_fraction(F, p1, p2) <= bound);
  }
}

TEST_CASE("whole-subspace agreement of distinct polynomials is rare") {
  // fraction of r-dimensional affine subspaces where two distinct degree-d
  // polynomials coincide is at most (d/q)^{r+1}; full enumeration at
  // q = 5, t = 3, d = 1, r in {0, 1}
  FieldCtx F = FieldCtx::make(5, 1);
  Rng rng(8);
  AffineSubspace whole = whole_space(3);
  for (int trial = 0; trial < 20; trial++) {
    Poly p1 = random_poly(F, 3, 1, rng);
    Poly p2 = random_poly(F, 3, 1, rng);
    if (p1 == p2) continue;
    for (int r = 0; r <= 1; r++) {
      auto fam = enumerate_family(F, SubspaceFamily::all(3, r));
      std::int64_t same = 0;
      for (const auto& R : fam)
        same += restrict_poly(F, p1, whole, R) == restrict_poly(F, p2, whole, R);
      Rat frac(same, static_cast<std::int64_t>(fam.size()));
      Rat bound = Rat::pow(5, -(r + 1));  // (d/q)^{r+1} with d = 1
      CHECK(frac <= bound);
    }
  }
}

TEST_CASE("interpolate-evaluate round trip across shapes") {
  for (auto [q, k, d] : {std::tuple<int, int, int>{3, 2, 2}, {5, 3, 2}, {7, 2, 3}, {11, 1, 4}}) {
    FieldCtx F = FieldCtx::make(q, 1);
    Rng rng(100 + q + k + d);
    Poly want = random_poly(F, k, d, rng);
    auto pts = all_points(F, k);
    std::vector<Fel> vals;
    for (const auto& t : pts) vals.push_back(evaluate(F, want, t));
    CHECK(interpolate(F, pts, vals, k, d) == want);
  }
}
