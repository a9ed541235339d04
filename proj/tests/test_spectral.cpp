#include <cmath>

#include "doctest.h"
#include "ldt/spectral.hpp"

using namespace ldt;

namespace {

// swap the two sides of a bipartite graph; lambda is side-symmetric
InclusionGraph swapped(const InclusionGraph& g) {
  InclusionGraph s;
  s.name = g.name + "-swapped";
  s.m = g.m;
  s.q = g.q;
  s.nA = g.nB;
  s.nB = g.nA;
  s.dA = g.dB;
  s.dB = g.dA;
  g.transpose(s.boff, s.badj);
  return s;
}

}  // namespace

TEST_CASE("graph shapes match the counting formulas") {
  InclusionGraph g6 = build_graph(GraphCase::G6, 3, 2);
  CHECK(g6.nA == 8);
  CHECK(g6.nB == 28);
  CHECK(g6.dA == 7);
  CHECK(g6.dB == 2);

  InclusionGraph g4 = build_graph(GraphCase::G4, 4, 3);
  CHECK(g4.dB == 27);  // q^3 points per cube
  CHECK(g4.nA == 81);
  CHECK(g4.nB == gaussian_binomial(4, 3, 3).as_u64() * 3);

  InclusionGraph g1 = build_graph(GraphCase::G1, 6, 2);
  CHECK(g1.nB == 1395);  // linear cubes
  CHECK(g1.nA == 2016 - 63);
  CHECK(g1.dA == 15);
  CHECK(g1.dB == 21);

  InclusionGraph g2 = build_graph(GraphCase::G2, 6, 2);
  CHECK(g2.nA == 63);
  CHECK(g2.nB == 1395);
  CHECK(g2.dB == 7);

  InclusionGraph g3 = build_graph(GraphCase::G3, 6, 2);
  CHECK(g3.nA == 62);
  CHECK(g3.nB == 155);  // cubes containing the anchor line
  CHECK(g3.dA == 15);
  CHECK(g3.dB == 6);

  InclusionGraph g5 = build_graph(GraphCase::G5, 6, 2);
  CHECK(g5.nA == 63);
  CHECK(g5.dB == 7);
}

TEST_CASE("complete bipartite inclusion has lambda zero") {
  // at m = 3 the only affine cube is the whole space
  InclusionGraph g = build_graph(GraphCase::G4, 3, 2);
  CHECK(g.nB == 1);
  SpectralReport rep = lambda_of(g);
  CHECK(rep.lambda == 0.0);
}

TEST_CASE("g6 walk matches its closed form to machine precision") {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    InclusionGraph g = build_graph(GraphCase::G6, 3, q);
    SpectralReport rep = lambda_of(g);
    double cf = g6_walk_lambda(3, q).to_double();
    CHECK(std::abs(rep.lambda_sq - cf) < 1e-12);
    // the appendix band around 1/q
    double band = 1.0 / (static_cast<double>(q) * q * q - 1);
    CHECK(rep.lambda_sq >= 1.0 / q - band - 1e-12);
    CHECK(rep.lambda_sq <= 1.0 / q + band + 1e-12);
    CHECK(rep.residual <= 1e-12);
  }
}

TEST_CASE("g1 walk matches the Grassmann closed form") {
  // exact value at (m, q) = (6, 2): 1/15 + (14/15)(35/98) = 2/5
  CHECK(g1_walk_lambda(6, 2) == Rat(2, 5));
  InclusionGraph g = build_graph(GraphCase::G1, 6, 2);
  SpectralReport rep = lambda_of(g);
  CHECK(std::abs(rep.lambda_sq - 0.4) < 1e-6);
  CHECK(rep.residual <= 1e-12);
}

TEST_CASE("lambda is independent of which side hosts the walk") {
  for (GraphCase c : {GraphCase::G2, GraphCase::G3, GraphCase::G6}) {
    InclusionGraph g = build_graph(c, c == GraphCase::G6 ? 3 : 6, 2);
    InclusionGraph s = swapped(g);
    CHECK(std::abs(lambda_of(g).lambda - lambda_of(s).lambda) < 1e-9);
  }
}

TEST_CASE("power iteration agrees with the dense eigensolver") {
  InclusionGraph g = build_graph(GraphCase::G2, 6, 2);
  SpectralReport dense = lambda_of(g);
  SpectralReport power = lambda_of(g, /*dense_cap=*/1);
  CHECK(dense.method == "two-step-walk-eigen");
  CHECK(power.method == "power-iteration");
  CHECK(std::abs(dense.lambda - power.lambda) < 1e-8);
}

TEST_CASE("grassmann eigenvalue formula values") {
  CHECK(grassmann_eigenvalue(0, 3, 6, 2).value == Rat(1));
  CHECK(grassmann_eigenvalue(1, 3, 6, 2).value == Rat(35, 98));
  CHECK(grassmann_eigenvalue(0, 2, 4, 2).multiplicity.as_u64() == 1);
  CHECK(grassmann_eigenvalue(1, 2, 4, 2).multiplicity.as_u64() == 14);
  CHECK(grassmann_eigenvalue(2, 2, 4, 2).multiplicity.as_u64() == 20);
  CHECK_THROWS_AS(grassmann_eigenvalue(1, 3, 4, 2), Error);  // k > m/2
  CHECK_THROWS_AS(grassmann_eigenvalue(4, 3, 6, 2), Error);  // j > k
}

TEST_CASE("eigenvalue multiplicities cover the whole Grassmannian") {
  for (auto [k, m, q] : {std::tuple<int, int, std::uint32_t>{2, 4, 2}, {2, 5, 3}, {3, 6, 2}}) {
    BigUint total(0);
    for (int j = 0; j <= k; j++) total += grassmann_eigenvalue(j, k, m, q).multiplicity;
    CHECK(total == gaussian_binomial(m, k, q));
  }
}

TEST_CASE("dense walk eigendecomposition reproduces the formula multiset") {
  FactA1Report rep = verify_grassmann_walk(2, 4, 2);
  CHECK(rep.ok);
  CHECK(rep.max_err < 1e-9);
  REQUIRE(rep.computed.size() == 35);
  // spot-check the three distinct levels 1, 1/6, -1/6
  CHECK(rep.computed.front() == doctest::Approx(1.0));
  CHECK(rep.computed[1] == doctest::Approx(1.0 / 6));
  CHECK(rep.computed.back() == doctest::Approx(-1.0 / 6));
  FactA1Report rep2 = verify_grassmann_walk(1, 4, 3);
  CHECK(rep2.ok);
}

TEST_CASE("codimension-two walk eigenvalue tracks the squared formula") {
  ClaimA2Report a = verify_claim_a2(2, 6, 2);
  CHECK(a.method == "dense");
  CHECK(a.pass);
  ClaimA2Report b = verify_claim_a2(2, 6, 3);
  CHECK(b.method == "sparse-complement-power");
  CHECK(b.pass);
  // the scaled gap tightens toward 1 as q grows
  CHECK(std::abs(b.ratio - 1) < std::abs(a.ratio - 1) + 1e-9);
  CHECK_THROWS_AS(verify_claim_a2(1, 6, 2), Error);  // walk to dimension -1
}

TEST_CASE("containment-pair graph obeys the general spectral bound") {
  SubspaceLemmaReport rep = verify_subspace_lemma(0, 1, 3, 6, 2);
  CHECK(rep.pass);
  CHECK(rep.exponent == 2);
  // same graph as the lines-vs-cubes-at-a-point case
  InclusionGraph g2 = build_graph(GraphCase::G2, 6, 2);
  CHECK(std::abs(lambda_of(g2).lambda_sq - rep.lambda_sq) < 1e-12);
  CHECK(std::abs(lambda_of(g2).lambda * 2 - 0.718) < 0.01);  // lambda ~ 1/q

  SubspaceLemmaReport degenerate = verify_subspace_lemma(1, 1, 2, 4, 3);
  CHECK(degenerate.lambda_sq < 1e-12);  // single left vertex
  CHECK(degenerate.pass);
}

TEST_CASE("lemma 2.7 reports: gates, ratios and closed forms") {
  CHECK_THROWS_AS(lemma27_report(GraphCase::G1, 4, 2), Error);
  CHECK_THROWS_AS(lemma27_report(GraphCase::G6, 2, 2), Error);
  for (GraphCase c : {GraphCase::G2, GraphCase::G3, GraphCase::G4, GraphCase::G5}) {
    SpectralReport rep = lemma27_report(c, 6, 2);
    CHECK(rep.ratio > 0.5);
    CHECK(rep.ratio < 2.0);
  }
  SpectralReport g6 = lemma27_report(GraphCase::G6, 3, 5);
  CHECK(g6.closed_form.has_value());
  CHECK(std::abs(g6.lambda_sq - *g6.closed_form) < 1e-12);
}

TEST_CASE("edge sampling distributions: identical when the subset is everything") {
  InclusionGraph g = build_graph(GraphCase::G6, 3, 2);
  SamplingReport rep = verify_sampling(g, /*cond_on_A=*/true, 8, 1, true);
  CHECK(rep.tv12 == Rat(0));  // the single-edge draws coincide at B' = B
  CHECK(rep.pass12);
  CHECK(rep.pass34);
}

TEST_CASE("edge sampling bounds hold on random subsets") {
  InclusionGraph g6 = build_graph(GraphCase::G6, 3, 2);
  InclusionGraph g4 = build_graph(GraphCase::G4, 3, 2);
  for (std::uint64_t seed = 0; seed < 20; seed++) {
    for (std::uint64_t size : {1, 2, 4}) {
      SamplingReport a = verify_sampling(g6, true, size, seed, true);
      CHECK(a.pass12);
      CHECK(a.pass34);
      SamplingReport b = verify_sampling(g4, true, size, seed, true);
      CHECK(b.pass12);
      CHECK(b.pass34);
    }
  }
}

TEST_CASE("pair sampling requires constant co-degree") {
  // points off the anchor line see the cubes unevenly: in-plane pairs share
  // many cubes, generic pairs share one
  InclusionGraph g3 = build_graph(GraphCase::G3, 6, 2);
  CHECK_THROWS_AS(verify_sampling(g3, true, 16, 1, true), Error);
  // the single-edge distributions still work there
  SamplingReport rep = verify_sampling(g3, true, 16, 1, false);
  CHECK(rep.pass12);
}

TEST_CASE("inner-product bound holds for random indicators") {
  for (GraphCase c : {GraphCase::G6, GraphCase::G4}) {
    InclusionGraph g = build_graph(c, 3, 2);
    Claim44Report rep = verify_claim44(g, true, 100, 9);
    CHECK(rep.trials == 100);
    CHECK(rep.failures == 0);
    CHECK(rep.worst_margin >= -1e-9);
  }
}
