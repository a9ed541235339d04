#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldt/bigint.hpp"
#include "ldt/field.hpp"
#include "ldt/geometry.hpp"
#include "ldt/rational.hpp"
#include "ldt/rng.hpp"

namespace ldt {

// Bipartite containment graphs between subspace families. Side A holds the
// contained objects, side B the containers; stored as B-row adjacency over
// A indices. Construction asserts bi-regularity.
struct InclusionGraph {
  std::string name;
  int m = 0;
  std::uint32_t q = 0;
  std::uint64_t nA = 0, nB = 0;
  std::uint64_t dA = 0, dB = 0;  // degree on the A side / B side
  std::vector<std::uint64_t> boff;
  std::vector<std::uint32_t> badj;

  std::uint64_t edges() const { return badj.size(); }
  // A-row adjacency, built on demand
  void transpose(std::vector<std::uint64_t>& aoff, std::vector<std::uint32_t>& aadj) const;
};

// The six standard cases (anchors fixed at x = 0 and the line span(e1)):
//   g1: affine lines avoiding 0        vs linear cubes
//   g2: lines through 0                vs cubes through 0
//   g3: points off the anchor line     vs cubes containing it
//   g4: all points                     vs all affine cubes
//   g5: points other than 0            vs cubes through 0
//   g6: all points                     vs all affine lines
enum class GraphCase { G1, G2, G3, G4, G5, G6 };
GraphCase graph_case_parse(const std::string& s);
const char* graph_case_name(GraphCase c);
int graph_case_exponent(GraphCase c);   // p in lambda ~ q^{-p/2}
int graph_case_min_m(GraphCase c);      // 6 for g1..g5, 3 for g6

InclusionGraph build_graph(GraphCase c, int m, std::uint32_t q, std::uint64_t edge_cap = 40'000'000);

// G(A^k_R, A^s_R) for the canonical r-dimensional R (base 0, span of e1..er)
InclusionGraph build_subspace_graph(int r, int k, int s, int m, std::uint32_t q,
                                    std::uint64_t edge_cap = 40'000'000);

struct SpectralReport {
  std::string graph;
  int m = 0;
  std::uint32_t q = 0;
  double lambda = 0;
  double lambda_sq = 0;
  std::optional<double> closed_form;  // for lambda^2 where the appendix gives one
  int target_exponent = 0;
  double ratio = 0;  // lambda * q^{p/2}
  std::string method;
  double residual = 0;
  std::uint64_t iterations = 0;
};

// second singular value under the expectation normalization, computed from
// the two-step walk on the smaller side: dense eigensolve when that side is
// small, power iteration with deflation against the all-ones vector above.
SpectralReport lambda_of(const InclusionGraph& g, std::uint64_t dense_cap = 2048);

// per-case report with the m-range gate, closed forms and the q^{p/2} ratio
SpectralReport lemma27_report(GraphCase c, int m, std::uint32_t q);

// exact closed form for lambda(G6)^2 = lambda of the two-step point walk
Rat g6_walk_lambda(int m, std::uint32_t q);
// closed form for lambda(G1)^2 via the Grassmann walk eigenvalue
Rat g1_walk_lambda(int m, std::uint32_t q);

struct GrassmannEig {
  Rat value;
  BigUint multiplicity;
};
// eigenvalue lambda_j of the dimension-(k, k-1) Grassmann walk on linear
// k-subspaces of F_q^m, with its multiplicity [m j] - [m j-1]
GrassmannEig grassmann_eigenvalue(int j, int k, int m, std::uint32_t q);

struct FactA1Report {
  bool ok = false;
  double max_err = 0;
  std::vector<double> computed;  // eigenvalues, descending
  std::vector<double> expected;
};
// dense eigendecomposition of the explicitly built walk vs the formula set
FactA1Report verify_grassmann_walk(int k, int m, std::uint32_t q, std::uint64_t dense_cap = 2048);

struct ClaimA2Report {
  double lhs = 0;       // extreme nontrivial eigenvalue of T_{k,k-2} (signed,
                        // largest magnitude)
  double rhs = 0;       // lambda_1(T_{k,k-1})^2
  double ratio = 0;     // |lhs - rhs| * q^k
  bool pass = false;    // ratio within [1/kappa, kappa]
  std::string method;
};
ClaimA2Report verify_claim_a2(int k, int m, std::uint32_t q, double kappa = 2.0);

struct SubspaceLemmaReport {
  int r = 0, k = 0, s = 0;
  double lambda_sq = 0;
  int exponent = 0;  // s - 2k + r + 1
  double scaled = 0; // lambda^2 * q^exponent
  bool pass = false;
};
SubspaceLemmaReport verify_subspace_lemma(int r, int k, int s, int m, std::uint32_t q, double kappa = 2.0);

struct SamplingReport {
  Rat mu;
  std::uint64_t bprime = 0;
  double lambda = 0;
  Rat tv12;
  double bound12 = 0;
  bool pass12 = false;
  bool d3d4_checked = false;
  Rat tv34;
  double bound34 = 0;
  bool pass34 = false;
};

// Exact total-variation distances of the conditioned-edge distributions
// (bottom mass included as an outcome, which equals the worst event gap)
// against their spectral bounds. cond_on_A chooses which side carries the
// subset; d3/d4 additionally requires constant co-degree on that side.
SamplingReport verify_sampling(const InclusionGraph& g, bool cond_on_A, std::uint64_t bprime_size,
                               std::uint64_t seed, bool with_d3d4);

// <Mf, Mf> <= mu^2 + lambda^2 mu for random indicator vectors f
struct Claim44Report {
  std::uint64_t trials = 0, failures = 0;
  double worst_margin = 0;  // min over trials of rhs - lhs
};
Claim44Report verify_claim44(const InclusionGraph& g, bool cond_on_A, std::uint64_t trials, std::uint64_t seed);

// dense symmetric eigenvalues, ascending
std::vector<double> sym_eigenvalues(std::vector<double>& matrix_rowmajor, std::size_t n);

}  // namespace ldt
