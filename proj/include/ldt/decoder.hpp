#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldt/agreement.hpp"
#include "ldt/table.hpp"

namespace ldt {

struct DecoderParams {
  double epsilon = -1;  // agreement threshold; < 0 means "measure the table"
  double gamma = -1;    // consistency parameter; < 0 means mode default
  enum class Mode { TheoryFaithful, Practical } mode = Mode::Practical;
  int n_candidates = 12;
  int top_k = 4;             // candidates handed to the corrector
  double min_support = 0.05; // list-mode stopping threshold
  bool list_mode = false;
  int max_rounds = 8;
  std::uint64_t rs_exact_cap = 4096;  // exact shift-majority when q^m at most this
  std::uint64_t mc_samples = 128;     // majority votes per point otherwise
  std::uint64_t seed = 1;
  int workers = 1;
  std::uint64_t cap = 10'000'000;

  double gamma_default(int d) const {
    return mode == Mode::TheoryFaithful ? 1.0 / (100.0 * (d + 2) * (d + 2) * (d + 2)) : 0.05;
  }
};

// plurality of T(C)(y) over cubes through x and y whose value at x is sigma;
// ties break toward the smaller canonical element; empty conditionals give 0
std::vector<Fel> conditional_plurality(const SubspaceTable& T, const Point& x, Fel sigma);

struct ExcellenceStats {
  Rat mass1;       // weight of the sigma-conditioned cubes inside C_x
  double fail2 = 0;  // line inconsistency rate under the (C1, line, C2) draw;
                     // enumerated exactly, folded in long double (the true
                     // rational needs lcm-of-line-count denominators)
  bool excellent = false;
};

// exact evaluation of the definition's two conditions at (x, sigma)
ExcellenceStats excellence_check(const SubspaceTable& T, const Point& x, Fel sigma, double epsilon,
                                 double gamma);

// binom(d+1, i) (-1)^{i+1} for i = 0..d+1, reduced into the field; these are
// the vote weights of the finite-difference identity behind self-correction
std::vector<Fel> difference_coeffs(const FieldCtx& F, int d);

enum class CorrectStatus { Ok, MajorityNotStrict, DegreeMismatch };

struct CorrectOutcome {
  CorrectStatus status = CorrectStatus::Ok;
  Poly g;              // valid when status == Ok
  Rat disagreement;    // fraction of points where the input differs from g
};

// Degree-d self-correction of a full evaluation vector by strict majority of
// finite-difference votes sum_{i=1..d+1} alpha_i f(y+ih) over shifts h, with
// alpha_i = binom(d+1, i) (-1)^{i+1} reduced into the field. The output is
// verified degree <= d by exact interpolation before it is returned.
CorrectOutcome self_correct(const FieldCtx& F, int m, int d, const std::vector<Fel>& f,
                            std::uint64_t exact_cap, std::uint64_t mc_samples, std::uint64_t seed);

// probability over uniform (y, h) that f restricted to the d+2 points
// y + i(h-y) is consistent with one degree-<= d univariate polynomial,
// computed through the vanishing of the finite-difference identity
Rat neighborhood_rate_exact(const FieldCtx& F, int m, int d, const std::vector<Fel>& f);
double neighborhood_rate_mc(const FieldCtx& F, int m, int d, const std::vector<Fel>& f, std::uint64_t n,
                            std::uint64_t seed);

struct CandidateReport {
  std::uint64_t x_index = 0;
  Fel sigma = 0;
  Rat mass1;
  double fail2 = 0;
  bool excellent = false;
  bool advanced = false;  // passed the mode's gate
  std::uint64_t support_cubes = 0;  // |F_x| at threshold 1 - 2 gamma
};

struct DecodeResult {
  Poly g;
  Rat support;  // fraction of ALL entries identically equal to g's restriction
  std::uint64_t x_index = 0;
  Fel sigma = 0;
};

struct DecodeReport {
  std::string table_hash;
  double epsilon_used = 0;
  double gamma_used = 0;
  bool no_candidate = false;
  std::vector<DecodeResult> results;  // sorted: support desc, then poly
  std::vector<CandidateReport> candidates;
  int rounds = 0;
  json params_echo;
};

// The constructive pipeline: sample candidate points, pick the heaviest
// sigma per point, gate by the excellence conditions (theory-faithful mode
// gates on both, practical mode gates on the mass condition and keeps the
// line-consistency rate as a ranking signal), build conditional pluralities,
// self-correct the best ones, and score every recovered polynomial by its
// exact support over the whole table. List mode removes supporting entries
// and repeats. A run that gates everything out or recovers nothing sets
// no_candidate, keeping the candidate diagnostics available to callers.
DecodeReport decode(const SubspaceTable& T, const DecoderParams& params);

// exact fraction of entries equal to restrict(g, S)
Rat exact_support(const SubspaceTable& T, const Poly& g);

}  // namespace ldt
