#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldt/rational.hpp"
#include "ldt/table.hpp"

namespace ldt {

// Two-entry agreement test family: pick K of dimension k uniformly, pick
// S1, S2 of dimension s containing K independently, pick an r-dimensional
// R inside K, accept iff the two entries restrict identically to R.
// Named shapes: cxc = (3,0,0), plp = (2,1,1), pxp = (2,0,0), clc = (3,1,1).
struct TestSpec {
  int s = 3, k = 0, r = 0;

  static TestSpec parse(const std::string& name);
  std::string str() const;
  void validate(int m) const;  // 0 <= r <= k < s <= m
};

struct AgreementEstimate {
  bool exact = true;
  Rat value_exact;        // exact mode
  double value = 0;       // both modes (exact mode: value_exact as double)
  double stderr_ = 0;     // MC only
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Exact acceptance probability as a collision sum over (K, R) histograms;
// includes the S1 = S2 diagonal, matching independent pair sampling.
AgreementEstimate alpha_exact(const SubspaceTable& T, const TestSpec& spec, int workers = 1,
                              std::uint64_t cap = 10'000'000);

// Independent exact route for point checks (k = 0): stream entries onto
// per-point value histograms. Oracle counterpart of alpha_exact.
AgreementEstimate alpha_exact_pointhist(const SubspaceTable& T, const TestSpec& spec, int workers = 1);

// Unbiased Monte-Carlo estimate by direct simulation of the test.
AgreementEstimate alpha_mc(const SubspaceTable& T, const TestSpec& spec, std::uint64_t n_samples,
                           std::uint64_t seed, int workers = 1);

struct IneqCheck {
  std::string name;
  Rat lhs, rhs;
  bool pass = false;
  bool normative = true;  // informational checks do not gate all_pass
};

// alpha_{s r s}, alpha_{s k s}, alpha_{s k s (r)} plus the testable
// inequalities. The exact lower bound is checked in the form its proof
// yields, alpha_srs - beta <= alpha_sks (1 - beta) with beta = (d/q)^{r+1};
// the commonly printed rearrangement alpha_srs (1-beta) <= alpha_sks does
// not follow from that proof and fails on real tables at small q, so it is
// reported as a labeled non-normative check. The upper bound carries the
// kappa slack on q^-(s-2k+r+1); the chain alpha_sks <= alpha_sks(r) and
// alpha_sks(r) >= alpha_srs is exact.
struct EquivReport {
  int s = 0, k = 0, r = 0;
  Rat a_srs, a_sks, a_sksr;
  Rat kappa;
  bool in_spectral_regime = true;  // s <= m/2
  std::vector<IneqCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (c.normative && !c.pass) return false;
    return true;
  }
};

EquivReport equivalence_report(const SubspaceTable& T, int s, int k, int r, const Rat& kappa = Rat(2),
                               int workers = 1, std::uint64_t cap = 10'000'000);

}  // namespace ldt
