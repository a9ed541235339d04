#include "ldt/agreement.hpp"

#include <algorithm>
#include <cmath>

#include "ldt/parallel.hpp"

namespace ldt {

TestSpec TestSpec::parse(const std::string& name) {
  if (name == "cxc") return {3, 0, 0};
  if (name == "plp") return {2, 1, 1};
  if (name == "pxp") return {2, 0, 0};
  if (name == "clc") return {3, 1, 1};
  // "s,k,r"
  int v[3] = {0, 0, 0};
  std::size_t pos = 0;
  for (int i = 0; i < 3; i++) {
    std::size_t next = name.find(',', pos);
    if ((i < 2) == (next == std::string::npos)) fail(Errc::SpecInvalid, "bad test spec: " + name);
    try {
      v[i] = std::stoi(name.substr(pos, next - pos));
    } catch (const std::exception&) {
      fail(Errc::SpecInvalid, "bad test spec: " + name);
    }
    pos = next + 1;
  }
  return {v[0], v[1], v[2]};
}

std::string TestSpec::str() const {
  return std::to_string(s) + "," + std::to_string(k) + "," + std::to_string(r);
}

void TestSpec::validate(int m) const {
  if (!(0 <= r && r <= k && k < s && s <= m))
    fail(Errc::SpecInvalid, "need 0 <= r <= k < s <= m, got " + str() + " at m=" + std::to_string(m));
}

namespace {

std::uint64_t sum_sq_u64(std::vector<std::uint32_t>& hist) {
  std::uint64_t s = 0;
  for (auto& c : hist) {
    s += static_cast<std::uint64_t>(c) * c;
    c = 0;
  }
  return s;
}

}  // namespace

AgreementEstimate alpha_exact(const SubspaceTable& T, const TestSpec& spec, int workers, std::uint64_t cap) {
  spec.validate(T.hdr.m);
  if (spec.s != T.hdr.s) fail(Errc::SpecInvalid, "test dimension s does not match table");
  const FieldCtx& F = T.F;
  int m = T.hdr.m, s = spec.s, k = spec.k, r = spec.r;
  const SpanList& sl = T.spans();

  BigUint nS_big = count_containing(m - k, s - k, 0, F.q);  // containers per K
  BigUint nK_big = family_count(F, SubspaceFamily::all(m, k));
  BigUint nR_big = gaussian_binomial(k, r, F.q);
  for (int i = 0; i < k - r; i++) nR_big.mul_small(F.q);
  // denominator |A^k| * N_R * N_S^2 must stay in int64 for exact rationals
  if (!nR_big.fits_u64() || !nS_big.fits_u64() || !nK_big.fits_u64())
    fail(Errc::CapExceeded, "family too large for exact mode");
  BigUint den_big = nK_big;
  for (std::uint64_t f : {nR_big.as_u64(), nS_big.as_u64(), nS_big.as_u64()}) {
    if (f >> 32) fail(Errc::CapExceeded, "family too large for exact mode");
    den_big.mul_small(static_cast<std::uint32_t>(f));
  }
  if (!den_big.fits_u64() || den_big.as_u64() > static_cast<std::uint64_t>(INT64_MAX))
    fail(Errc::CapExceeded, "outcome count exceeds exact arithmetic range");
  std::uint64_t nS = nS_big.as_u64();
  if (nK_big.as_u64() > cap || nS > cap) fail(Errc::CapExceeded, "enumeration above cap");

  std::uint64_t total = 0;

  if (k == 0) {
    // K = point, R = K: per-point value histograms over S containing the point.
    // The monomial values at x depend only on the span's pivot set, so they
    // are hoisted over the handful of distinct pivot sets per ambient.
    std::uint64_t npoints = 1;
    for (int i = 0; i < m; i++) npoints *= F.q;
    int nb = workers <= 1 ? 1 : workers * 4;
    std::vector<std::uint64_t> block_sums(std::max(1, nb), 0);
    const MonoBasis& basis = mono_basis(s, T.hdr.d);
    int nmono = basis.n();
    std::vector<std::vector<std::uint8_t>> pivsets;
    std::vector<std::uint32_t> pivset_of(sl.spans.size());
    std::vector<std::uint32_t> pivmask(sl.spans.size(), 0);
    for (std::size_t sp = 0; sp < sl.spans.size(); sp++) {
      for (auto p : sl.spans[sp].pivots) pivmask[sp] |= 1u << p;
      std::uint32_t found = static_cast<std::uint32_t>(pivsets.size());
      for (std::uint32_t i = 0; i < pivsets.size(); i++)
        if (pivsets[i] == sl.spans[sp].pivots) {
          found = i;
          break;
        }
      if (found == pivsets.size()) pivsets.push_back(sl.spans[sp].pivots);
      pivset_of[sp] = found;
    }
    bool prime = F.prime_field();
    parallel_blocks(npoints, workers, [&](std::uint64_t lo, std::uint64_t hi, int block) {
      std::vector<std::uint32_t> hist(F.q, 0);
      std::uint64_t acc = 0;
      Point x;
      std::vector<Fel> t(s);
      std::vector<Fel> rows(pivsets.size() * nmono);
      for (std::uint64_t pi = lo; pi < hi; pi++) {
        point_of_index_into(F, m, pi, x);
        for (std::size_t ps = 0; ps < pivsets.size(); ps++) {
          for (int i = 0; i < s; i++) t[i] = x[pivsets[ps][i]];
          Fel* row = rows.data() + ps * nmono;
          for (int j = 0; j < nmono; j++) {
            Fel term = 1;
            for (int i = 0; i < s; i++)
              for (int e = 0; e < basis.exps[j][i]; e++) term = F.mul(term, t[i]);
            row[j] = term;
          }
        }
        for (std::uint32_t sp = 0; sp < sl.spans.size(); sp++) {
          const AffineSubspace& span = sl.spans[sp];
          std::uint64_t rank = 0;
          for (int j = 0; j < m; j++) {
            if (pivmask[sp] & (1u << j)) continue;
            Fel off = x[j];
            for (int i = 0; i < s; i++) off = F.sub(off, F.mul(x[span.pivots[i]], span.row(i)[j]));
            rank = rank * F.q + off;
          }
          const Fel* row = rows.data() + pivset_of[sp] * nmono;
          const Fel* c = T.entries[sp * sl.offsets_per_span + rank].c.data();
          Fel val;
          if (prime) {
            std::uint64_t a = 0;
            for (int j = 0; j < nmono; j++) a += static_cast<std::uint64_t>(c[j]) * row[j];
            val = static_cast<Fel>(a % F.q);
          } else {
            Fel a = 0;
            for (int j = 0; j < nmono; j++) a = F.add(a, F.mul(c[j], row[j]));
            val = a;
          }
          hist[val]++;
        }
        acc += sum_sq_u64(hist);
      }
      block_sums[block] += acc;
    });
    for (std::uint64_t v : block_sums) total += v;
  } else {
    auto Ks = enumerate_family(F, SubspaceFamily::all(m, k), cap);
    // local r-subspaces of the chart F_q^k, shared by every K
    auto locals = enumerate_family(F, SubspaceFamily::all(k, r), cap);
    int nb = workers <= 1 ? 1 : workers * 4;
    std::vector<std::uint64_t> block_sums(std::max(1, nb), 0);
    parallel_blocks(Ks.size(), workers, [&](std::uint64_t lo, std::uint64_t hi, int block) {
      std::uint64_t acc = 0;
      std::vector<std::uint32_t> hist0(F.q, 0);
      for (std::uint64_t ki = lo; ki < hi; ki++) {
        const AffineSubspace& K = Ks[ki];
        auto Ss = enumerate_family(F, SubspaceFamily::containing(m, s, K), cap);
        std::vector<const Poly*> polys;
        polys.reserve(Ss.size());
        for (const auto& S : Ss) polys.push_back(&T.entries[T.index_of(S)]);
        if (r == k) {
          std::vector<std::vector<Fel>> keys;
          keys.reserve(Ss.size());
          for (std::size_t i = 0; i < Ss.size(); i++)
            keys.push_back(restrict_poly(F, *polys[i], Ss[i], K).c);
          std::sort(keys.begin(), keys.end());
          for (std::size_t i = 0; i < keys.size();) {
            std::size_t j = i;
            while (j < keys.size() && keys[j] == keys[i]) j++;
            acc += static_cast<std::uint64_t>(j - i) * (j - i);
            i = j;
          }
        } else {
          for (const auto& local : locals) {
            AffineSubspace R = lift_to_global(F, K, local);
            if (R.k == 0) {
              for (std::size_t i = 0; i < Ss.size(); i++)
                hist0[evaluate(F, *polys[i], local_coords(Ss[i], R.base))]++;
              acc += sum_sq_u64(hist0);
            } else {
              std::vector<std::vector<Fel>> keys;
              keys.reserve(Ss.size());
              for (std::size_t i = 0; i < Ss.size(); i++)
                keys.push_back(restrict_poly(F, *polys[i], Ss[i], R).c);
              std::sort(keys.begin(), keys.end());
              for (std::size_t i = 0; i < keys.size();) {
                std::size_t j = i;
                while (j < keys.size() && keys[j] == keys[i]) j++;
                acc += static_cast<std::uint64_t>(j - i) * (j - i);
                i = j;
              }
            }
          }
        }
      }
      block_sums[block] += acc;
    });
    for (std::uint64_t v : block_sums) total += v;
  }

  AgreementEstimate est;
  est.exact = true;
  est.value_exact = Rat(static_cast<std::int64_t>(total), static_cast<std::int64_t>(den_big.as_u64()));
  est.value = est.value_exact.to_double();
  est.samples = 0;
  return est;
}

AgreementEstimate alpha_exact_pointhist(const SubspaceTable& T, const TestSpec& spec, int workers) {
  spec.validate(T.hdr.m);
  if (spec.k != 0 || spec.r != 0) fail(Errc::SpecInvalid, "point-histogram route needs k = r = 0");
  if (spec.s != T.hdr.s) fail(Errc::SpecInvalid, "test dimension s does not match table");
  const FieldCtx& F = T.F;
  int m = T.hdr.m, s = T.hdr.s;
  const SpanList& sl = T.spans();
  std::uint64_t npoints = 1;
  for (int i = 0; i < m; i++) npoints *= F.q;

  std::vector<std::uint32_t> hist(npoints * F.q, 0);
  // per-span grids once; per entry shift by its offset
  std::vector<std::vector<Point>> grids(sl.spans.size());
  for (std::size_t i = 0; i < sl.spans.size(); i++) grids[i] = build_grid(F, sl.spans[i]);

  // histogram increments are commutative integer adds, so relaxed atomics
  // keep the result independent of worker count
  parallel_blocks(sl.spans.size(), workers, [&](std::uint64_t lo, std::uint64_t hi, int) {
    std::vector<Fel> vals;
    std::vector<std::uint64_t> idxs;
    for (std::uint64_t sp = lo; sp < hi; sp++) {
      const auto& grid = grids[sp];
      idxs.resize(grid.size());
      for (std::uint64_t rank = 0; rank < sl.offsets_per_span; rank++) {
        std::uint64_t ei = sp * sl.offsets_per_span + rank;
        Point off = sl.offset_of_rank(F, sl.spans[sp], rank);
        for (std::size_t g = 0; g < grid.size(); g++) {
          std::uint64_t pidx = 0, mul = 1;
          for (int j = 0; j < m; j++) {
            pidx += mul * F.add(off[j], grid[g][j]);
            mul *= F.q;
          }
          idxs[g] = pidx;
        }
        evaluate_grid(F, T.entries[ei], vals);
        for (std::size_t g = 0; g < grid.size(); g++)
          __atomic_fetch_add(&hist[idxs[g] * F.q + vals[g]], 1u, __ATOMIC_RELAXED);
      }
    }
  });

  std::uint64_t total = 0;
  for (std::uint64_t pi = 0; pi < npoints; pi++)
    for (std::uint32_t v = 0; v < F.q; v++)
      total += static_cast<std::uint64_t>(hist[pi * F.q + v]) * hist[pi * F.q + v];

  std::uint64_t nS = sl.spans.size();
  AgreementEstimate est;
  est.exact = true;
  est.value_exact = Rat(static_cast<std::int64_t>(total), static_cast<std::int64_t>(npoints * nS * nS));
  est.value = est.value_exact.to_double();
  (void)s;
  return est;
}

AgreementEstimate alpha_mc(const SubspaceTable& T, const TestSpec& spec, std::uint64_t n_samples,
                           std::uint64_t seed, int workers) {
  spec.validate(T.hdr.m);
  if (spec.s != T.hdr.s) fail(Errc::SpecInvalid, "test dimension s does not match table");
  if (n_samples < 1) fail(Errc::SpecInvalid, "need at least one sample");
  const FieldCtx& F = T.F;
  int m = T.hdr.m, s = spec.s, k = spec.k, r = spec.r;

  const std::uint64_t block_size = 4096;
  std::uint64_t nblocks = (n_samples + block_size - 1) / block_size;
  std::vector<std::uint64_t> hits(nblocks, 0);
  parallel_blocks(nblocks, workers, [&](std::uint64_t lo, std::uint64_t hi, int) {
    for (std::uint64_t b = lo; b < hi; b++) {
      Rng rng = Rng::stream(seed, b);
      std::uint64_t nb = std::min(block_size, n_samples - b * block_size);
      std::uint64_t acc = 0;
      for (std::uint64_t i = 0; i < nb; i++) {
        AffineSubspace K = sample_uniform(F, SubspaceFamily::all(m, k), rng);
        AffineSubspace S1 = sample_uniform(F, SubspaceFamily::containing(m, s, K), rng);
        AffineSubspace S2 = sample_uniform(F, SubspaceFamily::containing(m, s, K), rng);
        AffineSubspace R = K;
        if (r < k) {
          AffineSubspace local = sample_uniform(F, SubspaceFamily::all(k, r), rng);
          R = lift_to_global(F, K, local);
        }
        const Poly& p1 = T.entries[T.index_of(S1)];
        const Poly& p2 = T.entries[T.index_of(S2)];
        if (R.k == 0) {
          acc += evaluate(F, p1, local_coords(S1, R.base)) == evaluate(F, p2, local_coords(S2, R.base));
        } else {
          acc += restrict_poly(F, p1, S1, R) == restrict_poly(F, p2, S2, R);
        }
      }
      hits[b] = acc;
    }
  });
  std::uint64_t hit = 0;
  for (std::uint64_t h : hits) hit += h;
  AgreementEstimate est;
  est.exact = false;
  est.value = static_cast<double>(hit) / static_cast<double>(n_samples);
  est.stderr_ = std::sqrt(est.value * (1 - est.value) / static_cast<double>(n_samples));
  est.samples = n_samples;
  est.seed = seed;
  return est;
}

EquivReport equivalence_report(const SubspaceTable& T, int s, int k, int r, const Rat& kappa, int workers,
                               std::uint64_t cap) {
  if (!(0 <= r && r < k && k < s)) fail(Errc::SpecInvalid, "equivalence needs r < k < s");
  EquivReport rep;
  rep.s = s;
  rep.k = k;
  rep.r = r;
  rep.kappa = kappa;
  rep.in_spectral_regime = 2 * s <= T.hdr.m;
  rep.a_srs = alpha_exact(T, {s, r, r}, workers, cap).value_exact;
  rep.a_sks = alpha_exact(T, {s, k, k}, workers, cap).value_exact;
  rep.a_sksr = alpha_exact(T, {s, k, r}, workers, cap).value_exact;

  std::int64_t q = T.F.q;
  Rat dq = Rat(T.hdr.d, q);
  Rat beta(1);
  for (int i = 0; i <= r; i++) beta = beta * dq;
  // proof-exact lower bound: (1 - alpha_sksr) >= (1 - alpha_sks)(1 - beta)
  // chained with alpha_sksr >= alpha_srs
  Rat lo_lhs = rep.a_srs - beta;
  Rat lo_rhs = rep.a_sks * (Rat(1) - beta);
  Rat printed = rep.a_srs * (Rat(1) - beta);
  Rat upper = rep.a_srs + kappa * Rat::pow(q, -(s - 2 * k + r + 1));
  rep.checks.push_back({"lower_srs_minus_beta_le_sks_scaled", lo_lhs, lo_rhs, lo_lhs <= lo_rhs, true});
  rep.checks.push_back({"lower_as_printed_srs_scaled_le_sks", printed, rep.a_sks, printed <= rep.a_sks, false});
  rep.checks.push_back({"upper_sks_le_srs_plus_kappa_q_pow", rep.a_sks, upper, rep.a_sks <= upper, true});
  rep.checks.push_back({"chain_sks_le_sksr", rep.a_sks, rep.a_sksr, rep.a_sks <= rep.a_sksr, true});
  rep.checks.push_back({"chain_sksr_ge_srs", rep.a_sksr, rep.a_srs, rep.a_sksr >= rep.a_srs, true});
  return rep;
}

}  // namespace ldt
