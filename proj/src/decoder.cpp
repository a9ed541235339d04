#include "ldt/decoder.hpp"

#include <algorithm>
#include <cmath>

#include "ldt/parallel.hpp"

namespace ldt {

std::vector<Fel> difference_coeffs(const FieldCtx& F, int d) {
  std::vector<std::uint64_t> binom(d + 2, 0);
  binom[0] = 1;
  for (int n = 1; n <= d + 1; n++)
    for (int i = n; i >= 1; i--) binom[i] += binom[i - 1];
  std::vector<Fel> alpha(d + 2);
  for (int i = 0; i <= d + 1; i++) {
    Fel b = static_cast<Fel>(binom[i] % F.p);
    alpha[i] = (i % 2 == 1) ? b : F.neg(b);
  }
  return alpha;
}

namespace {

struct EntryRef {
  std::uint32_t entry = 0;
  std::uint32_t span = 0;
};

// Shared per-table machinery for the pipeline: flat span grids, the lift of
// every (cube span, local direction) pair to its global line span, and the
// inverse Vandermonde at nodes 0..d for fast line restriction.
struct PipelineCtx {
  const SubspaceTable& T;
  const SpanList& sl;
  const SpanList& lines;
  int m, s, d;
  std::uint64_t cube_points = 1, npoints = 1;
  std::vector<std::vector<Fel>> grids;      // per span: q^s x m, local-rank order
  std::vector<std::uint32_t> line_span;     // (span, ldir) -> line span index
  std::vector<Fel> line_dir;                // (span, ldir) -> normalized global dir (m)
  std::vector<std::uint8_t> line_pivot;     // per line span: pivot column
  std::uint32_t n_ldirs = 0;
  std::vector<Fel> vinv;                    // (d+1)^2, inverse Vandermonde
  std::vector<Fel> nodes;                   // d+1 sample nodes

  explicit PipelineCtx(const SubspaceTable& table)
      : T(table),
        sl(table.spans()),
        lines(span_list(table.F, table.hdr.m, 1)),
        m(table.hdr.m),
        s(table.hdr.s),
        d(table.hdr.d) {
    const FieldCtx& F = T.F;
    for (int i = 0; i < s; i++) cube_points *= F.q;
    for (int i = 0; i < m; i++) npoints *= F.q;
    grids.resize(sl.spans.size());
    for (std::size_t sp = 0; sp < sl.spans.size(); sp++) {
      auto pts = build_grid(F, sl.spans[sp]);
      grids[sp].reserve(pts.size() * m);
      for (const Point& p : pts) grids[sp].insert(grids[sp].end(), p.begin(), p.end());
    }
    const SpanList& ldirs = span_list(F, s, 1);
    n_ldirs = static_cast<std::uint32_t>(ldirs.spans.size());
    line_span.resize(sl.spans.size() * n_ldirs);
    line_dir.resize(static_cast<std::size_t>(sl.spans.size()) * n_ldirs * m);
    Point gdir(m);
    for (std::size_t sp = 0; sp < sl.spans.size(); sp++) {
      const AffineSubspace& V = sl.spans[sp];
      for (std::uint32_t u = 0; u < n_ldirs; u++) {
        const AffineSubspace& dsp = ldirs.spans[u];
        for (int j = 0; j < m; j++) gdir[j] = 0;
        for (int i = 0; i < s; i++) {
          Fel c = dsp.row(0)[i];
          if (c == 0) continue;
          for (int j = 0; j < m; j++) gdir[j] = F.add(gdir[j], F.mul(c, V.row(i)[j]));
        }
        int lead = 0;
        while (gdir[lead] == 0) lead++;
        if (gdir[lead] != 1) {
          Fel ip = F.inv(gdir[lead]);
          for (int j = lead; j < m; j++) gdir[j] = F.mul(gdir[j], ip);
        }
        AffineSubspace lin;
        lin.m = static_cast<std::uint16_t>(m);
        lin.k = 1;
        lin.base.assign(m, 0);
        lin.rows = gdir;
        lin.pivots = {static_cast<std::uint8_t>(lead)};
        auto it = lines.index.find(lin.key());
        if (it == lines.index.end()) fail(Errc::Inconsistent, "line span lookup failed");
        line_span[sp * n_ldirs + u] = it->second;
        std::copy(gdir.begin(), gdir.end(), line_dir.begin() + (sp * n_ldirs + u) * m);
      }
    }
    line_pivot.resize(lines.spans.size());
    for (std::size_t l = 0; l < lines.spans.size(); l++) line_pivot[l] = lines.spans[l].pivots[0];
    // inverse Vandermonde at the first d+1 canonical elements
    int n = d + 1;
    nodes.resize(n);
    for (int i = 0; i < n; i++) nodes[i] = static_cast<Fel>(i);
    std::vector<Fel> a(static_cast<std::size_t>(n) * 2 * n, 0);
    for (int i = 0; i < n; i++) {
      Fel pw = 1;
      for (int j = 0; j < n; j++) {
        a[static_cast<std::size_t>(i) * 2 * n + j] = pw;
        pw = F.mul(pw, nodes[i]);
      }
      a[static_cast<std::size_t>(i) * 2 * n + n + i] = 1;
    }
    for (int col = 0; col < n; col++) {
      int sel = col;
      while (a[static_cast<std::size_t>(sel) * 2 * n + col] == 0) sel++;
      for (int j = 0; j < 2 * n; j++)
        std::swap(a[static_cast<std::size_t>(sel) * 2 * n + j], a[static_cast<std::size_t>(col) * 2 * n + j]);
      Fel ip = F.inv(a[static_cast<std::size_t>(col) * 2 * n + col]);
      for (int j = 0; j < 2 * n; j++)
        a[static_cast<std::size_t>(col) * 2 * n + j] = F.mul(a[static_cast<std::size_t>(col) * 2 * n + j], ip);
      for (int i = 0; i < n; i++) {
        if (i == col) continue;
        Fel c = a[static_cast<std::size_t>(i) * 2 * n + col];
        if (c == 0) continue;
        for (int j = 0; j < 2 * n; j++)
          a[static_cast<std::size_t>(i) * 2 * n + j] =
              F.sub(a[static_cast<std::size_t>(i) * 2 * n + j], F.mul(c, a[static_cast<std::size_t>(col) * 2 * n + j]));
      }
    }
    vinv.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) vinv[static_cast<std::size_t>(i) * n + j] = a[static_cast<std::size_t>(i) * 2 * n + n + j];
  }

  // entries through a point, one per span
  void entries_through(const Point& x, std::vector<EntryRef>& out) const {
    const FieldCtx& F = T.F;
    out.clear();
    out.reserve(sl.spans.size());
    std::vector<Fel> t(s);
    for (std::uint32_t sp = 0; sp < sl.spans.size(); sp++) {
      const AffineSubspace& span = sl.spans[sp];
      for (int i = 0; i < s; i++) t[i] = x[span.pivots[i]];
      std::uint64_t rank = 0;
      std::uint32_t pm = 0;
      for (auto p : span.pivots) pm |= 1u << p;
      for (int j = 0; j < m; j++) {
        if (pm & (1u << j)) continue;
        Fel off = x[j];
        for (int i = 0; i < s; i++) off = F.sub(off, F.mul(t[i], span.row(i)[j]));
        rank = rank * F.q + off;
      }
      out.push_back({static_cast<std::uint32_t>(sp * sl.offsets_per_span + rank), sp});
    }
  }

  Fel value_at(const EntryRef& e, const Point& x) const {
    const AffineSubspace& span = sl.spans[e.span];
    std::vector<Fel> t(s);
    for (int i = 0; i < s; i++) t[i] = x[span.pivots[i]];
    return evaluate(T.F, T.entries[e.entry], t);
  }

  // scatter the entry's values over its global points; fn(point_index, value)
  template <typename Fn>
  void for_each_point_value(const EntryRef& e, std::vector<Fel>& vals_buf, Fn&& fn) const {
    const FieldCtx& F = T.F;
    evaluate_grid(F, T.entries[e.entry], vals_buf);
    const AffineSubspace& span = sl.spans[e.span];
    Point off = sl.offset_of_rank(F, span, e.entry % sl.offsets_per_span);
    const std::vector<Fel>& grid = grids[e.span];
    for (std::uint64_t g = 0; g < cube_points; g++) {
      std::uint64_t pidx = 0, mul = 1;
      const Fel* gv = grid.data() + g * m;
      for (int j = 0; j < m; j++) {
        pidx += mul * F.add(off[j], gv[j]);
        mul *= F.q;
      }
      fn(pidx, vals_buf[g]);
    }
  }

  std::uint64_t pack_key(const Fel* c) const {
    std::uint64_t v = 0;
    for (int i = d; i >= 0; i--) v = v * T.F.q + c[i];
    return v;
  }
};

// line-inconsistency rate of condition 2 by full enumeration; per-line ratios
// fold in long double because the exact rational's denominator is the lcm of
// the per-line conditioned counts
double line_fail_rate(const PipelineCtx& ctx, const Point& x, const std::vector<EntryRef>& cond) {
  const FieldCtx& F = ctx.T.F;
  if (cond.empty()) return 0.0;
  int d = ctx.d, n = d + 1;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> keys;
  keys.reserve(cond.size() * ctx.n_ldirs);
  std::vector<Fel> xloc(ctx.s), vals(n), coeffs(n), loc(ctx.s);
  for (const EntryRef& e : cond) {
    const AffineSubspace& span = ctx.sl.spans[e.span];
    const Poly& poly = ctx.T.entries[e.entry];
    for (int i = 0; i < ctx.s; i++) xloc[i] = x[span.pivots[i]];
    for (std::uint32_t u = 0; u < ctx.n_ldirs; u++) {
      std::uint32_t lid = ctx.line_span[e.span * ctx.n_ldirs + u];
      const Fel* dirn = ctx.line_dir.data() + (static_cast<std::size_t>(e.span) * ctx.n_ldirs + u) * ctx.m;
      Fel tx = x[ctx.line_pivot[lid]];
      for (int i = 0; i < n; i++) {
        Fel f = F.sub(ctx.nodes[i], tx);
        for (int j = 0; j < ctx.s; j++) loc[j] = F.add(xloc[j], F.mul(f, dirn[span.pivots[j]]));
        vals[i] = evaluate(F, poly, loc);
      }
      for (int j = 0; j < n; j++) {
        Fel acc = 0;
        for (int i = 0; i < n; i++) acc = F.add(acc, F.mul(ctx.vinv[static_cast<std::size_t>(j) * n + i], vals[i]));
        coeffs[j] = acc;
      }
      keys.emplace_back(lid, ctx.pack_key(coeffs.data()));
    }
  }
  std::sort(keys.begin(), keys.end());
  // fail2 = 1 - sum_l (sum_key c^2 / n_l) / (N L)
  long double agree = 0;
  std::size_t i = 0;
  while (i < keys.size()) {
    std::size_t line_end = i;
    while (line_end < keys.size() && keys[line_end].first == keys[i].first) line_end++;
    std::int64_t n_l = static_cast<std::int64_t>(line_end - i);
    std::int64_t sq = 0;
    std::size_t j = i;
    while (j < line_end) {
      std::size_t j2 = j;
      while (j2 < line_end && keys[j2].second == keys[j].second) j2++;
      sq += static_cast<std::int64_t>(j2 - j) * static_cast<std::int64_t>(j2 - j);
      j = j2;
    }
    agree += static_cast<long double>(sq) / static_cast<long double>(n_l);
    i = line_end;
  }
  long double norm = static_cast<long double>(cond.size()) * static_cast<long double>(ctx.n_ldirs);
  return static_cast<double>(1.0L - agree / norm);
}

struct SigmaScan {
  Fel sigma = 0;
  std::uint64_t mass = 0;
  std::uint64_t total = 0;
  std::vector<EntryRef> conditioned;  // the sigma-conditioned cubes
};

SigmaScan scan_sigma(const PipelineCtx& ctx, const std::vector<EntryRef>& cx, const Point& x,
                     const std::vector<std::uint8_t>& alive) {
  std::vector<std::uint32_t> hist(ctx.T.F.q, 0);
  std::vector<Fel> vals(cx.size());
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < cx.size(); i++) {
    if (!alive[cx[i].entry]) continue;
    vals[i] = ctx.value_at(cx[i], x);
    hist[vals[i]]++;
    total++;
  }
  SigmaScan out;
  for (std::uint32_t v = 0; v < ctx.T.F.q; v++)
    if (hist[v] > hist[out.sigma]) out.sigma = static_cast<Fel>(v);
  out.mass = hist[out.sigma];
  out.total = total;
  for (std::size_t i = 0; i < cx.size(); i++)
    if (alive[cx[i].entry] && vals[i] == out.sigma) out.conditioned.push_back(cx[i]);
  return out;
}

std::vector<Fel> plurality_from_votes(const PipelineCtx& ctx, const std::vector<std::uint32_t>& votes) {
  std::uint32_t q = ctx.T.F.q;
  std::vector<Fel> f(ctx.npoints, 0);
  for (std::uint64_t pi = 0; pi < ctx.npoints; pi++) {
    std::uint32_t best = 0;
    Fel arg = 0;
    for (std::uint32_t v = 0; v < q; v++) {
      std::uint32_t c = votes[pi * q + v];
      if (c > best) {
        best = c;
        arg = static_cast<Fel>(v);
      }
    }
    f[pi] = best == 0 ? 0 : arg;  // empty conditional: fixed to 0
  }
  return f;
}

}  // namespace

std::vector<Fel> conditional_plurality(const SubspaceTable& T, const Point& x, Fel sigma) {
  PipelineCtx ctx(T);
  std::vector<EntryRef> cx;
  ctx.entries_through(x, cx);
  std::vector<std::uint32_t> votes(ctx.npoints * T.F.q, 0);
  std::vector<Fel> vals;
  for (const EntryRef& e : cx) {
    if (ctx.value_at(e, x) != sigma) continue;
    ctx.for_each_point_value(e, vals, [&](std::uint64_t pidx, Fel v) { votes[pidx * T.F.q + v]++; });
  }
  return plurality_from_votes(ctx, votes);
}

ExcellenceStats excellence_check(const SubspaceTable& T, const Point& x, Fel sigma, double epsilon,
                                 double gamma) {
  PipelineCtx ctx(T);
  std::vector<EntryRef> cx, cond;
  ctx.entries_through(x, cx);
  for (const auto& e : cx)
    if (ctx.value_at(e, x) == sigma) cond.push_back(e);
  ExcellenceStats st;
  st.mass1 = Rat(static_cast<std::int64_t>(cond.size()), static_cast<std::int64_t>(cx.size()));
  st.fail2 = line_fail_rate(ctx, x, cond);
  st.excellent = st.mass1.to_double() >= epsilon / 2 - 1e-12 && st.fail2 <= gamma + 1e-12;
  return st;
}

CorrectOutcome self_correct(const FieldCtx& F, int m, int d, const std::vector<Fel>& f,
                            std::uint64_t exact_cap, std::uint64_t mc_samples, std::uint64_t seed) {
  if (static_cast<std::uint32_t>(d) + 2 > F.q) fail(Errc::DegreeTooHigh, "need d + 2 <= q");
  std::uint64_t npoints = 1;
  for (int i = 0; i < m; i++) npoints *= F.q;
  if (f.size() != npoints) fail(Errc::FormatError, "evaluation vector has wrong length");
  auto alpha = difference_coeffs(F, d);
  std::vector<Fel> imul(d + 2);  // field embedding of the integer multipliers
  for (int i = 0; i <= d + 1; i++) imul[i] = static_cast<Fel>(i % F.p);

  bool exact = npoints <= exact_cap;
  CorrectOutcome out;
  std::vector<Fel> g(npoints);
  std::vector<std::uint32_t> hist(F.q, 0);
  Point yv(m), hv(m), pt(m);
  for (std::uint64_t yi = 0; yi < npoints; yi++) {
    point_of_index_into(F, m, yi, yv);
    std::fill(hist.begin(), hist.end(), 0);
    std::uint64_t nvotes = exact ? npoints : mc_samples;
    Rng rng = Rng::stream(seed, yi);
    for (std::uint64_t t = 0; t < nvotes; t++) {
      point_of_index_into(F, m, exact ? t : rng.below(npoints), hv);
      Fel acc = 0;
      for (int i = 1; i <= d + 1; i++) {
        for (int j = 0; j < m; j++) pt[j] = F.add(yv[j], F.mul(imul[i], hv[j]));
        acc = F.add(acc, F.mul(alpha[i], f[point_index(F, pt)]));
      }
      hist[acc]++;
    }
    std::uint32_t best = 0;
    Fel arg = 0;
    for (std::uint32_t v = 0; v < F.q; v++)
      if (hist[v] > best) {
        best = hist[v];
        arg = static_cast<Fel>(v);
      }
    if (2ULL * best <= nvotes) {
      out.status = CorrectStatus::MajorityNotStrict;
      return out;
    }
    g[yi] = arg;
  }
  // verify degree <= d by exact interpolation over every point
  std::vector<std::vector<Fel>> pts(npoints);
  for (std::uint64_t i = 0; i < npoints; i++) {
    Point p = point_of_index(F, m, i);
    pts[i].assign(p.begin(), p.end());
  }
  Poly gp;
  try {
    gp = interpolate(F, pts, g, m, d);
  } catch (const Error& e) {
    if (e.code() == Errc::Inconsistent) {
      out.status = CorrectStatus::DegreeMismatch;
      return out;
    }
    throw;
  }
  std::int64_t diff = 0;
  for (std::uint64_t i = 0; i < npoints; i++) diff += f[i] != g[i];
  out.status = CorrectStatus::Ok;
  out.g = std::move(gp);
  out.disagreement = Rat(diff, static_cast<std::int64_t>(npoints));
  return out;
}

Rat neighborhood_rate_exact(const FieldCtx& F, int m, int d, const std::vector<Fel>& f) {
  if (static_cast<std::uint32_t>(d) + 2 > F.q) fail(Errc::DegreeTooHigh, "need d + 2 <= q");
  std::uint64_t npoints = 1;
  for (int i = 0; i < m; i++) npoints *= F.q;
  if (f.size() != npoints) fail(Errc::FormatError, "evaluation vector has wrong length");
  auto alpha = difference_coeffs(F, d);
  std::vector<Fel> imul(d + 2);
  for (int i = 0; i <= d + 1; i++) imul[i] = static_cast<Fel>(i % F.p);
  std::int64_t ok = 0;
  Point yv(m), hv(m), diffv(m), pt(m);
  for (std::uint64_t yi = 0; yi < npoints; yi++) {
    point_of_index_into(F, m, yi, yv);
    for (std::uint64_t hi = 0; hi < npoints; hi++) {
      point_of_index_into(F, m, hi, hv);
      for (int j = 0; j < m; j++) diffv[j] = F.sub(hv[j], yv[j]);
      Fel acc = 0;
      for (int i = 0; i <= d + 1; i++) {
        for (int j = 0; j < m; j++) pt[j] = F.add(yv[j], F.mul(imul[i], diffv[j]));
        acc = F.add(acc, F.mul(alpha[i], f[point_index(F, pt)]));
      }
      ok += acc == 0;
    }
  }
  return Rat(ok, static_cast<std::int64_t>(npoints * npoints));
}

double neighborhood_rate_mc(const FieldCtx& F, int m, int d, const std::vector<Fel>& f, std::uint64_t n,
                            std::uint64_t seed) {
  if (static_cast<std::uint32_t>(d) + 2 > F.q) fail(Errc::DegreeTooHigh, "need d + 2 <= q");
  std::uint64_t npoints = 1;
  for (int i = 0; i < m; i++) npoints *= F.q;
  auto alpha = difference_coeffs(F, d);
  std::vector<Fel> imul(d + 2);
  for (int i = 0; i <= d + 1; i++) imul[i] = static_cast<Fel>(i % F.p);
  Rng rng(seed);
  std::uint64_t ok = 0;
  Point yv(m), hv(m), diffv(m), pt(m);
  for (std::uint64_t t = 0; t < n; t++) {
    point_of_index_into(F, m, rng.below(npoints), yv);
    point_of_index_into(F, m, rng.below(npoints), hv);
    for (int j = 0; j < m; j++) diffv[j] = F.sub(hv[j], yv[j]);
    Fel acc = 0;
    for (int i = 0; i <= d + 1; i++) {
      for (int j = 0; j < m; j++) pt[j] = F.add(yv[j], F.mul(imul[i], diffv[j]));
      acc = F.add(acc, F.mul(alpha[i], f[point_index(F, pt)]));
    }
    ok += acc == 0;
  }
  return static_cast<double>(ok) / static_cast<double>(n);
}

Rat exact_support(const SubspaceTable& T, const Poly& g) {
  AffineSubspace whole = whole_space(T.hdr.m);
  std::int64_t hits = 0;
  for (std::uint64_t i = 0; i < T.size(); i++)
    hits += T.entries[i] == restrict_poly(T.F, g, whole, T.subspace_of(i));
  return Rat(hits, static_cast<std::int64_t>(T.size()));
}

namespace {

struct CandidateWork {
  CandidateReport rep;
  std::vector<Fel> f;
  bool has_f = false;
};

CandidateWork eval_candidate(const PipelineCtx& ctx, const Point& x, double epsilon, double gamma,
                             DecoderParams::Mode mode, const std::vector<std::uint8_t>& alive) {
  const FieldCtx& F = ctx.T.F;
  CandidateWork w;
  std::vector<EntryRef> cx;
  ctx.entries_through(x, cx);
  SigmaScan scan = scan_sigma(ctx, cx, x, alive);
  w.rep.x_index = point_index(F, x);
  w.rep.sigma = scan.sigma;
  if (scan.total == 0) return w;
  w.rep.mass1 = Rat(static_cast<std::int64_t>(scan.mass), static_cast<std::int64_t>(scan.total));
  bool cond1 = w.rep.mass1.to_double() >= epsilon / 2 - 1e-12;
  if (!cond1) return w;
  w.rep.fail2 = line_fail_rate(ctx, x, scan.conditioned);
  w.rep.excellent = w.rep.fail2 <= gamma + 1e-12;
  w.rep.advanced = mode == DecoderParams::Mode::TheoryFaithful ? w.rep.excellent : true;
  if (!w.rep.advanced) return w;

  // conditional plurality over the alive conditioned cubes
  std::vector<std::uint32_t> votes(ctx.npoints * F.q, 0);
  std::vector<Fel> vals;
  for (const EntryRef& e : scan.conditioned)
    ctx.for_each_point_value(e, vals, [&](std::uint64_t pidx, Fel v) { votes[pidx * F.q + v]++; });
  w.f = plurality_from_votes(ctx, votes);
  w.has_f = true;

  // supporting cubes: agreement with f on at least 1 - 2 gamma of the cube
  double thresh = (1.0 - 2.0 * gamma) * static_cast<double>(ctx.cube_points) - 1e-9;
  for (const EntryRef& e : cx) {
    if (!alive[e.entry]) continue;
    std::uint64_t agree = 0;
    ctx.for_each_point_value(e, vals, [&](std::uint64_t pidx, Fel v) { agree += w.f[pidx] == v; });
    if (static_cast<double>(agree) >= thresh) w.rep.support_cubes++;
  }
  return w;
}

}  // namespace

DecodeReport decode(const SubspaceTable& T, const DecoderParams& params) {
  const FieldCtx& F = T.F;
  int m = T.hdr.m, s = T.hdr.s, d = T.hdr.d;
  if (s != 3) fail(Errc::SpecInvalid, "decoder runs on cube tables (s = 3)");
  if (static_cast<std::uint32_t>(d) + 2 > F.q) fail(Errc::DegreeTooHigh, "need d + 2 <= q");

  DecodeReport rep;
  rep.table_hash = T.content_hash();
  double gamma = params.gamma >= 0 ? params.gamma : params.gamma_default(d);
  if (params.mode == DecoderParams::Mode::TheoryFaithful && gamma > params.gamma_default(d) + 1e-15)
    fail(Errc::SpecInvalid, "theory-faithful mode caps gamma at 1/(100 (d+2)^3)");
  double epsilon = params.epsilon;
  if (epsilon < 0) epsilon = alpha_exact_pointhist(T, TestSpec{s, 0, 0}, params.workers).value;
  rep.epsilon_used = epsilon;
  rep.gamma_used = gamma;

  PipelineCtx ctx(T);
  std::vector<std::uint8_t> alive(T.size(), 1);
  std::vector<DecodeResult> results;
  int rounds = params.list_mode ? params.max_rounds : 1;
  AffineSubspace whole = whole_space(m);

  for (int round = 0; round < rounds; round++) {
    // distinct candidate points
    Rng xr = Rng::stream(params.seed, 1000 + round);
    std::vector<Point> xs;
    std::vector<std::uint64_t> seen;
    while (static_cast<int>(xs.size()) < params.n_candidates && seen.size() < ctx.npoints) {
      std::uint64_t pi = xr.below(ctx.npoints);
      if (std::find(seen.begin(), seen.end(), pi) != seen.end()) continue;
      seen.push_back(pi);
      xs.push_back(point_of_index(F, m, pi));
    }
    std::vector<CandidateWork> works(xs.size());
    parallel_blocks(xs.size(), params.workers, [&](std::uint64_t lo, std::uint64_t hi, int) {
      for (std::uint64_t i = lo; i < hi; i++)
        works[i] = eval_candidate(ctx, xs[i], epsilon, gamma, params.mode, alive);
    });
    for (const auto& w : works) rep.candidates.push_back(w.rep);

    std::vector<int> order;
    for (int i = 0; i < static_cast<int>(works.size()); i++)
      if (works[i].rep.advanced && works[i].has_f) order.push_back(i);
    if (order.empty()) {
      if (round == 0) rep.no_candidate = true;
      break;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (works[a].rep.excellent != works[b].rep.excellent) return works[a].rep.excellent;
      if (works[a].rep.support_cubes != works[b].rep.support_cubes)
        return works[a].rep.support_cubes > works[b].rep.support_cubes;
      return works[a].rep.x_index < works[b].rep.x_index;
    });
    if (static_cast<int>(order.size()) > params.top_k) order.resize(params.top_k);

    Rat best_support(0);
    int best_idx = -1;
    for (int oi : order) {
      const CandidateWork& w = works[oi];
      CorrectOutcome co = self_correct(F, m, d, w.f, params.rs_exact_cap, params.mc_samples,
                                       params.seed ^ w.rep.x_index);
      if (co.status != CorrectStatus::Ok) continue;
      bool dup = false;
      for (const auto& r : results) dup = dup || r.g == co.g;
      if (dup) continue;
      DecodeResult res;
      res.g = co.g;
      res.support = exact_support(T, co.g);
      res.x_index = w.rep.x_index;
      res.sigma = w.rep.sigma;
      if (best_idx < 0 || best_support < res.support) {
        best_support = res.support;
        best_idx = static_cast<int>(results.size());
      }
      results.push_back(std::move(res));
    }
    rep.rounds = round + 1;
    if (!params.list_mode) break;
    if (best_idx < 0 || best_support.to_double() < params.min_support) break;
    // retire the supporting entries of the round's best polynomial
    const Poly& bg = results[best_idx].g;
    for (std::uint64_t i = 0; i < T.size(); i++)
      if (alive[i] && T.entries[i] == restrict_poly(F, bg, whole, T.subspace_of(i))) alive[i] = 0;
  }

  // drop sub-threshold results, sort canonically
  std::vector<DecodeResult> kept;
  for (auto& r : results)
    if (r.support.to_double() >= params.min_support - 1e-12) kept.push_back(std::move(r));
  std::sort(kept.begin(), kept.end(), [](const DecodeResult& a, const DecodeResult& b) {
    if (!(a.support == b.support)) return b.support < a.support;
    return a.g < b.g;
  });
  rep.results = std::move(kept);
  if (rep.results.empty()) rep.no_candidate = true;
  return rep;
}

}  // namespace ldt
