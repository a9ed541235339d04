#include "ldt/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ldt {

namespace {

// implicit-shift QL on a symmetric tridiagonal (values only); the walk
// matrices here carry eigenvalues with very large multiplicities, which can
// stall the stock solver's iteration cap
bool tql_values(std::vector<double>& d, std::vector<double>& e) {
  std::size_t n = d.size();
  if (n == 0) return true;
  e.push_back(0.0);
  for (std::size_t l = 0; l < n; l++) {
    int iter = 0;
    std::size_t mi;
    do {
      for (mi = l; mi + 1 < n; mi++) {
        double dd = std::abs(d[mi]) + std::abs(d[mi + 1]);
        if (std::abs(e[mi]) <= 2.3e-16 * dd) break;
      }
      if (mi != l) {
        if (iter++ == 300) return false;
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[mi] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(mi) - 1;
             i >= static_cast<std::ptrdiff_t>(l); i--) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[mi] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[mi] = 0.0;
      }
    } while (mi != l);
  }
  return true;
}

}  // namespace

std::vector<double> sym_eigenvalues(std::vector<double>& matrix_rowmajor, std::size_t n) {
  Eigen::Map<Eigen::MatrixXd> M(matrix_rowmajor.data(), static_cast<Eigen::Index>(n),
                                static_cast<Eigen::Index>(n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  if (es.info() == Eigen::Success) {
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return ev;  // ascending
  }
  Eigen::Tridiagonalization<Eigen::MatrixXd> tri(M);
  std::vector<double> d(n), e(n > 1 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; i++) d[i] = tri.diagonal()(static_cast<Eigen::Index>(i));
  for (std::size_t i = 0; i + 1 < n; i++) e[i] = tri.subDiagonal()(static_cast<Eigen::Index>(i));
  if (!tql_values(d, e)) fail(Errc::NoConvergence, "dense eigensolver failed");
  std::sort(d.begin(), d.end());
  return d;
}

void InclusionGraph::transpose(std::vector<std::uint64_t>& aoff, std::vector<std::uint32_t>& aadj) const {
  std::vector<std::uint64_t> deg(nA, 0);
  for (std::uint32_t a : badj) deg[a]++;
  aoff.assign(nA + 1, 0);
  for (std::uint64_t i = 0; i < nA; i++) aoff[i + 1] = aoff[i] + deg[i];
  aadj.assign(badj.size(), 0);
  std::vector<std::uint64_t> cur(aoff.begin(), aoff.end() - 1);
  for (std::uint64_t b = 0; b < nB; b++)
    for (std::uint64_t e = boff[b]; e < boff[b + 1]; e++)
      aadj[cur[badj[e]]++] = static_cast<std::uint32_t>(b);
}

namespace {

void validate_biregular(InclusionGraph& g) {
  if (g.nA == 0 || g.nB == 0) fail(Errc::NotBiRegular, g.name + ": empty side");
  std::uint64_t db = g.boff[1] - g.boff[0];
  for (std::uint64_t b = 0; b < g.nB; b++)
    if (g.boff[b + 1] - g.boff[b] != db) fail(Errc::NotBiRegular, g.name + ": right degrees differ");
  std::vector<std::uint64_t> deg(g.nA, 0);
  for (std::uint32_t a : g.badj) deg[a]++;
  for (std::uint64_t a = 0; a < g.nA; a++)
    if (deg[a] != deg[0]) fail(Errc::NotBiRegular, g.name + ": left degrees differ");
  g.dA = deg[0];
  g.dB = db;
}

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; i++) r *= b;
  return r;
}

// (q^x - 1) / (q - 1)
std::int64_t gb1(std::uint32_t q, int x) {
  if (x < 0) return 0;
  __int128 r = 0, p = 1;
  for (int i = 0; i < x; i++) {
    r += p;
    p *= q;
    if (r > INT64_MAX) fail(Errc::Overflow, "Gaussian unary coefficient overflow");
  }
  return static_cast<std::int64_t>(r);
}

struct Interner {
  std::unordered_map<std::string, std::uint32_t> map;
  std::uint32_t intern(const std::string& key) {
    auto it = map.find(key);
    if (it != map.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(map.size());
    map.emplace(key, id);
    return id;
  }
};

// local affine lines of the chart F_q^dim, global lift through a LINEAR span
// V: for each, push the interned id of the global line
template <typename Fn>
void for_each_global_line(const FieldCtx& F, const AffineSubspace& V, bool skip_through_zero,
                          bool only_through_zero, Fn&& fn) {
  int m = V.m, s = V.k;
  const SpanList& dirs = span_list(F, s, 1);
  Point gdir(m), gbase(m);
  for (const auto& dsp : dirs.spans) {
    for (int j = 0; j < m; j++) gdir[j] = 0;
    for (int i = 0; i < s; i++) {
      Fel c = dsp.row(0)[i];
      if (c == 0) continue;
      for (int j = 0; j < m; j++) gdir[j] = F.add(gdir[j], F.mul(c, V.row(i)[j]));
    }
    std::uint64_t noff = only_through_zero ? 1 : dirs.offsets_per_span;
    for (std::uint64_t r = 0; r < noff; r++) {
      Point loff = dirs.offset_of_rank(F, dsp, r);
      bool through_zero = true;
      for (Fel v : loff) through_zero = through_zero && v == 0;
      if (skip_through_zero && through_zero) continue;
      for (int j = 0; j < m; j++) gbase[j] = 0;
      for (int i = 0; i < s; i++) {
        Fel c = loff[i];
        if (c == 0) continue;
        for (int j = 0; j < m; j++) gbase[j] = F.add(gbase[j], F.mul(c, V.row(i)[j]));
      }
      fn(gbase, gdir);
    }
  }
}

std::string line_key(const FieldCtx& F, const Point& base, const Point& dir_in) {
  int m = static_cast<int>(base.size());
  Point dir = dir_in;
  int lead = 0;
  while (dir[lead] == 0) lead++;
  if (dir[lead] != 1) {
    Fel ip = F.inv(dir[lead]);
    for (int j = lead; j < m; j++) dir[j] = F.mul(dir[j], ip);
  }
  // canonical offset: clear the pivot coordinate
  Point off = base;
  Fel c = off[lead];
  if (c != 0)
    for (int j = 0; j < m; j++) off[j] = F.sub(off[j], F.mul(c, dir[j]));
  std::string key;
  key.reserve(2 * m + 2);
  auto put = [&key](Fel v) {
    key.push_back(static_cast<char>(v & 0xff));
    key.push_back(static_cast<char>(v >> 8));
  };
  for (Fel v : off) put(v);
  for (Fel v : dir) put(v);
  return key;
}

}  // namespace

GraphCase graph_case_parse(const std::string& s) {
  if (s == "g1") return GraphCase::G1;
  if (s == "g2") return GraphCase::G2;
  if (s == "g3") return GraphCase::G3;
  if (s == "g4") return GraphCase::G4;
  if (s == "g5") return GraphCase::G5;
  if (s == "g6") return GraphCase::G6;
  fail(Errc::SpecInvalid, "unknown graph case " + s);
}

const char* graph_case_name(GraphCase c) {
  switch (c) {
    case GraphCase::G1: return "g1";
    case GraphCase::G2: return "g2";
    case GraphCase::G3: return "g3";
    case GraphCase::G4: return "g4";
    case GraphCase::G5: return "g5";
    case GraphCase::G6: return "g6";
  }
  return "?";
}

int graph_case_exponent(GraphCase c) {
  switch (c) {
    case GraphCase::G1: return 1;
    case GraphCase::G2: return 2;
    case GraphCase::G3: return 1;
    case GraphCase::G4: return 3;
    case GraphCase::G5: return 2;
    case GraphCase::G6: return 1;
  }
  return 0;
}

int graph_case_min_m(GraphCase c) { return c == GraphCase::G6 ? 3 : 6; }

InclusionGraph build_graph(GraphCase c, int m, std::uint32_t q, std::uint64_t edge_cap) {
  FieldCtx F = FieldCtx::make(q, 1);  // spectra run on prime fields
  InclusionGraph g;
  g.name = graph_case_name(c);
  g.m = m;
  g.q = q;
  std::uint64_t npoints = upow(q, m);

  auto reserve_edges = [&](std::uint64_t nb, std::uint64_t db) {
    if (nb * db > edge_cap) fail(Errc::CapExceeded, g.name + ": too many edges");
    g.boff.reserve(nb + 1);
    g.badj.reserve(nb * db);
  };

  switch (c) {
    case GraphCase::G1: {
      if (m < 3) fail(Errc::OutOfRange, "g1 needs m >= 3");
      const SpanList& cubes = span_list(F, m, 3);
      std::uint64_t lines_per_cube = static_cast<std::uint64_t>(q * q + q + 1) * (q * q - 1);
      reserve_edges(cubes.spans.size(), lines_per_cube);
      Interner lines;
      g.boff.push_back(0);
      for (const auto& V : cubes.spans) {
        for_each_global_line(F, V, /*skip_through_zero=*/true, /*only_through_zero=*/false,
                             [&](const Point& base, const Point& dir) {
                               g.badj.push_back(lines.intern(line_key(F, base, dir)));
                             });
        g.boff.push_back(g.badj.size());
      }
      g.nB = cubes.spans.size();
      g.nA = lines.map.size();
      break;
    }
    case GraphCase::G2: {
      if (m < 3) fail(Errc::OutOfRange, "g2 needs m >= 3");
      const SpanList& cubes = span_list(F, m, 3);
      const SpanList& ldirs = span_list(F, m, 1);
      reserve_edges(cubes.spans.size(), q * q + q + 1);
      g.boff.push_back(0);
      for (const auto& V : cubes.spans) {
        for_each_global_line(F, V, /*skip_through_zero=*/false, /*only_through_zero=*/true,
                             [&](const Point& base, const Point& dir) {
                               (void)base;
                               Point nd = dir;
                               int lead = 0;
                               while (nd[lead] == 0) lead++;
                               if (nd[lead] != 1) {
                                 Fel ip = F.inv(nd[lead]);
                                 for (int j = lead; j < m; j++) nd[j] = F.mul(nd[j], ip);
                               }
                               AffineSubspace lin;
                               lin.m = static_cast<std::uint16_t>(m);
                               lin.k = 1;
                               lin.base.assign(m, 0);
                               lin.rows = nd;
                               lin.pivots = {static_cast<std::uint8_t>(lead)};
                               auto it = ldirs.index.find(lin.key());
                               if (it == ldirs.index.end()) fail(Errc::Inconsistent, "line lookup");
                               g.badj.push_back(it->second);
                             });
        g.boff.push_back(g.badj.size());
      }
      g.nB = cubes.spans.size();
      g.nA = ldirs.spans.size();
      break;
    }
    case GraphCase::G3: {
      if (m < 3) fail(Errc::OutOfRange, "g3 needs m >= 3");
      // anchor line = span(e1); cubes containing it are linear
      AffineSubspace ell;
      ell.m = static_cast<std::uint16_t>(m);
      ell.k = 1;
      ell.base.assign(m, 0);
      ell.rows.assign(m, 0);
      ell.rows[0] = 1;
      ell.pivots = {0};
      auto cubes = enumerate_family(F, SubspaceFamily::containing(m, 3, ell), edge_cap);
      // compact ids for points off the line
      std::vector<std::int64_t> compact(npoints, -1);
      std::uint64_t na = 0;
      for (std::uint64_t pi = 0; pi < npoints; pi++) {
        Point x = point_of_index(F, m, pi);
        bool on_line = true;
        for (int j = 1; j < m; j++) on_line = on_line && x[j] == 0;
        if (!on_line) compact[pi] = static_cast<std::int64_t>(na++);
      }
      reserve_edges(cubes.size(), upow(q, 3) - q);
      g.boff.push_back(0);
      for (const auto& C : cubes) {
        for (const Point& gp : build_grid(F, C)) {
          std::uint64_t pi = point_index(F, gp);  // linear cube: base is zero
          if (compact[pi] >= 0) g.badj.push_back(static_cast<std::uint32_t>(compact[pi]));
        }
        g.boff.push_back(g.badj.size());
      }
      g.nB = cubes.size();
      g.nA = na;
      break;
    }
    case GraphCase::G4:
    case GraphCase::G5:
    case GraphCase::G6: {
      int s = c == GraphCase::G6 ? 1 : 3;
      if (m < s) fail(Errc::OutOfRange, "ambient too small");
      bool through_zero_only = c == GraphCase::G5;
      bool skip_zero_point = c == GraphCase::G5;
      const SpanList& sl = span_list(F, m, s);
      std::uint64_t noff = through_zero_only ? 1 : sl.offsets_per_span;
      std::uint64_t db = upow(q, s) - (skip_zero_point ? 1 : 0);
      reserve_edges(sl.spans.size() * noff, db);
      g.boff.push_back(0);
      Point x(m);
      for (const auto& V : sl.spans) {
        auto grid = build_grid(F, V);
        for (std::uint64_t r = 0; r < noff; r++) {
          Point off = sl.offset_of_rank(F, V, r);
          for (const Point& gp : grid) {
            std::uint64_t pi = 0, mul = 1;
            for (int j = 0; j < m; j++) {
              pi += mul * F.add(off[j], gp[j]);
              mul *= q;
            }
            if (skip_zero_point) {
              if (pi == 0) continue;
              g.badj.push_back(static_cast<std::uint32_t>(pi - 1));
            } else {
              g.badj.push_back(static_cast<std::uint32_t>(pi));
            }
          }
          g.boff.push_back(g.badj.size());
        }
      }
      g.nB = sl.spans.size() * noff;
      g.nA = npoints - (skip_zero_point ? 1 : 0);
      break;
    }
  }
  validate_biregular(g);
  return g;
}

InclusionGraph build_subspace_graph(int r, int k, int s, int m, std::uint32_t q, std::uint64_t edge_cap) {
  if (!(0 <= r && r <= k && k < s && s <= m)) fail(Errc::OutOfRange, "need 0 <= r <= k < s <= m");
  FieldCtx F = FieldCtx::make(q, 1);
  AffineSubspace R;
  R.m = static_cast<std::uint16_t>(m);
  R.k = static_cast<std::uint16_t>(r);
  R.base.assign(m, 0);
  R.rows.assign(static_cast<std::size_t>(r) * m, 0);
  for (int i = 0; i < r; i++) {
    R.rows[static_cast<std::size_t>(i) * m + i] = 1;
    R.pivots.push_back(static_cast<std::uint8_t>(i));
  }
  auto ks = enumerate_family(F, SubspaceFamily::containing(m, k, R), edge_cap);
  auto ss = enumerate_family(F, SubspaceFamily::containing(m, s, R), edge_cap);
  Interner amap;
  for (const auto& K : ks) amap.intern(K.key());

  InclusionGraph g;
  g.name = "subspace(" + std::to_string(r) + "," + std::to_string(k) + "," + std::to_string(s) + ")";
  g.m = m;
  g.q = q;
  g.nA = ks.size();
  g.nB = ss.size();
  g.boff.push_back(0);
  for (const auto& S : ss) {
    // R in S's chart
    std::vector<Point> lrows;
    for (int i = 0; i < r; i++) {
      Point d(R.row(i), R.row(i) + m);
      lrows.push_back(local_coords(S, d));
    }
    AffineSubspace Rloc = canonicalize_span(F, local_coords(S, R.base), lrows);
    auto locals = enumerate_family(F, SubspaceFamily::containing(s, k, Rloc), edge_cap);
    for (const auto& lk : locals) {
      AffineSubspace K = lift_to_global(F, S, lk);
      auto it = amap.map.find(K.key());
      if (it == amap.map.end()) fail(Errc::Inconsistent, "containment lift landed outside the family");
      g.badj.push_back(it->second);
    }
    g.boff.push_back(g.badj.size());
    if (g.badj.size() > edge_cap) fail(Errc::CapExceeded, "subspace graph too large");
  }
  validate_biregular(g);
  return g;
}

namespace {

struct WalkResult {
  double lambda_t = 0;  // largest-magnitude nontrivial eigenvalue of the two-step walk
  double residual = 0;
  std::uint64_t iterations = 0;
  std::string method;
};

WalkResult dense_walk_lambda(const InclusionGraph& g, bool walk_on_A) {
  std::uint64_t n = walk_on_A ? g.nA : g.nB;
  std::vector<std::uint32_t> counts(n * n, 0);
  if (walk_on_A) {
    for (std::uint64_t b = 0; b < g.nB; b++)
      for (std::uint64_t e1 = g.boff[b]; e1 < g.boff[b + 1]; e1++)
        for (std::uint64_t e2 = g.boff[b]; e2 < g.boff[b + 1]; e2++)
          counts[static_cast<std::uint64_t>(g.badj[e1]) * n + g.badj[e2]]++;
  } else {
    std::vector<std::uint64_t> aoff;
    std::vector<std::uint32_t> aadj;
    g.transpose(aoff, aadj);
    for (std::uint64_t a = 0; a < g.nA; a++)
      for (std::uint64_t e1 = aoff[a]; e1 < aoff[a + 1]; e1++)
        for (std::uint64_t e2 = aoff[a]; e2 < aoff[a + 1]; e2++)
          counts[static_cast<std::uint64_t>(aadj[e1]) * n + aadj[e2]]++;
  }
  double scale = 1.0 / (static_cast<double>(g.dA) * static_cast<double>(g.dB));
  std::vector<double> w(n * n);
  for (std::uint64_t i = 0; i < n * n; i++) w[i] = counts[i] * scale;
  auto ev = sym_eigenvalues(w, n);  // ascending
  WalkResult res;
  res.method = "two-step-walk-eigen";
  res.residual = std::abs(ev.back() - 1.0);
  if (res.residual > 1e-9) fail(Errc::NoConvergence, "walk top eigenvalue differs from 1");
  double lo = n >= 2 ? std::abs(ev.front()) : 0.0;
  double hi = n >= 2 ? std::abs(ev[n - 2]) : 0.0;
  res.lambda_t = std::max(lo, hi);
  return res;
}

WalkResult power_walk_lambda(const InclusionGraph& g, bool walk_on_A) {
  std::uint64_t n = walk_on_A ? g.nA : g.nB;
  std::uint64_t nOther = walk_on_A ? g.nB : g.nA;
  std::vector<double> v(n), tmp(nOther), w(n);
  Rng rng(0x5eedULL);
  for (auto& x : v) x = rng.real() - 0.5;
  auto deflate = [](std::vector<double>& x) {
    double mean = 0;
    for (double t : x) mean += t;
    mean /= static_cast<double>(x.size());
    for (double& t : x) t -= mean;
  };
  auto norm = [](const std::vector<double>& x) {
    double s = 0;
    for (double t : x) s += t * t;
    return std::sqrt(s);
  };
  deflate(v);
  double nv = norm(v);
  for (double& t : v) t /= nv;
  double scale = 1.0 / (static_cast<double>(g.dA) * static_cast<double>(g.dB));
  WalkResult res;
  res.method = "power-iteration";
  double theta = 0;
  for (std::uint64_t it = 0; it < 200000; it++) {
    std::fill(tmp.begin(), tmp.end(), 0.0);
    std::fill(w.begin(), w.end(), 0.0);
    if (walk_on_A) {
      // tmp over B: gather, then scatter back to A
      for (std::uint64_t b = 0; b < g.nB; b++) {
        double s = 0;
        for (std::uint64_t e = g.boff[b]; e < g.boff[b + 1]; e++) s += v[g.badj[e]];
        tmp[b] = s;
      }
      for (std::uint64_t b = 0; b < g.nB; b++)
        for (std::uint64_t e = g.boff[b]; e < g.boff[b + 1]; e++) w[g.badj[e]] += tmp[b];
    } else {
      for (std::uint64_t b = 0; b < g.nB; b++)
        for (std::uint64_t e = g.boff[b]; e < g.boff[b + 1]; e++) tmp[g.badj[e]] += v[b];
      for (std::uint64_t b = 0; b < g.nB; b++) {
        double s = 0;
        for (std::uint64_t e = g.boff[b]; e < g.boff[b + 1]; e++) s += tmp[g.badj[e]];
        w[b] = s;
      }
    }
    for (double& t : w) t *= scale;
    deflate(w);
    theta = 0;
    for (std::uint64_t i = 0; i < n; i++) theta += v[i] * w[i];
    double resid = 0;
    for (std::uint64_t i = 0; i < n; i++) {
      double r = w[i] - theta * v[i];
      resid += r * r;
    }
    resid = std::sqrt(resid);
    res.iterations = it + 1;
    double nw = norm(w);
    if (nw < 1e-300) {
      res.lambda_t = 0;
      res.residual = 0;
      return res;
    }
    for (std::uint64_t i = 0; i < n; i++) v[i] = w[i] / nw;
    if (resid <= 1e-9 && it >= 3) {
      res.lambda_t = std::abs(theta);
      res.residual = resid;
      return res;
    }
  }
  fail(Errc::NoConvergence, "power iteration did not reach residual 1e-9");
}

}  // namespace

SpectralReport lambda_of(const InclusionGraph& g, std::uint64_t dense_cap) {
  bool walk_on_A = g.nA <= g.nB;
  std::uint64_t n = walk_on_A ? g.nA : g.nB;
  WalkResult res = n <= dense_cap ? dense_walk_lambda(g, walk_on_A) : power_walk_lambda(g, walk_on_A);
  SpectralReport rep;
  rep.graph = g.name;
  rep.m = g.m;
  rep.q = g.q;
  rep.lambda_sq = std::max(0.0, res.lambda_t);
  rep.lambda = std::sqrt(rep.lambda_sq);
  rep.method = res.method;
  rep.residual = res.residual;
  rep.iterations = res.iterations;
  return rep;
}

Rat g6_walk_lambda(int m, std::uint32_t q) {
  std::int64_t qm = 1;
  for (int i = 0; i < m; i++) qm *= q;
  return Rat(1, q) - Rat(q - 1, q) * Rat(1, qm - 1);
}

Rat g1_walk_lambda(int m, std::uint32_t q) {
  std::int64_t q3 = static_cast<std::int64_t>(q) * q * q;
  Rat c2q3 = Rat(q3) * Rat(q3 - 1) / Rat(2);
  Rat c2q2 = Rat(static_cast<std::int64_t>(q) * q) * Rat(static_cast<std::int64_t>(q) * q - 1) / Rat(2);
  Rat c2q = Rat(q) * Rat(q - 1) / Rat(2);
  Rat lines_q3 = Rat(q3 - 1, q - 1);
  Rat lines_q2 = Rat(static_cast<std::int64_t>(q) * q - 1, q - 1);
  Rat dR = c2q3 / c2q - lines_q3;
  Rat beta = c2q2 / c2q - lines_q2;
  std::int64_t qm = 1;
  for (int i = 0; i < m; i++) qm *= q;
  Rat dL = Rat(qm - q * q) / Rat(q3 - static_cast<std::int64_t>(q) * q);
  Rat dprime = Rat(q) * Rat(gb1(q, 3)) * Rat(gb1(q, m - 3));
  Rat lam32 = grassmann_eigenvalue(1, 3, m, q).value;
  return Rat(1) / dL + (beta * dprime / (dR * dL)) * lam32;
}

SpectralReport lemma27_report(GraphCase c, int m, std::uint32_t q) {
  if (m < graph_case_min_m(c))
    fail(Errc::OutOfRange, std::string(graph_case_name(c)) + " needs m >= " + std::to_string(graph_case_min_m(c)));
  InclusionGraph g = build_graph(c, m, q);
  SpectralReport rep = lambda_of(g);
  rep.target_exponent = graph_case_exponent(c);
  rep.ratio = rep.lambda * std::pow(static_cast<double>(q), rep.target_exponent / 2.0);
  if (c == GraphCase::G6) rep.closed_form = g6_walk_lambda(m, q).to_double();
  if (c == GraphCase::G1) rep.closed_form = g1_walk_lambda(m, q).to_double();
  return rep;
}

GrassmannEig grassmann_eigenvalue(int j, int k, int m, std::uint32_t q) {
  if (!(1 <= k && 2 * k <= m)) fail(Errc::OutOfRange, "need 1 <= k <= m/2");
  if (!(0 <= j && j <= k)) fail(Errc::OutOfRange, "need 0 <= j <= k");
  std::int64_t qj1 = 1;
  for (int i = 0; i <= j; i++) qj1 *= q;
  Rat num = Rat(qj1) * Rat(gb1(q, k - j)) * Rat(gb1(q, m - k - j)) - Rat(gb1(q, j));
  Rat den = Rat(q) * Rat(gb1(q, k)) * Rat(gb1(q, m - k));
  GrassmannEig out;
  out.value = num / den;
  BigUint hi = gaussian_binomial(m, j, q);
  BigUint lo = j >= 1 ? gaussian_binomial(m, j - 1, q) : BigUint(0);
  hi -= lo;
  out.multiplicity = hi;
  return out;
}

namespace {

// dim of the intersection of two linear subspaces
int intersection_dim(const FieldCtx& F, const AffineSubspace& U1, const AffineSubspace& U2) {
  int m = U1.m;
  std::vector<Fel> rows(U1.rows);
  rows.insert(rows.end(), U2.rows.begin(), U2.rows.end());
  std::vector<Point> dirs;
  for (int i = 0; i < U1.k + U2.k; i++) dirs.emplace_back(rows.begin() + static_cast<std::size_t>(i) * m,
                                                          rows.begin() + static_cast<std::size_t>(i + 1) * m);
  AffineSubspace span = canonicalize_span(F, Point(m, 0), dirs);
  return U1.k + U2.k - span.k;
}

// dense walk of the "intersection dimension == target" graph on linear
// k-subspaces; returns eigenvalues ascending and the common degree
std::pair<std::vector<double>, std::uint64_t> grassmann_case_walk(const FieldCtx& F, int k, int m, int target,
                                                                  std::uint64_t dense_cap) {
  const SpanList& sl = span_list(F, m, k);
  std::uint64_t n = sl.spans.size();
  if (n > dense_cap) fail(Errc::CapExceeded, "Grassmann walk too large for dense mode");
  std::vector<std::uint8_t> adj(n * n, 0);
  std::vector<std::uint64_t> deg(n, 0);
  for (std::uint64_t i = 0; i < n; i++)
    for (std::uint64_t j = i + 1; j < n; j++) {
      if (intersection_dim(F, sl.spans[i], sl.spans[j]) == target) {
        adj[i * n + j] = adj[j * n + i] = 1;
        deg[i]++;
        deg[j]++;
      }
    }
  for (std::uint64_t i = 0; i < n; i++)
    if (deg[i] != deg[0]) fail(Errc::NotBiRegular, "Grassmann case graph is not regular");
  std::vector<double> w(n * n);
  double scale = deg[0] ? 1.0 / static_cast<double>(deg[0]) : 0.0;
  for (std::uint64_t i = 0; i < n * n; i++) w[i] = adj[i] * scale;
  return {sym_eigenvalues(w, n), deg[0]};
}

}  // namespace

FactA1Report verify_grassmann_walk(int k, int m, std::uint32_t q, std::uint64_t dense_cap) {
  if (!(1 <= k && 2 * k <= m)) fail(Errc::OutOfRange, "need 1 <= k <= m/2");
  FieldCtx F = FieldCtx::make(q, 1);
  auto [ev, deg] = grassmann_case_walk(F, k, m, k - 1, dense_cap);
  // formula degree check: q [k 1][m-k 1]
  std::uint64_t want_deg = static_cast<std::uint64_t>(q) * gb1(q, k) * gb1(q, m - k);
  FactA1Report rep;
  if (deg != want_deg) return rep;
  std::vector<double> expected;
  for (int j = 0; j <= k; j++) {
    GrassmannEig ge = grassmann_eigenvalue(j, k, m, q);
    if (!ge.multiplicity.fits_u64()) fail(Errc::CapExceeded, "multiplicity too large");
    for (std::uint64_t t = 0; t < ge.multiplicity.as_u64(); t++) expected.push_back(ge.value.to_double());
  }
  std::sort(expected.begin(), expected.end());
  if (expected.size() != ev.size()) return rep;
  rep.ok = true;
  for (std::size_t i = 0; i < ev.size(); i++) {
    rep.max_err = std::max(rep.max_err, std::abs(ev[i] - expected[i]));
    if (std::abs(ev[i] - expected[i]) > 1e-9) rep.ok = false;
  }
  rep.computed.assign(ev.rbegin(), ev.rend());
  rep.expected.assign(expected.rbegin(), expected.rend());
  return rep;
}

ClaimA2Report verify_claim_a2(int k, int m, std::uint32_t q, double kappa) {
  if (k < 2) fail(Errc::OutOfRange, "walk to codimension 2 needs k >= 2");
  if (2 * k > m) fail(Errc::OutOfRange, "need k <= m/2");
  FieldCtx F = FieldCtx::make(q, 1);
  ClaimA2Report rep;
  rep.rhs = grassmann_eigenvalue(1, k, m, q).value.to_double();
  rep.rhs *= rep.rhs;
  const SpanList& sl = span_list(F, m, k);
  std::uint64_t n = sl.spans.size();
  if (n <= 1200) {
    auto [ev, deg] = grassmann_case_walk(F, k, m, k - 2, 1200);
    (void)deg;
    if (std::abs(ev.back() - 1.0) > 1e-9) fail(Errc::NoConvergence, "walk top eigenvalue differs from 1");
    rep.lhs = std::abs(ev.front()) > std::abs(ev[n - 2]) ? ev.front() : ev[n - 2];
    rep.method = "dense";
  } else if (k == 2) {
    // A_0 = J - I - A_1 on 2-subspaces; A_1 via the 1-subspace incidence
    const SpanList& lines = span_list(F, m, 1);
    std::vector<std::uint32_t> rows(n * (q + 1));
    for (std::uint64_t i = 0; i < n; i++) {
      const AffineSubspace& U = sl.spans[i];
      const SpanList& dirs2 = span_list(F, 2, 1);
      std::size_t c = 0;
      for (const auto& dsp : dirs2.spans) {
        Point gdir(m, 0);
        for (int t = 0; t < 2; t++) {
          Fel cv = dsp.row(0)[t];
          if (cv == 0) continue;
          for (int j = 0; j < m; j++) gdir[j] = F.add(gdir[j], F.mul(cv, U.row(t)[j]));
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
        rows[i * (q + 1) + c++] = lines.index.at(lin.key());
      }
    }
    std::uint64_t deg1 = static_cast<std::uint64_t>(q) * gb1(q, 2) * gb1(q, m - 2);
    std::uint64_t deg0 = n - 1 - deg1;
    std::vector<double> v(n), w(n), tmp(lines.spans.size());
    Rng rng(0x5eedULL);
    for (auto& x : v) x = rng.real() - 0.5;
    auto deflate = [](std::vector<double>& x) {
      double mean = 0;
      for (double t : x) mean += t;
      mean /= static_cast<double>(x.size());
      for (double& t : x) t -= mean;
    };
    deflate(v);
    double nv = 0;
    for (double t : v) nv += t * t;
    nv = std::sqrt(nv);
    for (double& t : v) t /= nv;
    double theta = 0;
    bool done = false;
    for (int it = 0; it < 200000 && !done; it++) {
      std::fill(tmp.begin(), tmp.end(), 0.0);
      for (std::uint64_t i = 0; i < n; i++)
        for (std::uint32_t c = 0; c <= q; c++) tmp[rows[i * (q + 1) + c]] += v[i];
      for (std::uint64_t i = 0; i < n; i++) {
        double a1 = 0;
        for (std::uint32_t c = 0; c <= q; c++) a1 += tmp[rows[i * (q + 1) + c]];
        a1 -= (q + 1.0) * v[i];                    // A_1 v
        w[i] = (-v[i] - a1) / static_cast<double>(deg0);  // (J - I - A_1) v with Jv = 0
      }
      deflate(w);
      theta = 0;
      for (std::uint64_t i = 0; i < n; i++) theta += v[i] * w[i];
      double resid = 0;
      for (std::uint64_t i = 0; i < n; i++) {
        double r = w[i] - theta * v[i];
        resid += r * r;
      }
      resid = std::sqrt(resid);
      double nw = 0;
      for (double t : w) nw += t * t;
      nw = std::sqrt(nw);
      if (nw < 1e-300) {
        theta = 0;
        break;
      }
      for (std::uint64_t i = 0; i < n; i++) v[i] = w[i] / nw;
      done = resid <= 1e-9 && it >= 3;
    }
    if (!done && std::abs(theta) > 0) fail(Errc::NoConvergence, "power iteration did not converge");
    rep.lhs = theta;
    rep.method = "sparse-complement-power";
  } else {
    fail(Errc::CapExceeded, "no sparse route for k > 2 at this size");
  }
  double qk = std::pow(static_cast<double>(q), k);
  rep.ratio = std::abs(rep.lhs - rep.rhs) * qk;
  rep.pass = rep.ratio >= 1.0 / kappa && rep.ratio <= kappa;
  return rep;
}

SubspaceLemmaReport verify_subspace_lemma(int r, int k, int s, int m, std::uint32_t q, double kappa) {
  InclusionGraph g = build_subspace_graph(r, k, s, m, q);
  SpectralReport sr = lambda_of(g);
  SubspaceLemmaReport rep;
  rep.r = r;
  rep.k = k;
  rep.s = s;
  rep.lambda_sq = sr.lambda_sq;
  rep.exponent = s - 2 * k + r + 1;
  rep.scaled = sr.lambda_sq * std::pow(static_cast<double>(q), rep.exponent);
  rep.pass = rep.scaled <= kappa;
  return rep;
}

SamplingReport verify_sampling(const InclusionGraph& g, bool cond_on_A, std::uint64_t bprime_size,
                               std::uint64_t seed, bool with_d3d4) {
  if (g.edges() > 1'000'000) fail(Errc::CapExceeded, "graph too large for exact distribution tables");
  // cond rows: conditioned vertex -> other-side neighbors
  std::vector<std::uint64_t> coff, ooff;
  std::vector<std::uint32_t> cadj, oadj;
  if (cond_on_A) {
    g.transpose(coff, cadj);
    ooff = g.boff;
    oadj = g.badj;
  } else {
    coff = g.boff;
    cadj = g.badj;
    g.transpose(ooff, oadj);
  }
  std::uint64_t nCond = cond_on_A ? g.nA : g.nB;
  std::uint64_t nOther = cond_on_A ? g.nB : g.nA;
  std::uint64_t dCond = cond_on_A ? g.dA : g.dB;
  std::uint64_t dOther = cond_on_A ? g.dB : g.dA;
  if (bprime_size < 1 || bprime_size > nCond) fail(Errc::OutOfRange, "bad subset size");

  SamplingReport rep;
  rep.mu = Rat(static_cast<std::int64_t>(bprime_size), static_cast<std::int64_t>(nCond));
  rep.bprime = bprime_size;
  rep.lambda = lambda_of(g).lambda;

  // random subset of the conditioned side
  Rng rng(seed);
  std::vector<std::uint32_t> ids(nCond);
  for (std::uint64_t i = 0; i < nCond; i++) ids[i] = static_cast<std::uint32_t>(i);
  for (std::uint64_t i = 0; i < bprime_size; i++) {
    std::uint64_t j = i + rng.below(nCond - i);
    std::swap(ids[i], ids[j]);
  }
  std::vector<std::uint8_t> inB(nCond, 0);
  for (std::uint64_t i = 0; i < bprime_size; i++) inB[ids[i]] = 1;

  // neighbor counts into B' per other-side vertex
  std::vector<std::uint32_t> cnt(nOther, 0);
  for (std::uint64_t a = 0; a < nOther; a++)
    for (std::uint64_t e = ooff[a]; e < ooff[a + 1]; e++) cnt[a] += inB[oadj[e]];

  // TV(D1, D2) with the bottom outcome included
  Rat acc(0);
  for (std::uint64_t bi = 0; bi < bprime_size; bi++) {
    std::uint32_t b = ids[bi];
    for (std::uint64_t e = coff[b]; e < coff[b + 1]; e++) {
      std::uint32_t a = cadj[e];
      Rat d1(1, static_cast<std::int64_t>(bprime_size * dCond));
      Rat d2(1, static_cast<std::int64_t>(nOther * cnt[a]));
      acc = acc + (d1 < d2 ? d2 - d1 : d1 - d2);
    }
  }
  std::int64_t bot = 0;
  for (std::uint64_t a = 0; a < nOther; a++) bot += cnt[a] == 0;
  acc = acc + Rat(bot, static_cast<std::int64_t>(nOther));
  rep.tv12 = acc / Rat(2);
  rep.bound12 = rep.lambda / std::sqrt(rep.mu.to_double());
  rep.pass12 = rep.tv12.to_double() <= rep.bound12 + 1e-9;

  if (!with_d3d4) return rep;
  // constant co-degree hypothesis over the whole conditioned side
  auto common_count = [&](std::uint32_t b1, std::uint32_t b2) {
    std::uint64_t i = coff[b1], j = coff[b2], c = 0;
    while (i < coff[b1 + 1] && j < coff[b2 + 1]) {
      if (cadj[i] < cadj[j]) i++;
      else if (cadj[i] > cadj[j]) j++;
      else c++, i++, j++;
    }
    return c;
  };
  // sorted adjacency for intersections
  std::vector<std::uint32_t> sorted_cadj(cadj);
  for (std::uint64_t b = 0; b < nCond; b++) std::sort(sorted_cadj.begin() + coff[b], sorted_cadj.begin() + coff[b + 1]);
  cadj.swap(sorted_cadj);
  std::uint64_t co = 0;
  for (std::uint64_t b1 = 0; b1 < nCond; b1++)
    for (std::uint64_t b2 = b1 + 1; b2 < nCond; b2++) {
      std::uint64_t c = common_count(static_cast<std::uint32_t>(b1), static_cast<std::uint32_t>(b2));
      if (b1 == 0 && b2 == 1) co = c;
      if (c != co || c == 0) fail(Errc::CoDegreeViolated, "co-degree not constant/non-zero on the conditioned side");
    }

  rep.d3d4_checked = true;
  Rat acc34(0);
  std::vector<std::uint32_t> inter;
  for (std::uint64_t i1 = 0; i1 < bprime_size; i1++)
    for (std::uint64_t i2 = 0; i2 < bprime_size; i2++) {
      std::uint32_t b1 = ids[i1], b2 = ids[i2];
      inter.clear();
      std::uint64_t i = coff[b1], j = coff[b2];
      while (i < coff[b1 + 1] && j < coff[b2 + 1]) {
        if (cadj[i] < cadj[j]) i++;
        else if (cadj[i] > cadj[j]) j++;
        else inter.push_back(cadj[i]), i++, j++;
      }
      std::int64_t coN = b1 == b2 ? static_cast<std::int64_t>(dCond) : static_cast<std::int64_t>(co);
      for (std::uint32_t a : inter) {
        Rat d3 = Rat(1, static_cast<std::int64_t>(bprime_size * bprime_size)) * Rat(1, coN);
        Rat d4 = Rat(1, static_cast<std::int64_t>(nOther)) *
                 Rat(1, static_cast<std::int64_t>(cnt[a]) * static_cast<std::int64_t>(cnt[a]));
        acc34 = acc34 + (d3 < d4 ? d4 - d3 : d3 - d4);
      }
    }
  acc34 = acc34 + Rat(bot, static_cast<std::int64_t>(nOther));
  rep.tv34 = acc34 / Rat(2);
  double mu = rep.mu.to_double();
  rep.bound34 = 2 * rep.lambda / mu + 1.0 / (mu * mu * static_cast<double>(dOther)) +
                1.0 / (mu * mu * static_cast<double>(nCond));
  rep.pass34 = rep.tv34.to_double() <= rep.bound34 + 1e-9;
  return rep;
}

Claim44Report verify_claim44(const InclusionGraph& g, bool cond_on_A, std::uint64_t trials, std::uint64_t seed) {
  std::vector<std::uint64_t> ooff;
  std::vector<std::uint32_t> oadj;
  if (cond_on_A) {
    ooff = g.boff;
    oadj = g.badj;
  } else {
    g.transpose(ooff, oadj);
  }
  std::uint64_t nCond = cond_on_A ? g.nA : g.nB;
  std::uint64_t nOther = cond_on_A ? g.nB : g.nA;
  std::uint64_t dOther = cond_on_A ? g.dB : g.dA;
  double lambda = lambda_of(g).lambda;
  Claim44Report rep;
  rep.trials = trials;
  rep.worst_margin = 1e300;
  for (std::uint64_t t = 0; t < trials; t++) {
    Rng rng = Rng::stream(seed, t);
    std::vector<std::uint8_t> f(nCond);
    std::uint64_t wt = 0;
    for (auto& v : f) {
      v = static_cast<std::uint8_t>(rng.next() & 1);
      wt += v;
    }
    double mu = static_cast<double>(wt) / static_cast<double>(nCond);
    double mf2 = 0;
    for (std::uint64_t a = 0; a < nOther; a++) {
      std::uint64_t c = 0;
      for (std::uint64_t e = ooff[a]; e < ooff[a + 1]; e++) c += f[oadj[e]];
      double v = static_cast<double>(c) / static_cast<double>(dOther);
      mf2 += v * v;
    }
    mf2 /= static_cast<double>(nOther);
    double rhs = mu * mu + lambda * lambda * mu;
    double margin = rhs - mf2;
    rep.worst_margin = std::min(rep.worst_margin, margin);
    if (margin < -1e-9) rep.failures++;
  }
  return rep;
}

}  // namespace ldt
