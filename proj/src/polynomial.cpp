#include "ldt/polynomial.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ldt {

namespace {

void gen_exps(int k, int d, int var, int left, std::vector<std::uint8_t>& cur,
              std::vector<std::vector<std::uint8_t>>& out) {
  if (var == k - 1) {
    cur[var] = static_cast<std::uint8_t>(left);
    out.push_back(cur);
    return;
  }
  for (int e = left; e >= 0; e--) {
    cur[var] = static_cast<std::uint8_t>(e);
    gen_exps(k, d, var + 1, left - e, cur, out);
  }
}

std::map<std::pair<int, int>, MonoBasis> g_basis_cache;
std::mutex g_basis_mu;

struct GridKey {
  std::uint32_t q;
  int k, d;
  bool operator<(const GridKey& o) const { return std::tie(q, k, d) < std::tie(o.q, o.k, o.d); }
};
std::map<GridKey, EvalGrid> g_grid_cache;
std::mutex g_grid_mu;

}  // namespace

const MonoBasis& mono_basis(int k, int d) {
  std::lock_guard<std::mutex> lk(g_basis_mu);
  auto key = std::make_pair(k, d);
  auto it = g_basis_cache.find(key);
  if (it != g_basis_cache.end()) return it->second;
  MonoBasis b;
  b.k = k;
  b.d = d;
  if (k == 0) {
    b.exps.push_back({});
  } else {
    std::vector<std::uint8_t> cur(k);
    for (int deg = 0; deg <= d; deg++) gen_exps(k, d, 0, deg, cur, b.exps);
  }
  std::size_t packspace = 1;
  for (int i = 0; i < k; i++) packspace *= (d + 1);
  b.rank.assign(packspace, -1);
  for (std::size_t j = 0; j < b.exps.size(); j++) {
    std::size_t pk = 0;
    for (int i = 0; i < k; i++) pk = pk * (d + 1) + b.exps[j][i];
    b.rank[pk] = static_cast<int>(j);
  }
  return g_basis_cache.emplace(key, std::move(b)).first->second;
}

int MonoBasis::index_of(const std::uint8_t* e) const {
  std::size_t pk = 0;
  for (int i = 0; i < k; i++) {
    if (e[i] > d) return -1;
    pk = pk * (d + 1) + e[i];
  }
  return rank[pk];
}

int Poly::degree() const {
  const MonoBasis& b = mono_basis(k, d);
  int deg = -1;
  for (int j = 0; j < b.n(); j++) {
    if (c[j] == 0) continue;
    int t = 0;
    for (int i = 0; i < k; i++) t += b.exps[j][i];
    deg = std::max(deg, t);
  }
  return deg;
}

Poly zero_poly(int k, int d) {
  Poly p;
  p.k = static_cast<std::uint16_t>(k);
  p.d = static_cast<std::uint16_t>(d);
  p.c.assign(mono_basis(k, d).n(), 0);
  return p;
}

Poly constant_poly(int k, int d, Fel v) {
  Poly p = zero_poly(k, d);
  p.c[0] = v;
  return p;
}

Poly random_poly(const FieldCtx& F, int k, int d, Rng& rng) {
  Poly p = zero_poly(k, d);
  for (auto& v : p.c) v = static_cast<Fel>(rng.below(F.q));
  return p;
}

Fel evaluate(const FieldCtx& F, const Poly& p, const std::vector<Fel>& t) {
  const MonoBasis& b = mono_basis(p.k, p.d);
  // per-variable power tables; stack buffer covers every desk-scale shape
  Fel pwbuf[96];
  std::vector<Fel> pwheap;
  std::size_t need = static_cast<std::size_t>(p.k) * (p.d + 1);
  Fel* pw = pwbuf;
  if (need > sizeof(pwbuf) / sizeof(pwbuf[0])) {
    pwheap.resize(need);
    pw = pwheap.data();
  }
  for (int i = 0; i < p.k; i++) {
    pw[static_cast<std::size_t>(i) * (p.d + 1)] = 1;
    for (int e = 1; e <= p.d; e++)
      pw[static_cast<std::size_t>(i) * (p.d + 1) + e] = F.mul(pw[static_cast<std::size_t>(i) * (p.d + 1) + e - 1], t[i]);
  }
  Fel acc = 0;
  for (int j = 0; j < b.n(); j++) {
    if (p.c[j] == 0) continue;
    Fel term = p.c[j];
    for (int i = 0; i < p.k; i++) {
      std::uint8_t e = b.exps[j][i];
      if (e) term = F.mul(term, pw[static_cast<std::size_t>(i) * (p.d + 1) + e]);
    }
    acc = F.add(acc, term);
  }
  return acc;
}

const EvalGrid& eval_grid(const FieldCtx& F, int k, int d) {
  std::lock_guard<std::mutex> lk(g_grid_mu);
  GridKey key{F.q, k, d};
  auto it = g_grid_cache.find(key);
  if (it != g_grid_cache.end()) return it->second;
  const MonoBasis& b = mono_basis(k, d);
  EvalGrid g;
  g.nmono = b.n();
  std::uint64_t n = 1;
  for (int i = 0; i < k; i++) n *= F.q;
  g.npoints = static_cast<std::uint32_t>(n);
  g.values.resize(n * b.n());
  std::vector<Fel> t(k, 0);
  for (std::uint64_t r = 0; r < n; r++) {
    for (int j = 0; j < b.n(); j++) {
      Fel term = 1;
      for (int i = 0; i < k; i++)
        for (int e = 0; e < b.exps[j][i]; e++) term = F.mul(term, t[i]);
      g.values[r * b.n() + j] = term;
    }
    int i = 0;
    while (i < k && ++t[i] == F.q) t[i++] = 0;
  }
  return g_grid_cache.emplace(key, std::move(g)).first->second;
}

void evaluate_grid(const FieldCtx& F, const Poly& p, std::vector<Fel>& out) {
  const EvalGrid& g = eval_grid(F, p.k, p.d);
  out.resize(g.npoints);
  if (F.prime_field()) {
    // products fit easily in 32 bits; reduce once per point
    for (std::uint32_t r = 0; r < g.npoints; r++) {
      std::uint32_t acc = 0;
      const Fel* row = g.values.data() + static_cast<std::size_t>(r) * g.nmono;
      for (int j = 0; j < g.nmono; j++) acc += static_cast<std::uint32_t>(p.c[j]) * row[j];
      out[r] = static_cast<Fel>(acc % F.q);
    }
  } else {
    for (std::uint32_t r = 0; r < g.npoints; r++) {
      Fel acc = 0;
      const Fel* row = g.values.data() + static_cast<std::size_t>(r) * g.nmono;
      for (int j = 0; j < g.nmono; j++) acc = F.add(acc, F.mul(p.c[j], row[j]));
      out[r] = acc;
    }
  }
}

Poly interpolate(const FieldCtx& F, const std::vector<std::vector<Fel>>& points, const std::vector<Fel>& values,
                 int k, int d) {
  if (points.size() != values.size()) fail(Errc::FormatError, "points/values size mismatch");
  const MonoBasis& b = mono_basis(k, d);
  int M = b.n();
  // streaming row echelon over rows [mono values | value]
  std::vector<std::vector<Fel>> echelon;  // rows with leading 1
  std::vector<int> lead;                  // leading column per stored row
  std::vector<Fel> pw(static_cast<std::size_t>(k) * (d + 1));
  for (std::size_t s = 0; s < points.size(); s++) {
    std::vector<Fel> row(M + 1);
    const auto& t = points[s];
    for (int i = 0; i < k; i++) {
      pw[static_cast<std::size_t>(i) * (d + 1)] = 1;
      for (int e = 1; e <= d; e++)
        pw[static_cast<std::size_t>(i) * (d + 1) + e] = F.mul(pw[static_cast<std::size_t>(i) * (d + 1) + e - 1], t[i]);
    }
    for (int j = 0; j < M; j++) {
      Fel term = 1;
      for (int i = 0; i < k; i++) {
        std::uint8_t e = b.exps[j][i];
        if (e) term = F.mul(term, pw[static_cast<std::size_t>(i) * (d + 1) + e]);
      }
      row[j] = term;
    }
    row[M] = values[s];
    // reduce against existing echelon rows
    for (std::size_t r = 0; r < echelon.size(); r++) {
      Fel c = row[lead[r]];
      if (c == 0) continue;
      for (int j = lead[r]; j <= M; j++) row[j] = F.sub(row[j], F.mul(c, echelon[r][j]));
    }
    int l = -1;
    for (int j = 0; j < M; j++)
      if (row[j] != 0) {
        l = j;
        break;
      }
    if (l < 0) {
      if (row[M] != 0) fail(Errc::Inconsistent, "samples are not degree-" + std::to_string(d) + " consistent");
      continue;
    }
    Fel ip = F.inv(row[l]);
    for (int j = l; j <= M; j++) row[j] = F.mul(row[j], ip);
    echelon.push_back(std::move(row));
    lead.push_back(l);
  }
  if (static_cast<int>(echelon.size()) < M) fail(Errc::Underdetermined, "samples do not determine the coefficients");
  // back substitution
  Poly p = zero_poly(k, d);
  // echelon rows have distinct leads covering all M columns
  std::vector<int> row_of(M, -1);
  for (std::size_t r = 0; r < echelon.size(); r++) row_of[lead[r]] = static_cast<int>(r);
  for (int j = M - 1; j >= 0; j--) {
    const auto& row = echelon[row_of[j]];
    Fel v = row[M];
    for (int j2 = j + 1; j2 < M; j2++)
      if (row[j2] != 0) v = F.sub(v, F.mul(row[j2], p.c[j2]));
    p.c[j] = v;
  }
  return p;
}

Poly poly_mul(const FieldCtx& F, const Poly& a, const Poly& b, int dcap) {
  const MonoBasis& ba = mono_basis(a.k, a.d);
  const MonoBasis& bb = mono_basis(b.k, b.d);
  Poly out = zero_poly(a.k, dcap);
  const MonoBasis& bo = mono_basis(a.k, dcap);
  std::vector<std::uint8_t> e(a.k);
  for (int i = 0; i < ba.n(); i++) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < bb.n(); j++) {
      if (b.c[j] == 0) continue;
      int tot = 0;
      for (int v = 0; v < a.k; v++) {
        e[v] = static_cast<std::uint8_t>(ba.exps[i][v] + bb.exps[j][v]);
        tot += e[v];
      }
      if (tot > dcap) continue;
      int idx = bo.index_of(e.data());
      out.c[idx] = F.add(out.c[idx], F.mul(a.c[i], b.c[j]));
    }
  }
  return out;
}

Poly restrict_poly(const FieldCtx& F, const Poly& p, const AffineSubspace& S, const AffineSubspace& R) {
  if (S.m != R.m) fail(Errc::AmbientMismatch, "different ambient spaces");
  if (p.k != S.k) fail(Errc::FormatError, "polynomial chart does not match subspace");
  if (!contains_subspace(F, S, R)) fail(Errc::NotContained, "restriction target not inside source");
  int kr = R.k, d = p.d;
  // affine forms t_i(u) in R's chart: t_i = R.base[p_i] + sum_j R.rows[j][p_i] u_j
  // fast path: restriction to a point is evaluation
  if (kr == 0) {
    Fel v = evaluate(F, p, local_coords(S, R.base));
    return constant_poly(0, d, v);
  }
  if (S == R) return p;
  const MonoBasis& bs = mono_basis(p.k, d);
  // powers of each affine form up to d
  std::vector<std::vector<Poly>> powers(p.k);
  for (int i = 0; i < p.k; i++) {
    Poly lin = zero_poly(kr, d);
    lin.c[0] = R.base[S.pivots[i]];
    const MonoBasis& br = mono_basis(kr, d);
    std::vector<std::uint8_t> e(kr, 0);
    for (int j = 0; j < kr; j++) {
      e[j] = 1;
      int idx = br.index_of(e.data());
      lin.c[idx] = R.row(j)[S.pivots[i]];
      e[j] = 0;
    }
    powers[i].push_back(constant_poly(kr, d, 1));
    for (int dd = 1; dd <= d; dd++) powers[i].push_back(poly_mul(F, powers[i][dd - 1], lin, d));
  }
  Poly out = zero_poly(kr, d);
  for (int j = 0; j < bs.n(); j++) {
    if (p.c[j] == 0) continue;
    Poly term = constant_poly(kr, d, p.c[j]);
    for (int i = 0; i < p.k; i++) {
      std::uint8_t e = bs.exps[j][i];
      if (e) term = poly_mul(F, term, powers[i][e], d);
    }
    for (int t = 0; t < static_cast<int>(out.c.size()); t++) out.c[t] = F.add(out.c[t], term.c[t]);
  }
  return out;
}

Poly restrict_poly_interp(const FieldCtx& F, const Poly& p, const AffineSubspace& S, const AffineSubspace& R) {
  if (!contains_subspace(F, S, R)) fail(Errc::NotContained, "restriction target not inside source");
  std::uint64_t n = 1;
  for (int i = 0; i < R.k; i++) n *= F.q;
  std::vector<std::vector<Fel>> pts;
  std::vector<Fel> vals;
  std::vector<Fel> u(R.k, 0);
  for (std::uint64_t r = 0; r < n; r++) {
    Point y = global_point(F, R, u);
    vals.push_back(evaluate(F, p, local_coords(S, y)));
    pts.push_back(u);
    int i = 0;
    while (i < R.k && ++u[i] == F.q) u[i++] = 0;
  }
  return interpolate(F, pts, vals, R.k, p.d);
}

Rat agreement_fraction(const FieldCtx& F, const Poly& a, const Poly& b) {
  if (a.k != b.k) fail(Errc::FormatError, "different charts");
  std::vector<Fel> va, vb;
  evaluate_grid(F, a, va);
  evaluate_grid(F, b, vb);
  std::int64_t eq = 0;
  for (std::size_t i = 0; i < va.size(); i++) eq += va[i] == vb[i];
  return Rat(eq, static_cast<std::int64_t>(va.size()));
}

}  // namespace ldt
