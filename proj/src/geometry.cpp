#include "ldt/geometry.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace ldt {

namespace {

// in-place RREF of an nrows x m matrix, returns rank and pivot columns
int rref(const FieldCtx& F, std::vector<Fel>& a, int nrows, int m, std::vector<std::uint8_t>& pivots) {
  pivots.clear();
  int r = 0;
  for (int col = 0; col < m && r < nrows; col++) {
    int sel = -1;
    for (int i = r; i < nrows; i++) {
      if (a[static_cast<std::size_t>(i) * m + col] != 0) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m; j++) std::swap(a[static_cast<std::size_t>(sel) * m + j], a[static_cast<std::size_t>(r) * m + j]);
    Fel piv = a[static_cast<std::size_t>(r) * m + col];
    if (piv != 1) {
      Fel ip = F.inv(piv);
      for (int j = col; j < m; j++)
        a[static_cast<std::size_t>(r) * m + j] = F.mul(a[static_cast<std::size_t>(r) * m + j], ip);
    }
    for (int i = 0; i < nrows; i++) {
      if (i == r) continue;
      Fel c = a[static_cast<std::size_t>(i) * m + col];
      if (c == 0) continue;
      for (int j = col; j < m; j++)
        a[static_cast<std::size_t>(i) * m + j] =
            F.sub(a[static_cast<std::size_t>(i) * m + j], F.mul(c, a[static_cast<std::size_t>(r) * m + j]));
    }
    pivots.push_back(static_cast<std::uint8_t>(col));
    r++;
  }
  return r;
}

AffineSubspace finish_canonical(const FieldCtx& F, Point base, std::vector<Fel> rows, int rank, int m,
                                std::vector<std::uint8_t> pivots) {
  rows.resize(static_cast<std::size_t>(rank) * m);
  // zero the offset on pivot columns: base -= base[p_i] * row_i
  for (int i = 0; i < rank; i++) {
    Fel c = base[pivots[i]];
    if (c == 0) continue;
    for (int j = 0; j < m; j++) base[j] = F.sub(base[j], F.mul(c, rows[static_cast<std::size_t>(i) * m + j]));
  }
  AffineSubspace S;
  S.m = static_cast<std::uint16_t>(m);
  S.k = static_cast<std::uint16_t>(rank);
  S.base = std::move(base);
  S.rows = std::move(rows);
  S.pivots = std::move(pivots);
  return S;
}

}  // namespace

std::string AffineSubspace::text() const {
  std::ostringstream os;
  for (int j = 0; j < m; j++) {
    if (j) os << ',';
    os << base[j];
  }
  for (int i = 0; i < k; i++) {
    os << ';';
    for (int j = 0; j < m; j++) {
      if (j) os << ',';
      os << row(i)[j];
    }
  }
  return os.str();
}

AffineSubspace AffineSubspace::parse_text(const std::string& s, int m_expected) {
  std::vector<std::vector<Fel>> parts;
  std::stringstream ss(s);
  std::string seg;
  while (std::getline(ss, seg, ';')) {
    std::vector<Fel> v;
    std::stringstream fs(seg);
    std::string num;
    while (std::getline(fs, num, ',')) {
      if (num.empty()) fail(Errc::FormatError, "empty coordinate in subspace text");
      long val = 0;
      try {
        val = std::stol(num);
      } catch (const std::exception&) {
        fail(Errc::FormatError, "bad coordinate in subspace text");
      }
      if (val < 0 || val > 0xffff) fail(Errc::FormatError, "coordinate out of range");
      v.push_back(static_cast<Fel>(val));
    }
    parts.push_back(std::move(v));
  }
  if (parts.empty()) fail(Errc::FormatError, "empty subspace text");
  for (const auto& v : parts)
    if (static_cast<int>(v.size()) != m_expected) fail(Errc::FormatError, "subspace text has wrong ambient dimension");
  AffineSubspace S;
  S.m = static_cast<std::uint16_t>(m_expected);
  S.k = static_cast<std::uint16_t>(parts.size() - 1);
  S.base = parts[0];
  for (std::size_t i = 1; i < parts.size(); i++) S.rows.insert(S.rows.end(), parts[i].begin(), parts[i].end());
  // pivots recomputed (first nonzero per row); canonical validity is checked by callers
  for (int i = 0; i < S.k; i++) {
    int p = -1;
    for (int j = 0; j < m_expected; j++)
      if (S.row(i)[j] != 0) {
        p = j;
        break;
      }
    if (p < 0) fail(Errc::FormatError, "zero basis row in subspace text");
    S.pivots.push_back(static_cast<std::uint8_t>(p));
  }
  return S;
}

std::string AffineSubspace::key() const {
  std::string s;
  s.reserve(2 + (base.size() + rows.size()) * 2);
  s.push_back(static_cast<char>(k));
  s.push_back(static_cast<char>(m));
  auto put = [&s](Fel v) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>(v >> 8));
  };
  for (Fel v : base) put(v);
  for (Fel v : rows) put(v);
  return s;
}

AffineSubspace whole_space(int m) {
  AffineSubspace S;
  S.m = S.k = static_cast<std::uint16_t>(m);
  S.base.assign(m, 0);
  S.rows.assign(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; i++) {
    S.rows[static_cast<std::size_t>(i) * m + i] = 1;
    S.pivots.push_back(static_cast<std::uint8_t>(i));
  }
  return S;
}

AffineSubspace point_subspace(const Point& x) {
  AffineSubspace S;
  S.m = static_cast<std::uint16_t>(x.size());
  S.k = 0;
  S.base = x;
  return S;
}

AffineSubspace canonicalize(const FieldCtx& F, const Point& base, const std::vector<Point>& dirs) {
  int m = static_cast<int>(base.size());
  std::vector<Fel> rows;
  for (const auto& d : dirs) {
    if (static_cast<int>(d.size()) != m) fail(Errc::AmbientMismatch, "direction has wrong length");
    rows.insert(rows.end(), d.begin(), d.end());
  }
  std::vector<std::uint8_t> pivots;
  int rank = rref(F, rows, static_cast<int>(dirs.size()), m, pivots);
  if (rank != static_cast<int>(dirs.size())) fail(Errc::DependentDirections, "directions are linearly dependent");
  return finish_canonical(F, base, std::move(rows), rank, m, std::move(pivots));
}

AffineSubspace canonicalize_span(const FieldCtx& F, const Point& base, const std::vector<Point>& dirs) {
  int m = static_cast<int>(base.size());
  std::vector<Fel> rows;
  for (const auto& d : dirs) rows.insert(rows.end(), d.begin(), d.end());
  std::vector<std::uint8_t> pivots;
  int rank = rref(F, rows, static_cast<int>(dirs.size()), m, pivots);
  return finish_canonical(F, base, std::move(rows), rank, m, std::move(pivots));
}

std::vector<Fel> local_coords(const AffineSubspace& S, const Point& x) {
  std::vector<Fel> t(S.k);
  for (int i = 0; i < S.k; i++) t[i] = x[S.pivots[i]];
  return t;
}

Point global_point(const FieldCtx& F, const AffineSubspace& S, const std::vector<Fel>& t) {
  Point x = S.base;
  for (int i = 0; i < S.k; i++) {
    if (t[i] == 0) continue;
    for (int j = 0; j < S.m; j++) x[j] = F.add(x[j], F.mul(t[i], S.row(i)[j]));
  }
  return x;
}

bool contains_point(const FieldCtx& F, const AffineSubspace& S, const Point& x) {
  return global_point(F, S, local_coords(S, x)) == x;
}

bool contains_subspace(const FieldCtx& F, const AffineSubspace& big, const AffineSubspace& small) {
  if (big.m != small.m) fail(Errc::AmbientMismatch, "different ambient spaces");
  if (small.k > big.k) return false;
  if (!contains_point(F, big, small.base)) return false;
  for (int i = 0; i < small.k; i++) {
    // direction membership: small.row(i) must lie in dir(big)
    Point d(small.row(i), small.row(i) + small.m);
    Point back = global_point(F, big, local_coords(big, d));
    // dir(big) membership test needs base removed; big.base has zeros at
    // pivots so local_coords of a direction reads the right coefficients
    for (int j = 0; j < small.m; j++) back[j] = F.sub(back[j], big.base[j]);
    if (back != d) return false;
  }
  return true;
}

bool intersect(const FieldCtx& F, const AffineSubspace& S1, const AffineSubspace& S2, AffineSubspace* out) {
  if (S1.m != S2.m) fail(Errc::AmbientMismatch, "different ambient spaces");
  int m = S1.m, k1 = S1.k, k2 = S2.k, n = k1 + k2;
  // solve B1^T t - B2^T u = base2 - base1 over (t, u)
  std::vector<Fel> a(static_cast<std::size_t>(m) * (n + 1), 0);
  for (int j = 0; j < m; j++) {
    for (int i = 0; i < k1; i++) a[static_cast<std::size_t>(j) * (n + 1) + i] = S1.row(i)[j];
    for (int i = 0; i < k2; i++) a[static_cast<std::size_t>(j) * (n + 1) + k1 + i] = F.neg(S2.row(i)[j]);
    a[static_cast<std::size_t>(j) * (n + 1) + n] = F.sub(S2.base[j], S1.base[j]);
  }
  std::vector<std::uint8_t> pivots;
  int rank = rref(F, a, m, n + 1, pivots);
  // inconsistent iff augmented column is a pivot
  for (auto p : pivots)
    if (p == n) return false;
  // particular solution: free vars 0
  std::vector<Fel> part(n, 0);
  for (int i = 0; i < rank; i++) part[pivots[i]] = a[static_cast<std::size_t>(i) * (n + 1) + n];
  // null space basis over the n unknowns
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Point> dirs;
  for (int fc = 0; fc < n; fc++) {
    if (is_pivot[fc]) continue;
    std::vector<Fel> v(n, 0);
    v[fc] = 1;
    for (int i = 0; i < rank; i++) v[pivots[i]] = F.neg(a[static_cast<std::size_t>(i) * (n + 1) + fc]);
    // map t-part through S1's parameterization
    Point d(m, 0);
    for (int i = 0; i < k1; i++) {
      if (v[i] == 0) continue;
      for (int j = 0; j < m; j++) d[j] = F.add(d[j], F.mul(v[i], S1.row(i)[j]));
    }
    dirs.push_back(std::move(d));
  }
  Point pt = S1.base;
  for (int i = 0; i < k1; i++) {
    if (part[i] == 0) continue;
    for (int j = 0; j < m; j++) pt[j] = F.add(pt[j], F.mul(part[i], S1.row(i)[j]));
  }
  *out = canonicalize_span(F, pt, dirs);
  return true;
}

std::vector<Point> points_of(const FieldCtx& F, const AffineSubspace& S) {
  std::uint64_t n = 1;
  for (int i = 0; i < S.k; i++) n *= F.q;
  std::vector<Point> pts;
  pts.reserve(n);
  std::vector<Fel> t(S.k, 0);
  for (std::uint64_t r = 0;; r++) {
    pts.push_back(global_point(F, S, t));
    int i = 0;
    while (i < S.k) {
      if (++t[i] < F.q) break;
      t[i] = 0;
      i++;
    }
    if (i == S.k) break;
    if (S.k == 0) break;
  }
  return pts;
}

std::uint64_t point_index(const FieldCtx& F, const Point& x) {
  std::uint64_t idx = 0, mul = 1;
  for (Fel v : x) {
    idx += mul * v;
    mul *= F.q;
  }
  return idx;
}

Point point_of_index(const FieldCtx& F, int m, std::uint64_t idx) {
  Point x(m);
  for (int i = 0; i < m; i++) {
    x[i] = static_cast<Fel>(idx % F.q);
    idx /= F.q;
  }
  return x;
}

BigUint gaussian_binomial(int m, int k, std::uint32_t q) {
  if (k < 0 || k > m) return BigUint(0);
  // [m k] = [m-1 k-1] + q^k [m-1 k]
  std::vector<std::vector<BigUint>> g(m + 1, std::vector<BigUint>(k + 1, BigUint(0)));
  for (int i = 0; i <= m; i++) g[i][0] = BigUint(1);
  for (int i = 1; i <= m; i++) {
    for (int j = 1; j <= std::min(i, k); j++) {
      BigUint t = g[i - 1][j];
      for (int s = 0; s < j; s++) t.mul_small(q);
      g[i][j] = g[i - 1][j - 1] + t;
    }
  }
  return g[m][k];
}

BigUint count_containing(int n, int t, int j, std::uint32_t q) {
  if (j > t || t > n || j < 0) fail(Errc::OutOfRange, "count_containing needs j <= t <= n");
  return gaussian_binomial(n - j, t - j, q);
}

namespace {


// enumerate all k-dim linear RREF bases over F_q^m, unsorted
std::vector<AffineSubspace> enumerate_linear_raw(const FieldCtx& F, int m, int k) {
  std::vector<AffineSubspace> out;
  if (k == 0) {
    AffineSubspace S;
    S.m = static_cast<std::uint16_t>(m);
    S.k = 0;
    S.base.assign(m, 0);
    out.push_back(std::move(S));
    return out;
  }
  if (k > m) return out;
  std::vector<int> piv(k);
  for (int i = 0; i < k; i++) piv[i] = i;
  for (;;) {
    // free slots: (row i, col c) with c > piv[i], c not a pivot
    std::vector<std::pair<int, int>> slots;
    std::vector<bool> is_piv(m, false);
    for (int p : piv) is_piv[p] = true;
    for (int i = 0; i < k; i++)
      for (int c = piv[i] + 1; c < m; c++)
        if (!is_piv[c]) slots.push_back({i, c});
    std::vector<Fel> fill(slots.size(), 0);
    for (;;) {
      AffineSubspace S;
      S.m = static_cast<std::uint16_t>(m);
      S.k = static_cast<std::uint16_t>(k);
      S.base.assign(m, 0);
      S.rows.assign(static_cast<std::size_t>(k) * m, 0);
      for (int i = 0; i < k; i++) {
        S.rows[static_cast<std::size_t>(i) * m + piv[i]] = 1;
        S.pivots.push_back(static_cast<std::uint8_t>(piv[i]));
      }
      for (std::size_t s = 0; s < slots.size(); s++)
        S.rows[static_cast<std::size_t>(slots[s].first) * m + slots[s].second] = fill[s];
      out.push_back(std::move(S));
      std::size_t d = 0;
      while (d < fill.size()) {
        if (++fill[d] < F.q) break;
        fill[d] = 0;
        d++;
      }
      if (d == fill.size()) break;
      if (fill.empty()) break;
    }
    // next pivot combination
    int i = k - 1;
    while (i >= 0 && piv[i] == m - k + i) i--;
    if (i < 0) break;
    piv[i]++;
    for (int j2 = i + 1; j2 < k; j2++) piv[j2] = piv[j2 - 1] + 1;
  }
  return out;
}

struct SpanCacheKey {
  std::uint32_t q;
  int m, k;
  bool operator<(const SpanCacheKey& o) const {
    return std::tie(q, m, k) < std::tie(o.q, o.m, o.k);
  }
};

std::map<SpanCacheKey, SpanList> g_span_cache;
std::mutex g_span_mu;

}  // namespace

const SpanList& span_list(const FieldCtx& F, int m, int k) {
  std::lock_guard<std::mutex> lk(g_span_mu);
  SpanCacheKey key{F.q, m, k};
  auto it = g_span_cache.find(key);
  if (it != g_span_cache.end()) return it->second;
  SpanList sl;
  sl.spans = enumerate_linear_raw(F, m, k);
  std::sort(sl.spans.begin(), sl.spans.end());
  for (std::uint32_t i = 0; i < sl.spans.size(); i++) sl.index[sl.spans[i].key()] = i;
  sl.offsets_per_span = 1;
  for (int i = 0; i < m - k; i++) sl.offsets_per_span *= F.q;
  return g_span_cache.emplace(key, std::move(sl)).first->second;
}

std::uint64_t SpanList::offset_rank(const FieldCtx& F, const AffineSubspace& span, const Point& base) const {
  std::vector<bool> is_piv(span.m, false);
  for (auto p : span.pivots) is_piv[p] = true;
  std::uint64_t r = 0;
  for (int c = 0; c < span.m; c++)
    if (!is_piv[c]) r = r * F.q + base[c];
  return r;
}

Point SpanList::offset_of_rank(const FieldCtx& F, const AffineSubspace& span, std::uint64_t r) const {
  std::vector<bool> is_piv(span.m, false);
  for (auto p : span.pivots) is_piv[p] = true;
  Point base(span.m, 0);
  for (int c = span.m - 1; c >= 0; c--) {
    if (is_piv[c]) continue;
    base[c] = static_cast<Fel>(r % F.q);
    r /= F.q;
  }
  return base;
}

BigUint family_count(const FieldCtx& F, const SubspaceFamily& fam) {
  switch (fam.kind) {
    case SubspaceFamily::Kind::All: {
      BigUint c = gaussian_binomial(fam.m, fam.k, F.q);
      for (int i = 0; i < fam.m - fam.k; i++) c.mul_small(F.q);
      return c;
    }
    case SubspaceFamily::Kind::Linear:
      return gaussian_binomial(fam.m, fam.k, F.q);
    case SubspaceFamily::Kind::Containing:
      if (fam.k < fam.anchor.k) return BigUint(0);
      return gaussian_binomial(fam.m - fam.anchor.k, fam.k - fam.anchor.k, F.q);
    case SubspaceFamily::Kind::AllMinus: {
      BigUint all = family_count(F, SubspaceFamily::all(fam.m, fam.k));
      if (fam.anchor.k <= fam.k) {
        // subspaces that do contain the anchor
        all -= gaussian_binomial(fam.m - fam.anchor.k, fam.k - fam.anchor.k, F.q);
      } else {
        // subspaces inside the anchor
        BigUint inside = gaussian_binomial(fam.anchor.k, fam.k, F.q);
        for (int i = 0; i < fam.anchor.k - fam.k; i++) inside.mul_small(F.q);
        all -= inside;
      }
      return all;
    }
  }
  return BigUint(0);
}

std::vector<AffineSubspace> enumerate_family(const FieldCtx& F, const SubspaceFamily& fam, std::uint64_t cap) {
  BigUint cnt = family_count(F, fam);
  if (!cnt.fits_u64() || cnt.as_u64() > cap) fail(Errc::CapExceeded, "family of size " + cnt.str());
  std::vector<AffineSubspace> out;
  switch (fam.kind) {
    case SubspaceFamily::Kind::Linear: {
      out = enumerate_linear_raw(F, fam.m, fam.k);
      std::sort(out.begin(), out.end());
      break;
    }
    case SubspaceFamily::Kind::All: {
      const SpanList& sl = span_list(F, fam.m, fam.k);
      out.reserve(cnt.as_u64());
      for (const auto& span : sl.spans) {
        for (std::uint64_t r = 0; r < sl.offsets_per_span; r++) {
          AffineSubspace S = span;
          S.base = sl.offset_of_rank(F, span, r);
          out.push_back(std::move(S));
        }
      }
      break;
    }
    case SubspaceFamily::Kind::Containing: {
      const AffineSubspace& R = fam.anchor;
      if (fam.k < R.k) break;
      if (fam.k == R.k) {
        out.push_back(R);
        break;
      }
      // subspaces containing R correspond to (k-r)-subspaces of the
      // complement coordinate space of R's pivots
      std::vector<int> comp;
      std::vector<bool> is_piv(fam.m, false);
      for (auto p : R.pivots) is_piv[p] = true;
      for (int c = 0; c < fam.m; c++)
        if (!is_piv[c]) comp.push_back(c);
      auto quot = enumerate_linear_raw(F, static_cast<int>(comp.size()), fam.k - R.k);
      for (const auto& qs : quot) {
        std::vector<Fel> rows(R.rows);
        rows.resize(static_cast<std::size_t>(fam.k) * fam.m, 0);
        for (int i = 0; i < qs.k; i++)
          for (int j = 0; j < static_cast<int>(comp.size()); j++)
            rows[static_cast<std::size_t>(R.k + i) * fam.m + comp[j]] = qs.row(i)[j];
        std::vector<std::uint8_t> pivots;
        int rank = rref(F, rows, fam.k, fam.m, pivots);
        if (rank != fam.k) fail(Errc::DependentDirections, "quotient lift lost rank");
        out.push_back(finish_canonical(F, R.base, std::move(rows), rank, fam.m, std::move(pivots)));
      }
      std::sort(out.begin(), out.end());
      break;
    }
    case SubspaceFamily::Kind::AllMinus: {
      auto all = enumerate_family(F, SubspaceFamily::all(fam.m, fam.k), cap * 2 + 16);
      const AffineSubspace& R = fam.anchor;
      for (auto& S : all) {
        bool drop = R.k <= fam.k ? contains_subspace(F, S, R) : contains_subspace(F, R, S);
        if (!drop) out.push_back(std::move(S));
      }
      break;
    }
  }
  if (out.size() != cnt.as_u64()) fail(Errc::Inconsistent, "enumeration count mismatch vs closed form");
  return out;
}

namespace {

Point random_point(const FieldCtx& F, int m, Rng& rng) {
  Point x(m);
  for (int i = 0; i < m; i++) x[i] = static_cast<Fel>(rng.below(F.q));
  return x;
}

}  // namespace

AffineSubspace sample_uniform(const FieldCtx& F, const SubspaceFamily& fam, Rng& rng) {
  switch (fam.kind) {
    case SubspaceFamily::Kind::All:
    case SubspaceFamily::Kind::Linear: {
      Point base = fam.kind == SubspaceFamily::Kind::Linear ? Point(fam.m, 0) : random_point(F, fam.m, rng);
      for (;;) {
        std::vector<Point> dirs;
        for (int i = 0; i < fam.k; i++) dirs.push_back(random_point(F, fam.m, rng));
        std::vector<Fel> rows;
        for (const auto& d : dirs) rows.insert(rows.end(), d.begin(), d.end());
        std::vector<std::uint8_t> piv;
        if (rref(F, rows, fam.k, fam.m, piv) == fam.k) return canonicalize(F, base, dirs);
      }
    }
    case SubspaceFamily::Kind::Containing: {
      const AffineSubspace& R = fam.anchor;
      if (fam.k < R.k) fail(Errc::OutOfRange, "empty containment family");
      if (fam.k == R.k) return R;
      for (;;) {
        std::vector<Point> dirs;
        for (int i = 0; i < R.k; i++) dirs.emplace_back(R.row(i), R.row(i) + R.m);
        for (int i = 0; i < fam.k - R.k; i++) dirs.push_back(random_point(F, fam.m, rng));
        std::vector<Fel> rows;
        for (const auto& d : dirs) rows.insert(rows.end(), d.begin(), d.end());
        std::vector<std::uint8_t> piv;
        if (rref(F, rows, fam.k, fam.m, piv) == fam.k) return canonicalize(F, R.base, dirs);
      }
    }
    case SubspaceFamily::Kind::AllMinus: {
      const AffineSubspace& R = fam.anchor;
      for (int tries = 0; tries < 100000; tries++) {
        AffineSubspace S = sample_uniform(F, SubspaceFamily::all(fam.m, fam.k), rng);
        bool drop = R.k <= fam.k ? contains_subspace(F, S, R) : contains_subspace(F, R, S);
        if (!drop) return S;
      }
      fail(Errc::OutOfRange, "rejection sampling failed; family empty?");
    }
  }
  fail(Errc::OutOfRange, "unknown family kind");
}

AffineSubspace lift_to_global(const FieldCtx& F, const AffineSubspace& K, const AffineSubspace& local) {
  Point base = global_point(F, K, local.base);
  std::vector<Point> dirs;
  for (int i = 0; i < local.k; i++) {
    Point d(K.m, 0);
    for (int j = 0; j < K.k; j++) {
      Fel c = local.row(i)[j];
      if (c == 0) continue;
      for (int t = 0; t < K.m; t++) d[t] = F.add(d[t], F.mul(c, K.row(j)[t]));
    }
    dirs.push_back(std::move(d));
  }
  return canonicalize(F, base, dirs);
}

Point offset_point(const FieldCtx& F, const AffineSubspace& span, const Point& x) {
  Point base = x;
  for (int i = 0; i < span.k; i++) {
    Fel c = base[span.pivots[i]];
    if (c == 0) continue;
    for (int j = 0; j < span.m; j++) base[j] = F.sub(base[j], F.mul(c, span.row(i)[j]));
  }
  return base;
}

AffineSubspace rebase(const FieldCtx& F, const AffineSubspace& span, const Point& x) {
  AffineSubspace S = span;
  S.base = offset_point(F, span, x);
  return S;
}

std::vector<Point> build_grid(const FieldCtx& F, const AffineSubspace& span) {
  std::uint64_t n = 1;
  for (int i = 0; i < span.k; i++) n *= F.q;
  std::vector<Point> grid;
  grid.reserve(n);
  std::vector<Fel> t(span.k, 0);
  Point zero(span.m, 0);
  for (std::uint64_t r = 0; r < n; r++) {
    Point x = zero;
    for (int i = 0; i < span.k; i++) {
      if (t[i] == 0) continue;
      for (int j = 0; j < span.m; j++) x[j] = F.add(x[j], F.mul(t[i], span.row(i)[j]));
    }
    grid.push_back(std::move(x));
    int i = 0;
    while (i < span.k && ++t[i] == F.q) t[i++] = 0;
  }
  return grid;
}

}  // namespace ldt
