#include "ldt/table.hpp"

#include <algorithm>
#include <fstream>

#include "ldt/sha256.hpp"

namespace ldt {

AffineSubspace SubspaceTable::subspace_of(std::uint64_t i) const {
  const SpanList& sl = spans();
  std::uint32_t span_pos = static_cast<std::uint32_t>(i / sl.offsets_per_span);
  std::uint64_t rank = i % sl.offsets_per_span;
  AffineSubspace S = sl.spans[span_pos];
  S.base = sl.offset_of_rank(F, S, rank);
  return S;
}

std::uint64_t SubspaceTable::index_of(const AffineSubspace& S) const {
  const SpanList& sl = spans();
  AffineSubspace span = S;
  span.base.assign(S.m, 0);
  auto it = sl.index.find(span.key());
  if (it == sl.index.end()) fail(Errc::MissingEntry, "subspace not in table universe: " + S.text());
  return index_of(it->second, S.base);
}

std::uint64_t SubspaceTable::index_of(std::uint32_t span_pos, const Point& offset) const {
  const SpanList& sl = spans();
  return span_pos * sl.offsets_per_span + sl.offset_rank(F, sl.spans[span_pos], offset);
}

json poly_to_json(const Poly& p) {
  json j;
  j["k"] = p.k;
  j["d"] = p.d;
  j["coeffs"] = p.c;
  return j;
}

Poly poly_from_json(const json& j, const FieldCtx& F) {
  if (!j.is_object() || !j.contains("k") || !j.contains("d") || !j.contains("coeffs"))
    fail(Errc::FormatError, "bad polynomial record");
  Poly p;
  p.k = j["k"].get<std::uint16_t>();
  p.d = j["d"].get<std::uint16_t>();
  p.c = j["coeffs"].get<std::vector<Fel>>();
  if (static_cast<int>(p.c.size()) != mono_basis(p.k, p.d).n())
    fail(Errc::FormatError, "coefficient vector has wrong length");
  for (Fel v : p.c)
    if (v >= F.q) fail(Errc::FormatError, "coefficient out of field range");
  return p;
}

namespace {

json header_to_json(const TableHeader& h) {
  json j;
  j["p"] = h.p;
  j["e"] = h.e;
  j["reduction_poly"] = h.reduction_poly;
  j["m"] = h.m;
  j["s"] = h.s;
  j["d"] = h.d;
  j["generator"] = h.generator;
  j["seed"] = h.seed;
  return j;
}

}  // namespace

std::string SubspaceTable::canonical_json() const {
  json j;
  j["header"] = header_to_json(hdr);
  // entries sorted by canonical subspace text
  std::vector<std::pair<std::string, std::uint64_t>> order;
  order.reserve(entries.size());
  for (std::uint64_t i = 0; i < entries.size(); i++) order.emplace_back(subspace_of(i).text(), i);
  std::sort(order.begin(), order.end());
  json arr = json::array();
  for (const auto& [text, i] : order) {
    json e;
    e["subspace"] = text;
    e["poly"] = poly_to_json(entries[i]);
    arr.push_back(std::move(e));
  }
  j["entries"] = std::move(arr);
  return j.dump();
}

std::string SubspaceTable::content_hash() const { return sha256_hex(canonical_json()); }

void SubspaceTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::FormatError, "cannot open " + path + " for writing");
  out << canonical_json() << "\n";
}

SubspaceTable make_table_shell(const FieldCtx& F, int m, int s, int d) {
  if (s <= 0 || s > m) fail(Errc::SpecInvalid, "need 0 < s <= m");
  if (d >= static_cast<int>(F.q)) fail(Errc::SpecInvalid, "need d < q for table polynomials");
  SubspaceTable T;
  T.F = F;
  T.hdr.p = F.p;
  T.hdr.e = F.e;
  T.hdr.reduction_poly = F.reduction_poly;
  T.hdr.m = m;
  T.hdr.s = s;
  T.hdr.d = d;
  const SpanList& sl = span_list(F, m, s);
  T.entries.assign(sl.spans.size() * sl.offsets_per_span, Poly{});
  return T;
}

SubspaceTable load_from_json(const json& j);

SubspaceTable SubspaceTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::FormatError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    fail(Errc::FormatError, std::string("bad JSON: ") + ex.what());
  }
  return load_from_json(j);
}

SubspaceTable load_from_json(const json& j) {
  if (!j.is_object() || !j.contains("header") || !j.contains("entries")) fail(Errc::FormatError, "missing header/entries");
  const json& h = j["header"];
  for (const char* fld : {"p", "e", "reduction_poly", "m", "s", "d", "generator", "seed"})
    if (!h.contains(fld)) fail(Errc::HeaderMismatch, std::string("header missing field ") + fld);
  std::uint32_t p = h["p"].get<std::uint32_t>();
  std::uint32_t e = h["e"].get<std::uint32_t>();
  auto red = h["reduction_poly"].get<std::vector<Fel>>();
  FieldCtx F = FieldCtx::make(p, e, e > 1 ? std::optional<std::vector<Fel>>(red) : std::nullopt);
  if (e > 1 && F.reduction_poly != red) fail(Errc::HeaderMismatch, "reduction polynomial mismatch");
  int m = h["m"].get<int>();
  int s = h["s"].get<int>();
  int d = h["d"].get<int>();
  if (m < 1 || m > 12) fail(Errc::HeaderMismatch, "ambient dimension out of range");
  SubspaceTable T = make_table_shell(F, m, s, d);
  T.hdr.generator = h["generator"];
  T.hdr.seed = h["seed"].get<std::uint64_t>();

  std::vector<bool> seen(T.entries.size(), false);
  if (!j["entries"].is_array()) fail(Errc::FormatError, "entries must be an array");
  for (const json& rec : j["entries"]) {
    if (!rec.is_object() || !rec.contains("subspace") || !rec.contains("poly"))
      fail(Errc::FormatError, "bad entry record");
    AffineSubspace S = AffineSubspace::parse_text(rec["subspace"].get<std::string>(), m);
    for (Fel v : S.base)
      if (v >= F.q) fail(Errc::FormatError, "subspace coordinate out of field range");
    for (Fel v : S.rows)
      if (v >= F.q) fail(Errc::FormatError, "subspace coordinate out of field range");
    if (S.k != s) fail(Errc::FormatError, "entry subspace has wrong dimension");
    // must be in canonical form already
    std::vector<Point> dirs;
    for (int i = 0; i < S.k; i++) dirs.emplace_back(S.row(i), S.row(i) + S.m);
    AffineSubspace canon = canonicalize_span(F, S.base, dirs);
    if (!(canon == S)) fail(Errc::FormatError, "entry subspace not in canonical form: " + S.text());
    Poly poly = poly_from_json(rec["poly"], F);
    if (poly.k != s) fail(Errc::FormatError, "entry polynomial has wrong arity");
    if (poly.d > d) {
      if (poly.degree() > d) fail(Errc::DegreeViolation, "entry of degree " + std::to_string(poly.degree()));
      fail(Errc::DegreeViolation, "entry declares degree bound above header");
    }
    if (poly.d < d) {
      // embed into the header's coefficient space
      Poly wide = zero_poly(s, d);
      const MonoBasis& bn = mono_basis(s, poly.d);
      const MonoBasis& bw = mono_basis(s, d);
      for (int t = 0; t < bn.n(); t++) wide.c[bw.index_of(bn.exps[t].data())] = poly.c[t];
      poly = std::move(wide);
    }
    std::uint64_t idx = T.index_of(S);
    if (seen[idx]) fail(Errc::FormatError, "duplicate entry for " + S.text());
    seen[idx] = true;
    T.entries[idx] = std::move(poly);
  }
  for (std::uint64_t i = 0; i < T.entries.size(); i++)
    if (!seen[i]) fail(Errc::MissingEntry, "no entry for " + T.subspace_of(i).text());
  return T;
}

namespace {

json poly_meta(const Poly& g) { return poly_to_json(g); }

void check_global(const FieldCtx& F, int m, int, const Poly& g) {
  if (g.k != m) fail(Errc::SpecInvalid, "global polynomial arity must equal m");
  if (g.d >= F.q) fail(Errc::SpecInvalid, "need deg bound < q");
}

}  // namespace

SubspaceTable gen_honest(const FieldCtx& F, int m, int s, const Poly& g, std::uint64_t seed) {
  check_global(F, m, s, g);
  SubspaceTable T = make_table_shell(F, m, s, g.d);
  AffineSubspace whole = whole_space(m);
  for (std::uint64_t i = 0; i < T.size(); i++) T.entries[i] = restrict_poly(F, g, whole, T.subspace_of(i));
  T.hdr.seed = seed;
  T.hdr.generator = {{"name", "honest"}, {"g", poly_meta(g)}};
  return T;
}

SubspaceTable gen_planted(const FieldCtx& F, int m, int s, const Poly& g, double rho, std::uint64_t seed) {
  check_global(F, m, s, g);
  if (rho < 0 || rho > 1) fail(Errc::SpecInvalid, "rho must be in [0,1]");
  SubspaceTable T = make_table_shell(F, m, s, g.d);
  AffineSubspace whole = whole_space(m);
  // planted metadata records the honest-equality set: a uniformly random
  // entry can collide with the restriction, and scoring wants the truth
  std::vector<std::uint64_t> planted;
  for (std::uint64_t i = 0; i < T.size(); i++) {
    Rng r = Rng::stream(seed, i);
    Poly honest = restrict_poly(F, g, whole, T.subspace_of(i));
    if (r.real() < rho) {
      T.entries[i] = honest;
      planted.push_back(i);
    } else {
      T.entries[i] = random_poly(F, s, g.d, r);
      if (T.entries[i] == honest) planted.push_back(i);
    }
  }
  T.hdr.seed = seed;
  T.hdr.generator = {{"name", "planted"}, {"rho", rho}, {"g", poly_meta(g)}, {"planted", planted}};
  return T;
}

SubspaceTable gen_halfhalf(const FieldCtx& F, int m, int s, int d, std::uint64_t seed) {
  if (F.q < 2) fail(Errc::SpecInvalid, "need q >= 2");
  SubspaceTable T = make_table_shell(F, m, s, d);
  for (std::uint64_t i = 0; i < T.size(); i++) {
    Rng r = Rng::stream(seed, i);
    T.entries[i] = constant_poly(s, d, r.real() < 0.5 ? 0 : 1);
  }
  T.hdr.seed = seed;
  T.hdr.generator = {{"name", "halfhalf"}};
  return T;
}

SubspaceTable gen_mixture(const FieldCtx& F, int m, int s, const std::vector<Poly>& gs,
                          const std::vector<double>& weights, std::uint64_t seed) {
  if (gs.empty() || gs.size() != weights.size()) fail(Errc::WeightMismatch, "need one weight per polynomial");
  double tot = 0;
  for (double w : weights) {
    if (w < 0) fail(Errc::WeightMismatch, "negative weight");
    tot += w;
  }
  if (std::abs(tot - 1.0) > 1e-9) fail(Errc::WeightMismatch, "weights must sum to 1");
  int d = 0;
  for (const auto& g : gs) {
    check_global(F, m, s, g);
    d = std::max<int>(d, g.d);
  }
  for (const auto& g : gs)
    if (g.d != d) fail(Errc::WeightMismatch, "mixture polynomials must share a degree bound");
  SubspaceTable T = make_table_shell(F, m, s, d);
  AffineSubspace whole = whole_space(m);
  for (std::uint64_t i = 0; i < T.size(); i++) {
    Rng r = Rng::stream(seed, i);
    double u = r.real(), acc = 0;
    std::size_t pick = gs.size() - 1;
    for (std::size_t j = 0; j < weights.size(); j++) {
      acc += weights[j];
      if (u < acc) {
        pick = j;
        break;
      }
    }
    T.entries[i] = restrict_poly(F, gs[pick], whole, T.subspace_of(i));
  }
  T.hdr.seed = seed;
  json gj = json::array();
  for (const auto& g : gs) gj.push_back(poly_meta(g));
  T.hdr.generator = {{"name", "mixture"}, {"gs", gj}, {"weights", weights}};
  return T;
}

SubspaceTable gen_random(const FieldCtx& F, int m, int s, int d, std::uint64_t seed) {
  SubspaceTable T = make_table_shell(F, m, s, d);
  for (std::uint64_t i = 0; i < T.size(); i++) {
    Rng r = Rng::stream(seed, i);
    T.entries[i] = random_poly(F, s, d, r);
  }
  T.hdr.seed = seed;
  T.hdr.generator = {{"name", "random"}};
  return T;
}

}  // namespace ldt
