#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ldt/field.hpp"
#include "ldt/geometry.hpp"
#include "ldt/polynomial.hpp"
#include "ldt/rng.hpp"

namespace ldt {

using nlohmann::json;

struct TableHeader {
  std::uint32_t p = 0, e = 1;
  std::vector<Fel> reduction_poly;  // empty when e == 1
  int m = 0, s = 0, d = 0;
  json generator;  // descriptor, including seed-derived metadata
  std::uint64_t seed = 0;
};

// Assignment of a degree-<= d local polynomial to every s-dimensional affine
// subspace of F_q^m. Entries are stored span-major (span_list order, then
// offset rank), so lookup is index arithmetic. Immutable after generation.
class SubspaceTable {
 public:
  TableHeader hdr;
  FieldCtx F;
  std::vector<Poly> entries;  // one per subspace, span-major order

  std::uint64_t size() const { return entries.size(); }

  const SpanList& spans() const { return span_list(F, hdr.m, hdr.s); }

  // subspace of entry i
  AffineSubspace subspace_of(std::uint64_t i) const;
  // entry index of a canonical subspace (must have dim s)
  std::uint64_t index_of(const AffineSubspace& S) const;
  // entry index from (span position in span_list, canonical offset)
  std::uint64_t index_of(std::uint32_t span_pos, const Point& offset) const;

  const Poly& at(const AffineSubspace& S) const { return entries[index_of(S)]; }

  std::string canonical_json() const;
  std::string content_hash() const;  // SHA-256 of canonical_json
  void save(const std::string& path) const;
  static SubspaceTable load(const std::string& path);
};

SubspaceTable make_table_shell(const FieldCtx& F, int m, int s, int d);

// T(S) = g restricted to S for every S
SubspaceTable gen_honest(const FieldCtx& F, int m, int s, const Poly& g, std::uint64_t seed);
// each entry independently: the honest restriction with probability rho, else
// a uniformly random local polynomial; coin-flip set recorded in metadata
SubspaceTable gen_planted(const FieldCtx& F, int m, int s, const Poly& g, double rho, std::uint64_t seed);
// each entry the constant 0 or constant 1 polynomial, fair coin
SubspaceTable gen_halfhalf(const FieldCtx& F, int m, int s, int d, std::uint64_t seed);
// entry i gets restrict(gs[j], S) with probability weights[j]
SubspaceTable gen_mixture(const FieldCtx& F, int m, int s, const std::vector<Poly>& gs,
                          const std::vector<double>& weights, std::uint64_t seed);
// uniformly random local polynomial everywhere
SubspaceTable gen_random(const FieldCtx& F, int m, int s, int d, std::uint64_t seed);

json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j, const FieldCtx& F);

}  // namespace ldt
