#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ldt/bigint.hpp"
#include "ldt/common.hpp"
#include "ldt/field.hpp"
#include "ldt/rng.hpp"

namespace ldt {

using Point = std::vector<Fel>;  // length m

// k-dimensional affine subspace of F_q^m in canonical form: basis rows in
// reduced row echelon form, offset with zeros in all pivot columns. Two
// values are equal as point sets iff their representations are identical.
// The local chart of the subspace reads coordinates off the pivot columns:
// for x in S, local(x)_i = x[pivot_i], and x = base + sum local_i * row_i.
struct AffineSubspace {
  std::uint16_t m = 0;
  std::uint16_t k = 0;
  Point base;                   // size m
  std::vector<Fel> rows;        // k*m row-major, RREF
  std::vector<std::uint8_t> pivots;  // size k, strictly increasing

  const Fel* row(int i) const { return rows.data() + static_cast<std::size_t>(i) * m; }

  bool operator==(const AffineSubspace& o) const {
    return m == o.m && k == o.k && base == o.base && rows == o.rows;
  }
  // span-major order: basis tuple first, then offset
  bool operator<(const AffineSubspace& o) const {
    if (rows != o.rows) return rows < o.rows;
    return base < o.base;
  }

  // "base;row1;row2;..." with comma-separated canonical integers
  std::string text() const;
  static AffineSubspace parse_text(const std::string& s, int m_expected);

  // compact bytes for hash keys
  std::string key() const;
};

// the whole space F_q^m as a subspace (identity chart)
AffineSubspace whole_space(int m);
AffineSubspace point_subspace(const Point& x);

// Canonical form of base + span(dirs); dirs must be independent.
AffineSubspace canonicalize(const FieldCtx& F, const Point& base, const std::vector<Point>& dirs);
// Same, but dependent/zero directions are allowed and reduced away.
AffineSubspace canonicalize_span(const FieldCtx& F, const Point& base, const std::vector<Point>& dirs);

bool contains_point(const FieldCtx& F, const AffineSubspace& S, const Point& x);
bool contains_subspace(const FieldCtx& F, const AffineSubspace& big, const AffineSubspace& small);
std::vector<Fel> local_coords(const AffineSubspace& S, const Point& x);  // reads pivot columns
Point global_point(const FieldCtx& F, const AffineSubspace& S, const std::vector<Fel>& t);

// exact intersection; returns false when empty
bool intersect(const FieldCtx& F, const AffineSubspace& S1, const AffineSubspace& S2, AffineSubspace* out);

std::vector<Point> points_of(const FieldCtx& F, const AffineSubspace& S);

// dense point index: sum x_i q^i
std::uint64_t point_index(const FieldCtx& F, const Point& x);
Point point_of_index(const FieldCtx& F, int m, std::uint64_t idx);
inline void point_of_index_into(const FieldCtx& F, int m, std::uint64_t idx, Point& out) {
  out.resize(m);
  for (int i = 0; i < m; i++) {
    out[i] = static_cast<Fel>(idx % F.q);
    idx /= F.q;
  }
}

struct SubspaceFamily {
  enum class Kind { All, Linear, Containing, AllMinus };
  int m = 0;
  int k = 0;
  Kind kind = Kind::All;
  AffineSubspace anchor;  // Containing / AllMinus

  static SubspaceFamily all(int m, int k) { return {m, k, Kind::All, {}}; }
  static SubspaceFamily linear(int m, int k) { return {m, k, Kind::Linear, {}}; }
  static SubspaceFamily containing(int m, int k, AffineSubspace R) { return {m, k, Kind::Containing, std::move(R)}; }
  static SubspaceFamily all_minus(int m, int k, AffineSubspace R) { return {m, k, Kind::AllMinus, std::move(R)}; }
};

BigUint family_count(const FieldCtx& F, const SubspaceFamily& fam);

// Deterministic enumeration (span-major order), throws CapExceeded when
// family_count exceeds cap.
std::vector<AffineSubspace> enumerate_family(const FieldCtx& F, const SubspaceFamily& fam,
                                             std::uint64_t cap = 10'000'000);

AffineSubspace sample_uniform(const FieldCtx& F, const SubspaceFamily& fam, Rng& rng);

// Linear spans of dimension k in F_q^m together with index arithmetic for
// offsets: the affine family All(m,k) is exactly span-major blocks of
// q^(m-k) offsets per span. Cached per (q, m, k).
struct SpanList {
  std::vector<AffineSubspace> spans;                   // base = 0, sorted
  std::unordered_map<std::string, std::uint32_t> index;  // span key -> position
  std::uint64_t offsets_per_span = 0;

  // rank of a canonical offset (zeros at pivots) within its span block
  std::uint64_t offset_rank(const FieldCtx& F, const AffineSubspace& span, const Point& base) const;
  Point offset_of_rank(const FieldCtx& F, const AffineSubspace& span, std::uint64_t r) const;
};
const SpanList& span_list(const FieldCtx& F, int m, int k);

// canonical offset of the affine subspace x + dir(span): x with the pivot
// coordinates eliminated
Point offset_point(const FieldCtx& F, const AffineSubspace& span, const Point& x);
AffineSubspace rebase(const FieldCtx& F, const AffineSubspace& span, const Point& x);

// canonical global subspace from one expressed in K's local chart
AffineSubspace lift_to_global(const FieldCtx& F, const AffineSubspace& K, const AffineSubspace& local);

// all q^k points of span (taken with base 0), in local tuple order
// (local_rank(t) = sum t_i q^i, coordinate 0 fastest)
std::vector<Point> build_grid(const FieldCtx& F, const AffineSubspace& span);

}  // namespace ldt
