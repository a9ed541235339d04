#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "ldt/table.hpp"

using namespace ldt;

namespace {

std::string tmp_path(const char* name) { return std::string("/tmp/ldt_test_") + name + ".json"; }

}  // namespace

TEST_CASE("honest table entries equal the global polynomial pointwise") {
  FieldCtx F = FieldCtx::make(5, 1);
  Rng rng(21);
  Poly g = random_poly(F, 4, 2, rng);
  SubspaceTable T = gen_honest(F, 4, 3, g, 21);
  AffineSubspace whole = whole_space(4);
  for (std::uint64_t i = 0; i < T.size(); i += 37) {
    AffineSubspace S = T.subspace_of(i);
    for (const Point& y : points_of(F, S))
      CHECK(evaluate(F, T.entries[i], local_coords(S, y)) == evaluate(F, g, local_coords(whole, y)));
  }
  // zero polynomial gives the all-zero table
  SubspaceTable Z = gen_honest(F, 4, 3, zero_poly(4, 2), 1);
  for (const auto& e : Z.entries) CHECK(e.is_zero());
}

TEST_CASE("generators are deterministic in (seed, header)") {
  FieldCtx F = FieldCtx::make(5, 1);
  Rng rng(22);
  Poly g = random_poly(F, 4, 1, rng);
  CHECK(gen_planted(F, 4, 2, g, 0.5, 7).content_hash() == gen_planted(F, 4, 2, g, 0.5, 7).content_hash());
  CHECK(gen_planted(F, 4, 2, g, 0.5, 7).content_hash() != gen_planted(F, 4, 2, g, 0.5, 8).content_hash());
  CHECK(gen_halfhalf(F, 4, 2, 1, 3).content_hash() == gen_halfhalf(F, 4, 2, 1, 3).content_hash());
}

TEST_CASE("planted metadata matches the honest-entry set") {
  FieldCtx F = FieldCtx::make(5, 1);
  Rng rng(23);
  Poly g = random_poly(F, 4, 1, rng);
  SubspaceTable T = gen_planted(F, 4, 2, g, 0.5, 11);
  AffineSubspace whole = whole_space(4);
  std::vector<std::uint64_t> planted = T.hdr.generator["planted"].get<std::vector<std::uint64_t>>();
  std::vector<std::uint64_t> equal;
  for (std::uint64_t i = 0; i < T.size(); i++)
    if (T.entries[i] == restrict_poly(F, g, whole, T.subspace_of(i))) equal.push_back(i);
  CHECK(planted == equal);
  // binomial concentration: planted fraction within 3 sigma of rho
  double n = static_cast<double>(T.size());
  double frac = static_cast<double>(planted.size()) / n;
  CHECK(std::abs(frac - 0.5) < 3.0 * std::sqrt(0.25 / n));
  // rho = 1 is the honest table; rho = 0 keeps only accidental collisions
  // (each uniformly random entry hits the plant with probability q^-3 here)
  CHECK(gen_planted(F, 4, 2, g, 1.0, 11).entries == gen_honest(F, 4, 2, g, 11).entries);
  SubspaceTable R0 = gen_planted(F, 4, 2, g, 0.0, 11);
  double expect_coll = static_cast<double>(R0.size()) / 125.0;
  CHECK(static_cast<double>(R0.hdr.generator["planted"].size()) < expect_coll + 4.0 * std::sqrt(expect_coll));
}

TEST_CASE("halfhalf entries are fair constant coins") {
  FieldCtx F = FieldCtx::make(5, 1);
  SubspaceTable T = gen_halfhalf(F, 4, 3, 2, 31);
  std::uint64_t ones = 0;
  for (const auto& e : T.entries) {
    bool c0 = e == constant_poly(3, 2, 0);
    bool c1 = e == constant_poly(3, 2, 1);
    CHECK((c0 || c1));
    ones += c1;
  }
  double n = static_cast<double>(T.size());
  CHECK(std::abs(ones / n - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("mixture generator splits by weight") {
  FieldCtx F = FieldCtx::make(5, 1);
  Rng rng(24);
  Poly g1 = random_poly(F, 4, 1, rng), g2 = random_poly(F, 4, 1, rng);
  SubspaceTable T = gen_mixture(F, 4, 2, {g1, g2}, {0.3, 0.7}, 13);
  AffineSubspace whole = whole_space(4);
  std::uint64_t n1 = 0, n2 = 0;
  for (std::uint64_t i = 0; i < T.size(); i++) {
    bool is1 = T.entries[i] == restrict_poly(F, g1, whole, T.subspace_of(i));
    bool is2 = T.entries[i] == restrict_poly(F, g2, whole, T.subspace_of(i));
    CHECK((is1 || is2));
    n1 += is1;
    n2 += is2;
  }
  double n = static_cast<double>(T.size());
  CHECK(std::abs(n1 / n - 0.3) < 4.0 * std::sqrt(0.3 * 0.7 / n));
  CHECK(gen_mixture(F, 4, 2, {g1}, {1.0}, 13).entries == gen_honest(F, 4, 2, g1, 13).entries);
  CHECK_THROWS_AS(gen_mixture(F, 4, 2, {g1, g2}, {0.5, 0.6}, 13), Error);
}

TEST_CASE("save/load round-trips bit-exactly") {
  FieldCtx F = FieldCtx::make(3, 1);
  Rng rng(25);
  Poly g = random_poly(F, 3, 1, rng);
  SubspaceTable T = gen_planted(F, 3, 2, g, 0.6, 17);
  std::string path = tmp_path("roundtrip");
  T.save(path);
  SubspaceTable L = SubspaceTable::load(path);
  CHECK(L.entries == T.entries);
  CHECK(L.content_hash() == T.content_hash());
  CHECK(L.canonical_json() == T.canonical_json());
  std::remove(path.c_str());
}

TEST_CASE("load validates totality, format, and degree") {
  FieldCtx F = FieldCtx::make(3, 1);
  SubspaceTable T = gen_halfhalf(F, 3, 1, 1, 19);
  json j = json::parse(T.canonical_json());

  SUBCASE("missing entry") {
    j["entries"].erase(0);
    std::string path = tmp_path("missing");
    std::ofstream(path) << j.dump();
    try {
      SubspaceTable::load(path);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::MissingEntry);
    }
    std::remove(path.c_str());
  }

  SUBCASE("degree violation crafted by interpolating a higher-degree pattern") {
    // build a line entry of degree 2 > header d = 1
    Poly high = interpolate(F, {{0}, {1}, {2}}, {0, 1, 1}, 1, 2);
    CHECK(high.degree() == 2);
    j["entries"][0]["poly"] = poly_to_json(high);
    std::string path = tmp_path("degree");
    std::ofstream(path) << j.dump();
    try {
      SubspaceTable::load(path);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::DegreeViolation);
    }
    std::remove(path.c_str());
  }

  SUBCASE("non-canonical subspace text") {
    std::string text = j["entries"][0]["subspace"].get<std::string>();
    j["entries"][0]["subspace"] = text + ";1,1,1";  // extra dependent row
    std::string path = tmp_path("canon");
    std::ofstream(path) << j.dump();
    CHECK_THROWS_AS(SubspaceTable::load(path), Error);
    std::remove(path.c_str());
  }

  SUBCASE("coefficient outside the field") {
    j["entries"][0]["poly"]["coeffs"][0] = 9;
    std::string path = tmp_path("coeff");
    std::ofstream(path) << j.dump();
    CHECK_THROWS_AS(SubspaceTable::load(path), Error);
    std::remove(path.c_str());
  }
}
