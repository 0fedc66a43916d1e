#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "congr/generators.hpp"
#include "congr/group_energy.hpp"
#include "congr/triangles.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace congr;
using test_support::ExactRng;

namespace {

std::vector<AffineElement> translations(int n) {
  std::vector<AffineElement> out;
  for (int j = 0; j < n; ++j) out.push_back(embed_translation(GaussianRational(j)));
  return out;
}

std::vector<AffineElement> rotation_powers(int n) {
  GaussianRational u(Rational(3, 5), Rational(4, 5));
  std::vector<AffineElement> out;
  GaussianRational cur(1);
  for (int j = 0; j < n; ++j) {
    out.emplace_back(cur, GaussianRational(0));
    cur = cur * u;
  }
  return out;
}

}  // namespace

TEST_CASE("group energy pins") {
  std::vector<AffineElement> single{AffineElement(GaussianRational(2, 3), GaussianRational(1))};
  CHECK(group_energy(single).energy == 1);
  CHECK(group_energy(translations(4)).energy == 44);
  CHECK(group_energy(rotation_powers(4)).energy == 44);
}

TEST_CASE("representation function sums to |S|^2") {
  ExactRng rng(13);
  for (int round = 0; round < 5; ++round) {
    std::vector<AffineElement> S;
    for (int i = 0; i < 6; ++i) S.push_back(rng.affine());
    GroupEnergy ge = group_energy(S);
    std::uint64_t total = 0;
    for (const auto& [rep, count] : ge.reps) total += count;
    CHECK(total == S.size() * S.size());
    CHECK(ge.total == S.size() * S.size());
  }
}

TEST_CASE("group and star energies match the quadruple oracles") {
  ExactRng rng(29);
  for (int round = 0; round < 4; ++round) {
    std::vector<AffineElement> S;
    for (int i = 0; i < 5 + round; ++i) S.push_back(rng.affine());
    CHECK(group_energy(S).energy == oracle::group_energy(S));
    CHECK(star_energy(S) == oracle::star_energy(S));
  }
  std::vector<AffineElement> rigid;
  for (int i = 0; i < 7; ++i) rigid.push_back(rng.rigid());
  CHECK(group_energy(rigid).energy == oracle::group_energy(rigid));
  CHECK(star_energy(rigid) == oracle::star_energy(rigid));
}

TEST_CASE("star energy pins and the Shkredov inequality") {
  std::vector<AffineElement> two{embed_translation(GaussianRational(0)),
                                 embed_translation(GaussianRational(1))};
  CHECK(star_energy(two) == 6);
  std::vector<AffineElement> single{AffineElement(GaussianRational(1), GaussianRational(5))};
  CHECK(star_energy(single) == 1);

  ExactRng rng(41);
  for (int round = 0; round < 6; ++round) {
    std::vector<AffineElement> S;
    for (int i = 0; i < 6; ++i) S.push_back(round % 2 ? rng.rigid() : rng.affine());
    CHECK(star_energy(S) <= group_energy(S).energy);
  }
}

TEST_CASE("motion set validation") {
  std::vector<AffineElement> good = rotation_powers(3);
  CHECK_NOTHROW(validate_motion_set(good));
  std::vector<AffineElement> dup = good;
  dup.push_back(good[1]);
  CHECK_THROWS_AS(validate_motion_set(dup), ValidationError);
  std::vector<AffineElement> scaled = good;
  scaled.push_back(AffineElement(GaussianRational(2), GaussianRational(0)));
  CHECK_THROWS_AS(validate_motion_set(scaled), ValidationError);
}

TEST_CASE("lemma31 on the two-point set is tight") {
  PointSet two(std::vector<GaussianRational>{GaussianRational(0), GaussianRational(1)});
  Rational c_emp = guth_katz_ratio(two);
  REQUIRE(c_emp == Rational(1));
  Lemma31Report rep = lemma31_report(two, 2, c_emp);
  CHECK(rep.s_size == 2);
  CHECK(rep.lhs == Rational(8));  // 2^6 * 2^4 / (1 * 2^7)
  CHECK(rep.energy == 8);
  CHECK(rep.holds);
}

TEST_CASE("lemma31 holds on structured families") {
  for (PointSet P : {ap_line(16), rotation_orbit(Rational(1, 2), GaussianRational(1),
                                                 GaussianRational(0), 16)}) {
    RichnessSpectrum sp = spectrum(P);
    Rational M(BigInt(class_table(P).class_count()),
               BigInt(static_cast<unsigned long>(P.size())) * P.size());
    M.canonicalize();
    Rational C = guth_katz_ratio(sp, P.size());
    std::vector<std::uint32_t> good = good_ks(sp, P.size(), M, C);
    REQUIRE_FALSE(good.empty());
    Lemma31Report rep = lemma31_report(P, good.back(), C);
    CHECK(rep.holds);
  }
}

TEST_CASE("lemma31 rejects an empty rich set") {
  PointSet two(std::vector<GaussianRational>{GaussianRational(0), GaussianRational(1)});
  CHECK_THROWS_AS(lemma31_report(two, 3, Rational(1)), ValidationError);
}
