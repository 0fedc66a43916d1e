#include <catch2/catch_amalgamated.hpp>

#include "congr/affine.hpp"
#include "congr/gaussian.hpp"
#include "test_support.hpp"

using namespace congr;
using test_support::ExactRng;

TEST_CASE("gaussian field operations are exact") {
  GaussianRational i(Rational(0), Rational(1));
  CHECK(i * i == GaussianRational(-1));
  GaussianRational a(Rational(1, 2), Rational(-3, 4));
  GaussianRational b(Rational(2, 3), Rational(5));
  CHECK((a + b) - b == a);
  CHECK(a * b / b == a);
  CHECK(a.conj().conj() == a);
  CHECK(a.norm_sq() == Rational(1, 4) + Rational(9, 16));
  CHECK_THROWS_AS(a / GaussianRational(0), ValidationError);
}

TEST_CASE("sq_dist basics") {
  CHECK(sq_dist(GaussianRational(0), GaussianRational(3, 4)) == 25);
  GaussianRational p(Rational(5, 7), Rational(-2, 3));
  CHECK(sq_dist(p, p) == 0);
  CHECK(sq_dist(GaussianRational(Rational(1, 2), Rational(0)),
                GaussianRational(Rational(0), Rational(1, 2))) == Rational(1, 2));
  ExactRng rng(11);
  for (int it = 0; it < 50; ++it) {
    GaussianRational x = rng.gauss(), y = rng.gauss();
    CHECK(sq_dist(x, y) == sq_dist(y, x));
    CHECK((sq_dist(x, y) == 0) == (x == y));
  }
}

TEST_CASE("affine product, inverse and action examples") {
  AffineElement id = AffineElement::identity();
  GaussianRational i(Rational(0), Rational(1));
  AffineElement g(GaussianRational(Rational(0), Rational(1)), GaussianRational(0));
  CHECK(mul(id, g) == g);
  CHECK(mul(g, AffineElement(GaussianRational(1), GaussianRational(2))) ==
        AffineElement(i, GaussianRational(Rational(0), Rational(2))));
  CHECK(inv(AffineElement(GaussianRational(1), GaussianRational(7))) ==
        AffineElement(GaussianRational(1), GaussianRational(-7)));
  CHECK(inv(g) == AffineElement(GaussianRational(Rational(0), Rational(-1)), GaussianRational(0)));
  CHECK(inv(AffineElement(GaussianRational(2), GaussianRational(3))) ==
        AffineElement(GaussianRational(Rational(1, 2)), GaussianRational(Rational(-3, 2))));
  CHECK(act(id, i) == i);
  CHECK(act(g, GaussianRational(1)) == i);
  CHECK(act(AffineElement(GaussianRational(1), GaussianRational(5)), i) ==
        GaussianRational(Rational(5), Rational(1)));
  CHECK_THROWS_AS(AffineElement(GaussianRational(0), GaussianRational(1)), ValidationError);
}

TEST_CASE("group axioms hold on random elements") {
  ExactRng rng(23);
  for (int it = 0; it < 60; ++it) {
    AffineElement g = rng.affine(), h = rng.affine(), f = rng.affine();
    CHECK(mul(mul(g, h), f) == mul(g, mul(h, f)));
    CHECK(mul(g, AffineElement::identity()) == g);
    CHECK(mul(AffineElement::identity(), g) == g);
    CHECK(mul(g, inv(g)) == AffineElement::identity());
    CHECK(mul(inv(g), g) == AffineElement::identity());
    GaussianRational x = rng.gauss();
    CHECK(act(mul(g, h), x) == act(g, act(h, x)));
  }
}

TEST_CASE("rigidity is preserved by products and inverses") {
  ExactRng rng(31);
  for (int it = 0; it < 40; ++it) {
    RigidMotion g = rng.rigid(), h = rng.rigid();
    REQUIRE(is_rigid(g));
    CHECK(is_rigid(mul(g, h)));
    CHECK(is_rigid(inv(g)));
  }
}

TEST_CASE("embed_rotation fixes its center") {
  CHECK(embed_rotation(GaussianRational(1), GaussianRational(5, 3)) ==
        AffineElement::identity());
  AffineElement half_turn = embed_rotation(GaussianRational(-1), GaussianRational(0));
  CHECK(half_turn == AffineElement(GaussianRational(-1), GaussianRational(0)));
  CHECK(act(half_turn, GaussianRational(1)) == GaussianRational(-1));

  GaussianRational u(Rational(3, 5), Rational(4, 5));
  AffineElement rot = embed_rotation(u, GaussianRational(1));
  CHECK(rot.b == GaussianRational(1) - u);
  CHECK(act(rot, GaussianRational(1)) == GaussianRational(1));
  CHECK_THROWS_AS(embed_rotation(GaussianRational(2), GaussianRational(0)), ValidationError);

  ExactRng rng(47);
  for (int it = 0; it < 30; ++it) {
    GaussianRational center = rng.gauss();
    AffineElement r = embed_rotation(rng.unit(), center);
    CHECK(act(r, center) == center);
    CHECK(in_torus(r, center));
  }
}

TEST_CASE("torus and unipotent membership") {
  GaussianRational z(Rational(2), Rational(-1));
  CHECK(in_torus(AffineElement::identity(), z));
  CHECK_FALSE(in_torus(embed_translation(GaussianRational(1)), z));
  CHECK(in_unipotent(embed_translation(GaussianRational(5, 2))));
  CHECK(in_unipotent(AffineElement::identity()));
  CHECK_FALSE(in_unipotent(AffineElement(GaussianRational(Rational(0), Rational(1)),
                                         GaussianRational(0))));
}
