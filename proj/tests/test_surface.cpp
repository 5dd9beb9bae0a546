#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "kwall/catalog.hpp"
#include "kwall/errors.hpp"
#include "kwall/surface.hpp"

using namespace kwall;
using kwall::testing::cls;
using kwall::testing::sigma5;

namespace {

DivClass random_class(const LatticePtr& l, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-12, 12), den(1, 6);
  Vec v;
  for (size_t i = 0; i < l->rank(); ++i) v.emplace_back(num(rng), den(rng));
  return DivClass(l, v);
}

}  // namespace

TEST_CASE("every catalog surface validates and has the expected degree") {
  auto cat = Catalog::open_default();
  CHECK(cat->surface_names().size() == 18);
  for (const auto& name : cat->surface_names()) {
    CAPTURE(name);
    SurfacePtr s = cat->surface(name);
    SurfaceReport r = validate_surface(*s);
    CHECK(r.ok());
    for (const auto& p : r.problems) MESSAGE(p);
    CHECK(s->degree() == Rational(name == "P2" ? 9 : 5));
    CHECK(anticanonical_degree(*s) == s->degree());
  }
}

TEST_CASE("pullbacks are orthogonal to contracted curves") {
  auto cat = Catalog::open_default();
  std::mt19937_64 rng(3);
  for (const auto& name : cat->surface_names()) {
    SurfacePtr s = cat->surface(name);
    CAPTURE(name);
    for (int i = 0; i < 20; ++i) {
      DivClass d = random_class(s->lattice(), rng);
      DivClass pb = pullback_weil(*s, d);
      for (const auto& c : s->contracted()) CHECK(pair(pb, s->cls(c)).is_zero());
      CHECK(pullback_weil(*s, pb) == pb);
    }
    for (const auto& c : s->contracted()) CHECK(pullback_weil(*s, s->cls(c)).is_zero());
  }
}

TEST_CASE("index-three pullbacks carry ninths") {
  SurfacePtr s = Catalog::open_default()->surface("Index3");
  DivClass sigma = s->cls("sigma"), l = s->cls("l");
  for (int i = 1; i <= 5; ++i) {
    DivClass f = s->cls("F" + std::to_string(i));
    CHECK(pullback_weil(*s, f) == f + Rational(1, 9) * sigma + Rational(2, 9) * l);
  }
  DivClass fibre = cls(s, {0, 1, 0, 0, 0, 0, 0});
  CHECK(pullback_weil(*s, fibre) == fibre + Rational(5, 9) * sigma + Rational(1, 9) * l);
  CHECK(s->k_discrepancy("sigma") == Rational(-1, 3));
  CHECK(s->k_discrepancy("l") == Rational(-2, 3));
}

TEST_CASE("surface validation flags a broken canonical class") {
  SurfacePtr s = sigma5();
  SurfaceModel broken("bad", s->lattice(), cls(s, {-3, 1, 1, 1, 0}), s->mori(), {}, {});
  SurfaceReport r = validate_surface(broken);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.problems.empty());
}

TEST_CASE("blow-up of a general point of Sigma5") {
  BlowupExtension ext = build_blowup_extension(sigma5(), BlowupCenter{});
  CHECK(pair(ext.e_class(), ext.e_class()) == Rational(-1));
  CHECK(ext.a_over_base() == Rational(2));
  CHECK(ext.model()->degree() == Rational(4));
  CHECK(pair(ext.model()->canonical(), ext.e_class()) == Rational(-1));
}

TEST_CASE("weighted (1,2) blow-up") {
  BlowupCenter c;
  c.a = 1;
  c.b = 2;
  BlowupExtension ext = build_blowup_extension(sigma5(), c);
  CHECK(pair(ext.e_class(), ext.e_class()) == Rational(-1, 2));
  CHECK(ext.a_over_base() == Rational(3));
  CHECK(ext.weight_a() == 1);
  CHECK(ext.weight_b() == 2);
}

TEST_CASE("blow-up of P2 preserves H^2") {
  SurfacePtr p2 = Catalog::open_default()->surface("P2");
  BlowupExtension ext = build_blowup_extension(p2, BlowupCenter{});
  DivClass h = ext.pullback(DivClass::basis(p2->lattice(), 0));
  CHECK(pair(h, h) == Rational(1));
  CHECK(pair(h, ext.e_class()).is_zero());
}

TEST_CASE("blow-up pullback is an isometry") {
  SurfacePtr s = sigma5();
  BlowupCenter c;
  c.a = 2;
  c.b = 3;
  c.ord = {{"L12", Rational(2)}};
  BlowupExtension ext = build_blowup_extension(s, c);
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    DivClass x = random_class(s->lattice(), rng), y = random_class(s->lattice(), rng);
    CHECK(pair(ext.pullback(x), ext.pullback(y)) == pair(x, y));
    CHECK(pair(ext.pullback(x), ext.e_class()).is_zero());
  }
  DivClass l12 = ext.proper_transform(s->cls("L12"), Rational(2));
  CHECK(pair(l12, ext.e_class()) == Rational(2) * Rational(-1, 6) * Rational(-1));
}

TEST_CASE("blow-up input errors") {
  BlowupCenter c;
  c.a = 2;
  c.b = 4;
  CHECK_THROWS_AS(build_blowup_extension(sigma5(), c), InconsistentMultiplicity);
  BlowupCenter neg;
  neg.ord = {{"E1", Rational(-1)}};
  CHECK_THROWS_AS(build_blowup_extension(sigma5(), neg), InconsistentMultiplicity);
  BlowupCenter clash;
  clash.e_name = "E1";
  CHECK_THROWS_AS(build_blowup_extension(sigma5(), clash), ConfigurationError);
}

TEST_CASE("surface json round trip") {
  SurfacePtr s = Catalog::open_default()->surface("Xq");
  SurfacePtr back = surface_from_json(surface_to_json(*s), "Xq");
  CHECK(back->lattice()->gram() == s->lattice()->gram());
  CHECK(back->canonical().coords() == s->canonical().coords());
  CHECK(back->contracted() == s->contracted());
  CHECK(back->k_discrepancies() == s->k_discrepancies());
  json bad = surface_to_json(*s);
  bad["degree"] = "4";
  CHECK_THROWS_AS(surface_from_json(bad, "Xq"), InputError);
}
