#include <doctest.h>

#include "mcn/error.hpp"
#include "mcn/geometry.hpp"
#include "oracles.hpp"

using namespace mcn;

namespace {

Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

bool strictly_on_side(const Cell& c, const std::vector<AffineForm>& forms) {
  for (std::size_t i = 0; i < forms.size(); ++i) {
    Rational v = forms[i].eval(c.interior);
    if (c.signs[i] == Side::Leq ? v >= 0 : v <= 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("affine forms") {
  AffineForm g(-1, {2, -3});
  CHECK(g.eval({q(1, 2), q(1, 3)}) == -1);
  CHECK(g.cube_min() == -4);
  CHECK(g.cube_max() == 1);
  CHECK(g.to_string() == "2*x1 - 3*x2 - 1");
  CHECK(AffineForm(2, {-4, 6}).hyperplane_key() == AffineForm(-1, {2, -3}));
  CHECK(AffineForm(0, {0, 0}).is_constant());
  CHECK_THROWS_AS(g.eval({q(1, 2)}), InputError);
}

TEST_CASE("lp on simple programs") {
  auto r = lp_optimize(AffineForm::of_variable(2, 1), Polytope::cube(2), Sense::Maximize);
  REQUIRE(r);
  CHECK(r->value == 1);
  CHECK(r->witness[0] == 1);

  Polytope third(1);
  third.add(AffineForm(-1, {3}));
  r = lp_optimize(AffineForm(-1, {2}), third, Sense::Maximize);
  REQUIRE(r);
  CHECK(r->value == q(-1, 3));
  CHECK(r->witness == Point{q(1, 3)});

  Polytope empty(1);
  empty.add(AffineForm(1, {1}));
  CHECK_FALSE(lp_optimize(AffineForm::of_variable(1, 1), empty, Sense::Minimize));
  CHECK_THROWS_AS(lp_optimize(AffineForm::of_variable(2, 1), third, Sense::Maximize), InputError);
}

TEST_CASE("lp matches vertex enumeration") {
  oracle::Rng rng(21);
  int feasible = 0;
  for (int i = 0; i < 300; ++i) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    Polytope P = rng.polytope(n, static_cast<int>(rng.uniform(0, 6)), 4);
    AffineForm obj = rng.form(n, 5);
    bool maximize = rng.coin();
    auto got = lp_optimize(obj, P, maximize ? Sense::Maximize : Sense::Minimize);
    auto expect = oracle::vertex_optimum(obj, P, maximize);
    REQUIRE(got.has_value() == expect.has_value());
    if (!got) continue;
    ++feasible;
    CHECK(got->value == *expect);
    CHECK(P.contains(got->witness));
    CHECK(obj.eval(got->witness) == got->value);
  }
  CHECK(feasible > 100);
}

TEST_CASE("lp is deterministic") {
  oracle::Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    Polytope P = rng.polytope(2, 4, 3);
    AffineForm obj = rng.form(2, 3);
    auto a = lp_optimize(obj, P, Sense::Maximize);
    auto b = lp_optimize(obj, P, Sense::Maximize);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(a->witness == b->witness);
  }
}

TEST_CASE("interior points") {
  auto p = interior_point(Polytope::cube(1));
  REQUIRE(p);
  CHECK((*p)[0] > 0);
  CHECK((*p)[0] < 1);

  Polytope below(2);
  below.add(AffineForm(0, {1, -1}));
  p = interior_point(below);
  REQUIRE(p);
  CHECK((*p)[0] < (*p)[1]);

  Polytope flat(1);
  flat.add(AffineForm(0, {1}));
  flat.add(AffineForm(0, {-1}));
  CHECK_FALSE(interior_point(flat));

  Polytope corner(2);
  corner.add(AffineForm(-1, {1, 1}).scaled(-1));
  corner.add(AffineForm(-1, {1, 1}));
  CHECK_FALSE(interior_point(corner));
}

TEST_CASE("cells of simple arrangements") {
  std::vector<AffineForm> one{AffineForm(-1, {2})};
  auto d = enumerate_cells(one, 1);
  REQUIRE(d.cells.size() == 2);
  CHECK(d.cells[0].signs == std::vector<Side>{Side::Leq});
  CHECK(d.cells[0].interior[0] < q(1, 2));
  CHECK(d.cells[1].interior[0] > q(1, 2));

  std::vector<AffineForm> diag{AffineForm(0, {1, -1})};
  CHECK(enumerate_cells(diag, 2).cells.size() == 2);

  std::vector<AffineForm> two{AffineForm(-1, {2}), AffineForm(-1, {3})};
  d = enumerate_cells(two, 1);
  REQUIRE(d.cells.size() == 3);
  // Brute force: the three sign vectors realized by some interior point.
  CHECK(d.cells[0].signs == std::vector<Side>{Side::Leq, Side::Leq});
  CHECK(d.cells[1].signs == std::vector<Side>{Side::Leq, Side::Geq});
  CHECK(d.cells[2].signs == std::vector<Side>{Side::Geq, Side::Geq});
  CHECK(d.cells[1].interior[0] > q(1, 3));
  CHECK(d.cells[1].interior[0] < q(1, 2));
}

TEST_CASE("cell enumeration rejects degenerate forms") {
  std::vector<AffineForm> constant{AffineForm(1, {0})};
  CHECK_THROWS_AS(enumerate_cells(constant, 1), InputError);
  std::vector<AffineForm> dup{AffineForm(0, {1}), AffineForm(0, {1})};
  CHECK_THROWS_AS(enumerate_cells(dup, 1), InputError);
}

TEST_CASE("cells cover the grid and respect their signs") {
  oracle::Rng rng(23);
  for (int i = 0; i < 25; ++i) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
    std::vector<AffineForm> forms;
    for (int k = 0; k < 4; ++k) {
      AffineForm g = rng.nonconstant_form(n, 3);
      if (std::find(forms.begin(), forms.end(), g) == forms.end()) forms.push_back(g);
    }
    auto d = enumerate_cells(forms, n);
    for (const auto& c : d.cells) {
      CHECK(strictly_on_side(c, forms));
      CHECK(c.polytope.contains(c.interior));
    }
    for (const auto& p : oracle::grid(n, 8)) {
      bool covered = std::any_of(d.cells.begin(), d.cells.end(), [&](const Cell& c) { return c.polytope.contains(p); });
      CHECK(covered);
    }
    // Sign vectors are strictly increasing with Leq before Geq.
    for (std::size_t k = 1; k < d.cells.size(); ++k) CHECK(d.cells[k - 1].signs < d.cells[k].signs);

    auto again = enumerate_cells(forms, n);
    REQUIRE(again.cells.size() == d.cells.size());
    for (std::size_t k = 0; k < d.cells.size(); ++k) CHECK(again.cells[k].interior == d.cells[k].interior);
  }
}

TEST_CASE("cells inside a region") {
  Polytope left(1);
  left.add(AffineForm(-1, {2}));
  std::vector<AffineForm> forms{AffineForm(-1, {4}), AffineForm(-3, {4})};
  auto d = enumerate_cells(forms, left);
  CHECK(d.cells.size() == 2);
}

}  // TEST_SUITE
