#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "perico/hyp.hpp"

using namespace perico;
using namespace perico::hyp;

namespace {

constexpr double kPi = std::numbers::pi;

FuchsianPresentation von_dyck_233() {
  // Spherical (2,3,3) triangle group = A4; fine for pure coset enumeration.
  FuchsianPresentation pres;
  pres.generators = {"x", "y", "z"};
  pres.relators = {"x^2", "y^3", "z^3", "xyz"};
  pres.genus = 0;
  pres.periods = {2, 3, 3};
  pres.period_generators = {"x", "y", "z"};
  return pres;
}

}  // namespace

TEST_CASE("classification and translation length") {
  ClassifyResult id = classify_and_length(MoebiusMatrix::identity());
  CHECK(id.cls == IsometryClass::Elliptic);
  CHECK(id.length == 0.0);

  double e = std::exp(0.5);
  ClassifyResult h = classify_and_length({e, 0, 0, 1 / e, ""});
  CHECK(h.cls == IsometryClass::Hyperbolic);
  CHECK(h.length == doctest::Approx(1.0).epsilon(1e-9));

  ClassifyResult t3 = classify_and_length({2, 1, 1, 1, ""});
  CHECK(t3.cls == IsometryClass::Hyperbolic);
  CHECK(t3.length == doctest::Approx(2 * std::acosh(1.5)).epsilon(1e-6));

  ClassifyResult par = classify_and_length({1, 1, 0, 1, ""});
  CHECK(par.cls == IsometryClass::Parabolic);
  CHECK(par.length == 0.0);

  ClassifyResult ell = classify_and_length({0, 1, -1, 0, ""});
  CHECK(ell.cls == IsometryClass::Elliptic);
}

TEST_CASE("translation length is additive on powers") {
  double e = std::exp(0.37);
  MoebiusMatrix m{e, 0.4, 0, 1 / e, ""};
  double l1 = classify_and_length(m).length;
  MoebiusMatrix acc = m;
  for (int n = 2; n <= 3; ++n) {
    acc = multiply(acc, m);
    CHECK(classify_and_length(acc).length == doctest::Approx(n * l1).epsilon(1e-6));
  }
}

TEST_CASE("classification is conjugation invariant") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MoebiusMatrix m{std::exp(0.8), 0.3, 0, std::exp(-0.8), ""};
  ClassifyResult base = classify_and_length(m);
  for (int trial = 0; trial < 20; ++trial) {
    MoebiusMatrix w{1 + std::abs(u(rng)) + 0.1, u(rng), u(rng), 0, ""};
    w.d = (1 + w.b * w.c) / w.a;  // force determinant 1
    MoebiusMatrix conj = multiply(multiply(w, m), inverse(w));
    ClassifyResult got = classify_and_length(conj);
    CHECK(got.cls == base.cls);
    CHECK(got.length == doctest::Approx(base.length).epsilon(1e-6));
  }
}

TEST_CASE("disc distance") {
  CHECK(hyperbolic_distance({0, 0}, {0, 0}) == 0.0);
  CHECK(hyperbolic_distance({0, 0}, {std::tanh(0.5), 0}) ==
        doctest::Approx(1.0).epsilon(1e-9));
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int trial = 0; trial < 10; ++trial) {
    Complex p(u(rng), u(rng)), q(u(rng), u(rng));
    CHECK(hyperbolic_distance(p, q) == doctest::Approx(hyperbolic_distance(q, p)));
  }
  CHECK_THROWS_AS(hyperbolic_distance({1.0, 0.0}, {0, 0}), ArgumentError);
}

TEST_CASE("word parsing") {
  auto w = parse_word("xz^-3y^2");
  REQUIRE(w.size() == 3);
  CHECK(w[0].gen == "x");
  CHECK(w[0].exponent == 1);
  CHECK(w[1].gen == "z");
  CHECK(w[1].exponent == -3);
  CHECK(w[2].gen == "y");
  CHECK(w[2].exponent == 2);
  CHECK_THROWS_AS(parse_word("x^"), ArgumentError);
  CHECK_THROWS_AS(parse_word("3x"), ArgumentError);
}

TEST_CASE("triangle group construction") {
  FuchsianPresentation g = triangle_group(2, 3, 7);
  CHECK(g.relators == std::vector<std::string>{"x^2", "y^3", "z^7", "xyz"});
  CHECK_NOTHROW(validate(g));
  // Rotation orders as matrices.
  for (auto [name, order] : {std::pair{"x", 2}, {"y", 3}, {"z", 7}}) {
    MoebiusMatrix m = g.matrices.at(name);
    MoebiusMatrix acc = m;
    for (int i = 1; i < order; ++i) acc = multiply(acc, m);
    CHECK(approx_equal(acc, MoebiusMatrix::identity(), 1e-6));
  }
  CHECK_THROWS_AS(triangle_group(2, 4, 4), ArgumentError);
  FuchsianPresentation g238 = triangle_group(2, 3, 8);
  CHECK(g238.genus == 0);
  CHECK(g238.periods == std::vector<int>{2, 3, 8});
  CHECK_NOTHROW(validate(g238));
}

TEST_CASE("known short element of the (2,3,7) group") {
  // x * (z x z^-1) is a product of half turns about X and z(X), hence a
  // translation of twice the distance between those centres; the distance
  // follows from the hyperbolic law of cosines in the base triangle.
  FuchsianPresentation g = triangle_group(2, 3, 7);
  double cosh_b = std::cos(kPi / 3) / std::sin(kPi / 7);
  double sinh2 = cosh_b * cosh_b - 1;
  double cosh_d = cosh_b * cosh_b - sinh2 * std::cos(2 * kPi / 7);
  double expected = 2 * std::acosh(cosh_d);
  MoebiusMatrix m = evaluate_word(g, "xzxz^-1");
  ClassifyResult cr = classify_and_length(m);
  CHECK(cr.cls == IsometryClass::Hyperbolic);
  CHECK(cr.length == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("coset enumeration of the whole group") {
  FuchsianPresentation g = von_dyck_233();
  CosetTable t = todd_coxeter(g, {"x", "y", "z"}, 1000);
  CHECK(t.degree == 1);
}

TEST_CASE("coset enumeration of the trivial subgroup of A4") {
  FuchsianPresentation g = von_dyck_233();
  CosetTable t = todd_coxeter(g, {}, 1000);
  CHECK(t.degree == 12);
  CHECK_NOTHROW(validate_table(g, t));
}

TEST_CASE("coset enumeration of a cyclic subgroup of A4") {
  FuchsianPresentation g = von_dyck_233();
  CosetTable t = todd_coxeter(g, {"x"}, 1000);
  CHECK(t.degree == 6);
  CHECK_NOTHROW(validate_table(g, t));
  CHECK(t.act(0, "x") == 0);  // subgroup generators fix the subgroup coset
  CHECK_FALSE(is_torsion_free(g, t));
}

TEST_CASE("coset enumeration respects its budget") {
  FuchsianPresentation g = triangle_group(2, 3, 7);
  CHECK_THROWS_AS(todd_coxeter(g, {"x"}, 50), ResourceError);
}

TEST_CASE("coset representatives reach their cosets") {
  FuchsianPresentation g = von_dyck_233();
  CosetTable t = todd_coxeter(g, {"x"}, 1000);
  std::vector<std::string> reps = coset_representatives(g, t);
  CHECK(reps[0] == "");
  for (int c = 0; c < t.degree; ++c) CHECK(t.act_word(0, reps[c]) == c);
}

TEST_CASE("torsion detection on the whole group table") {
  FuchsianPresentation g = triangle_group(2, 3, 7);
  CosetTable whole;
  whole.degree = 1;
  whole.perm = {{"x", {0}}, {"y", {0}}, {"z", {0}}};
  CHECK_FALSE(is_torsion_free(g, whole));
}

TEST_CASE("subgroup search for (2,3,7)") {
  FuchsianPresentation g = triangle_group(2, 3, 7);
  auto [table, cert] = subgroup_avoiding_short(g, 0.1);
  CHECK(table.degree == 168);
  CHECK(cert.excluded.empty());
  CHECK(is_torsion_free(g, table));
  CHECK_NOTHROW(validate_table(g, table));
  CHECK(riemann_hurwitz_genus({0, {2, 3, 7}}, table.degree) == 3);

  // Regular action: every generator's cycles match its image order.
  for (auto [name, order] : {std::pair{"x", 2}, {"y", 3}, {"z", 7}}) {
    const std::vector<int>& p = table.perm.at(name);
    std::vector<bool> seen(table.degree, false);
    for (int s = 0; s < table.degree; ++s) {
      if (seen[s]) continue;
      int len = 0, c = s;
      do {
        seen[c] = true;
        c = p[c];
        ++len;
      } while (c != s);
      CHECK(len == order);
    }
  }
}

TEST_CASE("subgroup search certifies excluded short elements") {
  FuchsianPresentation g = triangle_group(2, 3, 7);
  double min_len = classify_and_length(evaluate_word(g, "xzxz^-1")).length;
  auto [table, cert] = subgroup_avoiding_short(g, min_len + 0.01);
  CHECK_FALSE(cert.excluded.empty());
  CHECK(is_torsion_free(g, table));
  for (const ShortElement& s : cert.excluded) {
    CHECK(s.length < min_len + 0.01);
    CHECK(table.act_word(0, s.word) != 0);  // genuinely excluded
  }
}

TEST_CASE("subgroup search for (2,4,5)") {
  FuchsianPresentation g = triangle_group(2, 4, 5);
  auto [table, cert] = subgroup_avoiding_short(g, 0.1);
  CHECK(table.degree == 120);
  CHECK(is_torsion_free(g, table));
  CHECK(riemann_hurwitz_genus({0, {2, 4, 5}}, table.degree) == 4);
}

TEST_CASE("subgroup search with a degenerate budget") {
  FuchsianPresentation g = triangle_group(2, 3, 7);
  SubgroupSearchBudget budget;
  budget.max_cosets = 1;
  CHECK_THROWS_AS(subgroup_avoiding_short(g, 0.1, budget), ResourceError);
}

TEST_CASE("riemann-hurwitz genus") {
  CHECK(riemann_hurwitz_genus({0, {2, 3, 7}}, 168) == 3);
  CHECK(riemann_hurwitz_genus({0, {2, 3, 7}}, 84) == 2);
  CHECK_THROWS_AS(riemann_hurwitz_genus({0, {2, 3, 7}}, 100), ArgumentError);
}

TEST_CASE("colour budgets") {
  ColourBudget b1 = colour_budget(1);
  CHECK(b1.ringel_youngs == 7);
  CHECK(b1.thomassen_threshold == 1048576);
  ColourBudget b3 = colour_budget(3);
  CHECK(b3.ringel_youngs == 9);
  CHECK(b3.thomassen_threshold == BigInt(1) << 48);
  ColourBudget b2 = colour_budget(2);
  CHECK(b2.ringel_youngs == 8);
  CHECK(b2.thomassen_threshold == BigInt(1) << 34);
  CHECK_THROWS_AS(colour_budget(0), ArgumentError);
}

TEST_CASE("intersection of coset tables") {
  FuchsianPresentation g = von_dyck_233();
  CosetTable tx = todd_coxeter(g, {"x"}, 1000);
  CosetTable ty = todd_coxeter(g, {"y"}, 1000);
  CosetTable meet = intersect_tables(g, tx, ty);
  CHECK(meet.degree == 12);  // <x> and <y> intersect trivially in A4
  CHECK_NOTHROW(validate_table(g, meet));
}
