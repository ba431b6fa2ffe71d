#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ratmeta/laurent.hpp"

#include <random>

using namespace ratmeta;

namespace {

LaurentPoly rand_poly(std::mt19937& rng, size_t n, int max_terms = 4, int64_t espan = 3,
                      int64_t cspan = 5, bool allow_zero = true) {
  std::uniform_int_distribution<int> tcount(allow_zero ? 0 : 1, max_terms);
  std::uniform_int_distribution<int64_t> e(-espan, espan), c(-cspan, cspan);
  LaurentPoly p(n);
  int m = tcount(rng);
  for (int i = 0; i < m; ++i) {
    ExpVec ev(n);
    for (size_t j = 0; j < n; ++j) ev[j] = e(rng);
    p = p + LaurentPoly::monomial(n, ev, Int(c(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("ring arithmetic basics") {
  auto x = parse_poly("X1", 1);
  auto xinv = parse_poly("X1^-1", 1);
  CHECK(x * xinv == parse_poly("1", 1));
  CHECK(parse_poly("X1+1", 1) * parse_poly("X1-1", 1) == parse_poly("X1^2-1", 1));
  auto f = parse_poly("3*X1^2 - X1 + 7", 1);
  CHECK((f - f).is_zero());
  CHECK((f + (-f)).is_zero());
  CHECK_THROWS_AS(parse_poly("X1", 1) + parse_poly("X1", 2), std::invalid_argument);
}

TEST_CASE("grammar round trip on the documented examples") {
  for (const char* s : {"3*X1^2*X2^-1 - X1", "0", "1", "-X1 + 2", "X1*X2"}) {
    auto p = parse_poly(s, 2);
    CHECK(parse_poly(format_poly(p), 2) == p);
  }
  CHECK(parse_poly("0", 1).is_zero());
  CHECK_THROWS_AS(parse_poly("X3", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("X1 +", 1), std::invalid_argument);
}

TEST_CASE("parse/format round trip randomized") {
  std::mt19937 rng(321);
  std::uniform_int_distribution<int> vars(0, 3);
  for (int iter = 0; iter < 520; ++iter) {
    size_t n = vars(rng);
    auto p = rand_poly(rng, n);
    CHECK(parse_poly(format_poly(p), n) == p);
  }
}

TEST_CASE("weighted degree and initial polynomial") {
  auto f = parse_poly("X1 + X1^2", 1);
  auto d = deg_and_initial(f, make_direction({Int(-1)}));
  CHECK_FALSE(d.neg_infinity);
  CHECK(d.value == Rat(-1));
  CHECK(d.initial == parse_poly("X1", 1));

  auto z = deg_and_initial(LaurentPoly::zero(1), make_direction({Int(1)}));
  CHECK(z.neg_infinity);
  CHECK(z.initial.is_zero());

  auto g = parse_poly("2*X1^2 + 3*X1^2*X2^-1", 2);
  auto dg = deg_and_initial(g, make_direction({Int(1), Int(0)}));
  CHECK(dg.value == Rat(2));
  CHECK(dg.initial == g);
}

TEST_CASE("deg and initial are multiplicative") {
  std::mt19937 rng(555);
  std::uniform_int_distribution<int> vars(1, 2), coord(-3, 3);
  int done = 0;
  while (done < 210) {
    size_t n = vars(rng);
    auto f = rand_poly(rng, n), g = rand_poly(rng, n);
    if (f.is_zero() || g.is_zero()) continue;
    std::vector<Int> vv(n);
    bool nz = false;
    for (size_t j = 0; j < n; ++j) {
      vv[j] = coord(rng);
      nz |= (vv[j] != 0);
    }
    if (!nz) continue;
    auto v = make_direction(vv);
    auto df = deg_and_initial(f, v), dg = deg_and_initial(g, v), dfg = deg_and_initial(f * g, v);
    CHECK(dfg.value == df.value + dg.value);
    CHECK(dfg.initial == df.initial * dg.initial);
    ++done;
  }
}

TEST_CASE("evaluation at positive points") {
  CHECK(parse_poly("X1*X1^-1", 1).evaluate({Rat(7, 3)}) == 1);
  CHECK(parse_poly("X1+1", 1).evaluate({Rat(1, 2)}) == Rat(3, 2));
  CHECK(LaurentPoly::zero(2).evaluate({Rat(1), Rat(5)}) == 0);
  CHECK_THROWS_AS(parse_poly("X1", 1).evaluate({Rat(0)}), std::invalid_argument);
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> vars(1, 2), num(1, 5), den(1, 5);
  for (int iter = 0; iter < 210; ++iter) {
    size_t n = vars(rng);
    auto f = rand_poly(rng, n), g = rand_poly(rng, n);
    QVec r(n);
    for (size_t j = 0; j < n; ++j) r[j] = Rat(num(rng), den(rng));
    CHECK((f * g).evaluate(r) == f.evaluate(r) * g.evaluate(r));
    CHECK((f + g).evaluate(r) == f.evaluate(r) + g.evaluate(r));
  }
}

TEST_CASE("newton polytopes") {
  auto mono = newton_polytope(parse_poly("5*X1^2*X2^-1", 2));
  CHECK(mono.vertices.size() == 1);

  auto seg = newton_polytope(parse_poly("1 + X1", 1));
  REQUIRE(seg.vertices.size() == 2);
  CHECK(seg.vertices[0][0] == 0);
  CHECK(seg.vertices[1][0] == 1);

  auto tri = newton_polytope(parse_poly("1 + X1 + X2", 2));
  CHECK(tri.vertices.size() == 3);

  CHECK_THROWS_AS(newton_polytope(LaurentPoly::zero(1)), std::invalid_argument);
}
