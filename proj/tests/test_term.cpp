#include <doctest.h>

#include "mcn/error.hpp"
#include "mcn/term.hpp"
#include "oracles.hpp"

using namespace mcn;

namespace {

Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

const Term x = Term::var(1);
const Term y = Term::var(2);

}  // namespace

TEST_SUITE("term") {

TEST_CASE("evaluation of core connectives") {
  CHECK(eval_term(Term::neg(Term::zero()), {q(1, 3)}) == 1);
  CHECK(eval_term(Term::oplus(x, x), {q(2, 3)}) == 1);
  CHECK(eval_term(Term::oplus(x, x), {q(1, 3)}) == q(2, 3));
  CHECK(eval_term(ominus(x, y), {q(9, 10), q(1, 2)}) == q(2, 5));
  CHECK(eval_term(Term::one(), {}) == 1);
}

TEST_CASE("evaluation rejects bad points") {
  CHECK_THROWS_AS(eval_term(y, {q(1, 2)}), DomainError);
  CHECK_THROWS_AS(eval_term(x, {q(3, 2)}), DomainError);
  CHECK_THROWS_AS(eval_term(x, {q(-1, 2)}), DomainError);
  CHECK_THROWS_AS(Term::var(0), InputError);
}

TEST_CASE("derived connectives") {
  Term nx = Term::neg(x);
  CHECK(eval_term(vee(x, nx), {q(1, 3)}) == q(2, 3));
  CHECK(eval_term(dist(x, y), {q(1, 3), q(1, 2)}) == q(1, 6));
  for (const auto& v : oracle::unit_rationals(6)) CHECK(eval_term(ominus(x, x), {v}) == 0);

  Term args[] = {x, y};
  CHECK(expand_derived(Connective::Wedge, args) == wedge(x, y));
  CHECK(expand_derived(Connective::Dist, args) == dist(x, y));
  Term one_arg[] = {x};
  CHECK_THROWS_AS(expand_derived(Connective::Vee, one_arg), InputError);
}

TEST_CASE("derived connectives on a grid") {
  for (const auto& p : oracle::grid(2, 6)) {
    const Rational& a = p[0];
    const Rational& b = p[1];
    CHECK(eval_term(otimes(x, y), p) == std::max(Rational(0), Rational(a + b - 1)));
    CHECK(eval_term(ominus(x, y), p) == std::max(Rational(0), Rational(a - b)));
    CHECK(eval_term(wedge(x, y), p) == std::min(a, b));
    CHECK(eval_term(vee(x, y), p) == std::max(a, b));
    CHECK(eval_term(dist(x, y), p) == oracle::abs(a - b));
  }
}

TEST_CASE("complement cancels double negation") {
  CHECK(complement(Term::neg(x)) == x);
  CHECK(complement(x) == Term::neg(x));
  CHECK(print_term(ominus(x, Term::neg(y))) == print_term(Term::neg(Term::oplus(Term::neg(x), Term::neg(y)))));
}

TEST_CASE("iterate_oplus") {
  CHECK(iterate_oplus(1, x) == x);
  CHECK(eval_term(iterate_oplus(3, x), {q(1, 4)}) == q(3, 4));
  CHECK(eval_term(iterate_oplus(5, x), {q(1, 4)}) == 1);
  CHECK(print_term(iterate_oplus(3, x)) == "(oplus (oplus (var 1) (var 1)) (var 1))");
  CHECK_THROWS_AS(iterate_oplus(0, x), InputError);

  oracle::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    Term t = rng.term(2, 3);
    for (std::uint64_t m = 1; m <= 8; ++m) {
      Point p = rng.point(2, 12);
      Rational expect = std::min(Rational(1), Rational(static_cast<long>(m) * eval_term(t, p)));
      CHECK(eval_term(iterate_oplus(m, t), p) == expect);
    }
  }
}

TEST_CASE("parse and print") {
  const char* text = "(oplus (var 1) (neg (var 2)))";
  Term t = parse_term(text);
  CHECK(print_term(t) == text);
  CHECK(parse_term(print_term(t)) == t);

  CHECK(parse_term("(wedge (var 1) (var 2))") == wedge(x, y));
  CHECK(parse_term("  ( neg\n\t0 )  ") == Term::neg(Term::zero()));
  CHECK(parse_term("1").is_one());
  CHECK(print_term(parse_term("(ominus (var 3) (var 1))")) == print_term(ominus(Term::var(3), x)));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_term("(var 0)"), ParseError);
  CHECK_THROWS_AS(parse_term("(oplus (var 1))"), ParseError);
  CHECK_THROWS_AS(parse_term("(var 1) 0"), ParseError);
  CHECK_THROWS_AS(parse_term("(frob 0 1)"), ParseError);
  CHECK_THROWS_AS(parse_term(""), ParseError);
  try {
    parse_term("(neg (var x))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 10);
  }
}

TEST_CASE("round trip on random terms") {
  oracle::Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    Term t = rng.term(3, 5);
    std::string s = print_term(t);
    CHECK(parse_term(s) == t);
    CHECK(print_term(parse_term(s)) == s);
  }
}

TEST_CASE("tree statistics") {
  Term t = Term::oplus(Term::oplus(x, y), Term::neg(x));
  CHECK(t.tree_size() == 6);
  CHECK(t.oplus_depth() == 2);
  CHECK(t.max_var() == 2);
  Term shared = Term::oplus(t, t);
  CHECK(shared.tree_size() == 13);
  CHECK(dag_size(shared) == dag_size(t) + 1);
}

TEST_CASE("deep terms do not overflow the stack") {
  Term t = x;
  for (int i = 0; i < 200000; ++i) t = Term::oplus(t, Term::zero());
  CHECK(eval_term(t, {q(1, 7)}) == q(1, 7));
  std::string s = print_term(t);
  CHECK(parse_term(s) == t);
}

TEST_CASE("values stay in the unit interval") {
  oracle::Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    Term t = rng.term(2, 5);
    Rational v = eval_term(t, rng.point(2, 20));
    CHECK(v >= 0);
    CHECK(v <= 1);
  }
}

TEST_CASE("residuation exhaustively at denominator 6") {
  auto vals = oracle::unit_rationals(6);
  Term a = Term::var(1), b = Term::var(2), c = Term::var(3);
  Term lhs = Term::oplus(b, c);
  Term diff = ominus(a, b);
  for (const auto& va : vals)
    for (const auto& vb : vals)
      for (const auto& vc : vals) {
        Point p{va, vb, vc};
        if (eval_term(a, p) <= eval_term(lhs, p)) REQUIRE(eval_term(diff, p) <= vc);
      }
}

TEST_CASE("identities at denominator 6") {
  auto vals = oracle::unit_rationals(6);
  Term glue = Term::oplus(ominus(x, y), wedge(x, y));
  Term join = Term::oplus(x, ominus(y, x));
  for (const auto& a : vals)
    for (const auto& b : vals) {
      Point p{a, b};
      REQUIRE(eval_term(glue, p) == a);
      REQUIRE(eval_term(join, p) == std::max(a, b));
    }
}

}  // TEST_SUITE
