#include "sea/error.hpp"
#include "sea/model.hpp"

#include <doctest.h>

#include <set>

using namespace sea;

namespace {

Elem r(long p, long q = 1) { return Elem::rat(Rational(p, q)); }
Elem m(long a, long b, long c, long d, long den = 1) {
  return Elem::mat(Mat2{Rational(a, den), Rational(b, den), Rational(c, den), Rational(d, den)});
}

ModelExpr H() { return ModelExpr::horizontal_sum({ModelExpr::interval(), ModelExpr::interval()}); }

std::vector<ModelExpr> parametric_models() {
  const auto I = ModelExpr::interval();
  return {I,
          ModelExpr::matrix_interval(),
          H(),
          ModelExpr::direct_sum({ModelExpr::boolean(2), I}),
          ModelExpr::direct_sum({ModelExpr::matrix_interval(), H()}),
          ModelExpr::corner(ModelExpr::direct_sum({I, ModelExpr::boolean(2)}), Elem::tuple({r(1), Elem::bits(1)}))};
}

std::vector<ModelExpr> finite_models() {
  return {ModelExpr::boolean(1),
          ModelExpr::boolean(3),
          ModelExpr::finite(tables::mo2()),
          ModelExpr::finite(tables::chain(3)),
          ModelExpr::direct_sum({ModelExpr::boolean(1), ModelExpr::boolean(2)}),
          ModelExpr::corner(ModelExpr::boolean(3), Elem::bits(0b101))};
}

}  // namespace

TEST_CASE("interval sums agree with the closed form a + b <= 1") {
  const auto I = ModelExpr::interval();
  for (long p = 0; p <= 8; ++p) {
    for (long q = 0; q <= 8; ++q) {
      const auto s = partial_sum(I, r(p, 8), r(q, 8));
      CHECK(s.has_value() == (p + q <= 8));
      if (s) CHECK(*s == Elem::rat(Rational(p + q, 8)));
    }
  }
  CHECK(complement(I, r(1, 3)) == r(2, 3));
  CHECK(seq_product(I, r(1, 2), r(2, 3)) == r(1, 3));
  CHECK(leq(I, r(1, 3), r(1, 2)));
  CHECK_FALSE(leq(I, r(2, 3), r(1, 2)));
  CHECK(ominus(I, r(1, 2), r(1, 3)) == r(1, 6));
  CHECK_FALSE(ominus(I, r(1, 3), r(1, 2)).has_value());
  CHECK(multiple(I, r(1, 4), 4) == r(1));
  CHECK_FALSE(multiple(I, r(1, 3), 4).has_value());
  CHECK_FALSE(membership(I, r(3, 2)));
  CHECK_FALSE(membership(I, r(-1, 2)));
}

TEST_CASE("matrix interval membership is equal column sums strictly inside (0, 1), or 0, or id") {
  const auto M = ModelExpr::matrix_interval();
  CHECK(membership(M, m(0, 0, 0, 0)));
  CHECK(membership(M, m(1, 0, 0, 1)));
  CHECK(membership(M, m(1, -1, 0, 2, 2)));   // columns 1/2, 1/2
  CHECK(membership(M, m(3, 0, -1, 2, 4)));   // columns 1/2, 1/2
  CHECK_FALSE(membership(M, m(1, 0, 0, 0)));  // columns 1, 0
  CHECK_FALSE(membership(M, m(1, 1, 0, 0)));  // columns 1, 1 but not id
  CHECK_FALSE(membership(M, m(1, 1, 1, 1, 2)));
  CHECK(tau(m(1, -1, 0, 2, 2)) == Rational(1, 2));
  SUBCASE("sums exist when column sums stay within bounds") {
    const Elem a = m(1, 1, 0, 0, 4);  // tau 1/4
    const Elem b = m(0, 1, 2, 1, 4);  // tau 1/2
    const auto s = partial_sum(M, a, b);
    REQUIRE(s.has_value());
    CHECK(*s == m(1, 2, 2, 1, 4));
    CHECK_FALSE(partial_sum(M, b, m(2, 2, 1, 1, 4)).has_value());  // tau 3/4, total 5/4
  }
  SUBCASE("complement is id - a") {
    CHECK(complement(M, m(1, -1, 0, 2, 2)) == m(1, 1, 0, 0, 2));
  }
  SUBCASE("the sum of an element with its complement is id, not an inner value") {
    const Elem a = m(1, -1, 0, 2, 2);
    CHECK(partial_sum(M, a, complement(M, a)) == one(M));
  }
  SUBCASE("summing two members can leave the carrier") {
    // tau 1/2 each, total tau 1 but the sum is not id.
    CHECK_FALSE(partial_sum(M, m(1, 1, 0, 0, 2), m(0, 0, 1, 1, 2)).has_value());
  }
}

TEST_CASE("horizontal sum: sums only within one branch, 0 and 1 shared") {
  const auto h = H();
  const Elem l = Elem::branch(0, r(1, 4));
  const Elem rr = Elem::branch(1, r(1, 4));
  CHECK(partial_sum(h, l, l) == Elem::branch(0, r(1, 2)));
  CHECK_FALSE(partial_sum(h, l, rr).has_value());
  CHECK(partial_sum(h, Elem::branch(0, r(1, 2)), Elem::branch(0, r(1, 2))) == Elem::one());
  CHECK(partial_sum(h, Elem::zero(), rr) == rr);
  CHECK(complement(h, l) == Elem::branch(0, r(3, 4)));
  CHECK(complement(h, Elem::zero()) == Elem::one());
  SUBCASE("product keeps the left branch") {
    CHECK(seq_product(h, Elem::branch(1, r(1, 2)), Elem::branch(0, r(1, 2))) == Elem::branch(1, r(1, 4)));
    CHECK(seq_product(h, Elem::branch(0, r(1, 2)), Elem::one()) == Elem::branch(0, r(1, 2)));
    CHECK(seq_product(h, Elem::one(), rr) == rr);
    CHECK(seq_product(h, rr, Elem::zero()) == Elem::zero());
  }
  SUBCASE("canonical collapses inner 0 and 1") {
    CHECK(canonical(h, Elem::branch(1, r(0))) == Elem::zero());
    CHECK(canonical(h, Elem::branch(0, r(1))) == Elem::one());
    CHECK(canonical(h, l) == l);
  }
  CHECK(has_product(h));
  CHECK_FALSE(has_product(ModelExpr::horizontal_sum({ModelExpr::interval(), ModelExpr::finite(tables::chain(2))})));
}

TEST_CASE("canonical rewrites Zero/One tags per family") {
  CHECK(canonical(ModelExpr::interval(), Elem::one()) == r(1));
  CHECK(canonical(ModelExpr::boolean(3), Elem::one()) == Elem::bits(0b111));
  CHECK(canonical(ModelExpr::matrix_interval(), Elem::zero()) == m(0, 0, 0, 0));
  CHECK(canonical(ModelExpr::finite(tables::chain(3)), Elem::one()) == Elem::idx(3));
  const auto ds = ModelExpr::direct_sum({ModelExpr::interval(), ModelExpr::boolean(1)});
  CHECK(canonical(ds, Elem::one()) == Elem::tuple({r(1), Elem::bits(1)}));
  CHECK_THROWS_AS(canonical(ModelExpr::interval(), Elem::bits(1)), TypeError);
  CHECK_THROWS_AS(membership(ModelExpr::boolean(2), r(1, 2)), TypeError);
}

TEST_CASE("model construction validates family invariants") {
  CHECK_THROWS_AS(ModelExpr::boolean(0), InputError);
  CHECK_THROWS_AS(ModelExpr::boolean(63), InputError);
  CHECK_THROWS_AS(ModelExpr::horizontal_sum({ModelExpr::interval()}), InputError);
  CHECK_THROWS_AS(ModelExpr::horizontal_sum({ModelExpr::interval(), ModelExpr::boolean(1)}), InputError);
  CHECK_THROWS_AS(ModelExpr::direct_sum({}), InputError);
  CHECK_THROWS(ModelExpr::corner(ModelExpr::interval(), r(1, 2)));
  CHECK_THROWS(ModelExpr::corner(ModelExpr::finite(tables::boolean_algebra(2)), Elem::idx(1)));
  CHECK_THROWS_AS(ModelExpr::finite(tables::chain(2), ProductTable(2, {0, 0, 0, 1})), StructuralError);
  CHECK_THROWS_AS(ProductTable(2, {0, 0, 0}), StructuralError);
  CHECK_THROWS_AS(ProductTable(2, {0, 0, 0, 2}), StructuralError);
}

TEST_CASE("carrier sizes") {
  CHECK(carrier_size(ModelExpr::boolean(3)) == 8u);
  CHECK(carrier_size(ModelExpr::finite(tables::mo2())) == 6u);
  CHECK_FALSE(carrier_size(ModelExpr::interval()).has_value());
  CHECK(carrier_size(ModelExpr::direct_sum({ModelExpr::boolean(1), ModelExpr::boolean(2)})) == 8u);
  CHECK(carrier_size(ModelExpr::horizontal_sum({ModelExpr::finite(tables::chain(3)), ModelExpr::finite(tables::chain(2))})) ==
        5u);
  CHECK(carrier_size(ModelExpr::corner(ModelExpr::boolean(4), Elem::bits(0b1011))) == 8u);
  CHECK(carrier_size(ModelExpr::corner(ModelExpr::interval(), r(0))) == 1u);
  CHECK(carrier_size(ModelExpr::trivial()) == 1u);
}

TEST_CASE("enumerate lists each member once and matches carrier_size") {
  for (const auto& model : finite_models()) {
    CAPTURE(to_string(model));
    const auto all = enumerate(model, 256);
    CHECK(all.size() == carrier_size(model));
    CHECK(all.front() == zero(model));
    std::set<Elem, bool (*)(const Elem&, const Elem&)> seen(elem_less);
    for (const auto& e : all) {
      CHECK(membership(model, e));
      CHECK(seen.insert(e).second);
    }
  }
  CHECK_THROWS_AS(enumerate(ModelExpr::boolean(10), 256), BudgetError);
  CHECK_THROWS_AS(enumerate(ModelExpr::interval(), 256), Unsupported);
}

TEST_CASE("effect-algebra axioms hold on every family") {
  for (const auto& model : finite_models()) {
    CAPTURE(to_string(model));
    CHECK(check_model_ea_axioms(model, enumerate(model, 256), true).ok());
  }
  for (const auto& model : parametric_models()) {
    CAPTURE(to_string(model));
    const auto s = enumerate_or_sample(model, 24);
    CHECK_FALSE(s.exhaustive);
    const auto rep = check_model_ea_axioms(model, s.elems);
    CHECK(rep.ok());
    CHECK(rep.instances_checked() > 0);
  }
}

TEST_CASE("check_model_ea_axioms finds violations in a broken finite table") {
  FiniteEATable bad(3, 2, {{0, 0, 0}, {0, 1, 1}, {0, 2, 2}, {1, 2, 2}}, {2, 1, 0});
  const auto model = ModelExpr::finite(bad);
  CHECK_FALSE(check_model_ea_axioms(model, enumerate(model, 16), true).ok());
}

TEST_CASE("samples are deterministic, distinct members with the mandatory prefix") {
  for (const auto& model : parametric_models()) {
    CAPTURE(to_string(model));
    const auto a = enumerate_or_sample(model, 40, 7);
    const auto b = enumerate_or_sample(model, 40, 7);
    CHECK(a.elems == b.elems);
    CHECK(a.elems.size() == 40);
    CHECK(a.elems[0] == zero(model));
    CHECK(a.elems[1] == one(model));
    std::set<Elem, bool (*)(const Elem&, const Elem&)> seen(elem_less);
    for (const auto& e : a.elems) {
      CHECK(membership(model, e));
      CHECK(seen.insert(e).second);
    }
    const auto halves = closed_form_halves(model, one(model));
    REQUIRE(halves.has_value());
    for (const auto& h : *halves) CHECK(seen.count(h) == 1);
    const auto c = enumerate_or_sample(model, 40, 8);
    CHECK_FALSE(a.elems == c.elems);
  }
  CHECK_THROWS_AS(enumerate_or_sample(H(), 3), InputError);
}

TEST_CASE("large samples terminate") {
  const auto s = enumerate_or_sample(ModelExpr::interval(), 1000);
  CHECK(s.elems.size() == 1000);
}

TEST_CASE("closed-form halves") {
  CHECK(*closed_form_halves(ModelExpr::interval(), r(1)) == std::vector<Elem>{r(1, 2)});
  CHECK(closed_form_halves(H(), Elem::one())->size() == 2);
  CHECK(closed_form_halves(ModelExpr::boolean(2), Elem::bits(3))->empty());
  CHECK(*closed_form_halves(ModelExpr::boolean(2), Elem::bits(0)) == std::vector<Elem>{Elem::bits(0)});
  CHECK_FALSE(closed_form_halves(ModelExpr::finite(tables::chain(2)), Elem::idx(2)).has_value());
}

TEST_CASE("to_finite_carrier preserves the structure") {
  const auto ds = ModelExpr::direct_sum({ModelExpr::boolean(1), ModelExpr::boolean(1)});
  const FiniteCarrier c = to_finite_carrier(ds, 16);
  CHECK(c.table.size() == 4);
  CHECK(c.labels[0] == zero(ds));
  CHECK(c.labels[c.table.one()] == one(ds));
  CHECK(check_ea_axioms(c.table).ok());
  REQUIRE(c.product.has_value());
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) {
      CHECK(c.labels[(*c.product)(i, j)] == seq_product(ds, c.labels[i], c.labels[j]));
      const auto s = c.table.sum(i, j);
      const auto t = partial_sum(ds, c.labels[i], c.labels[j]);
      CHECK(s.has_value() == t.has_value());
      if (s) CHECK(c.labels[*s] == *t);
    }
  }
  CHECK_THROWS_AS(to_finite_carrier(ModelExpr::interval(), 16), Unsupported);
}

TEST_CASE("seq_product without an attached product is unsupported") {
  CHECK_THROWS_AS(seq_product(ModelExpr::finite(tables::chain(2)), Elem::idx(1), Elem::idx(1)), Unsupported);
}

TEST_CASE("string forms") {
  CHECK(to_string(H()) == "horizontal_sum[interval, interval]");
  CHECK(to_string(Elem::branch(1, r(3, 4))) == "3/4@1");
  CHECK(to_string(m(1, 0, 0, 1)) == "[[1,0],[0,1]]");
}
