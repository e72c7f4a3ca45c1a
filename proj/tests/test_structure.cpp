#include "sea/error.hpp"
#include "sea/structure.hpp"

#include <doctest.h>

using namespace sea;

namespace {

Elem r(long p, long q = 1) { return Elem::rat(Rational(p, q)); }
Elem L(long p, long q) { return Elem::branch(0, r(p, q)); }
Elem R(long p, long q) { return Elem::branch(1, r(p, q)); }

ModelExpr H() { return ModelExpr::horizontal_sum({ModelExpr::interval(), ModelExpr::interval()}); }

ModelExpr meet_model(std::size_t atoms) {
  const auto t = tables::boolean_algebra(atoms);
  const std::size_t n = t.size();
  std::vector<Index> cells(n * n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) cells[a * n + b] = a & b;
  }
  return ModelExpr::finite(t, ProductTable(n, cells));
}

// Chain 0 < 1 < 2 < 3 where 1 is the unit and every product of non-units is 0.
// It has no halves and 1 . 1 = 0, so it is neither Boolean nor a-convex.
ModelExpr null_chain() {
  std::vector<Index> cells(16);
  for (Index a = 0; a < 4; ++a) {
    for (Index b = 0; b < 4; ++b) cells[a * 4 + b] = a == 3 ? b : (b == 3 ? a : 0);
  }
  return ModelExpr::finite(tables::chain(3), ProductTable(4, cells));
}

}  // namespace

TEST_CASE("scalar sample") {
  const auto s = scalar_sample();
  CHECK(s.size() == 13);
  CHECK(s[0] == 0);
  CHECK(s[1] == 1);
  CHECK(s[2] == Rational(1, 2));
}

TEST_CASE("the interval action is convex") {
  const auto I = ModelExpr::interval();
  const auto act = action_from_additive_map(I, unit_map(I), "lambda");
  CHECK(act.act(Rational(1, 2), r(1, 3)) == r(1, 6));
  CHECK_THROWS_AS(act.act(Rational(3, 2), r(1, 3)), InputError);
  const ActionReport rep = check_aconvex_action(act);
  CHECK(rep.aconvex());
  CHECK(rep.convex);
  CHECK_FALSE(rep.convexity_witness.has_value());
}

TEST_CASE("both actions on the horizontal sum are a-convex but not convex") {
  const auto h = H();
  for (std::size_t branch : {0u, 1u}) {
    CAPTURE(branch);
    const auto act = action_from_additive_map(h, unit_map(h, branch), "branch action");
    CHECK(act.act(Rational(1, 3), Elem::one()) == Elem::branch(branch, r(1, 3)));
    const ActionReport rep = check_aconvex_action(act);
    CHECK(rep.aconvex());
    CHECK_FALSE(rep.convex);
    REQUIRE(rep.convexity_witness.has_value());
    // lambda . (h + h) = lambda . 1 lies on the action's branch; lambda . h + lambda . h lies on h's branch.
    const auto& w = rep.convexity_witness->witness;
    REQUIRE(w.size() == 3);
    const Rational lambda = w[0].as<Rat>().value;
    const std::size_t other = 1 - branch;
    CHECK(w[1] == Elem::branch(other, r(1, 2)));
    CHECK(w[2] == Elem::branch(other, r(1, 2)));
    CHECK(lambda > 0);
    CHECK(lambda < 1);
    CHECK(*rep.witness_lhs == Elem::branch(branch, Elem::rat(lambda)));
    CHECK(*rep.witness_rhs == Elem::branch(other, Elem::rat(lambda)));
  }
}

TEST_CASE("maps that are not additive or not unital are rejected") {
  const auto I = ModelExpr::interval();
  CHECK_THROWS_AS(action_from_additive_map(I, [](const Rational& l) { return Elem::rat(l * l); }, "square"), InputError);
  CHECK_THROWS_AS(action_from_additive_map(I, [](const Rational& l) { return Elem::rat(l / 2); }, "half"), InputError);
  CHECK_THROWS_AS(action_from_additive_map(ModelExpr::matrix_interval(),
                                           [](const Rational& l) { return Elem::mat(Mat2{l, 0, 0, 0}); }, "corner"),
                  InputError);
}

TEST_CASE("matrix interval scalar action") {
  const auto M = ModelExpr::matrix_interval();
  const auto act = action_from_additive_map(M, unit_map(M), "lambda id");
  const ActionReport rep = check_aconvex_action(act);
  CHECK(rep.aconvex());
  CHECK(rep.convex);
}

TEST_CASE("classify_convexity") {
  CHECK(classify_convexity(ModelExpr::interval()).kind == ConvexityClass::Convex);
  CHECK(classify_convexity(ModelExpr::matrix_interval()).kind == ConvexityClass::Convex);
  CHECK(classify_convexity(ModelExpr::boolean(3)).kind == ConvexityClass::Boolean);
  CHECK(classify_convexity(meet_model(2)).kind == ConvexityClass::Boolean);
  CHECK(classify_convexity(ModelExpr::direct_sum({ModelExpr::interval(), ModelExpr::interval()})).kind ==
        ConvexityClass::Convex);

  const ConvexityVerdict vh = classify_convexity(H());
  CHECK(vh.kind == ConvexityClass::PurelyAConvex);
  CHECK(vh.halves == std::vector<Elem>{L(1, 2), R(1, 2)});
  REQUIRE(vh.center.has_value());
  CHECK(vh.center->members == std::vector<Elem>{Elem::zero(), Elem::one()});
  CHECK_FALSE(vh.contradiction);

  const auto mixed = ModelExpr::direct_sum({ModelExpr::interval(), H()});
  const ConvexityVerdict vm = classify_convexity(mixed);
  CHECK(vm.kind == ConvexityClass::AConvexMixed);
  CHECK_FALSE(vm.contradiction);

  CHECK(classify_convexity(null_chain()).kind == ConvexityClass::NotAConvex);
  CHECK_THROWS_AS(classify_convexity(ModelExpr::finite(tables::chain(2))), Unsupported);
}

TEST_CASE("to_string of convexity classes") {
  CHECK(to_string(ConvexityClass::PurelyAConvex) == "purely a-convex");
  CHECK(to_string(ConvexityClass::Convex) == "convex");
}

TEST_CASE("decomposition of the three-block direct sum") {
  const auto I = ModelExpr::interval();
  const auto m = ModelExpr::direct_sum({ModelExpr::boolean(3), I, H()});
  const DecompositionReport d = decompose(m);
  CHECK(d.ok());
  CHECK(d.boolean_block == ModelExpr::boolean(3));
  CHECK(d.convex_block == I);
  CHECK(d.aconvex_block == H());
  CHECK(d.p_bool == Elem::tuple({Elem::bits(7), r(0), Elem::zero()}));
  CHECK(d.p_conv == Elem::tuple({Elem::bits(0), r(1), Elem::zero()}));
  CHECK(d.p_ac == Elem::tuple({Elem::bits(0), r(0), Elem::one()}));
  // Independent check: the witnesses sum to 1 and are pairwise orthogonal.
  const auto s = partial_sum(m, d.p_bool, d.p_conv);
  REQUIRE(s.has_value());
  CHECK(partial_sum(m, *s, d.p_ac) == one(m));
  CHECK(seq_product(m, d.p_bool, d.p_ac) == zero(m));
  REQUIRE(d.leaves.size() == 3);
  CHECK(d.leaves[2].second == ConvexityClass::PurelyAConvex);
}

TEST_CASE("decomposition regroups leaves from scattered positions") {
  const auto I = ModelExpr::interval();
  const auto m = ModelExpr::direct_sum({H(), ModelExpr::boolean(1), ModelExpr::direct_sum({I, ModelExpr::boolean(2)}), I});
  const DecompositionReport d = decompose(m);
  CHECK(d.ok());
  CHECK(d.boolean_block == ModelExpr::direct_sum({ModelExpr::boolean(1), ModelExpr::boolean(2)}));
  CHECK(d.convex_block == ModelExpr::direct_sum({I, I}));
  CHECK(d.aconvex_block == H());
}

TEST_CASE("decomposition of finite and corner models") {
  const DecompositionReport d = decompose(meet_model(2));
  CHECK(d.ok());
  CHECK(d.boolean_block == meet_model(2));
  CHECK(d.convex_block == ModelExpr::trivial());
  REQUIRE(d.boolean_verdict.has_value());
  CHECK(d.boolean_verdict->boolean());

  const auto c = ModelExpr::corner(ModelExpr::direct_sum({ModelExpr::interval(), ModelExpr::boolean(2)}),
                                   Elem::tuple({r(1), Elem::bits(1)}));
  const DecompositionReport dc = decompose(c);
  CHECK(dc.ok());
  CHECK(dc.convex_block == ModelExpr::interval());
}

TEST_CASE("decomposition refuses leaves outside the three classes") {
  CHECK_THROWS_AS(decompose(null_chain()), Unsupported);
}

TEST_CASE("commuting halves") {
  for (const auto& m : {ModelExpr::interval(), ModelExpr::boolean(2), ModelExpr::matrix_interval(),
                        ModelExpr::direct_sum({ModelExpr::interval(), ModelExpr::interval()}),
                        ModelExpr::direct_sum({ModelExpr::boolean(1), ModelExpr::interval()})}) {
    CAPTURE(to_string(m));
    const auto rep = check_commuting_halves(m);
    CHECK(rep.holds);
    CHECK(rep.agrees_with_classification);
  }
  const auto rep = check_commuting_halves(H());
  CHECK_FALSE(rep.holds);
  CHECK(rep.agrees_with_classification);
  REQUIRE(rep.witness.size() == 3);
  const auto h = H();
  const Elem& a = rep.witness[0];
  const Elem& b = rep.witness[1];
  const Elem& c = rep.witness[2];
  CHECK(commutes(h, a, b));
  CHECK(partial_sum(h, c, c) == b);
  CHECK_FALSE(commutes(h, a, c));
}

TEST_CASE("associativity analysis") {
  const auto rh = analyze_associativity(H());
  CHECK(rh.associative);
  CHECK_FALSE(rh.commutative);
  CHECK(rh.idempotents_central);
  CHECK(rh.factor_classification == "horizontal sum of 2 intervals");

  const auto rm = analyze_associativity(ModelExpr::matrix_interval());
  CHECK(rm.associative);
  CHECK_FALSE(rm.commutative);
  CHECK(rm.idempotents_central);
  CHECK(rm.factor_classification.empty());

  const auto rb = analyze_associativity(ModelExpr::boolean(3));
  CHECK(rb.associative);
  CHECK(rb.commutative);
  CHECK(rb.exhaustive);
  CHECK(rb.idempotents.size() == 8);

  const auto h3 = ModelExpr::horizontal_sum({ModelExpr::interval(), ModelExpr::interval(), ModelExpr::interval()});
  CHECK(analyze_associativity(h3).factor_classification == "horizontal sum of 3 intervals");
}

TEST_CASE("bicommutant representation") {
  const auto b3 = bicommutant_representation(ModelExpr::boolean(3), Elem::bits(1));
  CHECK(b3.interval_part == ModelExpr::trivial());
  CHECK(b3.boolean_members == std::vector<Elem>{Elem::bits(0), Elem::bits(1), Elem::bits(6), Elem::bits(7)});
  CHECK(b3.boolean_part == ModelExpr::boolean(2));

  const auto i = bicommutant_representation(ModelExpr::interval(), r(1, 3));
  CHECK(i.interval_part == ModelExpr::interval());
  CHECK(i.boolean_part == ModelExpr::trivial());

  const auto ds = ModelExpr::direct_sum({ModelExpr::boolean(1), ModelExpr::interval()});
  const auto d = bicommutant_representation(ds, Elem::tuple({Elem::bits(1), r(1, 2)}));
  CHECK(d.interval_part == ModelExpr::interval());
  CHECK(d.boolean_part == ModelExpr::boolean(1));
  CHECK(d.boolean_members.size() == 2);
  CHECK(is_idempotent(ds, d.splitting_idempotent));

  const auto h = bicommutant_representation(H(), R(1, 3));
  CHECK(h.interval_part == ModelExpr::interval());

  CHECK_THROWS_AS(bicommutant_representation(ModelExpr::matrix_interval(),
                                             Elem::mat(Mat2{Rational(1, 2), Rational(-1, 2), 0, 1})),
                  Unsupported);
  CHECK_THROWS_AS(bicommutant_representation(ModelExpr::interval(), r(3, 2)), InputError);
}
