#include <catch2/catch_amalgamated.hpp>

#include <semipred/default_registry.hpp>

using namespace semipred;

TEST_CASE("constant stages wrap a measure with zero gap") {
    StagedSemimeasure s = constant_stages(family_bernoulli(Rat(1, 3)));
    REQUIRE(s.at(1, Str::parse("0")) == Rat(2, 3));
    REQUIRE(s.at(99, Str::parse("0")) == Rat(2, 3));
    REQUIRE(s.limit_hint().has_value());
    REQUIRE(stage_gap(s, 1, 4) == 0);
}

TEST_CASE("stage gap requires a limit hint") {
    StagedSemimeasure bare("bare", 2, [](unsigned, const Str&) { return Rat(0); });
    REQUIRE_THROWS_AS(stage_gap(bare, 1, 2), NoLimitHint);
}

TEST_CASE("stage gap shrinks for a genuinely staged object") {
    Semimeasure lam = family_uniform();
    StagedSemimeasure s("creeping", 2, [lam](unsigned t, const Str& x) {
        // stage t reveals mass only on strings shorter than t
        return x.length() < t ? lam(x) : Rat(0);
    });
    s.with_limit(lam);
    REQUIRE(stage_gap(s, 1, 3) == Rat(1, 2));
    REQUIRE(stage_gap(s, 4, 3) == 0);
}

TEST_CASE("polynomial weights") {
    REQUIRE(polynomial_weight(1) == Rat(1, 2));
    REQUIRE(polynomial_weight(2) == Rat(1, 256));
    REQUIRE(polynomial_weight(3) == Rat(1, 729 * 8));
}

TEST_CASE("default registry shape and weights") {
    ModelRegistry reg = default_registry();
    REQUIRE(reg.frozen());
    REQUIRE(reg.size() == 7);
    REQUIRE(reg.total_weight(WeightKind::CodeLength) == Rat(11, 16));
    REQUIRE(reg.total_weight(WeightKind::Polynomial) <= 1);
    REQUIRE(reg.entry(1).is_measure);
    REQUIRE_FALSE(reg.entry(6).is_measure);
    REQUIRE_FALSE(reg.entry(7).is_measure);
    REQUIRE(reg.weight(WeightKind::CodeLength, 1) == Rat(1, 4));
    REQUIRE_THROWS_AS(reg.entry(8), std::out_of_range);
}

TEST_CASE("frozen registries reject further entries") {
    ModelRegistry reg = default_registry();
    REQUIRE_THROWS_AS(
        reg.add({"late", constant_stages(family_uniform()), 9, true, "uniform", ""}),
        std::logic_error);
}

TEST_CASE("mixture values are the weighted entry sums") {
    ModelRegistry reg;
    reg.add({"b13", constant_stages(family_bernoulli(Rat(1, 3))), 1, true, "bernoulli",
             "1/3"});
    reg.add({"b23", constant_stages(family_bernoulli(Rat(2, 3))), 1, true, "bernoulli",
             "2/3"});
    reg.freeze();
    StagedSemimeasure m = mixture(reg, WeightKind::CodeLength);
    Str x = Str::parse("1");
    REQUIRE(m.at(1, x) == Rat(1, 2) * Rat(1, 3) + Rat(1, 2) * Rat(2, 3));
    REQUIRE(m.limit_hint().has_value());
    REQUIRE((*m.limit_hint())(x) == Rat(1, 2));
}

TEST_CASE("overweight registries are rejected") {
    ModelRegistry reg;
    reg.add({"a", constant_stages(family_uniform()), 0, true, "uniform", ""});
    reg.add({"b", constant_stages(family_uniform()), 0, true, "uniform", ""});
    reg.freeze();
    REQUIRE_THROWS_AS(mixture(reg, WeightKind::CodeLength), WeightOverflow);
}

TEST_CASE("dominance constant of a single-entry mixture equals its weight") {
    ModelRegistry reg;
    reg.add({"lam", constant_stages(family_uniform()), 1, true, "uniform", ""});
    reg.freeze();
    StagedSemimeasure m = mixture(reg, WeightKind::CodeLength);
    REQUIRE(dominance_constant(m, family_uniform(), 5, 1) == Rat(1, 2));
}

TEST_CASE("default mixture dominates every entry by its weight") {
    ModelRegistry reg = default_registry();
    StagedSemimeasure m = mixture(reg, WeightKind::CodeLength);
    for (std::size_t i = 1; i <= reg.size(); ++i) {
        Rat c = dominance_constant(m, reg.entry(i).model.stage_view(64), 6, 64);
        REQUIRE(c >= reg.weight(WeightKind::CodeLength, i));
    }
}

TEST_CASE("dominance constant rejects an all-zero test function") {
    ModelRegistry reg;
    reg.add({"lam", constant_stages(family_uniform()), 1, true, "uniform", ""});
    reg.freeze();
    StagedSemimeasure m = mixture(reg, WeightKind::CodeLength);
    Semimeasure zero("zero", 2, [](const Str&) { return Rat(0); });
    REQUIRE_THROWS_AS(dominance_constant(m, zero, 3, 1), std::invalid_argument);
}
