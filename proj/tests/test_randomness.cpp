#include <catch2/catch_amalgamated.hpp>

#include <semipred/default_registry.hpp>
#include <semipred/hellinger.hpp>
#include <semipred/randomness.hpp>

using namespace semipred;

TEST_CASE("deficiency trace along a mixture-dominated sequence") {
    ModelRegistry reg = default_registry();
    StagedSemimeasure mix = mixture(reg, WeightKind::CodeLength);
    Semimeasure mu = family_bernoulli(Rat(2, 3));
    Str omega = Str::parse("1101101011");
    DeficiencyTrace trace = deficiency_trace(mix, mu, omega, 10, 64);
    REQUIRE(trace.log_ratio.size() == 10);
    // running sup majorizes the series and is monotone
    for (std::size_t i = 0; i < 10; ++i) {
        REQUIRE(trace.running_sup[i] >= trace.log_ratio[i]);
        if (i) REQUIRE(trace.running_sup[i] >= trace.running_sup[i - 1]);
    }
    // dominance of B(2/3) at weight 2^-3 caps the deficiency at 3 bits
    REQUIRE(trace.sup() <= Real(3) + tolerance());
    REQUIRE(trace.random_at(Real(3)));
}

TEST_CASE("deficiency trace rejects off-support sequences") {
    ModelRegistry reg = default_registry();
    StagedSemimeasure mix = mixture(reg, WeightKind::CodeLength);
    Semimeasure d = family_deterministic([](std::size_t) { return uint8_t{0}; });
    REQUIRE_THROWS_AS(deficiency_trace(mix, d, Str::parse("01"), 2, 8),
                      ZeroConditioning);
}

TEST_CASE("semimeasures embed as supermartingales") {
    for (const Semimeasure& nu :
         {family_uniform(), family_bernoulli(Rat(1, 3)), family_poly3(),
          scale(family_uniform(), Rat(1, 2))}) {
        Supermartingale m = semimeasure_to_supermartingale(nu);
        REQUIRE(is_supermartingale(m, 6).ok);
    }
    Supermartingale lam = semimeasure_to_supermartingale(family_uniform());
    REQUIRE(lam(Str::parse("0110")) == 1);
}

TEST_CASE("supermartingale violations come with a witness") {
    Supermartingale bad{[](const Str& x) {
        return x.length() == 1 ? Rat(2) : Rat(1);  // children outgrow the root
    }};
    SupermartingaleReport rep = is_supermartingale(bad, 3);
    REQUIRE_FALSE(rep.ok);
    REQUIRE(rep.witness.has_value());
    REQUIRE(rep.witness->empty());
}

namespace {

// Truncated per-step Hellinger sums between the default dominated pair,
// rounded down to exact dyadic rationals so the probability layer stays
// exact; rounding down preserves monotonicity in n.
Rat truncated_hellinger_sum(const Semimeasure& mu, const Semimeasure& nu,
                            unsigned n, const Str& x) {
    Rat sum = 0;
    for (unsigned t = 1; t <= n; ++t) {
        Str prefix = x.prefix(t - 1);
        Real h = hellinger_distance(to_pred_vec(predictive(nu, prefix)),
                                    to_pred_vec(predictive(mu, prefix)));
        Real scaled = boost::multiprecision::floor(boost::multiprecision::ldexp(h, 40));
        sum += Rat(scaled.convert_to<long long>()) / pow2(40);
    }
    return sum;
}

}  // namespace

TEST_CASE("expected-to-individual bound construction") {
    Semimeasure mu = family_bernoulli(Rat(2, 3));
    Semimeasure b13 = family_bernoulli(Rat(1, 3));
    Semimeasure nu("mix", 2, [mu, b13](const Str& x) { return (mu(x) + b13(x)) / 2; });

    auto F = [&](unsigned n, const Str& x) {
        return truncated_hellinger_sum(mu, nu, n, x);
    };
    Rat eps(7, 10);  // upper bound on ln 2, the expected-sum cap
    auto schedule = [eps](unsigned n) { return eps + Rat(1, 10 * n); };
    Str omega = Str::parse("110110");
    IndividualBoundResult res =
        expected_to_individual(F, mu, eps, schedule, 7, omega, 6, Real(1));
    REQUIRE(res.all_semimeasures);
    REQUIRE(res.monotone_in_n);
    REQUIRE(res.bound_holds);
    REQUIRE(res.f_value >= 0);
    // the final-stage table is exposed as an evaluable semimeasure
    REQUIRE(verify_semimeasure(res.bar, 6).ok);
    REQUIRE(res.bar(Str::parse("1111111")) == 0);
}

TEST_CASE("expected-to-individual rejects an unattainable expectation cap") {
    Semimeasure mu = family_bernoulli(Rat(2, 3));
    auto F = [](unsigned, const Str&) { return Rat(1); };
    auto schedule = [](unsigned) { return Rat(1, 100); };
    REQUIRE_THROWS_AS(expected_to_individual(F, mu, Rat(1, 100), schedule, 1,
                                             Str::parse("11"), 2, Real(0)),
                      ExpectationExceeded);
}
