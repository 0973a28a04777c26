#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include <semipred/hellinger.hpp>

using namespace semipred;

namespace {

// Random exact probability vector of size k; sub-probability when slack
// is positive.
std::vector<Rat> random_vector(std::mt19937_64& eng, std::size_t k, unsigned slack) {
    std::vector<unsigned> nums(k);
    unsigned total = slack;
    for (auto& n : nums) {
        n = static_cast<unsigned>(eng() % 100) + 1;
        total += n;
    }
    std::vector<Rat> out;
    for (unsigned n : nums) out.emplace_back(n, total);
    return out;
}

Real sqrt_affinity(const std::vector<Rat>& p, const std::vector<Rat>& q) {
    Real sum = 0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += sqrt(to_real(p[i] * q[i]));
    return sum;
}

// Exact measure on the depth-2 binary tree from random leaf weights.
Semimeasure random_tree_measure(std::mt19937_64& eng) {
    auto leaf_probs = random_vector(eng, 4, 0);
    std::map<std::string, Rat> table;
    table[""] = 1;
    table["0"] = leaf_probs[0] + leaf_probs[1];
    table["1"] = leaf_probs[2] + leaf_probs[3];
    table["00"] = leaf_probs[0];
    table["01"] = leaf_probs[1];
    table["10"] = leaf_probs[2];
    table["11"] = leaf_probs[3];
    return Semimeasure("random-tree", 2, [table](const Str& x) {
        auto it = table.find(x.text());
        return it == table.end() ? Rat(0) : it->second;
    });
}

}  // namespace

TEST_CASE("hellinger distance basics with frozen oracle") {
    PredVec point = {Real(1), Real(0)};
    PredVec fair = {Real("0.5"), Real("0.5")};
    Real h = hellinger_distance(point, fair);
    REQUIRE(abs(h - (2 - sqrt(Real(2)))) < tolerance());
    REQUIRE(hellinger_distance(fair, fair) == 0);
    REQUIRE(abs(hellinger_distance(fair, point) - h) < tolerance());
}

TEST_CASE("per-step distance of B(2/3) against uniform, frozen value") {
    Semimeasure mu = family_bernoulli(Rat(2, 3));
    Semimeasure lam = family_uniform();
    HellingerSeries hs = hellinger_series(mu, lam, Str::parse("0110"), 4);
    // 2 - 2(sqrt(1/3) + sqrt(1/6)), identical at every step
    Real expected("0.028802880693022438249274414094121");
    for (const Real& h : hs.per_step) REQUIRE(abs(h - expected) < Real("1e-15"));
    REQUIRE(abs(hs.cumulative.back() - 4 * expected) < Real("1e-14"));
}

TEST_CASE("expected-bound chain for the default dominated pair") {
    Semimeasure mu = family_bernoulli(Rat(2, 3));
    Semimeasure b13 = family_bernoulli(Rat(1, 3));
    Semimeasure nu("mix", 2, [mu, b13](const Str& x) { return (mu(x) + b13(x)) / 2; });
    BoundReport rep = verify_expected_bounds(mu, nu, Rat(1, 2), 8);
    REQUIRE(rep.chain_ok);
    REQUIRE(rep.exp_margin > 0);
    REQUIRE(rep.ratio_sum <= rep.hellinger_sum + tolerance());
    REQUIRE(rep.log_exp_sum <= rep.bound + tolerance());
    REQUIRE(rep.precision_bits_used == precision_bits());
}

TEST_CASE("dominance precondition is enforced") {
    Semimeasure mu = family_bernoulli(Rat(2, 3));
    Semimeasure b13 = family_bernoulli(Rat(1, 3));
    Semimeasure nu("mix", 2, [mu, b13](const Str& x) { return (mu(x) + b13(x)) / 2; });
    REQUIRE_THROWS_AS(verify_expected_bounds(mu, nu, Rat(1), 4), DominanceViolated);
}

TEST_CASE("tail probabilities are exact and monotone in the threshold") {
    Semimeasure mu = family_bernoulli(Rat(2, 3));
    Semimeasure b13 = family_bernoulli(Rat(1, 3));
    Semimeasure nu("mix", 2, [mu, b13](const Str& x) { return (mu(x) + b13(x)) / 2; });
    Real ln2 = log(Real(2));
    Rat p1 = tail_probability(mu, nu, 8, ln2 + 1);
    Rat p2 = tail_probability(mu, nu, 8, ln2 + 2);
    Rat p4 = tail_probability(mu, nu, 8, ln2 + 4);
    REQUIRE(p1 >= p2);
    REQUIRE(p2 >= p4);
    REQUIRE(to_real(p1) <= exp(Real("-0.5")));
    REQUIRE(tail_probability(mu, nu, 8, Real(0)) == 1);
}

TEST_CASE("kappa bound at 1/2 matches the exp bound and rejects bad kappa") {
    Semimeasure mu = family_bernoulli(Rat(2, 3));
    Semimeasure b13 = family_bernoulli(Rat(1, 3));
    Semimeasure nu("mix", 2, [mu, b13](const Str& x) { return (mu(x) + b13(x)) / 2; });
    BoundReport exp_rep = verify_expected_bounds(mu, nu, Rat(1, 2), 6);
    BoundReport kap_rep = verify_kappa_bound(mu, nu, Rat(1, 2), Rat(1, 2), 6);
    REQUIRE(kap_rep.chain_ok);
    REQUIRE(abs(kap_rep.exp_expectation - exp_rep.exp_expectation) < tolerance());
    BoundReport third = verify_kappa_bound(mu, nu, Rat(1, 2), Rat(1, 3), 6);
    REQUIRE(third.chain_ok);
    REQUIRE_THROWS_AS(verify_kappa_bound(mu, nu, Rat(1, 2), Rat(2, 3), 4),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(verify_kappa_bound(mu, nu, Rat(1, 2), Rat(0), 4),
                      std::invalid_argument);
}

TEST_CASE("triangle-style chain bounds hold on 1000 random instances") {
    std::mt19937_64 eng(0xC0FFEE);
    Real tol = tolerance();
    for (int trial = 0; trial < 1000; ++trial) {
        auto p = random_vector(eng, 3, trial % 2 ? 0 : 5);
        auto r = random_vector(eng, 3, 0);
        auto q = random_vector(eng, 3, trial % 3 ? 0 : 7);
        Real hpq = hellinger_distance(to_pred_vec(p), to_pred_vec(q));
        Real hpr = hellinger_distance(to_pred_vec(p), to_pred_vec(r));
        Real hrq = hellinger_distance(to_pred_vec(r), to_pred_vec(q));
        for (Real beta : {Real("0.5"), Real(1), Real(2), Real(6)}) {
            REQUIRE(hpq <= chain_bound_pair(hpr, hrq, beta) + tol);
        }
    }
}

TEST_CASE("sequence chain bound over chains of length up to 6") {
    std::mt19937_64 eng(0xBEEF);
    Real tol = tolerance();
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t m = 2 + trial % 5;  // chain length 2..6
        std::vector<std::vector<Rat>> chain;
        for (std::size_t i = 0; i < m; ++i) chain.push_back(random_vector(eng, 3, 0));
        std::vector<Real> consecutive;
        for (std::size_t k = 1; k < m; ++k)
            consecutive.push_back(hellinger_distance(to_pred_vec(chain[k - 1]),
                                                     to_pred_vec(chain[k])));
        Real ends = hellinger_distance(to_pred_vec(chain.front()),
                                       to_pred_vec(chain.back()));
        REQUIRE(ends <= chain_bound_sequence(consecutive) + tol);
    }
}

TEST_CASE("affinity inequality chain on 1000 random instances") {
    std::mt19937_64 eng(0xABCD);
    Real tol = tolerance();
    for (int trial = 0; trial < 1000; ++trial) {
        auto p = random_vector(eng, 4, trial % 2 ? 3 : 0);
        auto q = random_vector(eng, 4, trial % 5 ? 0 : 11);
        Real h = hellinger_distance(to_pred_vec(p), to_pred_vec(q));
        Real affinity = sqrt_affinity(p, q);
        REQUIRE(affinity <= 1 - h / 2 + tol);
        REQUIRE(1 - h / 2 <= exp(-h / 2) + tol);
    }
}

TEST_CASE("perturbation continuity bounds on 1000 random instances") {
    std::mt19937_64 eng(0x5EED);
    Real tol = tolerance();
    for (int trial = 0; trial < 1000; ++trial) {
        Semimeasure mu = random_tree_measure(eng);
        unsigned c_num = static_cast<unsigned>(eng() % 20) + 1;
        Rat c(c_num, 100);
        Str x = (trial % 2) ? Str::parse("0") : Str(2);

        // proportional perturbation: children dominated at the same ratio,
        // so the quadratic bound applies
        ContinuityBounds prop = continuity_bound(mu, scale(mu, c), x);
        REQUIRE(prop.quadratic.has_value());
        REQUIRE(prop.h <= *prop.quadratic + tol);
        REQUIRE(prop.h <= prop.linear + tol);

        // independent perturbation: only the linear bound is claimed
        Semimeasure other = random_tree_measure(eng);
        ContinuityBounds gen = continuity_bound(mu, scale(other, c), x);
        REQUIRE(gen.h <= gen.linear + tol);
    }
}

TEST_CASE("continuity bound needs positive base mass") {
    Semimeasure d = family_deterministic([](std::size_t) { return uint8_t{0}; });
    REQUIRE_THROWS_AS(continuity_bound(d, family_uniform(), Str::parse("1")),
                      ZeroConditioning);
}
