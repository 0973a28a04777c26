#pragma once

#include <map>
#include <utility>
#include <vector>

#include "real.hpp"
#include "registry.hpp"

namespace semipred {

// log2(M(w_{1:n})/mu(w_{1:n})) along a sequence plus its running maximum.
// The horizon-n supremum is a lower bound on the true deficiency.
struct DeficiencyTrace {
    std::vector<Real> log_ratio;    // base-2 logs
    std::vector<Real> running_sup;
    Real sup() const { return running_sup.empty() ? Real(0) : running_sup.back(); }
    // random to horizon n at threshold c iff sup <= log2 c
    bool random_at(const Real& log2_c) const { return sup() <= log2_c; }
};

inline DeficiencyTrace deficiency_trace(const StagedSemimeasure& mix, const Semimeasure& mu,
                                        const Str& omega, std::size_t n, unsigned stage) {
    DeficiencyTrace out;
    for (std::size_t t = 1; t <= n; ++t) {
        Str prefix = omega.prefix(t);
        Rat mu_val = mu(prefix);
        if (mu_val == 0)
            throw ZeroConditioning("mu vanishes on \"" + prefix.text() + "\"");
        Real lr = log2(to_real(mix.at(stage, prefix) / mu_val));
        out.log_ratio.push_back(lr);
        Real sup = out.running_sup.empty() ? lr
                                           : (lr > out.running_sup.back() ? lr : out.running_sup.back());
        out.running_sup.push_back(sup);
    }
    return out;
}

// Nonnegative string function with m(x) >= 1/2 [m(x0)+m(x1)] (binary).
struct Supermartingale {
    std::function<Rat(const Str&)> eval;
    Rat operator()(const Str& x) const { return eval(x); }
};

struct SupermartingaleReport {
    bool ok = true;
    std::optional<Str> witness;
};

inline SupermartingaleReport is_supermartingale(const Supermartingale& m, unsigned depth,
                                                std::uint64_t budget = kDefaultBudget) {
    check_budget(2, depth, budget);
    SupermartingaleReport rep;
    for_each_string(2, depth, [&](const Str& x) {
        if (!rep.ok || x.length() == depth) return false;
        if (2 * m(x) < m(x.append(0)) + m(x.append(1))) {
            rep.ok = false;
            rep.witness = x;
            return false;
        }
        return true;
    });
    return rep;
}

// m := nu/lambda, i.e. m(x) = nu(x) 2^l(x); a supermartingale whenever nu
// is a semimeasure.
inline Supermartingale semimeasure_to_supermartingale(const Semimeasure& nu) {
    return Supermartingale{[nu](const Str& x) {
        return nu(x) * pow2(static_cast<long>(x.length()));
    }};
}

// Result of materializing the bar-measure construction that converts an
// expected bound E_mu[F] <= eps into an individual bound via the
// randomness deficiency.
struct IndividualBoundResult {
    // stage tables, index j holds the depth-(j+1) construction; each maps
    // every string of length <= n to an exact rational
    std::vector<std::map<Str, Rat>> stage_tables;
    bool all_semimeasures = true;
    bool monotone_in_n = true;
    Rat f_value;        // F_n(omega_{1:n})
    Real bound_value;   // eps_n * 2^(codelen + deficiency_sup)
    bool bound_holds = true;
    Semimeasure bar;    // the final stage as an addable semimeasure
};

// F: (n, x in X^n) -> exact rational, nonnegative and nondecreasing in n.
// eps_schedule(n) must decrease toward eps with eps_schedule(n) >= eps.
inline IndividualBoundResult expected_to_individual(
    const std::function<Rat(unsigned, const Str&)>& F, const Semimeasure& mu,
    const Rat& eps, const std::function<Rat(unsigned)>& eps_schedule, unsigned codelen,
    const Str& omega, unsigned n_max, const Real& deficiency_sup,
    std::uint64_t budget = kDefaultBudget) {
    check_budget(mu.alphabet(), n_max, budget);
    IndividualBoundResult out;
    unsigned N = mu.alphabet();

    for (unsigned n = 1; n <= n_max; ++n) {
        Rat eps_n = eps_schedule(n);
        // leaf layer mu(x) F_n(x), then interior sums
        std::map<Str, Rat> table;
        Rat expectation = 0;
        for_each_leaf(N, n, [&](const Str& x) {
            Rat v = mu(x) * F(n, x);
            table[x] = v;
            expectation += v;
        });
        if (expectation > eps)
            throw ExpectationExceeded("E_mu[F_" + std::to_string(n) + "] = " +
                                      rat_to_string(expectation) + " exceeds eps");
        for (unsigned k = n; k-- > 0;) {
            for_each_leaf(N, k, [&](const Str& x) {
                Rat sum = 0;
                for (uint8_t a = 0; a < N; ++a) sum += table[x.append(a)];
                table[x] = sum;
            });
        }
        for (auto& [key, value] : table) value /= eps_n;

        if (!out.stage_tables.empty()) {
            // pointwise monotone against the previous stage (deeper strings
            // were 0 there)
            const auto& prev = out.stage_tables.back();
            for (const auto& [key, value] : prev) {
                if (table.at(key) < value) out.monotone_in_n = false;
            }
        }
        out.stage_tables.push_back(std::move(table));
    }

    const auto& final_table = out.stage_tables.back();
    for (unsigned j = 0; j < out.stage_tables.size(); ++j) {
        const auto& table = out.stage_tables[j];
        unsigned n = j + 1;
        bool ok = true;
        for (const auto& [key, value] : table) {
            if (key.length() == n) continue;
            Rat children = 0;
            for (uint8_t a = 0; a < N; ++a) children += table.at(key.append(a));
            if (children > value) ok = false;
        }
        if (table.at(Str(N)) > 1) ok = false;
        if (!ok) out.all_semimeasures = false;
    }

    out.f_value = F(n_max, omega.prefix(n_max));
    Rat eps_n = eps_schedule(n_max);
    out.bound_value = to_real(eps_n) * pow(Real(2), Real(codelen) + deficiency_sup);
    out.bound_holds = to_real(out.f_value) <= out.bound_value + tolerance();

    out.bar = Semimeasure(
        "bar-measure", N,
        [table = final_table, n_max, N](const Str& x) {
            if (x.length() > n_max) return Rat(0);
            auto it = table.find(x);
            return it == table.end() ? Rat(0) : it->second;
        });
    out.bar.with_additive_interior(false);
    return out;
}

}  // namespace semipred
