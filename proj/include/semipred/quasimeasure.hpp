#pragma once

#include <utility>
#include <vector>

#include "registry.hpp"

namespace semipred {

// A quasimeasure stage: exactly normalized up to a finite cutoff depth,
// zero beyond, root mass above 1 - 1/cutoff; or a measure (is_measure set,
// cutoff meaningless). cutoff == 0 encodes the zero quasimeasure.
struct QuasimeasureStage {
    Semimeasure value;
    unsigned cutoff = 0;
    bool is_measure = false;

    Rat operator()(const Str& x) const { return value(x); }
};

// Largest n <= t whose stage-t layer mass strictly exceeds 1 - 1/n.
// Strictness matters: a layer mass of exactly 1/2 rejects n = 2.
inline unsigned quasimeasure_cutoff(const StagedSemimeasure& nu, unsigned t,
                                    std::uint64_t budget = kDefaultBudget) {
    Semimeasure view = nu.stage_view(t);
    for (unsigned n = t; n >= 1; --n) {
        if (view.layer_mass(n, budget) > 1 - Rat(1, n)) return n;
    }
    return 0;
}

// Convert a staged semimeasure into its stage-t maximal quasimeasure:
// truncate at the cutoff via tail sums, then keep the previous stage
// whenever the truncation is not a pointwise improvement. For entries with
// exact interior additivity the truncation is always an improvement, so no
// history walk is needed.
inline QuasimeasureStage to_quasimeasure(const StagedSemimeasure& nu, unsigned t,
                                         std::uint64_t budget = kDefaultBudget) {
    if (nu.additive_interior()) {
        unsigned m = quasimeasure_cutoff(nu, t, budget);
        Semimeasure trunc("quasi(" + nu.name() + ")", nu.alphabet(),
                          [nu, t, m](const Str& x) {
                              return x.length() > m ? Rat(0) : nu.at(t, x);
                          });
        return QuasimeasureStage{trunc, m, false};
    }

    // generic path: replay the accept/keep recursion over stages 1..t
    unsigned alphabet = nu.alphabet();
    unsigned acc_stage = 0, acc_cutoff = 0;
    auto rho = [&](unsigned s, unsigned m, const Str& x) {
        if (x.length() > m) return Rat(0);
        return nu.stage_view(s).tail_mass(x, m, budget);
    };
    for (unsigned s = 1; s <= t; ++s) {
        unsigned m = quasimeasure_cutoff(nu, s, budget);
        bool accept = true;
        if (acc_stage > 0) {
            check_budget(alphabet, std::max(m, acc_cutoff), budget);
            for_each_string(alphabet, std::max(m, acc_cutoff), [&](const Str& x) {
                if (rho(s, m, x) < rho(acc_stage, acc_cutoff, x)) accept = false;
                return accept;
            });
        }
        if (accept) {
            acc_stage = s;
            acc_cutoff = m;
        }
    }
    unsigned fs = acc_stage, fm = acc_cutoff;
    Semimeasure out("quasi(" + nu.name() + ")", alphabet,
                    [nu, fs, fm, budget, alphabet](const Str& x) {
                        if (fs == 0 || x.length() > fm) return Rat(0);
                        return nu.stage_view(fs).tail_mass(x, fm, budget);
                    });
    return QuasimeasureStage{out, fm, false};
}

struct QuasimeasureReport {
    bool ok = true;
    std::optional<Str> witness;
};

// Exact invariant check: children sums equal the parent up to the cutoff,
// zero beyond (sampled one level past), root mass in (1 - 1/n, 1].
inline QuasimeasureReport verify_quasimeasure(const QuasimeasureStage& q,
                                              std::uint64_t budget = kDefaultBudget) {
    QuasimeasureReport rep;
    unsigned N = q.value.alphabet();
    unsigned n = q.cutoff;
    Str eps(N);
    if (n == 0) {
        if (q.value(eps) != 0) {
            rep.ok = false;
            rep.witness = eps;
        }
        return rep;
    }
    Rat root = q.value(eps);
    if (!(root > 1 - Rat(1, n) && root <= 1)) {
        rep.ok = false;
        rep.witness = eps;
        return rep;
    }
    check_budget(N, n + 1, budget);
    for_each_string(N, n + 1, [&](const Str& x) {
        if (!rep.ok) return false;
        if (x.length() > n) {
            if (q.value(x) != 0) {
                rep.ok = false;
                rep.witness = x;
            }
            return false;
        }
        if (x.length() < n) {
            Rat children = 0;
            for (uint8_t a = 0; a < N; ++a) children += q.value(x.append(a));
            if (children != q.value(x)) {
                rep.ok = false;
                rep.witness = x;
                return false;
            }
        }
        return true;
    });
    return rep;
}

// Mixture over the quasimeasure conversions of every registry entry with
// the polynomial weights; dominates each registry quasimeasure by its
// weight and sheds non-measure contributions on long strings.
inline StagedSemimeasure quasimeasure_mixture(const ModelRegistry& reg,
                                              std::uint64_t budget = kDefaultBudget) {
    if (!reg.frozen()) throw std::logic_error("registry must be frozen");
    Rat total = 0;
    for (std::size_t i = 1; i <= reg.size(); ++i) total += polynomial_weight(i);
    if (total > 1) throw WeightOverflow("polynomial weights sum above 1");

    std::vector<std::pair<Rat, StagedSemimeasure>> terms;
    for (std::size_t i = 1; i <= reg.size(); ++i)
        terms.emplace_back(polynomial_weight(i), reg.entry(i).model);

    return StagedSemimeasure("quasimeasure-mixture", reg.alphabet(),
                             [terms, budget](unsigned t, const Str& x) {
                                 Rat sum = 0;
                                 for (const auto& [w, m] : terms)
                                     sum += w * to_quasimeasure(m, t, budget)(x);
                                 return sum;
                             });
}

// Per-entry cutoffs at a given stage (measures report their stage-t
// truncation depth; the envelope logic wants the non-measure ones).
inline std::vector<unsigned> quasimeasure_cutoffs(const ModelRegistry& reg, unsigned stage,
                                                  std::uint64_t budget = kDefaultBudget) {
    std::vector<unsigned> out;
    for (std::size_t i = 1; i <= reg.size(); ++i)
        out.push_back(quasimeasure_cutoff(reg.entry(i).model, stage, budget));
    return out;
}

// Weighted sum over the measure entries only (the J-filtered mixture);
// exact limit values.
inline Semimeasure measure_mixture(const ModelRegistry& reg) {
    std::vector<std::pair<Rat, Semimeasure>> terms;
    for (std::size_t i = 1; i <= reg.size(); ++i) {
        const RegistryEntry& e = reg.entry(i);
        if (e.is_measure && e.model.limit_hint())
            terms.emplace_back(polynomial_weight(i), *e.model.limit_hint());
    }
    if (terms.empty()) throw EmptyMeasureSet("registry holds no measure entries");
    Semimeasure out("measure-mixture", reg.alphabet(), [terms](const Str& x) {
        Rat sum = 0;
        for (const auto& [w, m] : terms) sum += w * m(x);
        return sum;
    });
    out.with_additive_interior();
    return out;
}

// The k-prefix variant: only measure entries with index <= k.
inline Semimeasure partial_measure_mixture(const ModelRegistry& reg, std::size_t k) {
    std::vector<std::pair<Rat, Semimeasure>> terms;
    for (std::size_t i = 1; i <= std::min(k, reg.size()); ++i) {
        const RegistryEntry& e = reg.entry(i);
        if (e.is_measure && e.model.limit_hint())
            terms.emplace_back(polynomial_weight(i), *e.model.limit_hint());
    }
    if (terms.empty())
        throw EmptyMeasureSet("no measure entry with index <= " + std::to_string(k));
    Semimeasure out("measure-mixture[1.." + std::to_string(k) + "]", reg.alphabet(),
                    [terms](const Str& x) {
                        Rat sum = 0;
                        for (const auto& [w, m] : terms) sum += w * m(x);
                        return sum;
                    });
    out.with_additive_interior();
    return out;
}

inline Semimeasure normalize_at_root(const Semimeasure& nu) {
    Rat root = nu(Str(nu.alphabet()));
    if (root == 0) throw ZeroConditioning("cannot normalize the zero semimeasure");
    return scale(nu, 1 / root);
}

inline Semimeasure normalized_measure_mixture(const ModelRegistry& reg) {
    Semimeasure out = normalize_at_root(measure_mixture(reg));
    return Semimeasure("normalized-measure-mixture", out.alphabet(),
                       [out](const Str& x) { return out(x); })
        .with_additive_interior();
}

inline Semimeasure normalized_partial_measure_mixture(const ModelRegistry& reg,
                                                      std::size_t k) {
    Semimeasure out = normalize_at_root(partial_measure_mixture(reg, k));
    return Semimeasure("normalized-measure-mixture[1.." + std::to_string(k) + "]",
                       out.alphabet(), [out](const Str& x) { return out(x); })
        .with_additive_interior();
}

}  // namespace semipred
