#pragma once

#include <string>
#include <utility>
#include <vector>

#include "staged.hpp"

namespace semipred {

// w_i = 2^-kappa_i from declared code lengths, or the polynomial
// weights eps_i = i^-6 2^-i.
enum class WeightKind { CodeLength, Polynomial };

inline Rat polynomial_weight(std::size_t i) {  // 1-based
    Int i6 = Int(i);
    i6 = i6 * i6 * i6;
    i6 = i6 * i6;
    return Rat(1, i6) * pow2(-static_cast<long>(i));
}

struct RegistryEntry {
    std::string name;
    StagedSemimeasure model;
    unsigned code_length = 0;  // declared stand-in for the length of a program
    bool is_measure = false;
    std::string family;        // manifest family tag
    std::string params;        // manifest parameter text (exact rationals)
};

// Finite, extensible stand-in for an enumeration of semimeasures. Frozen
// after construction; afterwards the registry and all mixtures over it are
// immutable and safe for concurrent evaluation.
class ModelRegistry {
public:
    ModelRegistry& add(RegistryEntry entry) {
        if (frozen_) throw std::logic_error("registry is frozen");
        entries_.push_back(std::move(entry));
        return *this;
    }

    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const RegistryEntry& entry(std::size_t i) const { return entries_.at(i - 1); }  // 1-based
    const std::vector<RegistryEntry>& entries() const { return entries_; }

    Rat weight(WeightKind kind, std::size_t i) const {
        return kind == WeightKind::CodeLength
                   ? pow2(-static_cast<long>(entry(i).code_length))
                   : polynomial_weight(i);
    }

    Rat total_weight(WeightKind kind) const {
        Rat sum = 0;
        for (std::size_t i = 1; i <= size(); ++i) sum += weight(kind, i);
        return sum;
    }

    unsigned alphabet() const {
        return entries_.empty() ? 2 : entries_.front().model.alphabet();
    }

private:
    std::vector<RegistryEntry> entries_;
    bool frozen_ = false;
};

// Weighted Bayes mixture over the registry; stage t mixes the stage-t
// values of every entry, so stagewise monotonicity is inherited.
inline StagedSemimeasure mixture(const ModelRegistry& reg, WeightKind kind) {
    if (reg.empty()) throw std::logic_error("mixture over empty registry");
    Rat total = reg.total_weight(kind);
    if (total > 1)
        throw WeightOverflow("registry weights sum to " + rat_to_string(total));

    std::vector<std::pair<Rat, StagedSemimeasure>> terms;
    bool additive = true;
    bool all_measures = true;
    bool all_layer_hints = true;
    for (std::size_t i = 1; i <= reg.size(); ++i) {
        const RegistryEntry& e = reg.entry(i);
        terms.emplace_back(reg.weight(kind, i), e.model);
        additive = additive && e.model.additive_interior();
        all_measures = all_measures && e.is_measure && e.model.limit_hint().has_value();
        all_layer_hints = all_layer_hints && e.model.layer_mass_hint().has_value();
    }

    StagedSemimeasure mix("mixture", reg.alphabet(),
                          [terms](unsigned t, const Str& x) {
                              Rat sum = 0;
                              for (const auto& [w, m] : terms) sum += w * m.at(t, x);
                              return sum;
                          });
    mix.with_additive_interior(additive);
    if (all_layer_hints) {
        mix.with_layer_mass([terms](unsigned t, unsigned n) {
            Rat sum = 0;
            for (const auto& [w, m] : terms) sum += w * (*m.layer_mass_hint())(t, n);
            return sum;
        });
    }
    if (all_measures) {
        std::vector<std::pair<Rat, Semimeasure>> limits;
        for (const auto& [w, m] : terms) limits.emplace_back(w, *m.limit_hint());
        Semimeasure lim("mixture-limit", reg.alphabet(), [limits](const Str& x) {
            Rat sum = 0;
            for (const auto& [w, m] : limits) sum += w * m(x);
            return sum;
        });
        lim.with_additive_interior(additive);
        mix.with_limit(lim);
    }
    return mix;
}

// min over {x : l(x) <= depth, nu(x) > 0} of M_stage(x)/nu(x). For a
// registry member this is bounded below by its weight once stages have
// converged on the tested support.
inline Rat dominance_constant(const StagedSemimeasure& big, const Semimeasure& nu,
                              unsigned depth, unsigned stage,
                              std::uint64_t budget = kDefaultBudget) {
    check_budget(nu.alphabet(), depth, budget);
    bool seen = false;
    Rat best = 0;
    for_each_string(nu.alphabet(), depth, [&](const Str& x) {
        Rat denom = nu(x);
        if (denom == 0) return false;  // superadditivity zeroes the whole subtree
        Rat ratio = big.at(stage, x) / denom;
        if (!seen || ratio < best) {
            best = ratio;
            seen = true;
        }
        return true;
    });
    if (!seen) throw std::invalid_argument("nu vanishes on every tested string");
    return best;
}

}  // namespace semipred
