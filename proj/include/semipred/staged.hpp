#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "semimeasure.hpp"

namespace semipred {

// A monotone sequence of computable stage-approximations converging upward
// to a target semimeasure. Computable measures are wrapped as constant-in-t
// stages with the exact limit attached.
class StagedSemimeasure {
public:
    using StageEval = std::function<Rat(unsigned, const Str&)>;

    StagedSemimeasure() = default;
    StagedSemimeasure(std::string name, unsigned alphabet, StageEval eval)
        : name_(std::move(name)), alphabet_(alphabet), eval_(std::move(eval)) {}

    Rat at(unsigned stage, const Str& x) const { return eval_(stage, x); }

    const std::string& name() const { return name_; }
    unsigned alphabet() const { return alphabet_; }

    const std::optional<Semimeasure>& limit_hint() const { return limit_; }
    StagedSemimeasure& with_limit(Semimeasure limit) {
        limit_ = std::move(limit);
        return *this;
    }

    bool additive_interior() const { return additive_interior_; }
    StagedSemimeasure& with_additive_interior(bool v = true) {
        additive_interior_ = v;
        return *this;
    }

    using LayerMass = std::function<Rat(unsigned stage, unsigned n)>;
    const std::optional<LayerMass>& layer_mass_hint() const { return layer_mass_; }
    StagedSemimeasure& with_layer_mass(LayerMass f) {
        layer_mass_ = std::move(f);
        return *this;
    }

    // The fixed-stage slice as a plain semimeasure.
    Semimeasure stage_view(unsigned t) const {
        Semimeasure s(name_ + "@" + std::to_string(t), alphabet_,
                      [eval = eval_, t](const Str& x) { return eval(t, x); });
        s.with_additive_interior(additive_interior_);
        if (layer_mass_) {
            s.with_layer_mass([lm = *layer_mass_, t](unsigned n) { return lm(t, n); });
        }
        return s;
    }

private:
    std::string name_;
    unsigned alphabet_ = 2;
    StageEval eval_;
    std::optional<Semimeasure> limit_;
    bool additive_interior_ = false;
    std::optional<LayerMass> layer_mass_;
};

// Wrap an exactly evaluable semimeasure as a constant-in-t staged object.
inline StagedSemimeasure constant_stages(const Semimeasure& nu) {
    StagedSemimeasure s(nu.name(), nu.alphabet(),
                        [nu](unsigned, const Str& x) { return nu(x); });
    s.with_limit(nu).with_additive_interior(nu.additive_interior());
    if (nu.layer_mass_hint()) {
        s.with_layer_mass([lm = *nu.layer_mass_hint()](unsigned, unsigned n) { return lm(n); });
    }
    return s;
}

// max over l(x) <= depth of limit(x) - stage value; non-increasing in t.
inline Rat stage_gap(const StagedSemimeasure& nu, unsigned t, unsigned depth,
                     std::uint64_t budget = kDefaultBudget) {
    if (!nu.limit_hint())
        throw NoLimitHint("stage_gap requires a limit hint on " + nu.name());
    check_budget(nu.alphabet(), depth, budget);
    const Semimeasure& limit = *nu.limit_hint();
    Rat gap = 0;
    for_each_string(nu.alphabet(), depth, [&](const Str& x) {
        Rat d = limit(x) - nu.at(t, x);
        if (d > gap) gap = d;
        return true;
    });
    return gap;
}

}  // namespace semipred
