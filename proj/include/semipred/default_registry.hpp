#pragma once

#include "counterexample.hpp"
#include "quasimeasure.hpp"

namespace semipred {

// Resolution of the shipped leftmost-mass entry: its defining sequence is
// frozen at this many positions/stages, and its own stage index saturates
// there.
inline constexpr unsigned kDefaultTraceDepth = 64;

inline void add_base_entries(ModelRegistry& reg) {
    reg.add({"uniform", constant_stages(family_uniform()), 2, true, "uniform", ""});
    reg.add({"bernoulli(1/3)", constant_stages(family_bernoulli(Rat(1, 3))), 3, true,
             "bernoulli", "1/3"});
    reg.add({"bernoulli(2/3)", constant_stages(family_bernoulli(Rat(2, 3))), 3, true,
             "bernoulli", "2/3"});
    reg.add({"poly3", constant_stages(family_poly3()), 4, true, "poly3", ""});
    reg.add({"zeros", constant_stages(family_deterministic([](std::size_t) {
                 return uint8_t{0};
             })),
             4, true, "deterministic-pattern", "0"});
    reg.add({"half-uniform", constant_stages(scale(family_uniform(), Rat(1, 2))), 5,
             false, "scaled-uniform", "1/2"});
}

// The leftmost-mass entry is defined relative to the mixture over the
// entries preceding it: build that bootstrap mixture, trace its leftmost
// sequence, and freeze the resulting mass-below-the-path semimeasure.
inline RegistryEntry leftmost_entry_from(const ModelRegistry& bootstrap,
                                         unsigned depth = kDefaultTraceDepth) {
    StagedSemimeasure m = mixture(bootstrap, WeightKind::CodeLength);
    LeftmostTrace trace = build_leftmost_trace(m, depth, depth);
    return {"leftmost-mass", leftmost_mass_semimeasure(trace), 5, false,
            "leftmost-mass", std::to_string(depth)};
}

// The shipped seven-entry registry: five measures, the half-mass uniform
// strict semimeasure, and the leftmost-mass entry built over the first six.
// Code-length weights sum to 11/16, polynomial weights to well below 1.
inline ModelRegistry default_registry(unsigned trace_depth = kDefaultTraceDepth) {
    ModelRegistry bootstrap;
    add_base_entries(bootstrap);
    bootstrap.freeze();

    ModelRegistry reg;
    add_base_entries(reg);
    reg.add(leftmost_entry_from(bootstrap, trace_depth));
    reg.freeze();
    return reg;
}

}  // namespace semipred
