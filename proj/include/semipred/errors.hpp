#pragma once

#include <stdexcept>
#include <string>

namespace semipred {

struct ZeroConditioning : std::runtime_error {
    explicit ZeroConditioning(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct WeightOverflow : std::runtime_error {
    explicit WeightOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct NoLimitHint : std::runtime_error {
    explicit NoLimitHint(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyMeasureSet : std::runtime_error {
    explicit EmptyMeasureSet(const std::string& what) : std::runtime_error(what) {}
};

// ν(x) < w·μ(x) found during an exhaustive dominance scan; carries the witness.
struct DominanceViolated : std::runtime_error {
    explicit DominanceViolated(const std::string& what, std::string witness_str)
        : std::runtime_error(what), witness(std::move(witness_str)) {}
    std::string witness;
};

struct ExpectationExceeded : std::runtime_error {
    explicit ExpectationExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct GammaOutOfRange : std::runtime_error {
    explicit GammaOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownExperiment : std::runtime_error {
    explicit UnknownExperiment(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace semipred
