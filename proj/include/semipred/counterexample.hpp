#pragma once

#include <set>
#include <utility>
#include <vector>

#include "real.hpp"
#include "staged.hpp"

namespace semipred {

// Stagewise construction of the leftmost sequence that stays within the
// uniform mass budget: bit n is 0 unless the stage mixture already puts
// more than 2^-n on the 0-continuation. Lexicographically nondecreasing
// across stages because the stages grow pointwise.
struct LeftmostTrace {
    std::vector<Str> per_stage;           // alpha^t, t = 1..T, each of length N
    std::vector<unsigned> stabilization;  // per prefix length n (1-based index n-1):
                                          // first stage from which the prefix is final
    unsigned stages() const { return static_cast<unsigned>(per_stage.size()); }
    unsigned depth() const {
        return per_stage.empty() ? 0 : static_cast<unsigned>(per_stage.front().length());
    }
    const Str& final_sequence() const { return per_stage.back(); }
};

inline Str leftmost_sequence_at_stage(const StagedSemimeasure& mix, unsigned t, unsigned n_max) {
    Str a(2);
    for (unsigned n = 1; n <= n_max; ++n) {
        a.push_back(mix.at(t, a.append(0)) <= pow2(-static_cast<long>(n)) ? 0 : 1);
    }
    return a;
}

inline LeftmostTrace build_leftmost_trace(const StagedSemimeasure& mix, unsigned stages,
                                          unsigned depth) {
    LeftmostTrace trace;
    for (unsigned t = 1; t <= stages; ++t)
        trace.per_stage.push_back(leftmost_sequence_at_stage(mix, t, depth));
    const Str& last = trace.per_stage.back();
    for (unsigned n = 1; n <= depth; ++n) {
        unsigned stab = stages;
        while (stab > 1 && trace.per_stage[stab - 2].prefix(n) == last.prefix(n)) --stab;
        trace.stabilization.push_back(stab);
    }
    return trace;
}

// Exact stagewise budget invariant: mix^t(alpha^t_{1:n}) <= 2^-n for all
// t <= T, n <= N. Returns the first violating (t, n) if any.
inline std::optional<std::pair<unsigned, unsigned>> check_leftmost_invariant(
    const StagedSemimeasure& mix, const LeftmostTrace& trace) {
    for (unsigned t = 1; t <= trace.stages(); ++t) {
        const Str& a = trace.per_stage[t - 1];
        for (unsigned n = 1; n <= trace.depth(); ++n) {
            if (mix.at(t, a.prefix(n)) > pow2(-static_cast<long>(n)))
                return std::make_pair(t, n);
        }
    }
    return std::nullopt;
}

// The oscillating supermartingale: 1 on even-length prefixes of any stage
// sequence, children averages on odd lengths, 0 off the stage tree.
// Values lie in {0, 1/2, 1}.
class Oscillator {
public:
    Oscillator(const LeftmostTrace& trace, unsigned table_depth) : depth_(table_depth) {
        for (const Str& a : trace.per_stage)
            for (unsigned n = 0; n <= std::min<unsigned>(table_depth, trace.depth()); ++n)
                prefixes_.insert(a.prefix(n));
    }

    unsigned table_depth() const { return depth_; }

    Rat operator()(const Str& x) const {
        if (x.length() > depth_) return Rat(0);
        if (x.length() % 2 == 0) return prefixes_.count(x) ? Rat(1) : Rat(0);
        int live = 0;
        for (uint8_t a = 0; a < 2; ++a)
            if (prefixes_.count(x.append(a))) ++live;
        return Rat(live, 2);
    }

    const std::set<Str>& support_prefixes() const { return prefixes_; }

private:
    unsigned depth_;
    std::set<Str> prefixes_;
};

// Complete supermartingale verification over every string of length
// < depth. Only nodes on the stage tree need explicit checks: off-tree
// nodes are 0 and no descendant can re-enter the tree, so their subtrees
// satisfy the inequality identically.
struct OscillatorReport {
    bool ok = true;
    std::optional<Str> witness;
    std::size_t nodes_checked = 0;
};

inline OscillatorReport verify_oscillator_supermartingale(const Oscillator& r,
                                                          unsigned depth) {
    OscillatorReport rep;
    for (const Str& x : r.support_prefixes()) {
        if (x.length() >= depth) continue;
        if (2 * r(x) < r(x.append(0)) + r(x.append(1))) {
            rep.ok = false;
            rep.witness = x;
            return rep;
        }
        ++rep.nodes_checked;
    }
    return rep;
}

// Stage-t mass-below-the-leftmost-path semimeasure: uniform mass 2^-t on
// every length-t string lexicographically below the stage sequence.
// Closed form per node: 2^-l(x) strictly below the path, 0 strictly
// above, and the binary tail value sum_{j>l(x)} a_j 2^-j on the path.
inline Rat leftmost_mass_value(const Str& a, unsigned t, const Str& x) {
    unsigned n = static_cast<unsigned>(x.length());
    if (n > t) return Rat(0);
    auto cmp = compare_to_prefix(x, a);
    if (cmp == std::strong_ordering::less) return pow2(-static_cast<long>(n));
    if (cmp == std::strong_ordering::greater) return Rat(0);
    Rat v = 0;
    for (unsigned j = n + 1; j <= t; ++j)
        if (a[j - 1]) v += pow2(-static_cast<long>(j));
    return v;
}

// The staged semimeasure built from a trace; stage t is capped at the
// trace's resolution. Monotone in t because the stage sequences are
// lexicographically nondecreasing.
inline StagedSemimeasure leftmost_mass_semimeasure(const LeftmostTrace& trace) {
    unsigned cap = std::min(trace.stages(), trace.depth());
    StagedSemimeasure s("leftmost-mass", 2, [trace, cap](unsigned t, const Str& x) {
        if (t == 0) return Rat(0);
        unsigned te = std::min(t, cap);
        return leftmost_mass_value(trace.per_stage[std::min(t, trace.stages()) - 1], te, x);
    });
    s.with_additive_interior();
    s.with_layer_mass([trace, cap](unsigned t, unsigned n) {
        if (t == 0) return Rat(0);
        unsigned te = std::min(t, cap);
        if (n > te) return Rat(0);
        const Str& a = trace.per_stage[std::min(t, trace.stages()) - 1];
        Rat v = 0;  // below-mass + on-path value telescopes to the root value
        for (unsigned j = 1; j <= te; ++j)
            if (a[j - 1]) v += pow2(-static_cast<long>(j));
        return v;
    });
    return s;
}

// M'(x) = (1-gamma) nu(x) + gamma M(x); still dominates everything M
// dominates, but keeps the nu contribution large enough that on-path
// conditionals at 01-positions stay above (1-gamma)/(1+3gamma) > 1/2.
inline StagedSemimeasure contaminated_mixture(const StagedSemimeasure& nu,
                                              const StagedSemimeasure& mix,
                                              const Rat& gamma) {
    if (!(gamma > 0 && gamma < Rat(1, 5)))
        throw GammaOutOfRange("gamma must lie in (0, 1/5), got " + rat_to_string(gamma));
    return StagedSemimeasure("contaminated-mixture", mix.alphabet(),
                             [nu, mix, gamma](unsigned t, const Str& x) {
                                 return (1 - gamma) * nu.at(t, x) + gamma * mix.at(t, x);
                             });
}

inline Rat contamination_lower_bound(const Rat& gamma) {
    return (1 - gamma) / (1 + 3 * gamma);
}

struct NonconvergenceSeries {
    std::vector<Rat> conditional;      // M'(alpha_n | alpha_<n) per n
    std::vector<unsigned> zero_one_positions;  // n with alpha_n alpha_{n+1} = 01
    Rat lower_bound;                   // (1-gamma)/(1+3gamma)
    bool bound_holds = true;           // at every 01-position
};

inline NonconvergenceSeries nonconvergence_series(const StagedSemimeasure& contaminated,
                                                  const LeftmostTrace& trace,
                                                  const Rat& gamma, unsigned stage) {
    NonconvergenceSeries out;
    out.lower_bound = contamination_lower_bound(gamma);
    const Str& alpha = trace.final_sequence();
    unsigned n_max = trace.depth();
    for (unsigned n = 1; n <= n_max; ++n) {
        Rat denom = contaminated.at(stage, alpha.prefix(n - 1));
        out.conditional.push_back(contaminated.at(stage, alpha.prefix(n)) / denom);
        if (n < n_max && alpha[n - 1] == 0 && alpha[n] == 1) {
            out.zero_one_positions.push_back(n);
            if (out.conditional.back() < out.lower_bound) out.bound_holds = false;
        }
    }
    return out;
}

struct AntiDominanceResult {
    Str alpha;
    std::vector<Rat> joint;            // nu(alpha_{1:n})
    std::vector<Rat> product_bound;    // prod_{k<=n}(1 + 1/k^2) * N^-n
    bool product_bound_holds = true;   // joint <= product bound, exact
    bool four_bound_holds = true;      // joint <= 4 * N^-n, exact
};

// Greedy anti-dominated path: always step to the symbol with the smallest
// conditional. The minimum is at most the average 1/N, so the selection
// bound nu(a|x) < (1/N)(1 + 1/n^2) always has a witness.
inline AntiDominanceResult anti_dominance_sequence(const Semimeasure& nu, unsigned n_max) {
    AntiDominanceResult out;
    unsigned N = nu.alphabet();
    out.alpha = Str(N);
    Rat joint = nu(out.alpha);
    if (joint == 0) throw ZeroConditioning("nu vanishes at the root");
    Rat prod = 1;
    Rat inv_n = Rat(1, N);
    for (unsigned n = 1; n <= n_max; ++n) {
        std::vector<Rat> cond = predictive(nu, out.alpha);
        uint8_t best = 0;
        for (uint8_t a = 1; a < N; ++a)
            if (cond[a] < cond[best]) best = a;
        out.alpha.push_back(best);
        joint *= cond[best];
        if (joint == 0)
            throw ZeroConditioning("nu vanishes on \"" + out.alpha.text() + "\"");
        prod *= 1 + Rat(1, Int(n) * Int(n));
        Rat uniform_n = rat_pow(inv_n, n);
        out.joint.push_back(joint);
        out.product_bound.push_back(prod * uniform_n);
        if (joint > prod * uniform_n) out.product_bound_holds = false;
        if (joint > 4 * uniform_n) out.four_bound_holds = false;
    }
    return out;
}

}  // namespace semipred
