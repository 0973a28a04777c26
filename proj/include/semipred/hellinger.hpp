#pragma once

#include <optional>
#include <vector>

#include "real.hpp"
#include "semimeasure.hpp"

namespace semipred {

// Next-symbol vector at working precision.
using PredVec = std::vector<Real>;

inline PredVec to_pred_vec(const std::vector<Rat>& v) {
    PredVec out;
    out.reserve(v.size());
    for (const Rat& r : v) out.push_back(to_real(r));
    return out;
}

// h(p,q) = sum_i (sqrt(p_i) - sqrt(q_i))^2; symmetric, 0 iff p == q,
// at most 2 for sub-probability vectors.
inline Real hellinger_distance(const PredVec& p, const PredVec& q) {
    Real sum = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Real d = sqrt(p[i]) - sqrt(q[i]);
        sum += d * d;
    }
    return sum;
}

struct HellingerSeries {
    std::vector<Real> per_step;    // h_t, t = 1..n
    std::vector<Real> cumulative;  // running sum
};

// Per-step distances between the predictions of nu and mu along omega.
inline HellingerSeries hellinger_series(const Semimeasure& mu, const Semimeasure& nu,
                                        const Str& omega, std::size_t n) {
    HellingerSeries out;
    Real cum = 0;
    for (std::size_t t = 1; t <= n; ++t) {
        Str prefix = omega.prefix(t - 1);
        Real h = hellinger_distance(to_pred_vec(predictive(nu, prefix)),
                                    to_pred_vec(predictive(mu, prefix)));
        cum += h;
        out.per_step.push_back(h);
        out.cumulative.push_back(cum);
    }
    return out;
}

struct BoundReport {
    Real ratio_sum;       // sum_t E[(sqrt(nu_t/mu_t) - 1)^2]
    Real hellinger_sum;   // sum_t E[h_t]
    Real log_exp_sum;     // 2 ln E[exp(1/2 sum_t h_t)]
    Real bound;           // ln 1/w (or the kappa variant's log bound)
    Real exp_expectation; // E[exp(...)] itself
    Real exp_margin;      // 1 - w^power * E[exp(...)], must be >= 0
    bool chain_ok = false;
    unsigned precision_bits_used = 0;
};

namespace detail {

// DFS over the depth-n prefix tree weighted by mu, pruning mu-null
// subtrees (the sum-prime convention). Calls `leaf(omega, mu(omega),
// carry)` at depth n; `step(x, pred_mu, pred_nu)` returns the per-node
// increment added to the carry along the path.
template <typename StepFn, typename LeafFn>
void expectation_walk(const Semimeasure& mu, unsigned n, StepFn&& step, LeafFn&& leaf) {
    unsigned N = mu.alphabet();
    Str x(N);
    std::function<void(const Rat&, const Real&)> rec = [&](const Rat& mu_joint,
                                                           const Real& carry) {
        if (x.length() == n) {
            leaf(x, mu_joint, carry);
            return;
        }
        std::vector<Rat> pmu;
        pmu.reserve(N);
        Rat base = mu(x);
        for (uint8_t a = 0; a < N; ++a) pmu.push_back(mu(x.append(a)) / base);
        Real inc = step(x, mu_joint, pmu);
        for (uint8_t a = 0; a < N; ++a) {
            Rat child = mu_joint * pmu[a];
            if (child == 0) continue;
            x.push_back(a);
            rec(child, carry + inc);
            x.pop_back();
        }
    };
    rec(Rat(1), Real(0));
}

}  // namespace detail

// Exhaustive check of the expected Hellinger-sum chain at horizon n:
//   sum_t E[(sqrt(nu_t/mu_t)-1)^2] <= sum_t E[h_t]
//     <= 2 ln E[exp(1/2 sum_t h_t)] <= ln 1/w,
// plus the finite-horizon identity sqrt(w) E[exp(1/2 sum_{t<=n} h_t)] <= 1
// which is valid at every n. Requires nu >= w*mu, verified exhaustively.
inline BoundReport verify_expected_bounds(const Semimeasure& mu, const Semimeasure& nu,
                                          const Rat& w, unsigned n,
                                          std::uint64_t budget = kDefaultBudget) {
    check_budget(mu.alphabet(), n, budget);
    for_each_string(mu.alphabet(), n, [&](const Str& x) {
        if (nu(x) < w * mu(x))
            throw DominanceViolated("nu < w*mu at \"" + x.text() + "\"", x.text());
        return true;
    });

    unsigned N = mu.alphabet();
    BoundReport rep;
    rep.ratio_sum = 0;
    rep.hellinger_sum = 0;
    Real e_exp = 0;
    detail::expectation_walk(
        mu, n,
        [&](const Str& x, const Rat& mu_joint, const std::vector<Rat>& pmu) {
            Rat nu_base = nu(x);
            Real h = 0, h_on_support = 0;
            for (uint8_t a = 0; a < N; ++a) {
                Rat pnu = nu(x.append(a)) / nu_base;
                Real d = sqrt(to_real(pnu)) - sqrt(to_real(pmu[a]));
                h += d * d;
                if (pmu[a] != 0) h_on_support += d * d;
            }
            Real weight = to_real(mu_joint);
            rep.ratio_sum += weight * h_on_support;
            rep.hellinger_sum += weight * h;
            return h;
        },
        [&](const Str&, const Rat& mu_joint, const Real& cum_h) {
            e_exp += to_real(mu_joint) * exp(cum_h / 2);
        });

    rep.exp_expectation = e_exp;
    rep.log_exp_sum = 2 * log(e_exp);
    rep.bound = -log(to_real(w));
    rep.exp_margin = 1 - sqrt(to_real(w)) * e_exp;
    Real tol = tolerance();
    rep.chain_ok = rep.ratio_sum <= rep.hellinger_sum + tol &&
                   rep.hellinger_sum <= rep.log_exp_sum + tol &&
                   rep.log_exp_sum <= rep.bound + tol && rep.exp_margin >= -tol;
    rep.precision_bits_used = precision_bits();
    return rep;
}

// P[sum_{t<=n} h_t >= threshold]: the event is decided per length-n string,
// the probability is an exact rational sum of mu-masses.
inline Rat tail_probability(const Semimeasure& mu, const Semimeasure& nu, unsigned n,
                            const Real& threshold, std::uint64_t budget = kDefaultBudget) {
    check_budget(mu.alphabet(), n, budget);
    unsigned N = mu.alphabet();
    Rat prob = 0;
    detail::expectation_walk(
        mu, n,
        [&](const Str& x, const Rat&, const std::vector<Rat>& pmu) {
            Rat nu_base = nu(x);
            Real h = 0;
            for (uint8_t a = 0; a < N; ++a) {
                Real d = sqrt(to_real(nu(x.append(a)) / nu_base)) - sqrt(to_real(pmu[a]));
                h += d * d;
            }
            return h;
        },
        [&](const Str&, const Rat& mu_joint, const Real& cum_h) {
            if (cum_h >= threshold) prob += mu_joint;
        });
    return prob;
}

// Generalized exponentiated bound: 1 >= w^kappa E[exp(1/2 sum_t S_t)] with
// S_t = sum_a |nu_t^kappa - mu_t^kappa|^(1/kappa), 0 < kappa <= 1/2.
// kappa = 1/2 reduces to the exact exp-bound of verify_expected_bounds.
inline BoundReport verify_kappa_bound(const Semimeasure& mu, const Semimeasure& nu,
                                      const Rat& w, const Rat& kappa, unsigned n,
                                      std::uint64_t budget = kDefaultBudget) {
    if (kappa <= 0 || kappa > Rat(1, 2))
        throw std::invalid_argument("kappa must lie in (0, 1/2]");
    check_budget(mu.alphabet(), n, budget);
    for_each_string(mu.alphabet(), n, [&](const Str& x) {
        if (nu(x) < w * mu(x))
            throw DominanceViolated("nu < w*mu at \"" + x.text() + "\"", x.text());
        return true;
    });

    unsigned N = mu.alphabet();
    Real kap = to_real(kappa);
    Real inv_kap = 1 / kap;
    Real e_exp = 0;
    BoundReport rep;
    rep.ratio_sum = 0;
    rep.hellinger_sum = 0;
    detail::expectation_walk(
        mu, n,
        [&](const Str& x, const Rat&, const std::vector<Rat>& pmu) {
            Rat nu_base = nu(x);
            Real s = 0;
            for (uint8_t a = 0; a < N; ++a) {
                Real pn = to_real(nu(x.append(a)) / nu_base);
                Real pm = to_real(pmu[a]);
                Real diff = abs(pow(pn, kap) - pow(pm, kap));
                if (diff > 0) s += pow(diff, inv_kap);
            }
            return s;
        },
        [&](const Str&, const Rat& mu_joint, const Real& cum) {
            e_exp += to_real(mu_joint) * exp(cum / 2);
        });
    rep.exp_expectation = e_exp;
    rep.log_exp_sum = 2 * log(e_exp);
    rep.bound = -2 * kap * log(to_real(w));
    rep.exp_margin = 1 - pow(to_real(w), kap) * e_exp;
    rep.chain_ok = rep.exp_margin >= -tolerance();
    rep.precision_bits_used = precision_bits();
    return rep;
}

// (1+beta) h(p,r) + (1+1/beta) h(r,q), the two-link chain bound.
inline Real chain_bound_pair(const Real& h_pr, const Real& h_rq, const Real& beta) {
    return (1 + beta) * h_pr + (1 + 1 / beta) * h_rq;
}

// 3 sum_{k=2}^m k^2 h(p^{k-1},p^k); input is the consecutive-pair
// distances, first element corresponding to k = 2.
inline Real chain_bound_sequence(const std::vector<Real>& consecutive) {
    Real sum = 0;
    for (std::size_t j = 0; j < consecutive.size(); ++j) {
        Real k(j + 2);
        sum += k * k * consecutive[j];
    }
    return 3 * sum;
}

struct ContinuityBounds {
    Real h;                        // h_x(mu, mu + nu)
    Real linear;                   // nu(x)/mu(x)
    std::optional<Real> quadratic; // eps^2/4 when children are eps-dominated
};

// Perturbation bounds: rho = mu + nu pointwise; the prediction shift at x
// is bounded linearly by the mass ratio, and quadratically when every
// child is dominated at the same ratio.
inline ContinuityBounds continuity_bound(const Semimeasure& mu, const Semimeasure& nu,
                                         const Str& x) {
    Rat mu_x = mu(x);
    if (mu_x == 0) throw ZeroConditioning("mu vanishes on \"" + x.text() + "\"");
    Rat nu_x = nu(x);
    Rat rho_x = mu_x + nu_x;
    Rat eps = nu_x / mu_x;

    Real h = 0;
    bool children_dominated = true;
    for (uint8_t a = 0; a < mu.alphabet(); ++a) {
        Rat mu_c = mu(x.append(a));
        Rat nu_c = nu(x.append(a));
        if (nu_c > eps * mu_c) children_dominated = false;
        Real d = sqrt(to_real(mu_c / mu_x)) - sqrt(to_real((mu_c + nu_c) / rho_x));
        h += d * d;
    }

    ContinuityBounds out{h, to_real(eps), std::nullopt};
    if (children_dominated) out.quadratic = to_real(eps * eps / 4);
    return out;
}

}  // namespace semipred
