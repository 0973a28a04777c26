#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "strings.hpp"

namespace semipred {

// A semimeasure: total evaluable map Str -> exact probability with
// nu(x) >= sum_a nu(xa). Evaluation is pure; instances are immutable
// values and safe to share across threads.
class Semimeasure {
public:
    using Eval = std::function<Rat(const Str&)>;
    using LayerMass = std::function<Rat(unsigned)>;  // sum over X^n

    Semimeasure() = default;
    Semimeasure(std::string name, unsigned alphabet, Eval eval)
        : name_(std::move(name)), alphabet_(alphabet), eval_(std::move(eval)) {}

    Rat operator()(const Str& x) const { return eval_(x); }

    const std::string& name() const { return name_; }
    unsigned alphabet() const { return alphabet_; }

    // Interior nodes are exact children sums, i.e. truncating the tree at
    // any depth conserves mass: sum over length-m extensions of x equals
    // nu(x). True for every shipped family; enables closed-form tail sums.
    bool additive_interior() const { return additive_interior_; }
    Semimeasure& with_additive_interior(bool v = true) {
        additive_interior_ = v;
        return *this;
    }

    // Optional closed form for sum_{x in X^n} nu(x).
    const std::optional<LayerMass>& layer_mass_hint() const { return layer_mass_; }
    Semimeasure& with_layer_mass(LayerMass f) {
        layer_mass_ = std::move(f);
        return *this;
    }

    Rat layer_mass(unsigned n, std::uint64_t budget = kDefaultBudget) const {
        if (layer_mass_) return (*layer_mass_)(n);
        if (additive_interior_) return eval_(Str(alphabet_));
        check_budget(alphabet_, n, budget);
        Rat sum = 0;
        for_each_leaf(alphabet_, n, [&](const Str& x) { sum += eval_(x); });
        return sum;
    }

    // sum over all length-m extensions of x (m >= l(x)).
    Rat tail_mass(const Str& x, unsigned m, std::uint64_t budget = kDefaultBudget) const {
        if (additive_interior_) return eval_(x);
        check_budget(alphabet_, m, budget);
        Rat sum = 0;
        std::function<void(Str&, unsigned)> rec = [&](Str& s, unsigned left) {
            if (left == 0) {
                sum += eval_(s);
                return;
            }
            for (uint8_t a = 0; a < alphabet_; ++a) {
                s.push_back(a);
                rec(s, left - 1);
                s.pop_back();
            }
        };
        Str s = x;
        rec(s, m - static_cast<unsigned>(x.length()));
        return sum;
    }

private:
    std::string name_;
    unsigned alphabet_ = 2;
    Eval eval_;
    bool additive_interior_ = false;
    std::optional<LayerMass> layer_mass_;
};

// nu(a|x) = nu(xa)/nu(x), exact. Throws ZeroConditioning off support.
inline Rat conditional(const Semimeasure& nu, const Str& x, uint8_t a) {
    Rat base = nu(x);
    if (base == 0)
        throw ZeroConditioning(nu.name() + " vanishes on \"" + x.text() + "\"");
    return nu(x.append(a)) / base;
}

// Exact next-symbol vector (one entry per symbol).
inline std::vector<Rat> predictive(const Semimeasure& nu, const Str& x) {
    Rat base = nu(x);
    if (base == 0)
        throw ZeroConditioning(nu.name() + " vanishes on \"" + x.text() + "\"");
    std::vector<Rat> out;
    out.reserve(nu.alphabet());
    for (uint8_t a = 0; a < nu.alphabet(); ++a) out.push_back(nu(x.append(a)) / base);
    return out;
}

// nu(x) as the chain-rule product of conditionals from the root.
inline Rat joint(const Semimeasure& nu, const Str& x) { return nu(x); }

struct VerifyReport {
    bool ok = true;
    bool equality_everywhere = true;  // measure-likeness to the tested depth
    bool root_mass_one = true;        // nu(eps) == 1
    std::optional<Str> witness;       // first superadditivity violation
};

// Exhaustive superadditivity check to the given depth.
inline VerifyReport verify_semimeasure(const Semimeasure& nu, unsigned depth,
                                       std::uint64_t budget = kDefaultBudget) {
    check_budget(nu.alphabet(), depth, budget);
    VerifyReport report;
    Str eps(nu.alphabet());
    if (nu(eps) > 1) {
        report.ok = false;
        report.witness = eps;
        return report;
    }
    report.root_mass_one = nu(eps) == 1;
    for_each_string(nu.alphabet(), depth, [&](const Str& x) {
        if (!report.ok || x.length() == depth) return false;
        Rat parent = nu(x);
        Rat children = 0;
        for (uint8_t a = 0; a < nu.alphabet(); ++a) children += nu(x.append(a));
        if (children > parent) {
            report.ok = false;
            report.witness = x;
            return false;
        }
        if (children != parent) report.equality_everywhere = false;
        return true;
    });
    if (!report.ok) report.equality_everywhere = false;
    return report;
}

// --- built-in computable families -------------------------------------

inline Semimeasure family_uniform(unsigned alphabet = 2) {
    Rat inv(1, alphabet);
    Semimeasure s("uniform", alphabet, [inv](const Str& x) {
        return rat_pow(inv, x.length());
    });
    s.with_additive_interior().with_layer_mass([](unsigned) { return Rat(1); });
    return s;
}

inline Semimeasure family_bernoulli(const Rat& p) {
    Rat q = 1 - p;
    Semimeasure s("bernoulli(" + rat_to_string(p) + ")", 2, [p, q](const Str& x) {
        Rat v = 1;
        for (std::size_t i = 0; i < x.length(); ++i) v *= x[i] ? p : q;
        return v;
    });
    s.with_additive_interior().with_layer_mass([](unsigned) { return Rat(1); });
    return s;
}

// mu(1|x_{<n}) = 1/2 n^-3; the product of (1 - 1/2 t^-3) stays above 0.45,
// so the all-zeros sequence carries positive mass.
inline Semimeasure family_poly3() {
    Semimeasure s("poly3", 2, [](const Str& x) {
        Rat v = 1;
        for (std::size_t i = 0; i < x.length(); ++i) {
            Rat one = Rat(1, 2 * Int(i + 1) * Int(i + 1) * Int(i + 1));
            v *= x[i] ? one : 1 - one;
        }
        return v;
    });
    s.with_additive_interior().with_layer_mass([](unsigned) { return Rat(1); });
    return s;
}

// Deterministic measure concentrated on the sequence produced by `gen`
// (1-based position -> symbol).
inline Semimeasure family_deterministic(std::function<uint8_t(std::size_t)> gen,
                                        unsigned alphabet = 2) {
    Semimeasure s("deterministic", alphabet, [gen = std::move(gen)](const Str& x) {
        for (std::size_t i = 0; i < x.length(); ++i)
            if (x[i] != gen(i + 1)) return Rat(0);
        return Rat(1);
    });
    s.with_additive_interior().with_layer_mass([](unsigned) { return Rat(1); });
    return s;
}

// c * nu; a strict semimeasure for c < 1 when nu is a measure.
inline Semimeasure scale(const Semimeasure& nu, const Rat& c) {
    Semimeasure s(rat_to_string(c) + "*" + nu.name(), nu.alphabet(),
                  [nu, c](const Str& x) { return c * nu(x); });
    s.with_additive_interior(nu.additive_interior());
    if (nu.layer_mass_hint()) {
        s.with_layer_mass([nu, c](unsigned n) { return c * (*nu.layer_mass_hint())(n); });
    }
    return s;
}

}  // namespace semipred
