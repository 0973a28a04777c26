#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace semipred {

struct Alphabet {
    unsigned size = 2;  // N >= 2; symbols are 0..N-1
};

// Finite symbol string over an alphabet of size N. The empty string is
// admitted; ordering is lexicographic (prefix precedes extension).
class Str {
public:
    Str() = default;
    explicit Str(unsigned alphabet) : alphabet_(alphabet) {}
    Str(unsigned alphabet, std::vector<uint8_t> symbols)
        : alphabet_(alphabet), sym_(std::move(symbols)) {}

    // parse "0110..." digit text (alphabet sizes up to 10)
    static Str parse(const std::string& text, unsigned alphabet = 2) {
        Str s(alphabet);
        for (char c : text) s.push_back(static_cast<uint8_t>(c - '0'));
        return s;
    }

    unsigned alphabet() const { return alphabet_; }
    std::size_t length() const { return sym_.size(); }
    bool empty() const { return sym_.empty(); }
    uint8_t operator[](std::size_t i) const { return sym_[i]; }

    void push_back(uint8_t a) { sym_.push_back(a); }
    void pop_back() { sym_.pop_back(); }

    Str prefix(std::size_t n) const {
        return Str(alphabet_, std::vector<uint8_t>(sym_.begin(), sym_.begin() + n));
    }

    Str append(uint8_t a) const {
        Str out = *this;
        out.push_back(a);
        return out;
    }

    bool is_prefix_of(const Str& other) const {
        if (length() > other.length()) return false;
        for (std::size_t i = 0; i < length(); ++i)
            if (sym_[i] != other.sym_[i]) return false;
        return true;
    }

    std::string text() const {
        std::string out;
        out.reserve(sym_.size());
        for (uint8_t a : sym_) out.push_back(static_cast<char>('0' + a));
        return out;
    }

    bool operator==(const Str& other) const { return sym_ == other.sym_; }
    std::strong_ordering operator<=>(const Str& other) const {
        std::size_t n = std::min(sym_.size(), other.sym_.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (sym_[i] != other.sym_[i]) return sym_[i] <=> other.sym_[i];
        }
        return sym_.size() <=> other.sym_.size();
    }

    const std::vector<uint8_t>& symbols() const { return sym_; }

private:
    unsigned alphabet_ = 2;
    std::vector<uint8_t> sym_;
};

// Compare x against the length-l(x) prefix of a reference string.
// Used for mass-below-a-path evaluations.
inline std::strong_ordering compare_to_prefix(const Str& x, const Str& ref) {
    for (std::size_t i = 0; i < x.length(); ++i) {
        if (x[i] != ref[i]) return x[i] <=> ref[i];
    }
    return std::strong_ordering::equal;
}

// Default cap on exhaustive scans: 2^20 strings per pass.
inline constexpr std::uint64_t kDefaultBudget = 1u << 20;

inline std::uint64_t strings_up_to_depth(unsigned alphabet, unsigned depth) {
    std::uint64_t total = 0, layer = 1;
    for (unsigned d = 0; d <= depth; ++d) {
        total += layer;
        if (total > (std::uint64_t{1} << 62)) return std::uint64_t{1} << 62;
        layer *= alphabet;
    }
    return total;
}

inline void check_budget(unsigned alphabet, unsigned depth, std::uint64_t budget) {
    if (strings_up_to_depth(alphabet, depth) > budget)
        throw BudgetExceeded("enumeration of depth " + std::to_string(depth) +
                             " exceeds budget " + std::to_string(budget));
}

// Visit every string of length <= depth in DFS preorder. The visitor may
// return false to prune the subtree below the visited node.
inline void for_each_string(unsigned alphabet, unsigned depth,
                            const std::function<bool(const Str&)>& visit) {
    Str x(alphabet);
    std::function<void()> rec = [&]() {
        if (!visit(x)) return;
        if (x.length() == depth) return;
        for (uint8_t a = 0; a < alphabet; ++a) {
            x.push_back(a);
            rec();
            x.pop_back();
        }
    };
    rec();
}

// Visit every string of exactly length n.
inline void for_each_leaf(unsigned alphabet, unsigned n,
                          const std::function<void(const Str&)>& visit) {
    for_each_string(alphabet, n, [&](const Str& x) {
        if (x.length() == n) visit(x);
        return true;
    });
}

}  // namespace semipred
