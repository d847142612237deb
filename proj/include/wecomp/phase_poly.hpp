#pragma once

// Multilinear polynomials over GF(2), kept as an XOR-set of AND-monomials.
// A monomial is a sorted vector of variable indices; the empty monomial is
// the constant 1.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "wecomp/errors.hpp"

namespace wecomp {

struct PhasePolynomial {
    std::vector<std::string> variable_names;
    std::set<std::vector<std::uint32_t>> monomials;

    /// XOR in a monomial: inserting an existing one cancels it.
    void toggle(std::vector<std::uint32_t> mono) {
        auto it = monomials.find(mono);
        if (it != monomials.end())
            monomials.erase(it);
        else
            monomials.insert(std::move(mono));
    }

    std::size_t degree() const {
        std::size_t d = 0;
        for (const auto& m : monomials) d = std::max(d, m.size());
        return d;
    }

    bool eval(std::uint32_t assignment) const {
        bool acc = false;
        for (const auto& m : monomials) {
            bool term = true;
            for (std::uint32_t v : m) term &= (assignment >> v) & 1u;
            acc ^= term;
        }
        return acc;
    }

    bool operator==(const PhasePolynomial&) const = default;
};

/// Gap of a GF(2) polynomial: #zeros - #ones over all assignments.
inline long long delta_bruteforce(const PhasePolynomial& f) {
    std::size_t vars = f.variable_names.size();
    if (vars > 22) throw ResourceError("delta enumeration limited to 22 variables");
    std::vector<std::uint32_t> masks;
    for (const auto& m : f.monomials) {
        std::uint32_t mask = 0;
        for (std::uint32_t v : m) {
            if (v >= vars) throw InternalError("monomial variable out of range");
            mask |= std::uint32_t{1} << v;
        }
        masks.push_back(mask);
    }
    long long acc = 0;
    std::uint64_t total = std::uint64_t{1} << vars;
    for (std::uint64_t x = 0; x < total; ++x) {
        unsigned p = 0;
        for (std::uint32_t mask : masks) p ^= ((x & mask) == mask) ? 1u : 0u;
        acc += p ? -1 : 1;
    }
    return acc;
}

}  // namespace wecomp
