#pragma once

#include "ccem/errors.hpp"
#include "ccem/scalar.hpp"

#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace ccem {

/// One Kaehler-Einstein factor of the circle-bundle base.
/// n is the complex dimension, p the Einstein constant, q the Euler charge.
struct FactorSpec {
    int n = 0;
    int p = 0;
    int q = 0;
    double volume = 1.0;

    /// Point factors carry no geometry of their own.
    bool is_point() const { return n == 0; }
};

/// The external Einstein factor N.
struct ExternalFactorSpec {
    int n = 0;
    Rational epsilon = 0;
    double volume = 1.0;
};

/// Validated discrete data of the construction.
struct BundleSpec {
    std::vector<FactorSpec> factors;
    ExternalFactorSpec external;

    int m() const {
        int s = 2;
        for (const auto& f : factors) s += 2 * f.n;
        return s;
    }
    int p() const { return m() + external.n; }
    int r() const { return static_cast<int>(factors.size()); }

    /// Factors that enter the consistency system: the first factor always
    /// (it fixes the collapse locus s*), and every factor of positive
    /// dimension. Trailing point factors are bookkeeping padding only.
    bool coupled(int i) const { return i == 0 || factors[i].n > 0; }
};

enum class Branch { plus, minus };

inline const char* to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

/// Relation of p_1|q_i| to p_i, which drives the solvable branches.
enum class Restriction { greater, equal, less };

/// Classification of the solvable cases for a validated spec.
struct CaseTag {
    int epsilon_sign = 0;                               // -1, 0, +1
    std::vector<std::vector<Branch>> branch_options;    // per factor, empty if none
    std::vector<Restriction> restriction;               // per factor (index 0 unused)
    bool solvable = false;

    bool branch_legal(int i, Branch b) const {
        for (Branch x : branch_options[i])
            if (x == b) return true;
        return false;
    }
};

/// Admissible range for the continuous parameter nu. hi is always 0 (open).
struct NuInterval {
    Rational lo = 0;        // meaningful only if bounded_below
    bool bounded_below = false;
    bool closed_below = false;

    bool contains(const Rational& nu) const {
        if (nu >= 0) return false;
        if (!bounded_below) return true;
        return closed_below ? nu >= lo : nu > lo;
    }
};

/// Validate raw bundle data and normalize point conventions.
inline BundleSpec validate_spec(BundleSpec raw) {
    if (raw.factors.empty()) throw BadConfig("at least one factor is required");
    for (std::size_t i = 0; i < raw.factors.size(); ++i) {
        auto& f = raw.factors[i];
        if (f.q == 0) throw ZeroCharge("q_" + std::to_string(i + 1) + " = 0");
        if (f.n < 0) throw BadConfig("negative factor dimension");
        if (f.is_point()) {
            // CP^0 convention: p = 1, unit volume.
            f.p = 1;
            f.volume = 1.0;
        }
        if (f.volume <= 0) throw BadConfig("factor volume must be positive");
    }
    if (std::abs(raw.factors[0].q) != 1)
        throw NonUnitFirstCharge("|q_1| = " + std::to_string(std::abs(raw.factors[0].q)));
    if (raw.factors[0].p != raw.factors[0].n + 1)
        throw FirstFactorNotProjective("first factor needs p_1 = n_1 + 1, got p_1 = " +
                                       std::to_string(raw.factors[0].p));
    // r = 1 is represented as r = 2 with a point factor appended.
    if (raw.factors.size() == 1) raw.factors.push_back(FactorSpec{0, 1, 1, 1.0});

    if (raw.external.n < 0) throw BadConfig("negative external dimension");
    if (raw.external.n == 1 && raw.external.epsilon != 0)
        throw BadExternal("a 1-dimensional external factor is flat: epsilon must be 0");
    if (raw.external.n == 0) raw.external.volume = 1.0;
    if (raw.external.volume <= 0) throw BadConfig("external volume must be positive");
    return raw;
}

/// Classify the solvable branch structure of a validated spec.
inline CaseTag classify_case(const BundleSpec& spec) {
    CaseTag tag;
    const Rational& eps = spec.external.epsilon;
    tag.epsilon_sign = eps > 0 ? 1 : (eps < 0 ? -1 : 0);
    const int r = spec.r();
    const int p1 = spec.factors[0].p;
    tag.branch_options.resize(r);
    tag.restriction.resize(r, Restriction::greater);

    bool any_greater = false, any_equal = false;
    for (int i = 1; i < r; ++i) {
        if (!spec.coupled(i)) continue;
        const long lhs = static_cast<long>(p1) * std::abs(spec.factors[i].q);
        const long rhs = spec.factors[i].p;
        tag.restriction[i] = lhs > rhs   ? Restriction::greater
                             : lhs == rhs ? Restriction::equal
                                          : Restriction::less;
        if (tag.restriction[i] == Restriction::greater) any_greater = true;
        if (tag.restriction[i] == Restriction::equal) any_equal = true;
    }

    auto fail = [&](const std::string& why) -> CaseTag& {
        tag.solvable = false;
        for (auto& b : tag.branch_options) b.clear();
        throw NoAdmissibleCase(why);
    };

    if (tag.epsilon_sign <= 0) {
        // epsilon <= 0: each positive-p coupled factor i >= 2 needs p_1|q_i| > p_i;
        // non-positive p is solvable only with epsilon < 0.
        for (int i = 1; i < r; ++i) {
            if (!spec.coupled(i)) continue;
            if (spec.factors[i].p <= 0 && tag.epsilon_sign == 0)
                fail("p_" + std::to_string(i + 1) + " <= 0 forces epsilon < 0");
            if (spec.factors[i].p > 0 && tag.restriction[i] != Restriction::greater)
                fail("needs p_1|q_i| > p_i for factor " + std::to_string(i + 1));
        }
        tag.solvable = true;
        for (int i = 0; i < r; ++i) tag.branch_options[i] = {Branch::plus};
        return tag;
    }

    // epsilon > 0
    for (int i = 1; i < r; ++i)
        if (spec.coupled(i) && spec.factors[i].p <= 0)
            fail("p_" + std::to_string(i + 1) + " <= 0 forces epsilon < 0");
    tag.solvable = true;
    const bool all_less = !any_greater && !any_equal;
    tag.branch_options[0] =
        all_less ? std::vector<Branch>{Branch::plus, Branch::minus}
                 : std::vector<Branch>{Branch::plus};
    for (int i = 1; i < r; ++i) {
        if (!spec.coupled(i)) {
            tag.branch_options[i] = {Branch::plus};
            continue;
        }
        tag.branch_options[i] = tag.restriction[i] == Restriction::greater
                                    ? std::vector<Branch>{Branch::plus, Branch::minus}
                                    : std::vector<Branch>{Branch::minus};
    }
    return tag;
}

/// Admissible nu-range for a solvable case.
inline NuInterval admissible_nu(const BundleSpec& spec, const CaseTag& tag) {
    NuInterval iv;
    if (tag.epsilon_sign <= 0) return iv;  // (-inf, 0)
    // phi = min over coupled factors of p_i^2 / q_i^2
    Rational phi;
    bool first = true;
    for (int i = 0; i < spec.r(); ++i) {
        if (!spec.coupled(i)) continue;
        Rational v(static_cast<long>(spec.factors[i].p) * spec.factors[i].p,
                   static_cast<long>(spec.factors[i].q) * spec.factors[i].q);
        if (first || v < phi) phi = v;
        first = false;
    }
    iv.bounded_below = true;
    iv.lo = -phi / spec.external.epsilon;
    // The left endpoint is excluded exactly in the all-<=, some-= subcase.
    bool any_greater = false, any_equal = false;
    for (int i = 1; i < spec.r(); ++i) {
        if (!spec.coupled(i)) continue;
        if (tag.restriction[i] == Restriction::greater) any_greater = true;
        if (tag.restriction[i] == Restriction::equal) any_equal = true;
    }
    iv.closed_below = !(any_equal && !any_greater);
    return iv;
}

} // namespace ccem
