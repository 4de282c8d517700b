#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "nehari/errors.hpp"

namespace nehari {

/// Homogeneity degrees of the four functionals under the scaling action:
/// I and J scale with degree s, F with q, G with r, and r > s > q > 0.
struct ScalingExponents {
    double s = 0.0;
    double q = 0.0;
    double r = 0.0;

    ScalingExponents() = default;
    ScalingExponents(double s_, double q_, double r_) : s(s_), q(q_), r(r_) { validate(); }

    void validate() const {
        if (!(q > 0.0 && s > q && r > s))
            throw ConfigError("scaling exponents must satisfy r > s > q > 0, got r=" +
                              std::to_string(r) + " s=" + std::to_string(s) + " q=" +
                              std::to_string(q));
    }
};

/// The six admissible sign patterns of (F, G) on nonzero states.
enum class SignCase { I = 1, II, III, IV, V, VI };

/// Half-line of admissible energies c for a sign case.
struct EnergyInterval {
    double lo;
    double hi;

    bool contains(double c) const { return c > lo && c < hi; } // open interval
    bool is_negative_axis() const { return hi == 0.0; }
};

inline std::string to_string(SignCase sc) {
    switch (sc) {
        case SignCase::I: return "I";
        case SignCase::II: return "II";
        case SignCase::III: return "III";
        case SignCase::IV: return "IV";
        case SignCase::V: return "V";
        case SignCase::VI: return "VI";
    }
    return "?";
}

inline SignCase sign_case_from_string(const std::string& s) {
    if (s == "I") return SignCase::I;
    if (s == "II") return SignCase::II;
    if (s == "III") return SignCase::III;
    if (s == "IV") return SignCase::IV;
    if (s == "V") return SignCase::V;
    if (s == "VI") return SignCase::VI;
    throw ConfigError("unknown sign case '" + s + "'");
}

/// Required sign of F on nonzero states: +1, -1, or 0 (identically zero).
inline int expected_sign_F(SignCase sc) {
    switch (sc) {
        case SignCase::I:
        case SignCase::V: return +1;
        case SignCase::II:
        case SignCase::VI: return -1;
        default: return 0;
    }
}

/// Required sign of G on nonzero states.
inline int expected_sign_G(SignCase sc) {
    switch (sc) {
        case SignCase::III:
        case SignCase::VI: return +1;
        case SignCase::IV:
        case SignCase::V: return -1;
        default: return 0;
    }
}

/// Pure cases have exactly one active nonlinearity.
inline bool is_pure_case(SignCase sc) {
    return sc == SignCase::I || sc == SignCase::II || sc == SignCase::III || sc == SignCase::IV;
}

/// Energies for which the fiber equation has a unique positive root:
/// (-inf, 0) in cases I, IV, V and (0, inf) in cases II, III, VI.
inline EnergyInterval admissible_energy_interval(SignCase sc) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (sc) {
        case SignCase::I:
        case SignCase::IV:
        case SignCase::V: return {-inf, 0.0};
        default: return {0.0, inf};
    }
}

/// Values of the four functionals at one state.
struct FunctionalValues {
    double i_s = 0.0;
    double j_s = 0.0;
    double f = 0.0;
    double g = 0.0;
};

/// Check the (F, G) signs of a nonzero state against the active case.
inline bool signs_consistent(SignCase sc, double F, double G) {
    auto ok = [](int expected, double v) {
        if (expected == 0) return v == 0.0;
        return expected > 0 ? v > 0.0 : v < 0.0;
    };
    return ok(expected_sign_F(sc), F) && ok(expected_sign_G(sc), G);
}

inline void require_signs(SignCase sc, double F, double G) {
    if (!signs_consistent(sc, F, G))
        throw CaseMismatchError("functional signs F=" + std::to_string(F) + ", G=" +
                                std::to_string(G) + " inconsistent with case " + to_string(sc));
}

inline void require_admissible_energy(SignCase sc, double c) {
    if (!admissible_energy_interval(sc).contains(c))
        throw CaseMismatchError("energy c=" + std::to_string(c) +
                                " outside the open admissible interval of case " + to_string(sc));
}

} // namespace nehari
