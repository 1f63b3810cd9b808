#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pairkey/rates.hpp"

namespace pairkey {

// Finite-alphabet joint source p(x1, x2, x3), row-major with x1 slowest.
struct DiscreteSource {
    std::array<int, 3> alphabet{2, 2, 2};
    std::vector<double> pmf;

    void validate() const;  // entries >= 0, total mass 1 within 1e-12
};

// The six test channels p(s_ij | x_i), each a row-stochastic matrix with one
// row per input symbol. Direction order: s12, s13, s21, s23, s31, s32.
struct AuxiliaryChannels {
    struct Channel {
        int outputs = 1;
        std::vector<double> rows;  // rows[x * outputs + s]
    };
    std::array<Channel, 6> ch;

    static constexpr std::array<const char*, 6> kNames{"s12", "s13", "s21",
                                                       "s23", "s31", "s32"};
    static constexpr std::array<int, 6> kInputUser{0, 0, 1, 1, 2, 2};

    void validate(const DiscreteSource& src) const;
};

// Dense joint pmf over (s12, s13, s21, s23, s31, s32, x1, x2, x3).
struct JointPmf {
    std::array<int, 9> dims{};
    std::vector<double> p;

    std::int64_t cells() const { return static_cast<std::int64_t>(p.size()); }
};

// Variable indices into JointPmf::dims.
enum JointVar : int { S12 = 0, S13, S21, S23, S31, S32, X1, X2, X3 };

JointPmf build_joint(const DiscreteSource& src, const AuxiliaryChannels& aux,
                     std::int64_t cell_cap = 1000000);

// I(A;B|C) in bits from marginalized entropies; c may be empty. Tiny negative
// values from rounding are clamped to 0.
double conditional_mi(const JointPmf& joint, const std::vector<int>& a,
                      const std::vector<int>& b, const std::vector<int>& c);

double entropy_of(const JointPmf& joint, const std::vector<int>& vars);

// Every coefficient of the discrete inner region: the six one-way key terms
// (already clamped at 0), the six coupling terms, and the seven public-rate
// constraint left-hand sides. All in bits.
struct RegionCoefficients {
    double r12 = 0, r21 = 0, r13 = 0, r31 = 0, r23 = 0, r32 = 0;
    double i12 = 0, i13 = 0, i23 = 0, i1 = 0, i2 = 0, i3 = 0;
    double c1 = 0, c2 = 0, c3 = 0, c12 = 0, c13 = 0, c23 = 0, c123 = 0;

    double rhs_r12() const { return r12 + r21 - i12; }
    double rhs_r13() const { return r13 + r31 - i13; }
    double rhs_r23() const { return r23 + r32 - i23; }
    double rhs_r12_r13() const { return r12 + r21 + r13 + r31 - i12 - i13 - i1; }
    double rhs_r12_r23() const { return r12 + r21 + r23 + r32 - i12 - i23 - i2; }
    double rhs_r13_r23() const { return r13 + r31 + r23 + r32 - i13 - i23 - i3; }
    double rhs_sum() const {
        return r12 + r21 + r13 + r31 + r23 + r32 - i12 - i13 - i23 - i1 - i2 - i3;
    }
};

RegionCoefficients region_coefficients(const DiscreteSource& src,
                                       const AuxiliaryChannels& aux);

// Membership of one rate triple for ONE auxiliary-channel choice: the seven
// region inequalities plus the seven public-rate constraints. Boundary rates
// are accepted (closure semantics).
bool membership(const RegionCoefficients& coeffs, const RateTriple& rates,
                const PublicRates& budgets);

// JSON loading per the documented schema (see README): {"source": {...},
// "channels": {...}}. Throws std::invalid_argument naming offending rows.
struct DiscreteInstance {
    DiscreteSource source;
    AuxiliaryChannels channels;
};
DiscreteInstance discrete_from_json_text(const std::string& text);

}  // namespace pairkey
