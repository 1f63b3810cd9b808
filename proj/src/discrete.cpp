#include "pairkey/discrete.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pairkey {

namespace {

constexpr double kMassTol = 1e-12;

std::int64_t product(const std::array<int, 3>& a) {
    return static_cast<std::int64_t>(a[0]) * a[1] * a[2];
}

}  // namespace

void DiscreteSource::validate() const {
    for (int n : alphabet)
        if (n < 1) throw std::invalid_argument("alphabet sizes must be at least 1");
    if (static_cast<std::int64_t>(pmf.size()) != product(alphabet))
        throw std::invalid_argument("pmf size does not match alphabet sizes");
    double total = 0.0;
    for (double v : pmf) {
        if (!(v >= 0.0)) throw std::invalid_argument("pmf entries must be nonnegative");
        total += v;
    }
    if (std::abs(total - 1.0) > kMassTol)
        throw std::invalid_argument("pmf must sum to 1");
}

void AuxiliaryChannels::validate(const DiscreteSource& src) const {
    std::ostringstream bad;
    for (int c = 0; c < 6; ++c) {
        const Channel& channel = ch[c];
        const int inputs = src.alphabet[kInputUser[c]];
        if (channel.outputs < 1) {
            bad << "channel " << kNames[c] << " has no outputs; ";
            continue;
        }
        if (static_cast<int>(channel.rows.size()) != inputs * channel.outputs) {
            bad << "channel " << kNames[c] << " has wrong row count; ";
            continue;
        }
        for (int x = 0; x < inputs; ++x) {
            double total = 0.0;
            bool negative = false;
            for (int s = 0; s < channel.outputs; ++s) {
                const double v = channel.rows[static_cast<std::size_t>(x) * channel.outputs + s];
                if (!(v >= 0.0)) negative = true;
                total += v;
            }
            if (negative || std::abs(total - 1.0) > kMassTol)
                bad << "channel " << kNames[c] << " row " << x << " is not a pmf; ";
        }
    }
    const std::string msg = bad.str();
    if (!msg.empty()) throw std::invalid_argument(msg);
}

JointPmf build_joint(const DiscreteSource& src, const AuxiliaryChannels& aux,
                     std::int64_t cell_cap) {
    src.validate();
    aux.validate(src);

    JointPmf joint;
    for (int c = 0; c < 6; ++c) joint.dims[c] = aux.ch[c].outputs;
    joint.dims[X1] = src.alphabet[0];
    joint.dims[X2] = src.alphabet[1];
    joint.dims[X3] = src.alphabet[2];

    std::int64_t total = 1;
    for (int d : joint.dims) {
        total *= d;
        if (total > cell_cap) throw std::invalid_argument("joint pmf exceeds the cell cap");
    }
    joint.p.assign(static_cast<std::size_t>(total), 0.0);

    std::array<int, 9> idx{};
    for (std::int64_t cell = 0; cell < total; ++cell) {
        std::int64_t rest = cell;
        for (int v = 8; v >= 0; --v) {
            idx[v] = static_cast<int>(rest % joint.dims[v]);
            rest /= joint.dims[v];
        }
        const std::int64_t xcell =
            (static_cast<std::int64_t>(idx[X1]) * src.alphabet[1] + idx[X2]) *
                src.alphabet[2] +
            idx[X3];
        double p = src.pmf[static_cast<std::size_t>(xcell)];
        if (p == 0.0) continue;
        for (int c = 0; c < 6; ++c) {
            const int x = idx[AuxiliaryChannels::kInputUser[c] == 0   ? X1
                              : AuxiliaryChannels::kInputUser[c] == 1 ? X2
                                                                      : X3];
            p *= aux.ch[c].rows[static_cast<std::size_t>(x) * aux.ch[c].outputs + idx[c]];
            if (p == 0.0) break;
        }
        joint.p[static_cast<std::size_t>(cell)] = p;
    }
    return joint;
}

double entropy_of(const JointPmf& joint, const std::vector<int>& vars) {
    if (vars.empty()) return 0.0;

    std::int64_t size = 1;
    for (int v : vars) {
        if (v < 0 || v > 8) throw std::invalid_argument("variable index out of range");
        size *= joint.dims[v];
    }
    std::vector<double> marg(static_cast<std::size_t>(size), 0.0);

    // Strides are per position in `vars` so a repeated variable lands on the
    // diagonal of its own product space.
    std::vector<std::int64_t> stride(vars.size());
    std::int64_t s = 1;
    for (std::size_t i = vars.size(); i-- > 0;) {
        stride[i] = s;
        s *= joint.dims[vars[i]];
    }

    std::array<int, 9> idx{};
    const std::int64_t total = joint.cells();
    for (std::int64_t cell = 0; cell < total; ++cell) {
        const double p = joint.p[static_cast<std::size_t>(cell)];
        if (p == 0.0) continue;
        std::int64_t rest = cell;
        for (int v = 8; v >= 0; --v) {
            idx[v] = static_cast<int>(rest % joint.dims[v]);
            rest /= joint.dims[v];
        }
        std::int64_t m = 0;
        for (std::size_t i = 0; i < vars.size(); ++i) m += stride[i] * idx[vars[i]];
        marg[static_cast<std::size_t>(m)] += p;
    }

    double h = 0.0;
    for (double p : marg)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

double conditional_mi(const JointPmf& joint, const std::vector<int>& a,
                      const std::vector<int>& b, const std::vector<int>& c) {
    auto join = [](const std::vector<int>& x, const std::vector<int>& y) {
        std::vector<int> out = x;
        out.insert(out.end(), y.begin(), y.end());
        return out;
    };
    // Overlapping sets are fine: a repeated variable concentrates the joined
    // marginal on its diagonal, so I(X;X) comes out as H(X).
    const double mi = entropy_of(joint, join(a, c)) + entropy_of(joint, join(b, c)) -
                      entropy_of(joint, c) - entropy_of(joint, join(join(a, b), c));
    return std::max(mi, 0.0);
}

RegionCoefficients region_coefficients(const DiscreteSource& src,
                                       const AuxiliaryChannels& aux) {
    const JointPmf j = build_joint(src, aux);
    auto mi = [&](std::vector<int> a, std::vector<int> b, std::vector<int> c) {
        return conditional_mi(j, a, b, c);
    };
    auto clamp0 = [](double v) { return std::max(v, 0.0); };

    RegionCoefficients k;
    k.r12 = clamp0(mi({S12}, {X2}, {S23, S32}) - mi({S12}, {X3, S13}, {S23, S32}));
    k.r21 = clamp0(mi({S21}, {X1}, {S13, S31}) - mi({S21}, {X3, S23}, {S13, S31}));
    k.r13 = clamp0(mi({S13}, {X3}, {S23, S32}) - mi({S13}, {X2, S12}, {S23, S32}));
    k.r31 = clamp0(mi({S31}, {X1}, {S12, S21}) - mi({S31}, {X2, S32}, {S12, S21}));
    k.r23 = clamp0(mi({S23}, {X3}, {S13, S31}) - mi({S23}, {X1, S21}, {S13, S31}));
    k.r32 = clamp0(mi({S32}, {X2}, {S12, S21}) - mi({S32}, {X1, S31}, {S12, S21}));

    k.i12 = mi({S12}, {S21}, {X3, S13, S23});
    k.i13 = mi({S13}, {S31}, {X2, S12, S32});
    k.i23 = mi({S23}, {S32}, {X1, S21, S31});
    k.i1 = mi({S21}, {S31}, {X1});
    k.i2 = mi({S12}, {S32}, {X2});
    k.i3 = mi({S13}, {S23}, {X3});

    const double d12_1 = mi({S12}, {X1}, {X2, S32});
    const double d13_1 = mi({S13}, {X1}, {X3, S23});
    const double d21_2 = mi({S21}, {X2}, {X1, S31});
    const double d23_2 = mi({S23}, {X2}, {X3, S13});
    const double d31_3 = mi({S31}, {X3}, {X1, S21});
    const double d32_3 = mi({S32}, {X3}, {X2, S12});
    const double pair12 = mi({S13, S23}, {X1, X2}, {X3});
    const double pair13 = mi({S12, S32}, {X1, X3}, {X2});
    const double pair23 = mi({S21, S31}, {X2, X3}, {X1});

    k.c1 = d12_1 + d13_1;
    k.c2 = d21_2 + d23_2;
    k.c3 = d31_3 + d32_3;
    k.c12 = d12_1 + d21_2 + pair12;
    k.c13 = d13_1 + d31_3 + pair13;
    k.c23 = d23_2 + d32_3 + pair23;
    k.c123 = pair23 + pair13 + pair12;
    return k;
}

bool membership(const RegionCoefficients& k, const RateTriple& rates,
                const PublicRates& budgets) {
    constexpr double eps = 1e-9;
    const double r12 = rates.r12, r13 = rates.r13, r23 = rates.r23;
    if (!(r12 >= 0.0) || !(r13 >= 0.0) || !(r23 >= 0.0)) return false;

    const bool region = r12 <= k.rhs_r12() + eps && r13 <= k.rhs_r13() + eps &&
                        r23 <= k.rhs_r23() + eps &&
                        r12 + r13 <= k.rhs_r12_r13() + eps &&
                        r12 + r23 <= k.rhs_r12_r23() + eps &&
                        r13 + r23 <= k.rhs_r13_r23() + eps &&
                        r12 + r13 + r23 <= k.rhs_sum() + eps;
    if (!region) return false;

    auto ok = [](double lhs, double budget) {
        return std::isinf(budget) || lhs <= budget + eps;
    };
    return ok(k.c1, budgets.r1) && ok(k.c2, budgets.r2) && ok(k.c3, budgets.r3) &&
           ok(k.c12, budgets.r1 + budgets.r2) && ok(k.c13, budgets.r1 + budgets.r3) &&
           ok(k.c23, budgets.r2 + budgets.r3) &&
           ok(k.c123, budgets.r1 + budgets.r2 + budgets.r3);
}

DiscreteInstance discrete_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }

    DiscreteInstance inst;
    try {
        const auto& src = doc.at("source");
        const auto sizes = src.at("alphabet_sizes").get<std::vector<int>>();
        if (sizes.size() != 3)
            throw std::invalid_argument("alphabet_sizes must list three sizes");
        inst.source.alphabet = {sizes[0], sizes[1], sizes[2]};
        inst.source.pmf = src.at("pmf").get<std::vector<double>>();

        const auto& channels = doc.at("channels");
        for (int c = 0; c < 6; ++c) {
            const auto& jc = channels.at(AuxiliaryChannels::kNames[c]);
            auto& channel = inst.channels.ch[c];
            const auto rows = jc.at("rows").get<std::vector<std::vector<double>>>();
            if (rows.empty()) throw std::invalid_argument("channel has no rows");
            channel.outputs = static_cast<int>(rows[0].size());
            for (const auto& row : rows) {
                if (static_cast<int>(row.size()) != channel.outputs)
                    throw std::invalid_argument("channel rows have uneven lengths");
                channel.rows.insert(channel.rows.end(), row.begin(), row.end());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("discrete instance schema: ") + e.what());
    }

    inst.source.validate();
    inst.channels.validate(inst.source);
    return inst;
}

}  // namespace pairkey
