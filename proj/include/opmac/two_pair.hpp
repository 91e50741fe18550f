#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace opmac {

/// Direct and cross link gains of the two-pair worked example; path loss is
/// absorbed into the gains. h_ij is the gain from transmitter i to receiver j.
struct TwoPairGains {
    double h11 = 0.0;
    double h22 = 0.0;
    double h12 = 0.0;
    double h21 = 0.0;
};

/// One access mode's operating point in the two-pair picture.
struct TwoPairMode {
    std::string mode;
    double sir1 = 0.0;        ///< time-averaged SIR at RX1 (silent slots count as 0)
    double sir2 = 0.0;
    double sir1_active = 0.0; ///< SIR averaged over slots where TX1 transmits
    double sir2_active = 0.0;
    double resource1 = 0.0;   ///< (tx-time fraction) x (tx power)
    double resource2 = 0.0;
};

/// The two-pair comparison of the three access modes, with constant external
/// interference. Max TX: both always transmit at unit power. PC TX: both
/// always transmit at power OP_i. Random TX: unit power, transmit with
/// probability p_i = OP_i; the reported SIR averages the four joint activity
/// states weighted by (p1, p2).
inline std::array<TwoPairMode, 3> two_pair_demo(const TwoPairGains& g, double external_I,
                                                double op1, double op2) {
    if (g.h11 < 0 || g.h22 < 0 || g.h12 < 0 || g.h21 < 0)
        throw std::invalid_argument("two_pair_demo: gains must be nonnegative");
    if (op1 < 0 || op1 > 1 || op2 < 0 || op2 > 1)
        throw std::invalid_argument("two_pair_demo: OP values must lie in [0,1]");

    auto sir = [&](double p_own, double h_own, double p_other, double h_cross) {
        return p_own * h_own / (p_other * h_cross + external_I);
    };

    std::array<TwoPairMode, 3> out;

    out[0].mode = "max_tx";
    out[0].sir1 = out[0].sir1_active = sir(1.0, g.h11, 1.0, g.h21);
    out[0].sir2 = out[0].sir2_active = sir(1.0, g.h22, 1.0, g.h12);
    out[0].resource1 = out[0].resource2 = 1.0;

    out[1].mode = "pc_tx";
    out[1].sir1 = out[1].sir1_active = sir(op1, g.h11, op2, g.h21);
    out[1].sir2 = out[1].sir2_active = sir(op2, g.h22, op1, g.h12);
    out[1].resource1 = op1;
    out[1].resource2 = op2;

    out[2].mode = "random_tx";
    out[2].sir1_active = op2 * sir(1.0, g.h11, 1.0, g.h21) +
                         (1.0 - op2) * sir(1.0, g.h11, 0.0, g.h21);
    out[2].sir2_active = op1 * sir(1.0, g.h22, 1.0, g.h12) +
                         (1.0 - op1) * sir(1.0, g.h22, 0.0, g.h12);
    out[2].sir1 = op1 * out[2].sir1_active;
    out[2].sir2 = op2 * out[2].sir2_active;
    out[2].resource1 = op1;
    out[2].resource2 = op2;

    return out;
}

} // namespace opmac
