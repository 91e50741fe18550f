#pragma once

#include <stdexcept>
#include <string>

namespace opmac {

enum class Duplex { Half, Full };

inline const char* to_string(Duplex d) { return d == Duplex::Half ? "half" : "full"; }

/// Physical and model constants of the Poisson bipolar network.
///
/// `lambda` is the density of each half of the bipolar process, so the total
/// node density is 2*lambda. `theta` and `beta` are linear-scale values;
/// dB conversion happens at the I/O boundary only.
struct SystemParams {
    double lambda = 1e-3;      ///< node density per unit area, per process half
    double alpha = 4.0;        ///< path-loss exponent, must exceed 2
    double theta = 1.0;        ///< SIR decoding threshold (linear)
    double d = 2.0;            ///< transmitter-receiver pair distance
    double beta = 1e-11;       ///< residual self-interference factor in [0,1]
    Duplex duplex = Duplex::Full;

    void validate() const {
        if (!(alpha > 2.0))
            throw std::invalid_argument("alpha must exceed 2, got " + std::to_string(alpha));
        if (!(theta > 0.0))
            throw std::invalid_argument("theta must be positive, got " + std::to_string(theta));
        if (!(d > 0.0))
            throw std::invalid_argument("d must be positive, got " + std::to_string(d));
        if (!(lambda >= 0.0))
            throw std::invalid_argument("lambda must be nonnegative, got " + std::to_string(lambda));
        if (!(beta >= 0.0 && beta <= 1.0))
            throw std::invalid_argument("beta must lie in [0,1], got " + std::to_string(beta));
    }
};

/// One node's action for one slot: transmit indicator, linear transmit power,
/// and the transmission probability the indicator was drawn from.
struct PolicyDecision {
    bool delta = false;   ///< 1 if the node transmits this slot
    double power = 1.0;   ///< linear transmit power in [0,1]
    double p = 1.0;       ///< transmission probability used to draw delta
};

} // namespace opmac
