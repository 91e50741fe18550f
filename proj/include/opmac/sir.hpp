#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "opmac/channel.hpp"
#include "opmac/deployment.hpp"
#include "opmac/params.hpp"

namespace opmac {

/// Signal-to-interference ratio at receiver `rx` for the transmission from its
/// pair partner, given every node's decision for the slot.
///
/// Numerator: partner's power times fading times d^-alpha. Denominator:
/// residual self-interference (active only when the receiver itself transmits,
/// i.e. full-duplex operation) plus aggregate interference from every other
/// active transmitter, pair excluded. Returns +infinity when the denominator
/// is exactly zero.
template <ChannelModel Channel>
double sir(std::size_t rx, std::span<const PolicyDecision> decisions,
           const Channel& channel, const Deployment& dep, const SystemParams& params) {
    const std::size_t tx = Deployment::partner_of(rx);
    if (!decisions[tx].delta)
        throw std::logic_error("sir: receiver's partner is not transmitting");

    const double signal =
        decisions[tx].power * channel.gain(tx, rx) * std::pow(params.d, -params.alpha);

    double denom = 0.0;
    if (decisions[rx].delta)
        denom += decisions[rx].power * params.beta;
    for (std::size_t m = 0; m < dep.node_count(); ++m) {
        if (m == tx || m == rx || !decisions[m].delta) continue;
        denom += decisions[m].power * channel.gain(m, rx) *
                 std::pow(dep.distance(m, rx), -params.alpha);
    }

    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return signal / denom;
}

} // namespace opmac
