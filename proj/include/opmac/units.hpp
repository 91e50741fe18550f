#pragma once

#include <cmath>
#include <stdexcept>

namespace opmac {

/// Decibel <-> linear power ratio. All internal quantities are linear;
/// dB/dBm values appear only at the I/O boundary.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) {
    if (x <= 0.0)
        throw std::domain_error("linear_to_db: value must be positive");
    return 10.0 * std::log10(x);
}

/// Received-power ratio of a `sense_dbm` threshold relative to a
/// `tx_power_dbm` transmitter, for use with unit transmit powers.
inline double dbm_threshold_ratio(double sense_dbm, double tx_power_dbm) {
    return db_to_linear(sense_dbm - tx_power_dbm);
}

} // namespace opmac
