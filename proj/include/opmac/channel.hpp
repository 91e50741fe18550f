#pragma once

#include <concepts>
#include <cstdint>
#include <unordered_map>

#include "opmac/rng.hpp"

namespace opmac {

/// Anything that yields the fading power gain h_mk for an ordered
/// (transmitter, receiver) node index pair.
template <typename C>
concept ChannelModel = requires(const C& c, std::size_t m, std::size_t k) {
    { c.gain(m, k) } -> std::convertible_to<double>;
};

/// Per-slot block-fading realization: i.i.d. unit-mean exponential gains,
/// redrawn every slot. Gains are produced by a counter-based hash of
/// (seed, slot, m, k), so lookups are O(1), order-independent, and identical
/// across repeated queries without storing an O(n^2) table.
class HashedChannel {
public:
    HashedChannel(std::uint64_t seed, std::uint64_t slot)
        : base_(mix64(seed, 0x6368616eULL, slot)) {}

    double gain(std::size_t m, std::size_t k) const {
        return exponential1(mix64(base_, static_cast<std::uint64_t>(m),
                                  static_cast<std::uint64_t>(k)));
    }

private:
    std::uint64_t base_;
};

/// Hand-constructed channel for tests and worked examples: explicit gains for
/// selected ordered pairs, zero elsewhere.
class MapChannel {
public:
    void set_gain(std::size_t m, std::size_t k, double h) { gains_[key(m, k)] = h; }

    double gain(std::size_t m, std::size_t k) const {
        auto it = gains_.find(key(m, k));
        return it == gains_.end() ? 0.0 : it->second;
    }

private:
    static std::uint64_t key(std::size_t m, std::size_t k) {
        return (static_cast<std::uint64_t>(m) << 32) | static_cast<std::uint64_t>(k);
    }
    std::unordered_map<std::uint64_t, double> gains_;
};

static_assert(ChannelModel<HashedChannel>);
static_assert(ChannelModel<MapChannel>);

} // namespace opmac
