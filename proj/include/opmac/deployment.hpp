#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "opmac/geometry.hpp"
#include "opmac/params.hpp"
#include "opmac/rng.hpp"

namespace opmac {

enum class Role : std::uint8_t { A, B };

struct Node {
    Vec2 pos;
    std::uint32_t pair = 0;
    Role role = Role::A;
};

/// A realized Poisson bipolar network on a square torus. Nodes are stored
/// pairwise: node 2k is the A member of pair k, node 2k+1 its B partner,
/// placed at toroidal distance exactly d with a uniformly random orientation.
class Deployment {
public:
    Deployment() = default;
    Deployment(double window_side, std::vector<Node> nodes)
        : side_(window_side), nodes_(std::move(nodes)) {}

    double window_side() const { return side_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t pair_count() const { return nodes_.size() / 2; }
    const Node& node(std::size_t i) const { return nodes_[i]; }
    const std::vector<Node>& nodes() const { return nodes_; }

    static std::size_t partner_of(std::size_t i) { return i ^ 1; }

    double distance(std::size_t i, std::size_t j) const {
        return toroidal_distance(nodes_[i].pos, nodes_[j].pos, side_);
    }

private:
    double side_ = 0.0;
    std::vector<Node> nodes_;
};

/// Samples a Poisson bipolar deployment: A positions ~ PPP(lambda) in the
/// window, each B partner displaced by distance d at a uniform angle and
/// wrapped on the torus. Deterministic for a given seed.
///
/// Rejects windows with side <= guard*d (default guard 10): too small for the
/// empty-ball interference model to be meaningful.
inline Deployment sample_deployment(const SystemParams& params, double window_side,
                                    std::uint64_t seed, double guard = 10.0) {
    params.validate();
    if (!(window_side > 0.0))
        throw std::invalid_argument("window_side must be positive");
    if (window_side <= guard * params.d)
        throw std::invalid_argument("window_side " + std::to_string(window_side) +
                                    " too small: must exceed " + std::to_string(guard) +
                                    "*d = " + std::to_string(guard * params.d));

    SplitMix rng(mix64(seed, 0x6465706c6f79ULL)); // realm tag for deployment draws
    const double mean = params.lambda * window_side * window_side;
    const long pairs = rng.poisson(mean);

    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(2 * pairs));
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (long k = 0; k < pairs; ++k) {
        Vec2 a{rng.uniform() * window_side, rng.uniform() * window_side};
        const double angle = rng.uniform() * two_pi;
        Vec2 b{wrap_coord(a.x + params.d * std::cos(angle), window_side),
               wrap_coord(a.y + params.d * std::sin(angle), window_side)};
        const auto pair_id = static_cast<std::uint32_t>(k);
        nodes.push_back(Node{a, pair_id, Role::A});
        nodes.push_back(Node{b, pair_id, Role::B});
    }
    return Deployment(window_side, std::move(nodes));
}

} // namespace opmac
