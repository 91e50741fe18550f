#include <catch2/catch_amalgamated.hpp>
#include <vector>

#include "opmac/channel.hpp"
#include "opmac/deployment.hpp"
#include "opmac/sir.hpp"

using namespace opmac;

namespace {

SystemParams unit_params() {
    SystemParams p;
    p.lambda = 0.0;
    p.alpha = 4.0;
    p.theta = 1.0;
    p.d = 1.0; // unit pair distance so direct path loss is 1
    p.beta = 0.0;
    return p;
}

// Hand-built layout: three pairs, every relevant distance exactly 1.
Deployment three_pair_layout() {
    std::vector<Node> nodes = {
        {{0.0, 0.0}, 0, Role::A},  {{0.0, 1.0}, 0, Role::B},
        {{1.0, 1.0}, 1, Role::A},  {{1.0, 2.0}, 1, Role::B},
        {{-1.0, 1.0}, 2, Role::A}, {{-1.0, 2.0}, 2, Role::B},
    };
    return Deployment(100.0, std::move(nodes));
}

} // namespace

TEST_CASE("hashed channel: unit-mean fading, per-slot redraw, determinism") {
    const HashedChannel ch(123, 5);
    const HashedChannel ch_same(123, 5);
    const HashedChannel ch_next(123, 6);

    CHECK(ch.gain(3, 9) == ch_same.gain(3, 9));
    CHECK(ch.gain(3, 9) != ch_next.gain(3, 9));
    CHECK(ch.gain(3, 9) != ch.gain(9, 3)); // ordered pairs are independent draws

    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = HashedChannel(9, static_cast<std::uint64_t>(i)).gain(0, 1);
        REQUIRE(g >= 0.0);
        sum += g;
    }
    CHECK_THAT(sum / n, Catch::Matchers::WithinAbs(1.0, 4.0 / std::sqrt(double(n))));
}

TEST_CASE("sir: zero denominator is +infinity") {
    std::vector<Node> nodes = {{{0, 0}, 0, Role::A}, {{0, 1}, 0, Role::B}};
    const Deployment dep(100.0, std::move(nodes));
    MapChannel ch;
    ch.set_gain(0, 1, 1.0);
    std::vector<PolicyDecision> dec = {{true, 1.0, 1.0}, {false, 1.0, 0.0}};
    const SystemParams p = unit_params();
    CHECK(sir(1, dec, ch, dep, p) == std::numeric_limits<double>::infinity());
}

TEST_CASE("sir: full-duplex single pair reduces to d^-alpha / beta") {
    std::vector<Node> nodes = {{{0, 0}, 0, Role::A}, {{0, 1}, 0, Role::B}};
    const Deployment dep(100.0, std::move(nodes));
    MapChannel ch;
    ch.set_gain(0, 1, 1.0);
    std::vector<PolicyDecision> dec = {{true, 1.0, 1.0}, {true, 1.0, 1.0}};
    SystemParams p = unit_params();
    p.beta = 1e-3;
    p.d = 2.0;
    CHECK_THAT(sir(1, dec, ch, dep, p),
               Catch::Matchers::WithinRel(std::pow(2.0, -4.0) / 1e-3, 1e-12));
}

TEST_CASE("sir: two pairs with hand-set gains and constant external term") {
    // Direct gain 0.04 into RX1, cross interferer 0.05, external interferer
    // contributing exactly 0.01: SIR1 = 0.04 / (0.05 + 0.01).
    const Deployment dep = three_pair_layout();
    MapChannel ch;
    ch.set_gain(0, 1, 0.04); // pair-1 signal, distance 1
    ch.set_gain(2, 1, 0.05); // pair-2 interference at RX1, distance 1
    ch.set_gain(4, 1, 0.01); // external constant, distance 1
    std::vector<PolicyDecision> dec(6);
    dec[0] = dec[2] = dec[4] = {true, 1.0, 1.0}; // all A-nodes transmit (Max TX, HD)
    const SystemParams p = unit_params();
    CHECK_THAT(sir(1, dec, ch, dep, p),
               Catch::Matchers::WithinRel(0.04 / (0.05 + 0.01), 1e-12));
}

TEST_CASE("sir: requires the partner to transmit") {
    const Deployment dep = three_pair_layout();
    MapChannel ch;
    std::vector<PolicyDecision> dec(6);
    CHECK_THROWS_AS(sir(1, dec, ch, dep, unit_params()), std::logic_error);
}

TEST_CASE("sir: scale invariance and monotonicity") {
    const Deployment dep = three_pair_layout();
    MapChannel ch;
    ch.set_gain(0, 1, 0.7);
    ch.set_gain(2, 1, 0.2);
    ch.set_gain(4, 1, 0.05);
    SystemParams p = unit_params();
    p.beta = 1e-4;

    std::vector<PolicyDecision> dec(6);
    dec[0] = dec[2] = dec[4] = {true, 1.0, 1.0};
    dec[1] = {true, 1.0, 1.0}; // RX1 also transmits: beta term active
    const double base = sir(1, dec, ch, dep, p);

    // scaling every power by c leaves the ratio unchanged
    for (double c : {0.25, 3.0}) {
        std::vector<PolicyDecision> scaled = dec;
        for (auto& dcn : scaled) dcn.power *= c;
        // power>1 is out of contract for policies but fine for the ratio check
        CHECK_THAT(sir(1, scaled, ch, dep, p), Catch::Matchers::WithinRel(base, 1e-12));
    }

    // monotone: larger interferer gain or larger beta decreases SIR,
    // larger direct gain increases it
    MapChannel worse = ch;
    worse.set_gain(2, 1, 0.4);
    CHECK(sir(1, dec, worse, dep, p) < base);
    SystemParams pb = p;
    pb.beta = 1e-2;
    CHECK(sir(1, dec, ch, dep, pb) < base);
    MapChannel better = ch;
    better.set_gain(0, 1, 1.4);
    CHECK(sir(1, dec, better, dep, p) > base);
}
