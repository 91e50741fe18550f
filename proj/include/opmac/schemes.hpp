#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "opmac/channel.hpp"
#include "opmac/closed_form.hpp"
#include "opmac/deployment.hpp"
#include "opmac/fixed_point.hpp"
#include "opmac/opportunity.hpp"
#include "opmac/params.hpp"

namespace opmac {

/// The compared access policies. FixedP is the diagnostic override used by the
/// analytic-consistency experiments: every node transmits with one global p.
enum class SchemeKind { MaxTx, PcTx, RandomTx, CsmaCa, FixedP };

/// How RandomTx maps measured interference to a transmission probability.
enum class RandomTxRule { Solver, ClosedForm, LinearOp };

inline const char* to_string(SchemeKind k) {
    switch (k) {
        case SchemeKind::MaxTx: return "max_tx";
        case SchemeKind::PcTx: return "pc_tx";
        case SchemeKind::RandomTx: return "random_tx";
        case SchemeKind::CsmaCa: return "csma_ca";
        default: return "fixed_p";
    }
}

inline const char* to_string(RandomTxRule r) {
    switch (r) {
        case RandomTxRule::Solver: return "solver";
        case RandomTxRule::ClosedForm: return "closed_form";
        default: return "linear_op";
    }
}

struct SchemeConfig {
    SchemeKind kind = SchemeKind::RandomTx;
    RandomTxRule random_tx_rule = RandomTxRule::Solver;
    RhsVariant solver_variant = RhsVariant::NumericIntegral;
    /// Sensed-power threshold relative to unit transmit power
    /// (-30 dBm sensing at 23 dBm transmit => 10^-5.3).
    double csma_sense_threshold = 5.011872336272722e-06;
    int csma_backoff_window = 16;          ///< contention mini-slots per slot
    double csma_contention_overhead = 0.0; ///< slot fraction lost to contention
    double fixed_p = 1.0;

    void validate() const {
        if (!(csma_sense_threshold > 0.0))
            throw std::invalid_argument("csma_sense_threshold must be positive");
        if (csma_backoff_window < 1)
            throw std::invalid_argument("csma_backoff_window must be >= 1");
        if (!(csma_contention_overhead >= 0.0 && csma_contention_overhead < 1.0))
            throw std::invalid_argument("csma_contention_overhead must lie in [0,1)");
        if (!(fixed_p >= 0.0 && fixed_p <= 1.0))
            throw std::invalid_argument("fixed_p must lie in [0,1]");
    }
};

/// Per-node, per-slot policy. `u` is the node's uniform draw for this slot
/// (Bernoulli trial, or the CSMA backoff mark). For CsmaCa the returned
/// decision carries only the mark in `p` (delta=false); admission is decided
/// jointly by csma_schedule.
inline PolicyDecision decide(const SchemeConfig& scheme, double I,
                             const SystemParams& params, double u) {
    switch (scheme.kind) {
        case SchemeKind::MaxTx:
            return {true, 1.0, 1.0};
        case SchemeKind::PcTx: {
            const double op = opportunistic_probability(I, params);
            return {true, op, 1.0};
        }
        case SchemeKind::RandomTx: {
            double p = 1.0;
            switch (scheme.random_tx_rule) {
                case RandomTxRule::Solver:
                    p = solve_optimal_p(I, params, scheme.solver_variant).p_star;
                    break;
                case RandomTxRule::ClosedForm:
                    p = closed_form_p(I, params);
                    break;
                case RandomTxRule::LinearOp:
                    p = opportunistic_probability(I, params);
                    break;
            }
            return {u < p, 1.0, p};
        }
        case SchemeKind::FixedP:
            return {u < scheme.fixed_p, 1.0, scheme.fixed_p};
        case SchemeKind::CsmaCa:
        default:
            // Backoff mark: mini-slot index plus an in-slot fraction, in [0,1).
            return {false, 1.0, u};
    }
}

inline int scheme_mini_slot(double mark, int window) {
    return static_cast<int>(mark * window);
}

/// Matern type-II style carrier-sense contention. Contenders are the nodes
/// whose mark is non-negative (one per backlogged pair); in mark order, a node
/// is admitted iff the aggregate received power from transmitters admitted in
/// strictly earlier mini-slots stays below the sensing threshold. Nodes
/// sharing a mini-slot cannot hear each other, so simultaneous starts are
/// possible, as in real backoff. Output depends only on the marks, not on node
/// enumeration order.
template <ChannelModel Channel>
std::vector<std::uint32_t> csma_schedule(const Deployment& dep, const Channel& channel,
                                         const SystemParams& params,
                                         const SchemeConfig& cfg,
                                         std::span<const double> marks) {
    struct Contender {
        double mark;
        int mini_slot;
        std::uint32_t node;
    };
    std::vector<Contender> contenders;
    for (std::uint32_t i = 0; i < dep.node_count(); ++i) {
        if (i < marks.size() && marks[i] >= 0.0) {
            const int slot = std::min(scheme_mini_slot(marks[i], cfg.csma_backoff_window),
                                      cfg.csma_backoff_window - 1);
            contenders.push_back({marks[i], slot, i});
        }
    }
    std::sort(contenders.begin(), contenders.end(), [](const Contender& a, const Contender& b) {
        if (a.mark != b.mark) return a.mark < b.mark;
        return a.node < b.node;
    });

    std::vector<std::uint32_t> admitted;
    std::vector<int> admitted_slot;
    for (const Contender& c : contenders) {
        double sensed = 0.0;
        for (std::size_t j = 0; j < admitted.size(); ++j) {
            if (admitted_slot[j] >= c.mini_slot) continue;
            sensed += channel.gain(admitted[j], c.node) *
                      std::pow(dep.distance(admitted[j], c.node), -params.alpha);
        }
        if (sensed < cfg.csma_sense_threshold) {
            admitted.push_back(c.node);
            admitted_slot.push_back(c.mini_slot);
        }
    }
    std::sort(admitted.begin(), admitted.end());
    return admitted;
}

} // namespace opmac
