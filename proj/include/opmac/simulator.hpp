#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "opmac/channel.hpp"
#include "opmac/deployment.hpp"
#include "opmac/opportunity.hpp"
#include "opmac/params.hpp"
#include "opmac/schemes.hpp"
#include "opmac/sir.hpp"
#include "opmac/stats.hpp"

namespace opmac {

/// Instant: energy detection sees the faded aggregate (per-slot gains).
/// FadingAveraged: unit gains, matching the analytic model that conditions on
/// average received powers.
enum class MeasureMode { Instant, FadingAveraged };

struct SimOptions {
    long slots = 1000;
    long warmup = 100;
    std::uint64_t seed = 1;
    MeasureMode measure = MeasureMode::Instant;
    bool exclude_partner = true;       ///< partner's known waveform is not interference
    double interference_floor = 1e-12;
    bool use_policy_table = true;      ///< tabulated p*(I) inside the slot loop

    void validate() const {
        if (warmup < 1) throw std::invalid_argument("warmup must be >= 1");
        if (slots <= warmup) throw std::invalid_argument("slots must exceed warmup");
        if (!(interference_floor > 0.0))
            throw std::invalid_argument("interference_floor must be positive");
    }
};

/// Aggregate TX-side interference at `node` from the given active set:
/// sum of P_m * gain * ||m - node||^-alpha over active transmitters, the node
/// itself and (by default) its pair partner excluded.
template <ChannelModel Channel>
double measure_interference(std::size_t node, std::span<const PolicyDecision> active,
                            const Channel& channel, const Deployment& dep,
                            const SystemParams& params, MeasureMode mode,
                            bool exclude_partner = true) {
    const std::size_t partner = Deployment::partner_of(node);
    double sum = 0.0;
    for (std::size_t m = 0; m < active.size(); ++m) {
        if (m == node || (exclude_partner && m == partner) || !active[m].delta) continue;
        const double g = mode == MeasureMode::Instant ? channel.gain(m, node) : 1.0;
        sum += active[m].power * g * std::pow(dep.distance(m, node), -params.alpha);
    }
    return sum;
}

namespace detail {

inline std::uint64_t channel_seed(std::uint64_t seed) { return mix64(seed, 0x636e6cULL); }
inline std::uint64_t decide_seed(std::uint64_t seed) { return mix64(seed, 0x646563ULL); }
inline std::uint64_t mark_seed(std::uint64_t seed) { return mix64(seed, 0x6d726bULL); }

/// Pairwise path-loss cache; falls back to on-the-fly pow() for huge networks.
class PathLoss {
public:
    PathLoss(const Deployment& dep, double alpha) : dep_(&dep), alpha_(alpha) {
        const std::size_t n = dep.node_count();
        if (n >= 2 && n <= 2048) {
            table_.assign(n * n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double v = std::pow(dep.distance(i, j), -alpha);
                    table_[i * n + j] = v;
                    table_[j * n + i] = v;
                }
        }
    }

    double operator()(std::size_t i, std::size_t j) const {
        if (!table_.empty()) return table_[i * dep_->node_count() + j];
        return std::pow(dep_->distance(i, j), -alpha_);
    }

private:
    const Deployment* dep_;
    double alpha_;
    std::vector<double> table_;
};

} // namespace detail

/// Tabulated transmission probability p*(I) on a log-interference grid, so the
/// slot loop does not re-run the fixed-point solve per node per slot. Built
/// from the exact solver; for alpha=4 the NumericIntegral variant is backed by
/// its analytic arccot reduction (they agree to ~1e-8, far below the table's
/// interpolation error, which tests bound at 1e-6).
class PolicyTable {
public:
    static PolicyTable build(const SchemeConfig& scheme, const SystemParams& params,
                             double floor, double i_max = 1e4, int points = 16384) {
        PolicyTable t;
        t.log_lo_ = std::log10(floor);
        t.log_hi_ = std::log10(i_max);
        t.values_.resize(points);
        RhsVariant variant = scheme.solver_variant;
        if (variant == RhsVariant::NumericIntegral && params.alpha == 4.0)
            variant = RhsVariant::DerivedArccot;
        for (int i = 0; i < points; ++i) {
            const double logI =
                t.log_lo_ + (t.log_hi_ - t.log_lo_) * i / static_cast<double>(points - 1);
            double p = solve_optimal_p(std::pow(10.0, logI), params, variant).p_star;
            if (i > 0 && p > t.values_[i - 1]) p = t.values_[i - 1]; // p*(I) is non-increasing
            t.values_[i] = p;
        }
        return t;
    }

    double p_of(double I) const {
        const double logI = std::log10(I);
        const double n1 = static_cast<double>(values_.size() - 1);
        double pos = (logI - log_lo_) / (log_hi_ - log_lo_) * n1;
        if (pos <= 0.0) return values_.front();
        if (pos >= n1) return values_.back();
        const auto i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        return values_[i] * (1.0 - frac) + values_[i + 1] * frac;
    }

private:
    double log_lo_ = -12.0, log_hi_ = 4.0;
    std::vector<double> values_;
};

/// Per-slot snapshot handed to an optional trace callback (test hook).
struct SlotView {
    long slot = 0;
    std::span<const PolicyDecision> decisions;
    std::span<const double> measured;       ///< floored TX-side interference per node
    std::span<const std::uint8_t> success;  ///< per link (indexed by TX node)
};

using TraceFn = std::function<void(const SlotView&)>;

/// Single-replication outcome.
struct RunResult {
    std::vector<double> link_throughput; ///< counted links, indexed in TX-node order
    double mean_link_throughput = 0.0;
    double pf_utility = 0.0;
    double eps_log = 0.0;
    long slots = 0;
    long warmup = 0;
};

/// Slotted Monte Carlo run on a fixed deployment. Per slot: every potential
/// transmitter measures interference from the previous slot's realized active
/// set (slot 0 senses an all-on worst case), the scheme decides, fading is
/// redrawn, and every attempted link is scored by SIR >= theta. Outcomes
/// accumulate after warmup. Deterministic for a given seed.
inline RunResult run(const Deployment& dep, const SystemParams& params,
                     const SchemeConfig& scheme, const SimOptions& opts,
                     const PolicyTable* table = nullptr, const TraceFn& trace = {}) {
    params.validate();
    scheme.validate();
    opts.validate();

    const std::size_t n = dep.node_count();
    const bool full = params.duplex == Duplex::Full && scheme.kind != SchemeKind::CsmaCa;
    const bool needs_measure =
        scheme.kind == SchemeKind::PcTx || scheme.kind == SchemeKind::RandomTx;
    const detail::PathLoss pl(dep, params.alpha);

    // Counted links are identified by their TX node: pairs transmit A->B always,
    // and B->A as well under full duplex.
    std::vector<std::uint32_t> tx_nodes;
    for (std::uint32_t i = 0; i < n; ++i)
        if (full || dep.node(i).role == Role::A) tx_nodes.push_back(i);

    const std::uint64_t chs = detail::channel_seed(opts.seed);
    const std::uint64_t des = detail::decide_seed(opts.seed);
    const std::uint64_t mks = detail::mark_seed(opts.seed);

    std::vector<PolicyDecision> prev(n, PolicyDecision{true, 1.0, 1.0}); // all-on bootstrap
    std::vector<PolicyDecision> cur(n);
    std::vector<double> measured(n, 0.0);
    std::vector<double> marks;
    std::vector<std::uint32_t> active;
    std::vector<long> successes(n, 0), attempts(n, 0);
    std::vector<std::uint8_t> slot_success(n, 0);

    for (long t = 0; t < opts.slots; ++t) {
        const HashedChannel ch_prev(chs, static_cast<std::uint64_t>(t));
        const HashedChannel ch_cur(chs, static_cast<std::uint64_t>(t) + 1);

        // Measurement from the previous slot's active set, then decisions.
        std::fill(cur.begin(), cur.end(), PolicyDecision{false, 1.0, 0.0});
        if (scheme.kind == SchemeKind::CsmaCa) {
            marks.assign(n, -1.0);
            for (std::uint32_t i : tx_nodes)
                marks[i] = uniform01(mix64(mks, static_cast<std::uint64_t>(t), i));
            for (std::uint32_t i : csma_schedule(dep, ch_cur, params, scheme, marks))
                cur[i] = PolicyDecision{true, 1.0, 1.0};
        } else {
            for (std::uint32_t i : tx_nodes) {
                double I = 0.0;
                if (needs_measure) {
                    const std::size_t partner = Deployment::partner_of(i);
                    for (std::size_t m = 0; m < n; ++m) {
                        if (m == i || (opts.exclude_partner && m == partner) || !prev[m].delta)
                            continue;
                        const double g = opts.measure == MeasureMode::Instant
                                             ? ch_prev.gain(m, i)
                                             : 1.0;
                        I += prev[m].power * g * pl(m, i);
                    }
                }
                I = apply_interference_floor(I, opts.interference_floor);
                measured[i] = I;
                const double u = uniform01(mix64(des, static_cast<std::uint64_t>(t), i));
                if (table && scheme.kind == SchemeKind::RandomTx &&
                    scheme.random_tx_rule == RandomTxRule::Solver) {
                    const double p = table->p_of(I);
                    cur[i] = PolicyDecision{u < p, 1.0, p};
                } else {
                    cur[i] = decide(scheme, I, params, u);
                }
            }
        }

        // Realized transmissions and per-link SIR under fresh fading.
        active.clear();
        for (std::uint32_t i = 0; i < n; ++i)
            if (cur[i].delta) active.push_back(i);

        std::fill(slot_success.begin(), slot_success.end(), 0);
        for (std::uint32_t txn : tx_nodes) {
            if (!cur[txn].delta) continue;
            const std::size_t rx = Deployment::partner_of(txn);
            const double signal =
                cur[txn].power * ch_cur.gain(txn, rx) * std::pow(params.d, -params.alpha);
            double denom = 0.0;
            if (cur[rx].delta) denom += cur[rx].power * params.beta;
            for (std::uint32_t m : active) {
                if (m == txn || m == rx) continue;
                denom += cur[m].power * ch_cur.gain(m, rx) * pl(m, rx);
            }
            const bool ok = denom == 0.0 ? true : signal / denom >= params.theta;
            if (t >= opts.warmup) {
                ++attempts[txn];
                if (ok) ++successes[txn];
            }
            slot_success[txn] = ok ? 1 : 0;
        }

        if (trace) trace(SlotView{t, cur, measured, slot_success});
        std::swap(prev, cur);
    }

    RunResult out;
    out.slots = opts.slots;
    out.warmup = opts.warmup;
    const auto counted = static_cast<double>(opts.slots - opts.warmup);
    out.eps_log = 1.0 / (10.0 * counted);
    const double keep = scheme.kind == SchemeKind::CsmaCa
                            ? 1.0 - scheme.csma_contention_overhead
                            : 1.0;
    out.link_throughput.reserve(tx_nodes.size());
    double pf = 0.0;
    for (std::uint32_t txn : tx_nodes) {
        const double tput = keep * static_cast<double>(successes[txn]) / counted;
        out.link_throughput.push_back(tput);
        pf += std::log(std::max(tput, out.eps_log));
    }
    if (!out.link_throughput.empty()) {
        out.mean_link_throughput = mean(out.link_throughput);
        out.pf_utility = pf / static_cast<double>(out.link_throughput.size());
    }
    return out;
}

/// Success statistics of one tagged link (the A->B direction of `tagged_pair`)
/// under a FixedP/MaxTx-style scheme, without scoring every other link. Used by
/// the analytic-consistency experiments where only the typical pair matters.
struct TaggedStats {
    long attempts = 0;
    long successes = 0;
    double rate() const {
        return attempts == 0 ? 0.0 : static_cast<double>(successes) / attempts;
    }
};

inline TaggedStats run_tagged(const Deployment& dep, const SystemParams& params,
                              double fixed_p, const SimOptions& opts,
                              std::uint32_t tagged_pair) {
    params.validate();
    opts.validate();
    const std::size_t n = dep.node_count();
    const bool full = params.duplex == Duplex::Full;
    const std::uint64_t chs = detail::channel_seed(opts.seed);
    const std::uint64_t des = detail::decide_seed(opts.seed);
    const std::uint32_t tx = 2 * tagged_pair;
    const std::uint32_t rx = tx + 1;

    std::vector<std::uint32_t> potential;
    for (std::uint32_t i = 0; i < n; ++i)
        if (full || dep.node(i).role == Role::A) potential.push_back(i);

    std::vector<double> pl_rx(n, 0.0);
    for (std::uint32_t m = 0; m < n; ++m)
        if (m != rx) pl_rx[m] = std::pow(dep.distance(m, rx), -params.alpha);

    TaggedStats stats;
    std::vector<std::uint8_t> delta(n, 0);
    for (long t = 0; t < opts.slots; ++t) {
        const HashedChannel ch(chs, static_cast<std::uint64_t>(t) + 1);
        std::fill(delta.begin(), delta.end(), 0);
        for (std::uint32_t i : potential)
            delta[i] = uniform01(mix64(des, static_cast<std::uint64_t>(t), i)) < fixed_p;
        if (t < opts.warmup || !delta[tx]) continue;

        const double signal = ch.gain(tx, rx) * std::pow(params.d, -params.alpha);
        double denom = 0.0;
        if (delta[rx]) denom += params.beta;
        for (std::uint32_t m = 0; m < n; ++m) {
            if (m == tx || m == rx || !delta[m]) continue;
            denom += ch.gain(m, rx) * pl_rx[m];
        }
        ++stats.attempts;
        if (denom == 0.0 || signal / denom >= params.theta) ++stats.successes;
    }
    return stats;
}

/// Multi-replication aggregate: independent deployments and slot streams per
/// replication, mean and 95% CI across replications.
struct ThroughputReport {
    std::string scheme_label;
    SystemParams params;
    long slots = 0;
    long warmup = 0;
    int replications = 0;
    double mean_link_throughput = 0.0;
    double tput_ci95 = 0.0;
    double pf_utility = 0.0;
    double pf_ci95 = 0.0;
    double eps_log = 0.0;
    std::vector<double> rep_mean_tput;
    std::vector<double> rep_pf;
};

inline ThroughputReport simulate_replications(const SystemParams& params,
                                              const SchemeConfig& scheme,
                                              const SimOptions& opts, double window,
                                              int replications, std::uint64_t base_seed,
                                              unsigned threads = 0) {
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    params.validate();
    scheme.validate();
    opts.validate();

    PolicyTable table;
    const bool tabulate = opts.use_policy_table && scheme.kind == SchemeKind::RandomTx &&
                          scheme.random_tx_rule == RandomTxRule::Solver;
    if (tabulate) table = PolicyTable::build(scheme, params, opts.interference_floor);

    std::vector<double> rep_tput(replications), rep_pf(replications);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int r = next.fetch_add(1); r < replications; r = next.fetch_add(1)) {
            const auto rep = static_cast<std::uint64_t>(r);
            const Deployment dep =
                sample_deployment(params, window, mix64(base_seed, 0x646570ULL, rep));
            SimOptions o = opts;
            o.seed = mix64(base_seed, 0x72756eULL, rep);
            const RunResult rr = run(dep, params, scheme, o, tabulate ? &table : nullptr);
            rep_tput[static_cast<std::size_t>(r)] = rr.mean_link_throughput;
            rep_pf[static_cast<std::size_t>(r)] = rr.pf_utility;
        }
    };
    unsigned nt = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    nt = std::min<unsigned>(nt, static_cast<unsigned>(replications));
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ThroughputReport rep;
    rep.scheme_label = to_string(scheme.kind);
    if (scheme.kind == SchemeKind::RandomTx)
        rep.scheme_label += std::string("/") + to_string(scheme.random_tx_rule);
    rep.params = params;
    rep.slots = opts.slots;
    rep.warmup = opts.warmup;
    rep.replications = replications;
    rep.mean_link_throughput = mean(rep_tput);
    rep.tput_ci95 = ci95_halfwidth(rep_tput);
    rep.pf_utility = mean(rep_pf);
    rep.pf_ci95 = ci95_halfwidth(rep_pf);
    rep.eps_log = 1.0 / (10.0 * static_cast<double>(opts.slots - opts.warmup));
    rep.rep_mean_tput = std::move(rep_tput);
    rep.rep_pf = std::move(rep_pf);
    return rep;
}

} // namespace opmac
