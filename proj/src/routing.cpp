#include "vhfplan/routing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "vhfplan/errors.hpp"

namespace vhfplan {

namespace {

constexpr double kBandFloorMHz = 145.0;

bool same_freq(double a, double b) {
    return std::abs(a - b) < 1e-9;
}

double toggle_frequency(double carried, double dst_channel) {
    return same_freq(carried, dst_channel) ? dst_channel + kDuplexOffsetMHz : dst_channel;
}

} // namespace

bool RoutingTable::reachable(int src_repeater, int dst_repeater) const {
    return hops[static_cast<std::size_t>(dst_repeater) * n + src_repeater] >= 0;
}

Route RoutingTable::route(int src_repeater, int dst_repeater) const {
    if (src_repeater < 0 || src_repeater >= n || dst_repeater < 0 || dst_repeater >= n)
        throw std::invalid_argument("route: repeater id out of range");
    Route r;
    int cur = src_repeater;
    r.repeaters.push_back(cur);
    while (cur != dst_repeater) {
        const int nx = next_hop[static_cast<std::size_t>(dst_repeater) * n + cur];
        if (nx < 0) {
            std::ostringstream msg;
            msg << "no route from repeater " << src_repeater << " to " << dst_repeater;
            std::vector<int> excluded;
            if (dst_repeater < static_cast<int>(excluded_clusters_by_dst.size()))
                excluded = excluded_clusters_by_dst[dst_repeater];
            if (!excluded.empty()) {
                msg << " once same-tone clusters are excluded:";
                for (int c : excluded)
                    msg << ' ' << c;
            }
            throw NoRouteError(msg.str(), excluded);
        }
        cur = nx;
        r.repeaters.push_back(cur);
        if (static_cast<int>(r.repeaters.size()) > n + 1)
            throw std::logic_error("route: next-hop table contains a cycle");
    }
    return r;
}

RoutingTable build_routes(const Plan& plan) {
    const auto& tess = plan.tess;
    const int n = static_cast<int>(tess.cells.size());
    RoutingTable table;
    table.n = n;
    table.next_hop.assign(static_cast<std::size_t>(n) * n, -1);
    table.hops.assign(static_cast<std::size_t>(n) * n, -1);
    table.excluded_clusters_by_dst.assign(n, {});

    // neighbour ids sorted by (q, s) for the canonical tie-break
    std::vector<std::array<int, 6>> nbr(n);
    for (int i = 0; i < n; ++i) {
        auto ns = neighbors(tess.cells[i].coord);
        std::sort(ns.begin(), ns.end(), [](const HexCoord& a, const HexCoord& b) {
            return a.q != b.q ? a.q < b.q : a.s < b.s;
        });
        for (int k = 0; k < 6; ++k)
            nbr[i][k] = tess.index_of(ns[k]);
    }

    std::vector<char> allowed(n);
    std::vector<std::int32_t> dist(n);
    for (int dst = 0; dst < n; ++dst) {
        const int dst_cluster = plan.cluster_of_cell(dst);
        const int dst_tone = plan.clusters[dst_cluster].pl_tone;
        std::vector<int> excluded;
        for (int i = 0; i < n; ++i) {
            const int ci = plan.cluster_of_cell(i);
            const bool same_tone_elsewhere =
                plan.clusters[ci].pl_tone == dst_tone && ci != dst_cluster;
            allowed[i] = same_tone_elsewhere ? 0 : 1;
            if (same_tone_elsewhere)
                excluded.push_back(ci);
        }
        std::sort(excluded.begin(), excluded.end());
        excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
        table.excluded_clusters_by_dst[dst] = std::move(excluded);

        std::fill(dist.begin(), dist.end(), -1);
        std::deque<int> queue;
        dist[dst] = 0;
        queue.push_back(dst);
        while (!queue.empty()) {
            const int cur = queue.front();
            queue.pop_front();
            for (int k = 0; k < 6; ++k) {
                const int nx = nbr[cur][k];
                if (nx < 0 || !allowed[nx] || dist[nx] >= 0)
                    continue;
                dist[nx] = dist[cur] + 1;
                queue.push_back(nx);
            }
        }

        auto row_next = table.next_hop.begin() + static_cast<std::size_t>(dst) * n;
        auto row_hops = table.hops.begin() + static_cast<std::size_t>(dst) * n;
        for (int src = 0; src < n; ++src) {
            if (src == dst) {
                row_next[src] = src;
                row_hops[src] = 0;
                continue;
            }
            if (allowed[src] && dist[src] > 0) {
                for (int k = 0; k < 6; ++k) { // (q,s)-sorted: first match is canonical
                    const int nx = nbr[src][k];
                    if (nx >= 0 && dist[nx] == dist[src] - 1 && allowed[nx]) {
                        row_next[src] = nx;
                        row_hops[src] = dist[src];
                        break;
                    }
                }
            } else if (!allowed[src]) {
                // the origin is exempt: step out into the allowed graph
                int best = -1, best_d = -1;
                for (int k = 0; k < 6; ++k) {
                    const int nx = nbr[src][k];
                    if (nx < 0 || !allowed[nx] || dist[nx] < 0)
                        continue;
                    if (best < 0 || dist[nx] < best_d) {
                        best = nx;
                        best_d = dist[nx];
                    }
                }
                if (best >= 0) {
                    row_next[src] = best;
                    row_hops[src] = best_d + 1;
                }
            }
        }
    }
    return table;
}

double first_hop_frequency(double dst_channel_mhz, int total_transmissions) {
    if (total_transmissions < 1)
        throw std::invalid_argument("first_hop_frequency: need at least one transmission");
    return total_transmissions % 2 == 1 ? dst_channel_mhz
                                        : dst_channel_mhz + kDuplexOffsetMHz;
}

RelayResult relay_step(const Plan& plan, int repeater, const Message& msg) {
    RelayResult result;
    result.message = msg;
    const int tone = plan.tone_of_cell(repeater);
    if (msg.stamped_pl != tone)
        return result; // signal ignored, nothing changes

    const double tx = toggle_frequency(msg.carried_mhz, msg.dst.channel_mhz);
    if (tx < kBandFloorMHz - 1e-9 || tx > kBandCeilingMHz + 1e-9) {
        std::ostringstream err;
        err << "relay at repeater " << repeater << " would transmit at " << tx
            << " MHz, outside the " << kBandFloorMHz << "-" << kBandCeilingMHz
            << " MHz band";
        throw BandViolationError(err.str());
    }

    result.forwarded = true;
    const int last = static_cast<int>(msg.route.repeaters.size()) - 1;
    if (msg.hop_index >= last) {
        result.delivered = true; // final downlink to the destination user
        result.tx_frequency = tx;
        result.tx_pl = msg.dst.pl_tone;
    } else {
        const int next = msg.route.repeaters[msg.hop_index + 1];
        result.tx_frequency = tx;
        result.tx_pl = plan.tone_of_cell(next);
        result.message.hop_index = msg.hop_index + 1;
    }
    result.message.carried_mhz = tx;
    result.message.stamped_pl = result.tx_pl;
    return result;
}

const char* to_string(LogAction a) {
    switch (a) {
    case LogAction::Receive:
        return "receive";
    case LogAction::Forward:
        return "forward";
    case LogAction::Deliver:
        return "deliver";
    case LogAction::Reject:
        return "reject";
    }
    return "?";
}

SimResult simulate(const Plan& plan, const RoutingTable& table,
                   const std::vector<CallRequest>& requests) {
    SimResult result;
    const int n = static_cast<int>(plan.tess.cells.size());

    struct Live {
        Message msg;
        int received_tick = 0;
    };
    std::vector<Live> live(requests.size());
    std::vector<RepeaterQueue> queues(n);
    for (int i = 0; i < n; ++i)
        queues[i].repeater_id = i;
    result.outcomes.resize(requests.size());

    struct Injection {
        int tick;
        int order;
        int msg_id;
    };
    std::vector<Injection> injections;
    int max_tick = 0;
    long long total_hops = 0;

    for (std::size_t i = 0; i < requests.size(); ++i) {
        const auto& req = requests[i];
        result.outcomes[i].msg_id = static_cast<int>(i);
        if (req.src_user < 0 || req.src_user >= static_cast<int>(plan.users.size()) ||
            req.dst_user < 0 || req.dst_user >= static_cast<int>(plan.users.size()))
            throw std::invalid_argument("simulate: user id out of range");
        const UserId& src = plan.users[req.src_user];
        const UserId& dst = plan.users[req.dst_user];
        const int src_rep = plan.home_repeater(src);
        const int dst_rep = plan.home_repeater(dst);
        Message m;
        m.msg_id = static_cast<int>(i);
        m.src = src;
        m.dst = dst;
        try {
            m.route = table.route(src_rep, dst_rep);
        } catch (const NoRouteError& e) {
            result.outcomes[i].failure = e.what();
            continue;
        }
        m.hop_index = 0;
        m.carried_mhz = first_hop_frequency(dst.channel_mhz, m.route.total_transmissions());
        m.stamped_pl = plan.tone_of_cell(src_rep);
        live[i].msg = std::move(m);
        injections.push_back({req.arrival_tick, static_cast<int>(injections.size()),
                              static_cast<int>(i)});
        max_tick = std::max(max_tick, req.arrival_tick);
        total_hops += live[i].msg.route.repeaters.size() + 1;
    }
    std::stable_sort(injections.begin(), injections.end(),
                     [](const Injection& a, const Injection& b) {
                         return a.tick != b.tick ? a.tick < b.tick : a.order < b.order;
                     });

    const int tick_cap = max_tick + static_cast<int>(total_hops) + 16;
    std::size_t next_injection = 0;
    std::size_t pending = injections.size();

    for (int tick = injections.empty() ? 0 : injections.front().tick;
         pending > 0 && tick <= tick_cap; ++tick) {
        while (next_injection < injections.size() &&
               injections[next_injection].tick == tick) {
            const int id = injections[next_injection].msg_id;
            ++next_injection;
            Live& lv = live[id];
            const int first = lv.msg.route.repeaters.front();
            lv.received_tick = tick;
            result.log.push_back({id, tick, first, LogAction::Receive,
                                  lv.msg.carried_mhz, lv.msg.stamped_pl});
            queues[first].pending.push_back(id);
        }
        for (int rep = 0; rep < n; ++rep) {
            if (queues[rep].pending.empty())
                continue;
            const int id = queues[rep].pending.front();
            Live& lv = live[id];
            if (lv.received_tick >= tick)
                continue; // arrived this tick, serviceable from the next
            queues[rep].pending.pop_front();
            const RelayResult step = relay_step(plan, rep, lv.msg);
            if (!step.forwarded) {
                result.log.push_back({id, tick, rep, LogAction::Reject,
                                      lv.msg.carried_mhz, lv.msg.stamped_pl});
                result.outcomes[id].failure = "PL filter rejected the stamp";
                --pending;
                continue;
            }
            if (step.delivered) {
                result.log.push_back({id, tick, rep, LogAction::Deliver,
                                      step.tx_frequency, step.tx_pl});
                result.outcomes[id].delivered = true;
                result.outcomes[id].delivery_tick = tick;
                --pending;
                continue;
            }
            const int next = step.message.route.repeaters[step.message.hop_index];
            result.log.push_back({id, tick, rep, LogAction::Forward, step.tx_frequency,
                                  step.tx_pl});
            result.log.push_back({id, tick, next, LogAction::Receive, step.tx_frequency,
                                  step.tx_pl});
            lv.msg = step.message;
            lv.received_tick = tick;
            queues[next].pending.push_back(id);
        }
    }
    if (pending > 0)
        throw std::logic_error("simulate: tick cap reached with messages still pending");
    return result;
}

} // namespace vhfplan
