#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "vhfplan/allocation.hpp"

namespace vhfplan {

// Repeater chain from the source user's repeater to the destination
// user's repeater, both inclusive. The user uplink and the final
// downlink are radio transmissions too, hence total = chain + 1.
struct Route {
    std::vector<int> repeaters;

    int total_transmissions() const { return static_cast<int>(repeaters.size()) + 1; }
    int relay_hops() const {
        return repeaters.empty() ? 0 : static_cast<int>(repeaters.size()) - 1;
    }
};

// All-pairs next-hop table from per-destination BFS over the neighbour
// graph. In Group mode the search drops every cluster sharing the
// destination tone (the destination's own cluster stays). Ties break
// towards the smallest (q, s) coordinate, so the table is canonical.
struct RoutingTable {
    int n = 0;
    std::vector<std::int32_t> next_hop; // [dst * n + src], -1 unreachable
    std::vector<std::int32_t> hops;     // [dst * n + src], -1 unreachable
    std::vector<std::vector<int>> excluded_clusters_by_dst;

    Route route(int src_repeater, int dst_repeater) const; // throws NoRouteError
    bool reachable(int src_repeater, int dst_repeater) const;
};

RoutingTable build_routes(const Plan& plan);

// First transmission leaves on the destination channel when the total
// transmission count is odd, on channel + 0.6 when even, so the
// alternation ends exactly on the destination channel.
double first_hop_frequency(double dst_channel_mhz, int total_transmissions);

struct Message {
    int msg_id = 0;
    UserId src;
    UserId dst;
    Route route;
    int hop_index = 0;       // position of the current holder in route.repeaters
    double carried_mhz = 0;  // frequency this message was last transmitted on
    int stamped_pl = 0;      // PL tone superimposed on that transmission
    std::string payload;
};

struct RelayResult {
    bool forwarded = false; // false: PL filter rejected, message untouched
    bool delivered = false; // true: this was the final downlink to the user
    Message message;
    double tx_frequency = 0.0;
    int tx_pl = 0;
};

// One repeater action: accept only when the stamp matches the cluster
// tone, then retransmit toggled by the 0.6 MHz duplex offset and
// stamped for the next hop (or for the destination user on delivery).
RelayResult relay_step(const Plan& plan, int repeater, const Message& msg);

struct CallRequest {
    int src_user = 0;
    int dst_user = 0;
    int arrival_tick = 0;
};

// Pending messages at one repeater; served strictly in arrival order.
struct RepeaterQueue {
    int repeater_id = 0;
    std::deque<int> pending; // message ids
};

enum class LogAction { Receive, Forward, Deliver, Reject };
const char* to_string(LogAction a);

struct LogRecord {
    int msg_id = 0;
    int tick = 0;
    int repeater = 0;
    LogAction action = LogAction::Receive;
    double frequency_mhz = 0.0;
    int pl = 0;
};

struct SimOutcome {
    int msg_id = 0;
    bool delivered = false;
    int delivery_tick = -1;
    std::string failure;
};

struct SimResult {
    std::vector<LogRecord> log;
    std::vector<SimOutcome> outcomes;
};

// Discrete-tick store-and-forward simulation: one message served per
// repeater per tick, FIFO per repeater, receive and transmit in the
// same tick (full duplex). Deterministic for a given request order.
SimResult simulate(const Plan& plan, const RoutingTable& table,
                   const std::vector<CallRequest>& requests);

} // namespace vhfplan
