#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oppsim/events.hpp"

namespace oppsim::report {

struct MessageStats {
    long long created = 0;
    long long delivered = 0;
    long long relayed = 0;
    long long aborted = 0;
    long long dropped = 0;
    long long expired = 0;
    double delivery_prob = 0.0;
    std::optional<double> overhead_ratio;  // absent when nothing was delivered
    std::optional<double> latency_avg;
    std::optional<double> latency_med;
    std::optional<double> hopcount_avg;
};

// Tallies message lifecycle events; a message counts as delivered once, on
// its first arrival at the destination.
class Collector : public events::EventSink {
public:
    void on_event(const events::Event& event) override;

    MessageStats finalize() const;

    long long started() const { return started_; }
    const std::vector<double>& latencies() const { return latencies_; }

private:
    long long created_ = 0;
    long long delivered_ = 0;
    long long relayed_ = 0;
    long long aborted_ = 0;
    long long dropped_ = 0;
    long long expired_ = 0;
    long long started_ = 0;
    std::map<routing::MessageId, double> created_at_;
    routing::MessageIdSet delivered_ids_;
    std::vector<double> latencies_;
    std::vector<int> hopcounts_;
};

struct RunInfo {
    std::string scenario;
    std::string protocol;
    std::uint64_t seed = 0;
    double duration = 0.0;
};

// `key: value` lines in a fixed order, floats rounded to 4 decimals.
std::string render_report(const RunInfo& info, const MessageStats& stats);

std::string csv_header();
std::string csv_row(const RunInfo& info, const MessageStats& stats);

}  // namespace oppsim::report
