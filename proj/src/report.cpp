#include "oppsim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace oppsim::report {

void Collector::on_event(const events::Event& event) {
    switch (event.kind) {
    case events::EventKind::Created:
        ++created_;
        created_at_[event.msg] = event.t;
        break;
    case events::EventKind::Started:
        ++started_;
        break;
    case events::EventKind::Relayed:
        ++relayed_;
        break;
    case events::EventKind::Delivered:
        if (delivered_ids_.insert(event.msg).second) {
            ++delivered_;
            auto it = created_at_.find(event.msg);
            if (it != created_at_.end()) {
                latencies_.push_back(event.t - it->second);
            }
            hopcounts_.push_back(event.aux);
        }
        break;
    case events::EventKind::Aborted:
        ++aborted_;
        break;
    case events::EventKind::Dropped:
        ++dropped_;
        break;
    case events::EventKind::Expired:
        ++expired_;
        break;
    case events::EventKind::LinkUp:
    case events::EventKind::LinkDown:
        break;
    }
}

MessageStats Collector::finalize() const {
    MessageStats stats;
    stats.created = created_;
    stats.delivered = delivered_;
    stats.relayed = relayed_;
    stats.aborted = aborted_;
    stats.dropped = dropped_;
    stats.expired = expired_;
    stats.delivery_prob =
        created_ == 0 ? 0.0
                      : static_cast<double>(delivered_) / static_cast<double>(created_);
    if (delivered_ > 0) {
        stats.overhead_ratio = static_cast<double>(relayed_ - delivered_) /
                               static_cast<double>(delivered_);
    }
    if (!latencies_.empty()) {
        stats.latency_avg =
            std::accumulate(latencies_.begin(), latencies_.end(), 0.0) /
            static_cast<double>(latencies_.size());
        std::vector<double> sorted = latencies_;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t n = sorted.size();
        stats.latency_med = n % 2 == 1
                                ? sorted[n / 2]
                                : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    }
    if (!hopcounts_.empty()) {
        stats.hopcount_avg =
            std::accumulate(hopcounts_.begin(), hopcounts_.end(), 0.0) /
            static_cast<double>(hopcounts_.size());
    }
    return stats;
}

namespace {

std::string fixed4(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    return std::string(buf);
}

std::string fixed4_or_na(const std::optional<double>& value) {
    return value ? fixed4(*value) : "NA";
}

}  // namespace

std::string render_report(const RunInfo& info, const MessageStats& stats) {
    std::ostringstream out;
    out << "scenario: " << info.scenario << "\n";
    out << "protocol: " << info.protocol << "\n";
    out << "seed: " << info.seed << "\n";
    out << "duration: " << fixed4(info.duration) << "\n";
    out << "created: " << stats.created << "\n";
    out << "delivered: " << stats.delivered << "\n";
    out << "relayed: " << stats.relayed << "\n";
    out << "aborted: " << stats.aborted << "\n";
    out << "dropped: " << stats.dropped << "\n";
    out << "expired: " << stats.expired << "\n";
    out << "delivery_prob: " << fixed4(stats.delivery_prob) << "\n";
    out << "overhead_ratio: " << fixed4_or_na(stats.overhead_ratio) << "\n";
    out << "latency_avg: " << fixed4_or_na(stats.latency_avg) << "\n";
    out << "latency_med: " << fixed4_or_na(stats.latency_med) << "\n";
    out << "hopcount_avg: " << fixed4_or_na(stats.hopcount_avg) << "\n";
    return out.str();
}

std::string csv_header() {
    return "phase,protocol,seed,created,delivered,relayed,delivery_prob,"
           "overhead_ratio,latency_avg\n";
}

std::string csv_row(const RunInfo& info, const MessageStats& stats) {
    std::ostringstream out;
    out << info.scenario << ',' << info.protocol << ',' << info.seed << ','
        << stats.created << ',' << stats.delivered << ',' << stats.relayed << ','
        << fixed4(stats.delivery_prob) << ',' << fixed4_or_na(stats.overhead_ratio)
        << ',' << fixed4_or_na(stats.latency_avg) << "\n";
    return out.str();
}

}  // namespace oppsim::report
