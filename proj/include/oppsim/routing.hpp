#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

namespace oppsim::routing {

// Compact message id: creating host address plus a per-host sequence number.
struct MessageId {
    std::int32_t src = -1;
    std::int32_t seq = -1;

    bool operator==(const MessageId& other) const = default;
    auto operator<=>(const MessageId& other) const = default;

    std::string str() const {
        return "M" + std::to_string(src) + "-" + std::to_string(seq);
    }
};

struct MessageIdHash {
    std::size_t operator()(const MessageId& id) const {
        const std::uint64_t k =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(id.src)) << 32) |
            static_cast<std::uint32_t>(id.seq);
        return std::hash<std::uint64_t>{}(k);
    }
};

using MessageIdSet = std::unordered_set<MessageId, MessageIdHash>;

struct Message {
    MessageId id;
    int source = -1;
    int destination = -1;
    std::int64_t size = 0;          // bytes
    double created_at = 0.0;        // seconds
    double ttl = 0.0;               // seconds
    std::vector<int> hops;          // starts with source, one entry per relay
};

struct BufferEntry {
    Message msg;
    double received_at = 0.0;
};

// Store-carry-forward buffer. Insertion drops the oldest-received messages
// until the incoming one fits; a message age strictly beyond its TTL expires.
class Buffer {
public:
    Buffer() = default;
    explicit Buffer(std::int64_t capacity) : capacity_(capacity) {}

    enum class InsertStatus { Inserted, Duplicate, TooLarge };
    struct InsertResult {
        InsertStatus status = InsertStatus::Inserted;
        std::vector<MessageId> dropped;
    };

    InsertResult insert(Message msg, double now);
    std::vector<MessageId> expire(double now);

    bool contains(const MessageId& id) const { return ids_.count(id) > 0; }
    const Message* find(const MessageId& id) const;

    std::int64_t capacity() const { return capacity_; }
    std::int64_t used_bytes() const { return used_; }
    std::size_t size() const { return entries_.size(); }
    const std::deque<BufferEntry>& entries() const { return entries_; }

private:
    std::int64_t capacity_ = 0;
    std::int64_t used_ = 0;
    std::deque<BufferEntry> entries_;  // oldest received first
    MessageIdSet ids_;
};

struct ProphetParams {
    double p_init = 0.75;
    double beta = 0.25;
    double gamma = 0.98;
    double aging_unit = 30.0;  // seconds

    bool operator==(const ProphetParams& other) const = default;
};

// Per-destination delivery predictability. Absent entries read as 0.
struct DeliveryTable {
    std::map<int, double> p;
    double last_aged = 0.0;

    double get(int address) const {
        auto it = p.find(address);
        return it == p.end() ? 0.0 : it->second;
    }
};

double prophet_direct_update(double p_old, const ProphetParams& params);
void prophet_age(DeliveryTable& table, double now, const ProphetParams& params);
double prophet_transitive_update(double p_ac, double p_ab, double p_bc,
                                 const ProphetParams& params);

// One host's routing-visible state. `delivered` records ids this host has
// already consumed as final destination; such a message counts as held.
struct PeerView {
    int address = -1;
    Buffer* buffer = nullptr;
    MessageIdSet* delivered = nullptr;
    DeliveryTable* table = nullptr;  // PRoPHET only
};

// Ages both tables to `now`, applies the direct updates, then the transitive
// updates from snapshots of the peer's post-direct table.
void prophet_contact(PeerView& a, PeerView& b, double now, const ProphetParams& params);

struct PlanItem {
    MessageId id;
    int from = -1;
    int to = -1;

    bool operator==(const PlanItem& other) const = default;
};

// Ordering of planned transfers: deliveries to the receiving endpoint first,
// then creation time ascending, ties by id then by sending address.
struct PlanKey {
    int priority = 1;  // 0 when the receiver is the destination
    double created_at = 0.0;
    MessageId id;
    int from = -1;

    auto operator<=>(const PlanKey& other) const = default;
};

PlanKey plan_key(const Message& msg, int from, int to);

// True when `msg` held by `holder` belongs in the transfer plan toward
// `receiver` (summary-vector difference plus delivered/capacity filters).
bool epidemic_candidate(const Message& msg, const PeerView& holder,
                        const PeerView& receiver);
bool prophet_candidate(const Message& msg, const PeerView& holder,
                       const PeerView& receiver);

// Summary-vector exchange: both directions, ordered by PlanKey.
std::vector<PlanItem> epidemic_exchange(const PeerView& a, const PeerView& b);

// Planning half of the PRoPHET exchange (tables already updated).
std::vector<PlanItem> prophet_plan(const PeerView& a, const PeerView& b);

// Full PRoPHET exchange: contact updates, then the plan.
std::vector<PlanItem> prophet_exchange(PeerView& a, PeerView& b, double now,
                                       const ProphetParams& params);

struct DeliveryResult {
    bool delivered = false;  // receiver was the destination
    Buffer::InsertResult insert;
};

// Receiver side of a completed transfer: consume at the destination or
// append the receiver to the hop trace and store.
DeliveryResult on_transfer_complete(PeerView& receiver, Message msg, double now);

}  // namespace oppsim::routing
