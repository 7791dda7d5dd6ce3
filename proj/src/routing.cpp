#include "oppsim/routing.hpp"

#include <algorithm>
#include <cmath>

namespace oppsim::routing {

Buffer::InsertResult Buffer::insert(Message msg, double now) {
    InsertResult result;
    if (ids_.count(msg.id) > 0) {
        result.status = InsertStatus::Duplicate;
        return result;
    }
    if (msg.size > capacity_) {
        result.status = InsertStatus::TooLarge;
        return result;
    }
    while (used_ + msg.size > capacity_ && !entries_.empty()) {
        const BufferEntry& oldest = entries_.front();
        used_ -= oldest.msg.size;
        ids_.erase(oldest.msg.id);
        result.dropped.push_back(oldest.msg.id);
        entries_.pop_front();
    }
    used_ += msg.size;
    ids_.insert(msg.id);
    entries_.push_back(BufferEntry{std::move(msg), now});
    return result;
}

std::vector<MessageId> Buffer::expire(double now) {
    std::vector<MessageId> expired;
    std::deque<BufferEntry> kept;
    for (BufferEntry& entry : entries_) {
        if (now - entry.msg.created_at > entry.msg.ttl) {
            used_ -= entry.msg.size;
            ids_.erase(entry.msg.id);
            expired.push_back(entry.msg.id);
        } else {
            kept.push_back(std::move(entry));
        }
    }
    entries_ = std::move(kept);
    return expired;
}

const Message* Buffer::find(const MessageId& id) const {
    if (ids_.count(id) == 0) {
        return nullptr;
    }
    for (const BufferEntry& entry : entries_) {
        if (entry.msg.id == id) {
            return &entry.msg;
        }
    }
    return nullptr;
}

double prophet_direct_update(double p_old, const ProphetParams& params) {
    return p_old + (1.0 - p_old) * params.p_init;
}

void prophet_age(DeliveryTable& table, double now, const ProphetParams& params) {
    const double k = (now - table.last_aged) / params.aging_unit;
    table.last_aged = now;
    if (k <= 0.0) {
        return;
    }
    const double factor = std::pow(params.gamma, k);
    for (auto& [addr, value] : table.p) {
        value *= factor;
    }
}

double prophet_transitive_update(double p_ac, double p_ab, double p_bc,
                                 const ProphetParams& params) {
    return std::max(p_ac, p_ac + (1.0 - p_ac) * p_ab * p_bc * params.beta);
}

void prophet_contact(PeerView& a, PeerView& b, double now, const ProphetParams& params) {
    prophet_age(*a.table, now, params);
    prophet_age(*b.table, now, params);
    a.table->p[b.address] = prophet_direct_update(a.table->get(b.address), params);
    b.table->p[a.address] = prophet_direct_update(b.table->get(a.address), params);

    const std::map<int, double> snapshot_a = a.table->p;
    const std::map<int, double> snapshot_b = b.table->p;
    const double p_ab = a.table->get(b.address);
    const double p_ba = b.table->get(a.address);
    for (const auto& [c, p_bc] : snapshot_b) {
        if (c == a.address || c == b.address) {
            continue;
        }
        a.table->p[c] = prophet_transitive_update(a.table->get(c), p_ab, p_bc, params);
    }
    for (const auto& [c, p_ac] : snapshot_a) {
        if (c == a.address || c == b.address) {
            continue;
        }
        b.table->p[c] = prophet_transitive_update(b.table->get(c), p_ba, p_ac, params);
    }
}

PlanKey plan_key(const Message& msg, int from, int to) {
    return PlanKey{msg.destination == to ? 0 : 1, msg.created_at, msg.id, from};
}

namespace {

// Shared summary-vector filter: the receiver must not hold the message
// (buffered, or already consumed as its destination) and must be able to
// fit it at all.
bool base_candidate(const Message& msg, const PeerView& receiver) {
    if (receiver.buffer->contains(msg.id)) {
        return false;
    }
    if (msg.destination == receiver.address &&
        receiver.delivered != nullptr && receiver.delivered->count(msg.id) > 0) {
        return false;
    }
    return msg.size <= receiver.buffer->capacity();
}

}  // namespace

bool epidemic_candidate(const Message& msg, const PeerView& holder,
                        const PeerView& receiver) {
    (void)holder;
    return base_candidate(msg, receiver);
}

bool prophet_candidate(const Message& msg, const PeerView& holder,
                       const PeerView& receiver) {
    if (!base_candidate(msg, receiver)) {
        return false;
    }
    if (msg.destination == receiver.address) {
        return true;
    }
    // Forward only toward strictly better delivery predictability.
    return receiver.table->get(msg.destination) > holder.table->get(msg.destination);
}

namespace {

template <typename Candidate>
std::vector<PlanItem> build_plan(const PeerView& a, const PeerView& b,
                                 Candidate candidate) {
    std::vector<std::pair<PlanKey, PlanItem>> items;
    for (const BufferEntry& entry : a.buffer->entries()) {
        if (candidate(entry.msg, a, b)) {
            items.emplace_back(plan_key(entry.msg, a.address, b.address),
                               PlanItem{entry.msg.id, a.address, b.address});
        }
    }
    for (const BufferEntry& entry : b.buffer->entries()) {
        if (candidate(entry.msg, b, a)) {
            items.emplace_back(plan_key(entry.msg, b.address, a.address),
                               PlanItem{entry.msg.id, b.address, a.address});
        }
    }
    std::sort(items.begin(), items.end(),
              [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
    std::vector<PlanItem> plan;
    plan.reserve(items.size());
    for (auto& [key, item] : items) {
        plan.push_back(item);
    }
    return plan;
}

}  // namespace

std::vector<PlanItem> epidemic_exchange(const PeerView& a, const PeerView& b) {
    return build_plan(a, b,
                      [](const Message& m, const PeerView& h, const PeerView& r) {
                          return epidemic_candidate(m, h, r);
                      });
}

std::vector<PlanItem> prophet_plan(const PeerView& a, const PeerView& b) {
    return build_plan(a, b,
                      [](const Message& m, const PeerView& h, const PeerView& r) {
                          return prophet_candidate(m, h, r);
                      });
}

std::vector<PlanItem> prophet_exchange(PeerView& a, PeerView& b, double now,
                                       const ProphetParams& params) {
    prophet_contact(a, b, now, params);
    return prophet_plan(a, b);
}

DeliveryResult on_transfer_complete(PeerView& receiver, Message msg, double now) {
    DeliveryResult result;
    if (msg.destination == receiver.address) {
        result.delivered = true;
        if (receiver.delivered != nullptr) {
            receiver.delivered->insert(msg.id);
        }
        return result;
    }
    msg.hops.push_back(receiver.address);
    result.insert = receiver.buffer->insert(std::move(msg), now);
    return result;
}

}  // namespace oppsim::routing
