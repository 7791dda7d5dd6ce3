#pragma once

#include <string>

#include "oppsim/routing.hpp"

namespace oppsim::events {

enum class EventKind {
    Created,    // a = source, b = destination
    Started,    // a = sender, b = receiver
    Relayed,    // a = sender, b = receiver (transfer completed)
    Delivered,  // a = sender, b = destination; aux = hop count
    Aborted,    // a = sender, b = receiver
    Dropped,    // a = holding host
    Expired,    // a = holding host
    LinkUp,     // a, b = endpoints; aux = interface kind
    LinkDown,
};

const char* event_kind_name(EventKind kind);

struct Event {
    EventKind kind = EventKind::Created;
    double t = 0.0;
    routing::MessageId msg;
    int a = -1;
    int b = -1;
    int aux = 0;
};

// Stable one-line rendering, used by the determinism checks.
std::string to_line(const Event& event);

class EventSink {
public:
    virtual ~EventSink() = default;
    virtual void on_event(const Event& event) = 0;
};

}  // namespace oppsim::events
