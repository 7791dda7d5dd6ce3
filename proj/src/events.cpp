#include "oppsim/events.hpp"

#include <cstdio>

namespace oppsim::events {

const char* event_kind_name(EventKind kind) {
    switch (kind) {
    case EventKind::Created:
        return "created";
    case EventKind::Started:
        return "started";
    case EventKind::Relayed:
        return "relayed";
    case EventKind::Delivered:
        return "delivered";
    case EventKind::Aborted:
        return "aborted";
    case EventKind::Dropped:
        return "dropped";
    case EventKind::Expired:
        return "expired";
    case EventKind::LinkUp:
        return "link_up";
    case EventKind::LinkDown:
        return "link_down";
    }
    return "created";
}

std::string to_line(const Event& event) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.4f %s %s %d %d %d", event.t,
                  event_kind_name(event.kind), event.msg.str().c_str(), event.a,
                  event.b, event.aux);
    return std::string(buf);
}

}  // namespace oppsim::events
