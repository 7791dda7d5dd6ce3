#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "oppsim/geo.hpp"
#include "oppsim/routing.hpp"

namespace oppsim::net {

enum class InterfaceKind : std::uint8_t {
    Bluetooth = 0,
    Highspeed = 1,
};

constexpr int kInterfaceKindCount = 2;

const char* interface_kind_name(InterfaceKind kind);

struct InterfaceSpec {
    InterfaceKind kind = InterfaceKind::Bluetooth;
    double range_m = 0.0;
    double bitrate_bps = 0.0;  // bytes per second

    bool operator==(const InterfaceSpec& other) const = default;
};

// Unordered host pair plus interface kind; a < b always.
struct ConnKey {
    int a = -1;
    int b = -1;
    InterfaceKind kind = InterfaceKind::Bluetooth;

    auto operator<=>(const ConnKey& other) const = default;
};

ConnKey make_conn_key(int host1, int host2, InterfaceKind kind);

// An in-flight transfer carries the full message so the sender dropping its
// copy mid-transfer cannot corrupt the delivery.
struct ActiveTransfer {
    routing::Message msg;
    int from = -1;
    int to = -1;
    double bytes_remaining = 0.0;
};

struct Connection {
    ConnKey key;
    double established_at = 0.0;
    std::optional<ActiveTransfer> transfer;
};

struct LinkEvent {
    bool up = false;
    ConnKey key;
    double t = 0.0;
};

// Snapshot of what connectivity needs to know about one host.
struct HostRadio {
    int address = -1;
    geo::Point pos;
    std::array<bool, kInterfaceKindCount> has_kind{};
};

enum class StartStatus { Started, Busy };

StartStatus start_transfer(Connection& conn, routing::Message msg, int from, int to);

struct TransferEvent {
    bool completed = false;  // false = aborted by link teardown
    ActiveTransfer transfer;
    ConnKey key;
};

// Range-based contact detection. One connection per host pair per interface
// kind both endpoints possess; tearing a connection down aborts its transfer.
class ConnectivityTable {
public:
    struct UpdateResult {
        std::vector<LinkEvent> events;     // ordered by ConnKey, downs then ups
        std::vector<TransferEvent> aborts;
    };

    UpdateResult update(const std::vector<HostRadio>& hosts,
                        const std::array<double, kInterfaceKindCount>& ranges,
                        double t);

    // Tears everything down (end of run), aborting in-flight transfers.
    UpdateResult teardown(double t);

    Connection* find(const ConnKey& key);
    const std::map<ConnKey, Connection>& connections() const { return conns_; }

    std::vector<TransferEvent> tick(
        const std::array<double, kInterfaceKindCount>& bitrates, double dt);

private:
    std::map<ConnKey, Connection> conns_;
};

// Advances every active transfer by dt at the per-kind bitrate and reports
// completions. Partial progress is invisible outside this module.
std::vector<TransferEvent> tick_transfers(
    ConnectivityTable& table,
    const std::array<double, kInterfaceKindCount>& bitrates, double dt);

}  // namespace oppsim::net
