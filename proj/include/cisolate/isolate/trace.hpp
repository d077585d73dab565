#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cisolate/counting/tstar.hpp"
#include "cisolate/geom/grid.hpp"

namespace cisolate {

/// Active component with its log2 N.
struct QueueEntry {
    Component component;
    std::int64_t log2n = 2;

    friend bool operator==(const QueueEntry&, const QueueEntry&) = default;
};

/// Snapshot of the work queue after one iteration.
struct TraceState {
    std::int64_t iteration = 0;
    std::vector<QueueEntry> active;

    friend bool operator==(const TraceState&, const TraceState&) = default;
};

struct TraceTStar {
    Disk disk;
    int k = -1;
    std::int64_t precision = 0;

    friend bool operator==(const TraceTStar&, const TraceTStar&) = default;
};

struct TraceNewton {
    std::int64_t level = 0;
    std::int64_t log2n = 0;
    int k = 0;
    bool success = false;
    std::string reason;

    friend bool operator==(const TraceNewton&, const TraceNewton&) = default;
};

/// A disk entered the report.
struct TraceReported {
    Disk disk;

    friend bool operator==(const TraceReported&, const TraceReported&) = default;
};

/// A component was emitted as a cluster by the level safeguard.
struct TraceCluster {
    Component region;
    int k = -1;

    friend bool operator==(const TraceCluster&, const TraceCluster&) = default;
};

using TraceEvent = std::variant<TraceState, TraceTStar, TraceNewton, TraceReported, TraceCluster>;

struct EngineTrace {
    Grid grid;
    std::int64_t level0 = 0;
    std::vector<TraceEvent> events;

    friend bool operator==(const EngineTrace&, const EngineTrace&) = default;
};

}  // namespace cisolate
