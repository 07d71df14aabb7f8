#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flowmon {

// label -> component, e.g. "P17" -> "EVC".
using ComponentMap = std::map<std::string, std::string>;

struct Event {
  std::string trace_id;
  std::string label;      // procedure identifier, e.g. "P17"
  std::string component;  // executing component, e.g. "EVC"
  std::int64_t seq = 0;   // 0-based position within the trace
  std::optional<std::int64_t> ts;  // optional logical clock

  bool operator==(const Event&) const = default;
};

struct Trace {
  std::string trace_id;
  std::vector<Event> events;  // sorted by seq, contiguous from 0
  // Injected-fault component, set by fault injection and consumed only by
  // evaluation code. Detection and localization never look at it.
  std::optional<std::string> ground_truth;

  std::size_t size() const { return events.size(); }
  bool operator==(const Trace&) const = default;
};

// A set of traces plus derived bookkeeping. Immutable once built: construct
// with make_event_log / read_log and share freely across threads.
struct EventLog {
  std::vector<Trace> traces;
  std::vector<std::string> activity_universe;  // sorted, exactly the labels present
  ComponentMap component_map;                  // total over activity_universe

  std::size_t trace_count() const { return traces.size(); }
  std::size_t event_count() const;
  bool operator==(const EventLog&) const = default;
};

enum class LogFormat { jsonl, csv };

// Validates per-trace seq contiguity and component consistency, then derives
// activity_universe and component_map. Throws ValidationError on violations.
EventLog make_event_log(std::vector<Trace> traces);

// Reads a log file. `expected_components`, when given, restricts every
// event's component to that set (unknown-component error otherwise).
EventLog read_log(const std::string& path, LogFormat format,
                  const std::vector<std::string>& expected_components = {});
EventLog read_log_stream(std::istream& in, LogFormat format, const std::string& name,
                         const std::vector<std::string>& expected_components = {});

// Deterministic serialization; read_log(write_log(log)) == log for jsonl.
// The csv form cannot carry per-trace ground truth and warns when it drops it.
void write_log(const EventLog& log, const std::string& path, LogFormat format);
void write_log_stream(const EventLog& log, std::ostream& out, LogFormat format);

// One JSONL event record with keys in documented order; no trailing newline.
std::string event_to_json(const Event& e);
// Parses one event record; rejects unknown keys. `where` seeds error messages.
Event event_from_json(const std::string& line, const std::string& where);

// Maps "P0".."P<n-1>" onto components in blocks of procs_per_component:
// ("P<i>" -> comp_order[i / procs_per_component]).
ComponentMap default_component_map(int procs_per_component,
                                   const std::vector<std::string>& comp_order);

// The four monitored components in procedure-block order: P0..P9 -> ARBC,
// P10..P19 -> EVC, P20..P29 -> HRBC, P30..P39 -> RTM.
const std::vector<std::string>& default_components();

}  // namespace flowmon
