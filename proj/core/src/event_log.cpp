#include "flowmon/event_log.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "flowmon/csv.hpp"
#include "flowmon/errors.hpp"
#include "json.hpp"

namespace flowmon {

namespace {

using nlohmann::json;

std::string quote(const std::string& s) { return json(s).dump(); }

void check_components(const Event& e, const std::vector<std::string>& expected,
                      const std::string& where) {
  if (expected.empty()) return;
  if (std::find(expected.begin(), expected.end(), e.component) == expected.end()) {
    throw ParseError("unknown component '" + e.component + "' for label '" + e.label + "'",
                     where);
  }
}

}  // namespace

std::size_t EventLog::event_count() const {
  std::size_t n = 0;
  for (const auto& t : traces) n += t.events.size();
  return n;
}

EventLog make_event_log(std::vector<Trace> traces) {
  EventLog log;
  std::set<std::string> labels;
  for (auto& trace : traces) {
    std::sort(trace.events.begin(), trace.events.end(),
              [](const Event& a, const Event& b) { return a.seq < b.seq; });
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      const Event& e = trace.events[i];
      if (e.trace_id != trace.trace_id) {
        throw ValidationError("event trace_id '" + e.trace_id + "' does not match trace '" +
                              trace.trace_id + "'");
      }
      if (e.seq != static_cast<std::int64_t>(i)) {
        if (i > 0 && trace.events[i - 1].seq == e.seq) {
          throw ValidationError("duplicate seq " + std::to_string(e.seq) + " in trace '" +
                                trace.trace_id + "'");
        }
        throw ValidationError("trace '" + trace.trace_id + "' seq values not contiguous: expected " +
                              std::to_string(i) + ", got " + std::to_string(e.seq));
      }
      labels.insert(e.label);
      auto it = log.component_map.find(e.label);
      if (it == log.component_map.end()) {
        log.component_map.emplace(e.label, e.component);
      } else if (it->second != e.component) {
        throw ValidationError("label '" + e.label + "' attributed to both '" + it->second +
                              "' and '" + e.component + "'");
      }
    }
  }
  log.activity_universe.assign(labels.begin(), labels.end());
  log.traces = std::move(traces);
  return log;
}

EventLog read_log(const std::string& path, LogFormat format,
                  const std::vector<std::string>& expected_components) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_log_stream(in, format, path, expected_components);
}

namespace {

EventLog read_jsonl(std::istream& in, const std::string& name,
                    const std::vector<std::string>& expected) {
  std::vector<Trace> traces;
  std::map<std::string, std::size_t> index;  // trace_id -> position in traces
  std::string line;
  std::size_t lineno = 0;
  auto slot = [&](const std::string& id) -> Trace& {
    auto [it, fresh] = index.emplace(id, traces.size());
    if (fresh) traces.push_back(Trace{id, {}, std::nullopt});
    return traces[it->second];
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(e.what(), where);
    }
    if (!rec.is_object()) throw ParseError("record is not a JSON object", where);
    if (rec.contains("ground_truth")) {
      // Trace metadata record: {"trace_id": ..., "ground_truth": ...}
      for (auto& [k, v] : rec.items()) {
        if (k != "trace_id" && k != "ground_truth")
          throw ParseError("unknown key '" + k + "' in trace record", where);
      }
      if (!rec.contains("trace_id") || !rec["trace_id"].is_string() ||
          !rec["ground_truth"].is_string())
        throw ParseError("trace record needs string trace_id and ground_truth", where);
      Trace& t = slot(rec["trace_id"].get<std::string>());
      std::string gt = rec["ground_truth"].get<std::string>();
      if (t.ground_truth && *t.ground_truth != gt)
        throw ParseError("conflicting ground_truth for trace '" + t.trace_id + "'", where);
      t.ground_truth = gt;
      continue;
    }
    Event e = event_from_json(line, where);
    check_components(e, expected, where);
    slot(e.trace_id).events.push_back(std::move(e));
  }
  if (traces.empty()) {
    std::cerr << "flowmon: warning: '" << name << "' contains no events\n";
  }
  return make_event_log(std::move(traces));
}

EventLog read_csv_log(std::istream& in, const std::string& name,
                      const std::vector<std::string>& expected) {
  CsvReader reader(in, name);
  std::vector<std::string> row;
  if (!reader.next(row)) {
    std::cerr << "flowmon: warning: '" << name << "' contains no events\n";
    return make_event_log({});
  }
  const std::vector<std::string> header = {"trace_id", "label", "component", "seq", "ts"};
  if (row != header)
    throw ParseError("expected header trace_id,label,component,seq,ts", name + ":1");
  std::vector<Trace> traces;
  std::map<std::string, std::size_t> index;
  while (reader.next(row)) {
    const std::string where = name + ":" + std::to_string(reader.line());
    if (row.size() != 5) throw ParseError("expected 5 columns", where);
    Event e;
    e.trace_id = row[0];
    e.label = row[1];
    e.component = row[2];
    try {
      e.seq = std::stoll(row[3]);
      if (!row[4].empty()) e.ts = std::stoll(row[4]);
    } catch (const std::exception&) {
      throw ParseError("seq/ts must be integers", where);
    }
    check_components(e, expected, where);
    auto [it, fresh] = index.emplace(e.trace_id, traces.size());
    if (fresh) traces.push_back(Trace{e.trace_id, {}, std::nullopt});
    traces[it->second].events.push_back(std::move(e));
  }
  return make_event_log(std::move(traces));
}

}  // namespace

EventLog read_log_stream(std::istream& in, LogFormat format, const std::string& name,
                         const std::vector<std::string>& expected_components) {
  return format == LogFormat::jsonl ? read_jsonl(in, name, expected_components)
                                    : read_csv_log(in, name, expected_components);
}

std::string event_to_json(const Event& e) {
  std::string out = "{\"trace_id\":" + quote(e.trace_id) + ",\"label\":" + quote(e.label) +
                    ",\"component\":" + quote(e.component) + ",\"seq\":" + std::to_string(e.seq);
  if (e.ts) out += ",\"ts\":" + std::to_string(*e.ts);
  out += "}";
  return out;
}

Event event_from_json(const std::string& line, const std::string& where) {
  json rec;
  try {
    rec = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), where);
  }
  if (!rec.is_object()) throw ParseError("record is not a JSON object", where);
  Event e;
  bool have_trace = false, have_label = false, have_component = false, have_seq = false;
  for (auto& [k, v] : rec.items()) {
    if (k == "trace_id" && v.is_string()) {
      e.trace_id = v.get<std::string>();
      have_trace = true;
    } else if (k == "label" && v.is_string()) {
      e.label = v.get<std::string>();
      have_label = true;
    } else if (k == "component" && v.is_string()) {
      e.component = v.get<std::string>();
      have_component = true;
    } else if (k == "seq" && v.is_number_integer()) {
      e.seq = v.get<std::int64_t>();
      have_seq = true;
    } else if (k == "ts" && v.is_number_integer()) {
      e.ts = v.get<std::int64_t>();
    } else {
      throw ParseError("unknown or mistyped key '" + k + "' in event record", where);
    }
  }
  if (!(have_trace && have_label && have_component && have_seq))
    throw ParseError("event record needs trace_id, label, component, seq", where);
  return e;
}

void write_log(const EventLog& log, const std::string& path, LogFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_log_stream(log, out, format);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_log_stream(const EventLog& log, std::ostream& out, LogFormat format) {
  if (format == LogFormat::jsonl) {
    for (const auto& trace : log.traces) {
      if (trace.ground_truth) {
        out << "{\"trace_id\":" << nlohmann::json(trace.trace_id).dump()
            << ",\"ground_truth\":" << nlohmann::json(*trace.ground_truth).dump() << "}\n";
      }
      for (const auto& e : trace.events) out << event_to_json(e) << "\n";
    }
    return;
  }
  CsvWriter csv(out);
  csv.row({"trace_id", "label", "component", "seq", "ts"});
  bool dropped_gt = false;
  for (const auto& trace : log.traces) {
    dropped_gt = dropped_gt || trace.ground_truth.has_value();
    for (const auto& e : trace.events) {
      csv.row({e.trace_id, e.label, e.component, std::to_string(e.seq),
               e.ts ? std::to_string(*e.ts) : std::string()});
    }
  }
  if (dropped_gt)
    std::cerr << "flowmon: warning: csv output drops per-trace ground truth\n";
}

ComponentMap default_component_map(int procs_per_component,
                                   const std::vector<std::string>& comp_order) {
  if (procs_per_component < 1)
    throw ValidationError("procs_per_component must be >= 1");
  ComponentMap map;
  for (std::size_t c = 0; c < comp_order.size(); ++c) {
    for (int j = 0; j < procs_per_component; ++j) {
      map.emplace("P" + std::to_string(c * procs_per_component + j), comp_order[c]);
    }
  }
  return map;
}

const std::vector<std::string>& default_components() {
  static const std::vector<std::string> comps = {"ARBC", "EVC", "HRBC", "RTM"};
  return comps;
}

}  // namespace flowmon
