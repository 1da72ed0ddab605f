#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "louvre/memory.hpp"

namespace louvre {

struct Event
{
  Cycle cycle = 0;
  CoreId core = 0;
  std::string kind;
  std::string detail;

  friend bool operator==(const Event&, const Event&) = default;
};

class EventLog
{
public:
  explicit EventLog(bool enabled = false) : enabled_(enabled) {}

  bool enabled() const { return enabled_; }
  void record(Cycle cycle, CoreId core, std::string kind, std::string detail = {});
  const std::vector<Event>& events() const { return events_; }

  /// Events of one kind whose detail equals `detail` (or any detail if empty).
  std::vector<Event> find(std::string_view kind, std::string_view detail = {}) const;
  /// First cycle at which (kind, detail) occurs on `core`; throws if absent.
  Cycle first(CoreId core, std::string_view kind, std::string_view detail) const;

  /// `cycle,core,event,detail` with a header line.
  std::string to_csv() const;

  friend bool operator==(const EventLog&, const EventLog&) = default;

private:
  bool enabled_;
  std::vector<Event> events_;
};

}  // namespace louvre
