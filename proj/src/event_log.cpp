#include "louvre/event_log.hpp"

#include <stdexcept>

namespace louvre {

void EventLog::record(Cycle cycle, CoreId core, std::string kind, std::string detail)
{
  if (enabled_)
    events_.push_back({cycle, core, std::move(kind), std::move(detail)});
}

std::vector<Event> EventLog::find(std::string_view kind, std::string_view detail) const
{
  std::vector<Event> out;
  for (const auto& e : events_)
    if (e.kind == kind && (detail.empty() || e.detail == detail))
      out.push_back(e);
  return out;
}

Cycle EventLog::first(CoreId core, std::string_view kind, std::string_view detail) const
{
  for (const auto& e : events_)
    if (e.core == core && e.kind == kind && e.detail == detail)
      return e.cycle;
  throw std::out_of_range("no event " + std::string(kind) + " " + std::string(detail) + " on core " +
                          std::to_string(core));
}

std::string EventLog::to_csv() const
{
  std::string out = "cycle,core,event,detail\n";
  for (const auto& e : events_) {
    out += std::to_string(e.cycle) + "," + std::to_string(e.core) + "," + e.kind + ",";
    // details never contain quotes; commas are quoted
    if (e.detail.find(',') != std::string::npos)
      out += "\"" + e.detail + "\"";
    else
      out += e.detail;
    out += "\n";
  }
  return out;
}

}  // namespace louvre
