#include <algorithm>

#include "json.hpp"

#include "sif/transforms.hpp"

namespace sif {

std::string_view to_string(Action action) {
  switch (action) {
    case Action::InsertedAssert: return "inserted-assert";
    case Action::InsertedRequire: return "inserted-require";
    case Action::SeededFault: return "seeded-fault";
    case Action::Skipped: return "skipped";
  }
  return "";
}

std::size_t InstrumentationReport::count(Action action) const {
  return std::count_if(entries.begin(), entries.end(),
                       [&](const ReportEntry& e) { return e.action == action; });
}

std::string InstrumentationReport::to_text() const {
  std::string out;
  for (const auto& e : entries) {
    out += std::string(to_string(e.action)) + " site " + std::to_string(e.site);
    if (e.span) out += " [" + to_string(*e.span) + "]";
    std::string text = e.text;
    // Keep one entry per line.
    for (auto& c : text) {
      if (c == '\n') c = ' ';
    }
    out += ": " + text;
    if (!e.reason.empty()) out += " (" + e.reason + ")";
    out += "\n";
  }
  return out;
}

std::string InstrumentationReport::to_json() const {
  nlohmann::json doc;
  doc["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json j;
    j["site"] = e.site;
    j["span"] = e.span ? nlohmann::json(to_string(*e.span)) : nlohmann::json();
    j["action"] = to_string(e.action);
    j["reason"] = e.reason;
    j["text"] = e.text;
    j["inserted"] = e.inserted;
    doc["entries"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace sif
