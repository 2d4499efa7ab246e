#include "polproj/report.hpp"

#include <fstream>

#include "json.hpp"

namespace polproj::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json report_json(const verify::Report& r, bool with_timings) {
  ordered_json j;
  j["check"] = r.check;
  j["spec"] = r.residue.empty() ? r.space : r.space + " " + r.residue;
  j["mode"] = r.mode;
  j["seed"] = r.seed;
  j["outcome"] = r.outcome;
  j["order_pi"] = r.order_pi;
  j["order_pi_plus"] = r.order_pi_plus;
  j["index"] = r.index12;
  j["catalog"] = r.catalog;
  ordered_json w = ordered_json::object();
  for (const auto& [k, v] : r.witness) w[k] = v;
  j["witnesses"] = w;
  j["ms"] = with_timings ? r.ms : 0;
  return j;
}

} // namespace

std::string reports_to_json(const std::vector<verify::Report>& reports, bool with_timings) {
  ordered_json doc;
  doc["version"] = 1;
  doc["runs"] = ordered_json::array();
  for (const auto& r : reports) doc["runs"].push_back(report_json(r, with_timings));
  return doc.dump(2) + "\n";
}

void emit_report(const std::vector<verify::Report>& reports, const std::string& path,
                 bool with_timings) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::IoError, "cannot open " + path);
  out << reports_to_json(reports, with_timings);
  if (!out) raise(Errc::IoError, "write failed for " + path);
}

std::string reports_to_csv(const std::vector<verify::Report>& reports) {
  std::string out = "check,spec,mode,seed,outcome,order_pi,order_pi_plus,index\n";
  for (const auto& r : reports) {
    std::string spec = r.residue.empty() ? r.space : r.space + " " + r.residue;
    out += r.check + ",\"" + spec + "\"," + r.mode + "," + std::to_string(r.seed) + "," +
           r.outcome + "," + r.order_pi + "," + r.order_pi_plus + "," +
           std::to_string(r.index12) + "\n";
  }
  return out;
}

void emit_csv(const std::vector<verify::Report>& reports, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::IoError, "cannot open " + path);
  out << reports_to_csv(reports);
  if (!out) raise(Errc::IoError, "write failed for " + path);
}

int exit_code_for(const std::vector<verify::Report>& reports) {
  int code = 0;
  for (const auto& r : reports) {
    if (r.outcome == "fail") code = std::max(code, 1);
    else if (r.outcome == "discrepancy") code = std::max(code, 2);
    else if (r.outcome == "error") code = std::max(code, 3);
  }
  return code;
}

std::string human_summary(const verify::Report& r) {
  std::string s = "[" + r.outcome + "] " + r.check + " " + r.space;
  if (!r.residue.empty()) s += " " + r.residue;
  if (!r.order_pi.empty()) s += "  |Pi| = " + r.order_pi;
  if (!r.order_pi_plus.empty()) s += "  |Pi+| = " + r.order_pi_plus;
  if (r.index12) s += "  index = " + std::to_string(r.index12);
  if (!r.catalog.empty()) {
    s += "  order matches:";
    for (const auto& c : r.catalog) s += " " + c;
  }
  if (auto it = r.witness.find("generators"); it != r.witness.end())
    s += "  gens = " + it->second;
  s += "  (" + r.mode + ", seed " + std::to_string(r.seed) + ")";
  return s;
}

} // namespace polproj::cli
