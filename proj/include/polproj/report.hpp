#ifndef POLPROJ_REPORT_HPP
#define POLPROJ_REPORT_HPP

#include <string>
#include <vector>

#include "polproj/verify.hpp"

namespace polproj::cli {

// JSON document with fixed field names and ordering:
// { "version": 1, "runs": [ {check, spec, mode, seed, outcome, order_pi,
//   order_pi_plus, index, catalog, witnesses, ms} ] }
// Group orders are decimal strings. With timings disabled (the default) the
// ms field is 0, so identical (argv, seed) produce byte-identical output.
std::string reports_to_json(const std::vector<verify::Report>& reports, bool with_timings);

void emit_report(const std::vector<verify::Report>& reports, const std::string& path,
                 bool with_timings);

// Flat one-line-per-run summary (no witness data).
std::string reports_to_csv(const std::vector<verify::Report>& reports);
void emit_csv(const std::vector<verify::Report>& reports, const std::string& path);

// pass -> 0, fail -> 1, discrepancy -> 2, error -> 3 (worst wins)
int exit_code_for(const std::vector<verify::Report>& reports);

std::string human_summary(const verify::Report& r);

} // namespace polproj::cli

#endif
