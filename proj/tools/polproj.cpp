#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "polproj/report.hpp"
#include "polproj/specparse.hpp"

using namespace polproj;

namespace {

struct RunConfig {
  uint64_t seed = 12345;
  size_t cap_points = 5000;
  size_t max_generators = 200000;
  std::string mode = "exhaustive";
  std::string out_path;
  std::string csv_path;
  bool timings = false;
  size_t samples = 120;
  unsigned field_bound = gf::kDefaultOrderBound;
};

verify::GenOptions gen_options(const RunConfig& cfg) {
  verify::GenOptions o;
  o.seed = cfg.seed;
  o.mode = cfg.mode == "sampled" ? verify::Mode::Sampled : verify::Mode::Exhaustive;
  o.sample_target = cfg.samples;
  o.max_generators = cfg.max_generators;
  return o;
}

void apply_env(RunConfig& cfg) {
  if (const char* s = std::getenv("POLPROJ_SEED")) cfg.seed = std::strtoull(s, nullptr, 10);
  if (const char* s = std::getenv("POLPROJ_FIELD_BOUND"))
    cfg.field_bound = static_cast<unsigned>(std::strtoul(s, nullptr, 10));
}

verify::Report error_report(const std::string& check, const std::string& spec, const Error& e) {
  verify::Report r;
  r.check = check;
  r.space = spec;
  r.outcome = "error";
  r.witness["error"] = e.what();
  return r;
}

const std::vector<std::string> kChecks = {"triangles",  "upanddown",  "gamma",
                                          "reflections", "oddeven",    "normset",
                                          "maxsubspace", "nonmaxlower", "conic-elation"};

std::pair<unsigned, unsigned> factor_q(long q) {
  for (long pp = 2; pp <= q; ++pp) {
    if (q % pp) continue;
    long rest = q;
    unsigned kk = 0;
    while (rest % pp == 0) { rest /= pp; ++kk; }
    if (rest != 1) raise(Errc::SemanticError, "q must be a prime power");
    return {static_cast<unsigned>(pp), kk};
  }
  raise(Errc::SemanticError, "q must be a prime power");
}

verify::Report run_check(const std::string& check, const std::string& spec_text,
                         const RunConfig& cfg) {
  verify::GenOptions opt = gen_options(cfg);
  if (check == "conic-elation") {
    // argument form: q=N (a space spec is accepted too; its q is used)
    size_t eq = spec_text.find("q=");
    if (eq == std::string::npos)
      raise(Errc::ParseError, "conic-elation expects an argument of the form q=N");
    long q = std::stol(spec_text.substr(eq + 2));
    auto [p, k] = factor_q(q);
    gf::FieldPtr F = gf::Field::create(p, k, cfg.field_bound);
    return verify::check_conic_elation(F, opt);
  }
  cli::ParsedSpec ps = cli::parse_spec(spec_text, cfg.field_bound);
  polar::SpacePtr P = polar::PolarSpace::build(ps.form, cfg.cap_points);
  cli::ResidueSel sel = ps.residue.value_or(cli::ResidueSel{});
  auto [U, side] = cli::resolve_residue(*P, sel);

  // nonmaxlower and oddeven read d from an explicit residue selector, else 1
  const int d_sel = ps.residue ? sel.d : 1;
  if (check == "triangles") return verify::check_triangles(P, U, side, opt);
  if (check == "upanddown") return verify::check_upanddown(P, U, side, opt);
  if (check == "gamma") return verify::check_gamma(P, sel.d, opt);
  if (check == "reflections") return verify::check_reflections(P, opt);
  if (check == "oddeven") return verify::check_oddeven(P, d_sel, opt);
  if (check == "normset") return verify::check_normset(P, opt);
  if (check == "maxsubspace") return verify::check_maxsubspace(P, opt);
  if (check == "nonmaxlower") return verify::check_nonmaxlower(P, d_sel, opt);
  raise(Errc::UnknownCheck, check);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"projectivity groups of finite thick classical polar spaces"};
  app.require_subcommand(1);

  RunConfig cfg;
  apply_env(cfg);

  std::string spec_text;
  std::vector<std::string> spec_list;
  std::string check_id;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed (echoed into reports)");
    sub->add_option("--cap-points", cfg.cap_points, "maximum point count");
    sub->add_option("--cap-generators", cfg.max_generators, "maximum loop generators per group");
    sub->add_option("--mode", cfg.mode, "exhaustive|sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    sub->add_option("--out", cfg.out_path, "write the JSON report here");
    sub->add_option("--csv", cfg.csv_path, "write a flat CSV summary here");
    sub->add_option("--samples", cfg.samples, "sample target for sampled checks");
    sub->add_flag("--timings", cfg.timings, "include wall-clock ms in the JSON report");
  };

  CLI::App* parse_cmd = app.add_subcommand("parse", "echo the canonical form of a spec");
  parse_cmd->add_option("spec", spec_text, "space spec")->required();

  CLI::App* group_cmd = app.add_subcommand("group", "compute the projectivity groups");
  group_cmd->add_option("spec", spec_text, "space spec with residue")->required();
  add_common(group_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run verification checks");
  verify_cmd->add_option("check", check_id, "check id or 'all'")->required();
  verify_cmd->add_option("spec", spec_list, "space specs")->required();
  add_common(verify_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(parse_cmd)) {
      cli::ParsedSpec ps = cli::parse_spec(spec_text, cfg.field_bound);
      std::string out = ps.form.render();
      if (ps.residue) out += " " + cli::render_residue(*ps.residue);
      std::cout << out << "\n";
      return 0;
    }

    if (app.got_subcommand(group_cmd)) {
      cli::ParsedSpec ps = cli::parse_spec(spec_text, cfg.field_bound);
      polar::SpacePtr P = polar::PolarSpace::build(ps.form, cfg.cap_points);
      cli::ResidueSel sel = ps.residue.value_or(cli::ResidueSel{});
      auto [U, side] = cli::resolve_residue(*P, sel);
      verify::Report rep = verify::check_group(P, U, side, gen_options(cfg));
      rep.residue = cli::render_residue(sel);
      std::cout << cli::human_summary(rep) << "\n";
      if (cfg.timings) std::cerr << "elapsed: " << rep.ms << " ms\n";
      if (!cfg.out_path.empty()) cli::emit_report({rep}, cfg.out_path, cfg.timings);
      if (!cfg.csv_path.empty()) cli::emit_csv({rep}, cfg.csv_path);
      return cli::exit_code_for({rep});
    }

    // verify
    std::vector<std::string> checks;
    if (check_id == "all")
      checks = kChecks;
    else {
      bool known = false;
      for (const auto& c : kChecks) known = known || c == check_id;
      if (!known) raise(Errc::UnknownCheck, check_id);
      checks = {check_id};
    }
    std::vector<verify::Report> reports;
    for (const auto& spec : spec_list)
      for (const auto& check : checks) {
        try {
          reports.push_back(run_check(check, spec, cfg));
        } catch (const Error& e) {
          // running "all": inapplicable checks are recorded as skipped
          if (check_id == "all" &&
              (e.code() == Errc::ConditionNotMet || e.code() == Errc::WrongKind ||
               e.code() == Errc::BadDimension || e.code() == Errc::NoInvolution ||
               e.code() == Errc::ParseError)) {
            verify::Report r;
            r.check = check;
            r.space = spec;
            r.outcome = "skipped";
            r.seed = cfg.seed;
            r.mode = cfg.mode;
            r.witness["reason"] = e.what();
            reports.push_back(r);
          } else {
            verify::Report r = error_report(check, spec, e);
            r.seed = cfg.seed;
            r.mode = cfg.mode;
            reports.push_back(r);
          }
        }
      }
    for (const auto& r : reports) std::cout << cli::human_summary(r) << "\n";
    if (!cfg.out_path.empty()) cli::emit_report(reports, cfg.out_path, cfg.timings);
    if (!cfg.csv_path.empty()) cli::emit_csv(reports, cfg.csv_path);
    return cli::exit_code_for(reports);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
