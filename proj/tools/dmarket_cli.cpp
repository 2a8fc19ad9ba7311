// dmarket: day-ahead distribution market runner.
//
// Loads a case file (or the built-in feeder), then validates, clears,
// settles, sweeps the assigned power, or dumps the aggregate bid curve.
// Results land as CSV in --out (default $DMARKET_OUT, else the working
// directory). Exit codes: 0 ok, 1 bad input or usage, 2 infeasible,
// 3 numerical trouble.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dmarket/aggregation.hpp"
#include "dmarket/caseio.hpp"
#include "dmarket/clearing.hpp"
#include "dmarket/domain.hpp"
#include "dmarket/settlement.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kInfeasible = 2;
constexpr int kNumerical = 3;

struct CaseArgs {
  std::string case_path;
  std::string variant = "base";
  bool embedded = false;
  std::string mode_override;
};

void add_case_flags(CLI::App* sub, CaseArgs& a) {
  auto* path =
      sub->add_option("--case", a.case_path, "case file (JSON)")
          ->type_name("FILE");
  auto* emb =
      sub->add_flag("--embedded", a.embedded, "use the built-in 13-bus feeder");
  path->excludes(emb);
  sub->add_option("--variant", a.variant,
                  "embedded variant: base, congested, high-assignment, "
                  "variable, variable-tight")
      ->needs(emb);
  sub->add_option("--mode", a.mode_override,
                  "override the clearing mode of the loaded case")
      ->check(CLI::IsMember({"constant", "variable"}));
}

// 0 on success; prints its own diagnostics otherwise.
int load_case(const CaseArgs& a, dmarket::MarketCase& out) {
  if (!a.embedded && a.case_path.empty()) {
    std::cerr << "dmarket: give --case FILE or --embedded\n";
    return kBadInput;
  }
  if (a.embedded) {
    try {
      out = dmarket::embedded_case(a.variant);
    } catch (const std::invalid_argument& e) {
      std::cerr << "dmarket: " << e.what() << "\n";
      return kBadInput;
    }
  } else {
    dmarket::ParseResult pr = dmarket::parse_case_file(a.case_path);
    if (!pr.ok()) {
      for (const dmarket::Violation& v : pr.errors)
        std::cerr << a.case_path << (v.where == "/" ? "" : v.where) << ": "
                  << v.message << "\n";
      return kBadInput;
    }
    out = std::move(*pr.parsed);
  }
  if (a.mode_override == "variable" &&
      out.mode == dmarket::ClearingMode::ConstantPower) {
    out.mode = dmarket::ClearingMode::VariablePower;
    out.assigned_power.clear();
  } else if (a.mode_override == "constant" &&
             out.mode == dmarket::ClearingMode::VariablePower) {
    std::cerr << "dmarket: cannot switch to constant mode: the case carries "
                 "no assigned power profile\n";
    return kBadInput;
  }
  std::vector<dmarket::Violation> bad = dmarket::validate_case(out);
  if (!bad.empty()) {
    for (const dmarket::Violation& v : bad)
      std::cerr << "invalid case: " << v.where << ": " << v.message << "\n";
    return kBadInput;
  }
  return kOk;
}

std::filesystem::path out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("DMARKET_OUT"); env && *env) return env;
  return ".";
}

int failure_exit(const dmarket::HorizonClearing& hz) {
  int rc = kOk;
  for (const dmarket::HourFailure& f : hz.failures) {
    std::cerr << "hour " << f.hour << ": " << to_string(f.kind) << ": "
              << f.message << "\n";
    if (f.kind == dmarket::FailureKind::Numerical)
      rc = kNumerical;
    else if (rc != kNumerical)
      rc = kInfeasible;
  }
  return rc;
}

dmarket::ClearOptions clear_options(unsigned jobs, double tol) {
  dmarket::ClearOptions co;
  if (jobs > 1) {
    co.parallel = true;
    co.threads = jobs;
  }
  if (tol > 0) {
    co.lp_options.feas_tol = tol;
    co.lp_options.dual_tol = tol;
  }
  return co;
}

int run_validate(const CaseArgs& a) {
  dmarket::MarketCase cs;
  int rc = load_case(a, cs);
  if (rc != kOk) return rc;
  std::cout << "ok: " << cs.network.buses.size() << " buses, "
            << cs.network.lines.size() << " lines, " << cs.horizon
            << " hours, " << to_string(cs.mode) << " mode\n";
  return kOk;
}

int run_clear(const CaseArgs& a, const std::string& out_flag, unsigned jobs,
              double tol) {
  dmarket::MarketCase cs;
  int rc = load_case(a, cs);
  if (rc != kOk) return rc;
  dmarket::HorizonClearing hz = clear_horizon(cs, clear_options(jobs, tol));
  const std::filesystem::path dir = out_dir(out_flag);
  dmarket::export_clearing(dir, cs, hz);
  std::size_t cleared = 0;
  for (const auto& h : hz.hours) cleared += h.has_value();
  std::cout << "cleared " << cleared << "/" << cs.horizon << " hours; wrote "
            << (dir / "dlmp.csv").string() << " and "
            << (dir / "flows.csv").string() << "\n";
  return failure_exit(hz);
}

int run_settle(const CaseArgs& a, const std::string& out_flag, unsigned jobs,
               double tol) {
  dmarket::MarketCase cs;
  int rc = load_case(a, cs);
  if (rc != kOk) return rc;
  dmarket::HorizonClearing hz = clear_horizon(cs, clear_options(jobs, tol));
  if (!hz.all_cleared()) {
    std::cerr << "dmarket: cannot settle, not every hour cleared\n";
    return failure_exit(hz);
  }
  dmarket::Settlement s = settle(cs, hz);
  const std::filesystem::path dir = out_dir(out_flag);
  dmarket::export_clearing(dir, cs, hz);
  dmarket::export_settlement(dir, s);
  std::cout << "customers pay " << dmarket::detail::fixed_decimal(s.customer_payment_total, 2)
            << ", utility pays " << dmarket::detail::fixed_decimal(s.utility_payment_total, 2)
            << ", surplus " << dmarket::detail::fixed_decimal(s.surplus_total, 2)
            << "; wrote " << (dir / "settlement.csv").string() << "\n";
  return kOk;
}

bool parse_grid(const std::string& text, std::vector<double>& values) {
  double start = 0, stop = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  in >> start >> c1 >> stop >> c2 >> step;
  if (!in || c1 != ':' || c2 != ':' || !(step > 0) || stop < start ||
      !(in >> std::ws).eof())
    return false;
  for (double v = start; v <= stop + 1e-9; v += step) values.push_back(v);
  return true;
}

int run_sweep(const CaseArgs& a, const std::string& out_flag,
              std::size_t hour, const std::string& grid, double tol) {
  dmarket::MarketCase cs;
  int rc = load_case(a, cs);
  if (rc != kOk) return rc;
  std::vector<double> values;
  if (!parse_grid(grid, values)) {
    std::cerr << "dmarket: --grid wants start:stop:step with step > 0\n";
    return kBadInput;
  }
  dmarket::lp::SolveOptions opt;
  if (tol > 0) {
    opt.feas_tol = tol;
    opt.dual_tol = tol;
  }
  std::vector<dmarket::SweepPoint> pts;
  try {
    pts = dmarket::sweep_assigned_power(cs, hour, values, opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "dmarket: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "dmarket: " << e.what() << "\n";
    return kBadInput;
  }
  const std::filesystem::path dir = out_dir(out_flag);
  dmarket::export_sweep(dir, pts);
  std::size_t feasible = 0;
  for (const auto& p : pts) feasible += !p.infeasible;
  std::cout << "swept hour " << hour << ": " << feasible << "/" << pts.size()
            << " points feasible; wrote " << (dir / "sweep.csv").string()
            << "\n";
  return kOk;
}

int run_aggregate(const CaseArgs& a, const std::string& out_flag) {
  dmarket::MarketCase cs;
  int rc = load_case(a, cs);
  if (rc != kOk) return rc;
  std::string csv = "hour,benefit,quantity,cumulative\n";
  for (std::size_t t = 0; t < cs.horizon; ++t) {
    dmarket::AggregateCurve curve = aggregate_bids(cs, t);
    for (const dmarket::AggregatePoint& p : curve.points) {
      csv += std::to_string(t);
      csv += ',';
      csv += dmarket::detail::fixed_decimal(p.benefit, 4);
      csv += ',';
      csv += dmarket::detail::fixed_decimal(p.quantity, 6);
      csv += ',';
      csv += dmarket::detail::fixed_decimal(p.cumulative, 6);
      csv += '\n';
    }
    std::cout << "hour " << t << ": inelastic "
              << dmarket::detail::fixed_decimal(curve.inelastic_base, 3)
              << " MW, elastic "
              << dmarket::detail::fixed_decimal(curve.elastic_total(), 3)
              << " MW over " << curve.points.size() << " price steps\n";
  }
  const std::filesystem::path dir = out_dir(out_flag);
  std::filesystem::create_directories(dir);
  dmarket::detail::write_text_file(dir / "aggregate.csv", csv);
  std::cout << "wrote " << (dir / "aggregate.csv").string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"day-ahead distribution market clearing and settlement"};
  app.require_subcommand(1);

  int rc = kOk;
  std::string out_flag;
  unsigned jobs = 1;
  double tol = 0;
  std::size_t hour = 0;
  std::string grid;

  CaseArgs va;
  CLI::App* validate = app.add_subcommand("validate", "check a case file");
  add_case_flags(validate, va);
  validate->callback([&] { rc = run_validate(va); });

  CaseArgs ca;
  CLI::App* clear =
      app.add_subcommand("clear", "clear every hour, write prices and flows");
  add_case_flags(clear, ca);
  clear->add_option("--out", out_flag, "output directory")->type_name("DIR");
  clear->add_option("--parallel", jobs, "clear hours on N threads");
  clear->add_option("--tol", tol, "solver feasibility/dual tolerance");
  clear->callback([&] { rc = run_clear(ca, out_flag, jobs, tol); });

  CaseArgs sa;
  CLI::App* settle =
      app.add_subcommand("settle", "clear, then write the payment ledger too");
  add_case_flags(settle, sa);
  settle->add_option("--out", out_flag, "output directory")->type_name("DIR");
  settle->add_option("--parallel", jobs, "clear hours on N threads");
  settle->add_option("--tol", tol, "solver feasibility/dual tolerance");
  settle->callback([&] { rc = run_settle(sa, out_flag, jobs, tol); });

  CaseArgs wa;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "re-clear one hour over a range of assigned power");
  add_case_flags(sweep, wa);
  sweep->add_option("--out", out_flag, "output directory")->type_name("DIR");
  sweep->add_option("--hour", hour, "hour to sweep (default 0)");
  sweep->add_option("--grid", grid, "assigned power range start:stop:step")
      ->required()
      ->type_name("A:B:S");
  sweep->add_option("--tol", tol, "solver feasibility/dual tolerance");
  sweep->callback([&] { rc = run_sweep(wa, out_flag, hour, grid, tol); });

  CaseArgs ga;
  CLI::App* aggregate = app.add_subcommand(
      "aggregate", "stack all bids into one descending demand curve");
  add_case_flags(aggregate, ga);
  aggregate->add_option("--out", out_flag, "output directory")->type_name("DIR");
  aggregate->callback([&] { rc = run_aggregate(ga, out_flag); });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "dmarket: " << e.what() << "\n";
    return kBadInput;
  }
  return rc;
}
