#pragma once

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wallach/census.hpp"
#include "wallach/core.hpp"
#include "wallach/einstein.hpp"
#include "wallach/errors.hpp"
#include "wallach/flow.hpp"
#include "wallach/omega.hpp"

namespace wallach::cli {

enum class Format { Auto, Json, Csv, Text };

struct RunConfig {
  int digits = 30;
  Format format = Format::Auto;
  std::string output;
  int workers = 0;  // 0: WALLACH_WORKERS or hardware
  long seed = 1;
};

/// 0 success, 2 parse/usage, 3 certification/inconclusive, 4 invariant violation.
inline int exit_code(Errc c) {
  switch (c) {
    case Errc::CertificationFailure:
    case Errc::SegmentInconclusive:
    case Errc::IndistinguishableAtTolerance:
    case Errc::DegenerateSystem:
      return 3;
    case Errc::InvariantViolation:
      return 4;
    default:
      return 2;
  }
}

namespace detail {

struct SpaceArgs {
  std::vector<std::string> a;
  std::vector<long> so;
  int line = 0;
  std::vector<long> params;
};

inline void add_space_options(CLI::App* cmd, SpaceArgs& s) {
  cmd->add_option("--a", s.a, "a1 a2 a3 as p/q")->expected(3);
  cmd->add_option("--so", s.so, "k l m for SO(k+l+m)/SO(k)xSO(l)xSO(m)")->expected(3);
  cmd->add_option("--line", s.line, "catalog line 1-15");
  cmd->add_option("--params", s.params, "catalog family parameters")->delimiter(',');
}

inline GWSpace resolve_space(const SpaceArgs& s, bool allow_boundary) {
  const int given = !s.a.empty() + !s.so.empty() + (s.line != 0);
  if (given != 1) fail(Errc::ParseError, "give exactly one of --a, --so, --line");
  if (!s.a.empty()) return GWSpace::abstract(AParams::parse(s.a[0], s.a[1], s.a[2], allow_boundary));
  if (!s.so.empty()) return so_space(SOTriple(s.so[0], s.so[1], s.so[2]), allow_boundary);
  return catalog_space(s.line, s.params);
}

inline std::vector<Num> parse_decimals(const std::string& s, size_t n, const char* what) {
  std::vector<Num> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      (void)std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.emplace_back(item);
    } catch (const std::exception&) {
      fail(Errc::ParseError, std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  if (out.size() != n) fail(Errc::ParseError, std::string(what) + " needs " + std::to_string(n) + " comma-separated values");
  return out;
}

inline std::string coord_out(const Coord& c, int digits) {
  return is_exact(c) ? coord_str(c) : coord_decimal(c, digits);
}

inline std::string equilibria_csv(const std::vector<EquilibriumReport>& eq, int digits) {
  std::string out = "x1,x2,x3,class,eig1_re,eig1_im,eig2_re,eig2_im\n";
  for (const auto& e : eq) {
    out += fixed(e.x[0], digits) + "," + fixed(e.x[1], digits) + "," + fixed(e.x[2], digits) + "," +
           std::string(stability_name(e.cls));
    for (size_t i = 0; i < 2; ++i) out += "," + fixed(e.eig_re[i], digits) + "," + fixed(e.eig_im[i], digits);
    out += "\n";
  }
  return out;
}

inline std::string equilibria_text(const std::vector<EquilibriumReport>& eq, int digits) {
  std::string out;
  for (const auto& e : eq)
    out += std::string(stability_name(e.cls)) + " at (" + fixed(e.x[0], digits) + ", " + fixed(e.x[1], digits) +
           ", " + fixed(e.x[2], digits) + ")\n";
  return out;
}

inline Format pick(Format f, Format fallback) { return f == Format::Auto ? fallback : f; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands. Each returns the rendered output.

inline std::string cmd_classify(const std::vector<std::string>& a, const RunConfig& cfg) {
  const AParams p = AParams::parse(a.at(0), a.at(1), a.at(2));
  const RegionLabel r = classify_region(p);
  const BigRational s1 = p[0] + p[1] + p[2];
  switch (detail::pick(cfg.format, Format::Json)) {
    case Format::Csv:
      return "a1,a2,a3,s1,Q_sign,region,method\n" + p[0].str() + "," + p[1].str() + "," + p[2].str() + "," +
             s1.str() + "," + std::to_string(r.q_sign) + "," + std::string(region_name(r.label)) + "," +
             std::string(method_name(r.method)) + "\n";
    case Format::Text:
      return std::string(region_name(r.label)) + " (Q sign " + std::to_string(r.q_sign) + ", " +
             std::string(method_name(r.method)) + ")\n";
    default: {
      nlohmann::json j{{"a", {p[0].str(), p[1].str(), p[2].str()}},
                       {"s1", s1.str()},
                       {"Q_sign", r.q_sign},
                       {"region", std::string(region_name(r.label))},
                       {"method", std::string(method_name(r.method))}};
      return j.dump(2) + "\n";
    }
  }
}

inline std::string cmd_solve(const GWSpace& space, const RunConfig& cfg) {
  const auto sols = solve(space.params);
  const int dg = cfg.digits;
  switch (detail::pick(cfg.format, Format::Json)) {
    case Format::Csv: {
      std::string out = "x1,x2,x3,multiplicity,exact,isometric_to\n";
      for (const auto& s : sols)
        out += detail::coord_out(s.metric[0], dg) + "," + detail::coord_out(s.metric[1], dg) + "," +
               detail::coord_out(s.metric[2], dg) + "," + std::to_string(s.multiplicity) + "," +
               (s.exact ? "true" : "false") + "," + (s.isometric_to ? std::to_string(*s.isometric_to) : "") + "\n";
      return out;
    }
    case Format::Text: {
      std::string out = std::to_string(sols.size()) + " Einstein metric(s) up to homothety on " + space.describe() + "\n";
      for (const auto& s : sols)
        out += "  " + s.metric.str() + (s.isometric_to ? "  isometric to #" + std::to_string(*s.isometric_to) : "") + "\n";
      return out;
    }
    default: {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& s : sols) {
        nlohmann::json j;
        j["x1"] = detail::coord_out(s.metric[0], dg);
        j["x2"] = detail::coord_out(s.metric[1], dg);
        j["x3"] = detail::coord_out(s.metric[2], dg);
        j["decimal"] = {coord_decimal(s.metric[0], dg), coord_decimal(s.metric[1], dg), coord_decimal(s.metric[2], dg)};
        j["multiplicity"] = s.multiplicity;
        j["exact"] = s.exact;
        j["isometric_flag"] = s.isometric_to.has_value();
        j["isometric_to"] = s.isometric_to ? nlohmann::json(*s.isometric_to) : nlohmann::json(nullptr);
        list.push_back(std::move(j));
      }
      nlohmann::json out{{"space", space_json(space)}, {"classes", sols.size()}, {"solutions", list}};
      return out.dump(2) + "\n";
    }
  }
}

struct FlowArgs {
  std::string x0 = "1,1,1";
  std::string t_max = "10";
  std::string step = "0.001";
  int sample_every = 1;
};

inline std::string cmd_flow(const GWSpace& space, const FlowArgs& f, const RunConfig& cfg) {
  const auto x = detail::parse_decimals(f.x0, 3, "--x0");
  const auto tm = detail::parse_decimals(f.t_max, 1, "--t-max");
  const auto st = detail::parse_decimals(f.step, 1, "--step");
  const auto tr = integrate(space, {x[0], x[1], x[2]}, tm[0], st[0], f.sample_every);
  const auto eq = equilibria(space);
  switch (detail::pick(cfg.format, Format::Csv)) {
    case Format::Json: {
      nlohmann::json j = trajectory_json(tr, cfg.digits);
      nlohmann::json e = nlohmann::json::array();
      for (const auto& r : eq) e.push_back(equilibrium_json(r, cfg.digits));
      j["equilibria"] = e;
      return j.dump(2) + "\n";
    }
    case Format::Text: {
      const auto& last = tr.samples.back();
      return "t = " + fixed(last.t, 6) + (tr.halted ? " (halted: " + tr.halt_reason + ")" : "") + "\nx = (" +
             fixed(last.x[0], cfg.digits) + ", " + fixed(last.x[1], cfg.digits) + ", " + fixed(last.x[2], cfg.digits) +
             ")\nmax volume drift = " + fixed(tr.max_volume_drift, cfg.digits) + "\n" +
             detail::equilibria_text(eq, cfg.digits);
    }
    default:
      return trajectory_csv(tr, cfg.digits) + "\n" + detail::equilibria_csv(eq, cfg.digits);
  }
}

struct PortraitArgs {
  int grid = 20;
  std::string bounds = "0.25,4,0.25,4";
};

inline std::string cmd_portrait(const GWSpace& space, const PortraitArgs& p, const RunConfig& cfg) {
  const auto b = detail::parse_decimals(p.bounds, 4, "--bounds");
  const auto portrait = portrait_grid(space, p.grid, {b[0], b[1], b[2], b[3]});
  switch (detail::pick(cfg.format, Format::Csv)) {
    case Format::Json: return portrait_json(portrait, cfg.digits).dump(2) + "\n";
    case Format::Text: return detail::equilibria_text(portrait.equilibria, cfg.digits);
    default: return portrait_csv(portrait, cfg.digits) + "\n" + detail::equilibria_csv(portrait.equilibria, cfg.digits);
  }
}

struct CensusArgs {
  long max = 18;
  bool solve = false;
  bool table3 = false;
};

inline std::string cmd_census(const CensusArgs& c, const RunConfig& cfg) {
  const Format f = detail::pick(cfg.format, Format::Csv);
  if (c.table3) {
    const auto rows = check_table3(c.solve);
    if (f == Format::Json) return table3_json(rows).dump(2) + "\n";
    if (f == Format::Text) {
      const auto pass = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
      std::string out;
      for (const auto& r : rows)
        if (!r.pass)
          out += r.row.triple.str() + ": computed " + std::string(region_name(r.record.region)) + ", listed " +
                 std::string(region_name(r.row.expected)) + "\n";
      return out + std::to_string(pass) + "/" + std::to_string(rows.size()) + " rows agree\n";
    }
    return table3_csv(rows);
  }
  const auto recs = sweep(c.max, c.solve, cfg.workers > 0 ? cfg.workers : default_workers());
  if (f == Format::Json) return census_json(recs).dump(2) + "\n";
  return census_csv(recs);
}

inline std::string cmd_scan_zeros(long max, const RunConfig& cfg) {
  const auto zs = scan_zeros(max);
  switch (detail::pick(cfg.format, Format::Csv)) {
    case Format::Json: return zeros_json(zs).dump(2) + "\n";
    case Format::Text: {
      std::string out;
      for (const auto& z : zs)
        out += z.triple.str() + " " + (z.family_t ? "t=" + std::to_string(*z.family_t) : "NOVEL") + "\n";
      return out;
    }
    default: return zeros_csv(zs);
  }
}

inline std::string cmd_catalog(int line, const std::vector<long>& params, const RunConfig& cfg) {
  const Format f = detail::pick(cfg.format, Format::Json);
  if (line == 0) {
    const auto all = catalog_json();
    if (f == Format::Json) return all.dump(2) + "\n";
    std::string out = f == Format::Csv ? "line,g,h,region\n" : "";
    for (const auto& row : all)
      out += std::to_string(row["line"].get<int>()) + (f == Format::Csv ? "," : "  ") + row["g"].get<std::string>() +
             (f == Format::Csv ? "," : "  ") + row["h"].get<std::string>() + (f == Format::Csv ? "," : "  ") +
             row["region"].get<std::string>() + "\n";
    return out;
  }
  const GWSpace s = catalog_space(line, params);
  nlohmann::json j = space_json(s);
  j["line"] = line;
  j["expected_region"] = std::string(expected_name(expected_region(line)));
  std::string computed = "BoundaryCube";
  if (!s.params.boundary()) computed = std::string(region_name(classify_region(s.params).label));
  j["region"] = computed;
  if (f == Format::Csv)
    return "line,a1,a2,a3,region,expected_region\n" + std::to_string(line) + "," + s.params[0].str() + "," +
           s.params[1].str() + "," + s.params[2].str() + "," + computed + "," +
           j["expected_region"].get<std::string>() + "\n";
  if (f == Format::Text) return s.describe() + ": a = " + s.params.str() + ", region " + computed + "\n";
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

/// Entry point shared by tools/wallach and the tests.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Einstein metrics and Ricci flow on generalized Wallach spaces", "wallach"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string format = "auto";
  app.add_option("--format", format, "json | csv | text (default depends on the command)")
      ->check(CLI::IsMember({"auto", "json", "csv", "text"}));
  app.add_option("--digits", cfg.digits, "decimal digits for floating output")->check(CLI::Range(6, 1000));
  app.add_option("--output,-o", cfg.output, "write to a file instead of stdout");
  app.add_option("--workers", cfg.workers, "census worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--seed", cfg.seed, "seed for sampled checks");

  std::vector<std::string> classify_a;
  auto* classify = app.add_subcommand("classify", "region of a point (a1, a2, a3)");
  classify->add_option("a", classify_a, "a1 a2 a3 as p/q")->expected(3)->required();

  detail::SpaceArgs solve_space;
  auto* solve_cmd = app.add_subcommand("solve", "invariant Einstein metrics up to homothety");
  detail::add_space_options(solve_cmd, solve_space);

  detail::SpaceArgs flow_space;
  FlowArgs flow_args;
  auto* flow_cmd = app.add_subcommand("flow", "integrate the normalized Ricci flow");
  detail::add_space_options(flow_cmd, flow_space);
  flow_cmd->add_option("--x0", flow_args.x0, "start metric x1,x2,x3");
  flow_cmd->add_option("--t-max", flow_args.t_max, "final time");
  flow_cmd->add_option("--step", flow_args.step, "RK4 step");
  flow_cmd->add_option("--sample-every", flow_args.sample_every, "emit every n-th step")->check(CLI::PositiveNumber);

  detail::SpaceArgs portrait_space;
  PortraitArgs portrait_args;
  auto* portrait_cmd = app.add_subcommand("portrait", "vector field on the volume-1 chart");
  detail::add_space_options(portrait_cmd, portrait_space);
  portrait_cmd->add_option("--grid", portrait_args.grid, "points per side");
  portrait_cmd->add_option("--bounds", portrait_args.bounds, "x1lo,x1hi,x2lo,x2hi");

  CensusArgs census_args;
  auto* census_cmd = app.add_subcommand("census", "sweep of SO(k+l+m)/SO(k)xSO(l)xSO(m)");
  census_cmd->add_option("--max", census_args.max, "largest k+l+m");
  census_cmd->add_flag("--solve", census_args.solve, "run the certified solver per triple");
  census_cmd->add_flag("--table3", census_args.table3, "check the embedded small-triple table");

  long scan_max = 30;
  auto* scan_cmd = app.add_subcommand("scan-zeros", "triples with G = 0");
  scan_cmd->add_option("--max", scan_max, "largest k+l+m");

  int cat_line = 0;
  std::vector<long> cat_params;
  auto* catalog_cmd = app.add_subcommand("catalog", "the 15 lines of the classification");
  catalog_cmd->add_option("--line", cat_line, "line 1-15");
  catalog_cmd->add_option("--params", cat_params, "family parameters")->delimiter(',');

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << nlohmann::json{{"error", "ParseError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : format == "text" ? Format::Text
                                                                                                 : Format::Auto;

  try {
    std::string text;
    if (*classify) text = cmd_classify(classify_a, cfg);
    else if (*solve_cmd) text = cmd_solve(detail::resolve_space(solve_space, true), cfg);
    else if (*flow_cmd) text = cmd_flow(detail::resolve_space(flow_space, false), flow_args, cfg);
    else if (*portrait_cmd) text = cmd_portrait(detail::resolve_space(portrait_space, false), portrait_args, cfg);
    else if (*census_cmd) text = cmd_census(census_args, cfg);
    else if (*scan_cmd) text = cmd_scan_zeros(scan_max, cfg);
    else text = cmd_catalog(cat_line, cat_params, cfg);

    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) fail(Errc::InvalidArgument, "cannot write " + cfg.output);
      f << text;
    }
    return 0;
  } catch (const Error& e) {
    err << nlohmann::json{{"error", std::string(errc_name(e.code()))}, {"message", e.what()}}.dump() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << nlohmann::json{{"error", "InvariantViolation"}, {"message", e.what()}}.dump() << "\n";
    return 4;
  }
}

}  // namespace wallach::cli
