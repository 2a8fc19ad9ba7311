#pragma once

// Case files and result export.
//
// A case is one JSON object:
//
//   {
//     "schema_version": 1,
//     "notes": "free text",              // optional
//     "mode": "constant" | "variable",
//     "horizon": 24,
//     "tlmp": [...],                     // wholesale price per hour
//     "assigned_power": [...],           // constant mode only
//     "buses": [ {"id": 1, "root": true},
//                {"id": 2, "fixed_load": [...], "bid": [[benefit, qty], ...]} ],
//     "lines": [ {"id": 1, "from": 1, "to": 2, "capacity": 6.0} ]
//   }
//
// Profiles (tlmp, assigned_power, fixed_load) accept a scalar as shorthand
// for a flat profile; serialization always writes full arrays. A bid is
// either one segment list used every hour or {"hourly": [list per hour]}.
// Absent capacity means unlimited. Unknown fields are rejected so typos
// don't silently drop data.
//
// parse_case only checks shape and types; run validate_case on the result
// for the semantic rules. serialize_case writes a canonical form that parses
// back to an equal MarketCase and re-serializes byte-identically.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dmarket/clearing.hpp"
#include "dmarket/domain.hpp"
#include "dmarket/settlement.hpp"

namespace dmarket {

struct ParseResult {
  std::optional<MarketCase> parsed;  // set iff errors is empty
  std::vector<Violation> errors;     // where = JSON-pointer-ish path

  bool ok() const { return parsed.has_value(); }
};

namespace detail {

using ojson = nlohmann::ordered_json;

inline bool known_keys(const ojson& obj, const std::string& where,
                       std::initializer_list<const char*> allowed,
                       std::vector<Violation>& errs) {
  bool clean = true;
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || item.key() == k;
    if (!ok) {
      errs.push_back({where + "/" + item.key(), "unknown field"});
      clean = false;
    }
  }
  return clean;
}

// Scalar shorthand expands to `horizon` copies.
inline std::optional<std::vector<double>> number_profile(
    const ojson& v, std::size_t horizon, const std::string& where,
    std::vector<Violation>& errs) {
  if (v.is_number()) return std::vector<double>(horizon, v.get<double>());
  if (v.is_array()) {
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        errs.push_back({where + "/" + std::to_string(i), "expected a number"});
        return std::nullopt;
      }
      out.push_back(v[i].get<double>());
    }
    return out;
  }
  errs.push_back({where, "expected a number or an array of numbers"});
  return std::nullopt;
}

inline std::optional<std::vector<BidSegment>> segment_list(
    const ojson& v, const std::string& where, std::vector<Violation>& errs) {
  if (!v.is_array()) {
    errs.push_back({where, "expected a list of [benefit, quantity] pairs"});
    return std::nullopt;
  }
  std::vector<BidSegment> segs;
  segs.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const ojson& e = v[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number()) {
      errs.push_back(
          {where + "/" + std::to_string(i), "expected [benefit, quantity]"});
      return std::nullopt;
    }
    segs.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  return segs;
}

inline std::optional<BidCurve> bid_curve(const ojson& v,
                                         const std::string& where,
                                         std::vector<Violation>& errs) {
  if (v.is_array()) {
    auto segs = segment_list(v, where, errs);
    if (!segs) return std::nullopt;
    return BidCurve::shared(std::move(*segs));
  }
  if (v.is_object()) {
    if (!known_keys(v, where, {"hourly"}, errs)) return std::nullopt;
    if (!v.contains("hourly") || !v["hourly"].is_array()) {
      errs.push_back({where, "expected {\"hourly\": [segment list per hour]}"});
      return std::nullopt;
    }
    std::vector<std::vector<BidSegment>> hours;
    const ojson& jh = v["hourly"];
    hours.reserve(jh.size());
    for (std::size_t h = 0; h < jh.size(); ++h) {
      auto segs =
          segment_list(jh[h], where + "/hourly/" + std::to_string(h), errs);
      if (!segs) return std::nullopt;
      hours.push_back(std::move(*segs));
    }
    return BidCurve::hourly(std::move(hours));
  }
  errs.push_back({where, "expected a segment list or {\"hourly\": ...}"});
  return std::nullopt;
}

// number/string formatting for the canonical writer; nlohmann's dump gives
// the shortest text that parses back to the same value
inline std::string jnum(double v) { return ojson(v).dump(); }

inline std::string jnums(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += jnum(v[i]);
  }
  return s + "]";
}

inline std::string jsegs(const std::vector<BidSegment>& segs) {
  std::string s = "[";
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (i) s += ", ";
    s += "[" + jnum(segs[i].benefit) + ", " + jnum(segs[i].max_quantity) + "]";
  }
  return s + "]";
}

}  // namespace detail

// Collects every problem it can find rather than stopping at the first.
inline ParseResult parse_case(const std::string& text) {
  using detail::ojson;
  ParseResult out;
  auto& errs = out.errors;

  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    errs.push_back({"/", std::string("not valid JSON: ") + e.what()});
    return out;
  }
  if (!j.is_object()) {
    errs.push_back({"/", "expected a JSON object"});
    return out;
  }

  detail::known_keys(j, "",
                     {"schema_version", "notes", "mode", "horizon", "tlmp",
                      "assigned_power", "buses", "lines"},
                     errs);

  if (!j.contains("schema_version") ||
      !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<long>() != 1)
    errs.push_back({"/schema_version", "expected 1"});

  MarketCase cs;
  if (j.contains("notes")) {
    if (j["notes"].is_string())
      cs.notes = j["notes"].get<std::string>();
    else
      errs.push_back({"/notes", "expected a string"});
  }

  bool mode_known = false;
  if (!j.contains("mode") || !j["mode"].is_string()) {
    errs.push_back({"/mode", "expected \"constant\" or \"variable\""});
  } else {
    const std::string m = j["mode"].get<std::string>();
    if (m == "constant") {
      cs.mode = ClearingMode::ConstantPower;
      mode_known = true;
    } else if (m == "variable") {
      cs.mode = ClearingMode::VariablePower;
      mode_known = true;
    } else {
      errs.push_back(
          {"/mode", "expected \"constant\" or \"variable\", got \"" + m + "\""});
    }
  }

  if (!j.contains("horizon") || !j["horizon"].is_number_unsigned())
    errs.push_back({"/horizon", "expected a non-negative integer"});
  else
    cs.horizon = j["horizon"].get<std::size_t>();

  if (j.contains("tlmp")) {
    if (auto p = detail::number_profile(j["tlmp"], cs.horizon, "/tlmp", errs))
      cs.tlmp = std::move(*p);
  } else {
    errs.push_back({"/tlmp", "missing (wholesale price per hour)"});
  }

  if (mode_known) {
    if (cs.mode == ClearingMode::ConstantPower) {
      if (j.contains("assigned_power")) {
        if (auto p = detail::number_profile(j["assigned_power"], cs.horizon,
                                            "/assigned_power", errs))
          cs.assigned_power = std::move(*p);
      } else {
        errs.push_back({"/assigned_power", "missing (required in constant mode)"});
      }
    } else if (j.contains("assigned_power")) {
      errs.push_back({"/assigned_power", "not used in variable mode"});
    }
  }

  if (!j.contains("buses") || !j["buses"].is_array()) {
    errs.push_back({"/buses", "expected an array of bus objects"});
  } else {
    const ojson& jb = j["buses"];
    for (std::size_t i = 0; i < jb.size(); ++i) {
      const std::string where = "/buses/" + std::to_string(i);
      if (!jb[i].is_object()) {
        errs.push_back({where, "expected a bus object"});
        continue;
      }
      detail::known_keys(jb[i], where, {"id", "root", "fixed_load", "bid"},
                         errs);
      if (!jb[i].contains("id") || !jb[i]["id"].is_number_integer()) {
        errs.push_back({where + "/id", "expected an integer"});
        continue;
      }
      Bus b;
      b.id = jb[i]["id"].get<int>();
      if (jb[i].contains("root")) {
        if (!jb[i]["root"].is_boolean())
          errs.push_back({where + "/root", "expected true or false"});
        else
          b.is_root = jb[i]["root"].get<bool>();
      }
      if (b.is_root) cs.network.root = b.id;
      if (jb[i].contains("fixed_load")) {
        if (auto p = detail::number_profile(jb[i]["fixed_load"], cs.horizon,
                                            where + "/fixed_load", errs))
          b.fixed_load = std::move(*p);
      }
      if (jb[i].contains("bid")) {
        if (auto c = detail::bid_curve(jb[i]["bid"], where + "/bid", errs))
          b.bid = std::move(*c);
      }
      cs.network.buses.push_back(std::move(b));
    }
  }

  if (!j.contains("lines") || !j["lines"].is_array()) {
    errs.push_back({"/lines", "expected an array of line objects"});
  } else {
    const ojson& jl = j["lines"];
    for (std::size_t i = 0; i < jl.size(); ++i) {
      const std::string where = "/lines/" + std::to_string(i);
      if (!jl[i].is_object()) {
        errs.push_back({where, "expected a line object"});
        continue;
      }
      detail::known_keys(jl[i], where, {"id", "from", "to", "capacity"}, errs);
      Line l;
      bool ok = true;
      for (const char* k : {"id", "from", "to"}) {
        if (!jl[i].contains(k) || !jl[i][k].is_number_integer()) {
          errs.push_back({where + "/" + k, "expected an integer"});
          ok = false;
        }
      }
      if (!ok) continue;
      l.id = jl[i]["id"].get<int>();
      l.from_bus = jl[i]["from"].get<int>();
      l.to_bus = jl[i]["to"].get<int>();
      if (jl[i].contains("capacity")) {
        if (!jl[i]["capacity"].is_number())
          errs.push_back({where + "/capacity", "expected a number (MW)"});
        else
          l.capacity = jl[i]["capacity"].get<double>();
      }
      cs.network.lines.push_back(l);
    }
  }

  if (errs.empty()) out.parsed = std::move(cs);
  return out;
}

inline ParseResult parse_case_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    ParseResult out;
    out.errors.push_back({"/", "cannot read " + path.string()});
    return out;
  }
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  return parse_case(text);
}

// Canonical form: fixed key order, profiles as full arrays on one line, one
// bus or line per row, buses and lines in the order they are stored. Rejects
// cases that fail validate_case — garbage in would mean unparseable garbage
// out.
inline std::string serialize_case(const MarketCase& cs) {
  detail::require_valid(cs);
  using detail::jnum;
  using detail::jnums;
  using detail::jsegs;

  std::string s = "{\n";
  s += "  \"schema_version\": 1,\n";
  if (!cs.notes.empty())
    s += "  \"notes\": " + detail::ojson(cs.notes).dump() + ",\n";
  s += "  \"mode\": \"" + std::string(to_string(cs.mode)) + "\",\n";
  s += "  \"horizon\": " + std::to_string(cs.horizon) + ",\n";
  s += "  \"tlmp\": " + jnums(cs.tlmp) + ",\n";
  if (cs.mode == ClearingMode::ConstantPower)
    s += "  \"assigned_power\": " + jnums(cs.assigned_power) + ",\n";

  s += "  \"buses\": [\n";
  for (std::size_t i = 0; i < cs.network.buses.size(); ++i) {
    const Bus& b = cs.network.buses[i];
    s += "    {\"id\": " + std::to_string(b.id);
    if (b.is_root) s += ", \"root\": true";
    if (!b.fixed_load.empty()) s += ", \"fixed_load\": " + jnums(b.fixed_load);
    if (b.bid) {
      if (b.bid->is_hourly()) {
        s += ", \"bid\": {\"hourly\": [";
        const auto& hours = b.bid->hourly_segments();
        for (std::size_t h = 0; h < hours.size(); ++h) {
          if (h) s += ", ";
          s += jsegs(hours[h]);
        }
        s += "]}";
      } else {
        s += ", \"bid\": " + jsegs(b.bid->shared_segments());
      }
    }
    s += i + 1 < cs.network.buses.size() ? "},\n" : "}\n";
  }
  s += "  ],\n";

  s += "  \"lines\": [\n";
  for (std::size_t i = 0; i < cs.network.lines.size(); ++i) {
    const Line& l = cs.network.lines[i];
    s += "    {\"id\": " + std::to_string(l.id) +
         ", \"from\": " + std::to_string(l.from_bus) +
         ", \"to\": " + std::to_string(l.to_bus);
    if (l.capacity) s += ", \"capacity\": " + jnum(*l.capacity);
    s += i + 1 < cs.network.lines.size() ? "},\n" : "}\n";
  }
  s += "  ]\n}\n";
  return s;
}

// ---- result export -------------------------------------------------------
//
// Plain CSV with fixed decimal places so identical runs give identical
// bytes: prices and money at 4 places, power at 6. Hours that failed to
// clear are simply absent from clearing exports.

namespace detail {

inline std::string fixed_decimal(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  std::string s(buf);
  // a rounded-away sign is just noise
  if (s[0] == '-' && s.find_first_not_of("0.", 1) == std::string::npos)
    s.erase(0, 1);
  return s;
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace detail

inline std::string render_dlmp_csv(const MarketCase& cs,
                                   const HorizonClearing& hz) {
  std::string out = "hour,bus,dlmp\n";
  for (std::size_t t = 0; t < hz.hours.size(); ++t) {
    if (!hz.hours[t]) continue;
    const HourClearing& h = *hz.hours[t];
    for (std::size_t m = 0; m < cs.network.buses.size(); ++m) {
      out += std::to_string(t);
      out += ',';
      out += std::to_string(cs.network.buses[m].id);
      out += ',';
      out += detail::fixed_decimal(h.dlmp[m], 4);
      out += '\n';
    }
  }
  return out;
}

inline std::string render_flows_csv(const MarketCase& cs,
                                    const HorizonClearing& hz) {
  std::string out = "hour,line,from,to,flow,capacity,shadow,binding\n";
  for (std::size_t t = 0; t < hz.hours.size(); ++t) {
    if (!hz.hours[t]) continue;
    const HourClearing& h = *hz.hours[t];
    for (std::size_t l = 0; l < cs.network.lines.size(); ++l) {
      const Line& ln = cs.network.lines[l];
      const bool binding =
          ln.capacity && std::fabs(h.flows[l]) >= *ln.capacity - 1e-6;
      out += std::to_string(t);
      out += ',';
      out += std::to_string(ln.id);
      out += ',';
      out += std::to_string(ln.from_bus);
      out += ',';
      out += std::to_string(ln.to_bus);
      out += ',';
      out += detail::fixed_decimal(h.flows[l], 6);
      out += ',';
      if (ln.capacity) out += detail::fixed_decimal(*ln.capacity, 6);
      out += ',';
      out += detail::fixed_decimal(h.line_shadow[l], 4);
      out += ',';
      out += binding ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

inline std::string render_settlement_csv(const Settlement& s) {
  std::string out = "hour,customer_payment,utility_payment,surplus,balance_residual\n";
  for (std::size_t t = 0; t < s.hours.size(); ++t) {
    const SettlementRow& r = s.hours[t];
    out += std::to_string(t);
    out += ',';
    out += detail::fixed_decimal(r.customer_payment, 4);
    out += ',';
    out += detail::fixed_decimal(r.utility_payment, 4);
    out += ',';
    out += detail::fixed_decimal(r.surplus, 4);
    out += ',';
    out += detail::fixed_decimal(r.balance_residual, 6);
    out += '\n';
  }
  out += "total,";
  out += detail::fixed_decimal(s.customer_payment_total, 4);
  out += ',';
  out += detail::fixed_decimal(s.utility_payment_total, 4);
  out += ',';
  out += detail::fixed_decimal(s.surplus_total, 4);
  out += ",\n";
  return out;
}

inline std::string render_sweep_csv(const std::vector<SweepPoint>& pts) {
  std::string out = "assigned_power,average_dlmp,degenerate,infeasible\n";
  for (const SweepPoint& p : pts) {
    out += detail::fixed_decimal(p.assigned_power, 6);
    out += ',';
    if (!p.infeasible) out += detail::fixed_decimal(p.average_dlmp, 4);
    out += ',';
    out += p.degenerate ? '1' : '0';
    out += ',';
    out += p.infeasible ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline void export_clearing(const std::filesystem::path& dir,
                            const MarketCase& cs, const HorizonClearing& hz) {
  std::filesystem::create_directories(dir);
  detail::write_text_file(dir / "dlmp.csv", render_dlmp_csv(cs, hz));
  detail::write_text_file(dir / "flows.csv", render_flows_csv(cs, hz));
}

inline void export_settlement(const std::filesystem::path& dir,
                              const Settlement& s) {
  std::filesystem::create_directories(dir);
  detail::write_text_file(dir / "settlement.csv", render_settlement_csv(s));
}

inline void export_sweep(const std::filesystem::path& dir,
                         const std::vector<SweepPoint>& pts) {
  std::filesystem::create_directories(dir);
  detail::write_text_file(dir / "sweep.csv", render_sweep_csv(pts));
}

// ---- embedded study feeder -----------------------------------------------
//
// 13-bus radial feeder, 24 hours. Two spurs hang off bus 4: 5-6-8-7-{11,12}
// and 9-10-13. Nine buses bid three segments each (11 MW elastic in total);
// buses 4, 8 and 9 only carry fixed load. Base line limits sit above the
// worst-case flow of any variant that keeps them, so the base variant clears
// uncongested and every bus sees one price per hour.
//
//   base             constant assignment tracking the load shape
//   congested        lines 5 (5->6) and 10 (4->9) tightened to 1.4 / 1.5 MW;
//                    peak hours bind and the spurs price above the rest
//   high-assignment  assignment pushed past the demand that is worth the
//                    wholesale price; the clearing price drops to 17, below
//                    every wholesale price, so the operator runs a deficit
//   variable         assignment chosen against the wholesale price; limits
//                    stay slack and every price equals the wholesale price
//   variable-tight   variable with lines 5 and 7 squeezed to 1.2 / 0.6 MW;
//                    both bind in every hour and prices below them stack the
//                    two shadow prices on top of the wholesale price

inline std::vector<std::string> embedded_variants() {
  return {"base", "congested", "high-assignment", "variable", "variable-tight"};
}

inline MarketCase embedded_case(const std::string& variant = "base") {
  static constexpr double kShape[24] = {
      0.700, 0.650, 0.620, 0.600, 0.620, 0.680, 0.800, 0.950,
      1.050, 1.100, 1.120, 1.150, 1.180, 1.150, 1.120, 1.100,
      1.150, 1.250, 1.350, 1.400, 1.300, 1.100, 0.900, 0.780};
  static constexpr double kWholesale[24] = {
      18.05, 17.85, 17.65, 17.55, 17.65, 17.95, 18.45, 19.05,
      19.65, 20.25, 20.75, 21.15, 21.45, 21.65, 21.55, 21.25,
      21.05, 21.35, 21.85, 21.95, 21.45, 20.35, 19.25, 18.45};
  // kept clear of the bid ladder's breakpoints and of segment-sized
  // remainders inside the marginal block, so no hour clears degenerate
  static constexpr double kElastic[24] = {
      2.60, 2.40, 2.30, 2.15, 2.30, 2.50, 2.90, 3.30,
      3.70, 3.95, 4.20, 4.35, 4.48, 4.35, 4.20, 4.10,
      4.30, 4.48, 4.60, 4.55, 4.45, 3.80, 3.20, 2.80};

  struct BusSpec {
    int id;
    double base;  // MW at shape 1.0
    std::vector<BidSegment> segs;
  };
  const std::vector<BusSpec> spec = {
      {2, 0.10, {{24, 0.4}, {20, 0.4}, {16, 0.4}}},
      {3, 0.10, {{25, 0.4}, {21, 0.4}, {17, 0.4}}},
      {4, 0.30, {}},
      {5, 0.10, {{26, 0.5}, {22, 0.4}, {18, 0.3}}},
      {6, 0.15, {{28, 0.5}, {23, 0.4}, {19, 0.3}}},
      {7, 0.15, {{30, 0.5}, {24, 0.4}, {20, 0.3}}},
      {8, 0.25, {}},
      {9, 0.20, {}},
      {10, 0.10, {{36, 0.6}, {31, 0.5}, {26, 0.4}}},
      {11, 0.10, {{29, 0.4}, {24, 0.3}, {20, 0.3}}},
      {12, 0.10, {{28, 0.4}, {23, 0.3}, {19, 0.3}}},
      {13, 0.10, {{35, 0.6}, {30, 0.5}, {25, 0.4}}},
  };
  struct LineSpec {
    int id, from, to;
    double cap;  // <= 0 means unlimited
  };
  const std::vector<LineSpec> wires = {
      {1, 1, 2, 0},    {2, 2, 3, 0},    {3, 3, 4, 0},    {4, 4, 5, 8.0},
      {5, 5, 6, 6.0},  {6, 6, 8, 5.0},  {7, 8, 7, 5.0},  {8, 7, 11, 2.0},
      {9, 7, 12, 2.0}, {10, 4, 9, 6.0}, {11, 9, 10, 4.0}, {12, 10, 13, 3.0}};

  MarketCase cs;
  cs.horizon = 24;
  cs.mode = ClearingMode::ConstantPower;
  cs.tlmp.assign(kWholesale, kWholesale + 24);
  cs.network.root = 1;

  Bus root;
  root.id = 1;
  root.is_root = true;
  cs.network.buses.push_back(root);
  for (const BusSpec& s : spec) {
    Bus b;
    b.id = s.id;
    b.fixed_load.resize(24);
    for (std::size_t t = 0; t < 24; ++t) b.fixed_load[t] = s.base * kShape[t];
    if (!s.segs.empty()) b.bid = BidCurve::shared(s.segs);
    cs.network.buses.push_back(std::move(b));
  }
  for (const LineSpec& w : wires) {
    Line l;
    l.id = w.id;
    l.from_bus = w.from;
    l.to_bus = w.to;
    if (w.cap > 0) l.capacity = w.cap;
    cs.network.lines.push_back(l);
  }

  std::vector<double> fixed_total(24, 0.0);
  for (std::size_t t = 0; t < 24; ++t)
    for (const BusSpec& s : spec) fixed_total[t] += s.base * kShape[t];
  cs.assigned_power.resize(24);
  for (std::size_t t = 0; t < 24; ++t)
    cs.assigned_power[t] = fixed_total[t] + kElastic[t];

  auto set_cap = [&cs](int line_id, double cap) {
    for (Line& l : cs.network.lines)
      if (l.id == line_id) l.capacity = cap;
  };

  if (variant == "base") {
    // as built
  } else if (variant == "congested") {
    set_cap(5, 1.4);
    set_cap(10, 1.5);
  } else if (variant == "high-assignment") {
    for (std::size_t t = 0; t < 24; ++t)
      cs.assigned_power[t] = fixed_total[t] + 10.4;
  } else if (variant == "variable") {
    cs.mode = ClearingMode::VariablePower;
    cs.assigned_power.clear();
  } else if (variant == "variable-tight") {
    cs.mode = ClearingMode::VariablePower;
    cs.assigned_power.clear();
    set_cap(5, 1.2);
    set_cap(7, 0.6);
  } else {
    throw std::invalid_argument(
        "unknown embedded variant \"" + variant +
        "\" (have base, congested, high-assignment, variable, variable-tight)");
  }
  cs.notes = "embedded 13-bus feeder (" + variant + ")";
  return cs;
}

}  // namespace dmarket
