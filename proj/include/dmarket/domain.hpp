#pragma once

// Market domain types: radial distribution network, multi-segment demand
// bids, and the per-horizon market case. All types are plain values and
// immutable after construction; structural checks live in validate_case.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dmarket {

enum class ClearingMode { ConstantPower, VariablePower };

inline const char* to_string(ClearingMode m) {
  return m == ClearingMode::ConstantPower ? "constant" : "variable";
}

// One step of a demand bid: willingness to pay `benefit` $/MWh for up to
// `max_quantity` MW.
struct BidSegment {
  double benefit = 0.0;       // $/MWh
  double max_quantity = 0.0;  // MW

  friend bool operator==(const BidSegment&, const BidSegment&) = default;
};

// A per-bus demand bid. Either one segment list reused for every hour, or
// one list per hour. Benefits must be non-increasing across segments.
class BidCurve {
 public:
  static BidCurve shared(std::vector<BidSegment> segments) {
    BidCurve c;
    c.shared_ = std::move(segments);
    return c;
  }
  static BidCurve hourly(std::vector<std::vector<BidSegment>> per_hour) {
    BidCurve c;
    c.hourly_ = std::move(per_hour);
    c.is_hourly_ = true;
    return c;
  }

  bool is_hourly() const { return is_hourly_; }
  std::size_t hour_count() const { return hourly_.size(); }

  const std::vector<BidSegment>& segments(std::size_t hour) const {
    if (!is_hourly_) return shared_;
    if (hour >= hourly_.size())
      throw std::out_of_range("BidCurve: hour " + std::to_string(hour) +
                              " outside hourly bid range");
    return hourly_[hour];
  }

  const std::vector<BidSegment>& shared_segments() const { return shared_; }
  const std::vector<std::vector<BidSegment>>& hourly_segments() const {
    return hourly_;
  }

  friend bool operator==(const BidCurve&, const BidCurve&) = default;

 private:
  std::vector<BidSegment> shared_;
  std::vector<std::vector<BidSegment>> hourly_;
  bool is_hourly_ = false;
};

struct Bus {
  int id = 0;
  bool is_root = false;
  std::vector<double> fixed_load;  // MW per hour; empty means none
  std::optional<BidCurve> bid;     // proactive customers only

  double fixed_load_at(std::size_t hour) const {
    return hour < fixed_load.size() ? fixed_load[hour] : 0.0;
  }
  bool has_bid() const { return bid.has_value(); }

  friend bool operator==(const Bus&, const Bus&) = default;
};

struct Line {
  int id = 0;
  int from_bus = 0;                 // parent side, nearer the root
  int to_bus = 0;                   // child side
  std::optional<double> capacity;   // MW; absent = unlimited

  friend bool operator==(const Line&, const Line&) = default;
};

struct RadialNetwork {
  std::vector<Bus> buses;
  std::vector<Line> lines;
  int root = 0;

  const Bus* find_bus(int id) const {
    for (const Bus& b : buses)
      if (b.id == id) return &b;
    return nullptr;
  }
  const Line* find_line(int id) const {
    for (const Line& l : lines)
      if (l.id == id) return &l;
    return nullptr;
  }

  friend bool operator==(const RadialNetwork&, const RadialNetwork&) = default;
};

struct MarketCase {
  RadialNetwork network;
  std::size_t horizon = 0;
  std::vector<double> tlmp;            // $/MWh per hour
  std::vector<double> assigned_power;  // MW per hour; input in constant mode
  ClearingMode mode = ClearingMode::ConstantPower;
  std::string notes;                   // free text, carried through files

  friend bool operator==(const MarketCase&, const MarketCase&) = default;
};

struct Violation {
  std::string where;    // "bus 3", "line 2", "hour 5", ...
  std::string message;
};

// Tree structure derived from a radial network: bus/line index maps, parent
// links, and a leaves-first evaluation order. Only constructible from a
// structurally valid network; build() returns nullopt otherwise.
class NetworkIndex {
 public:
  static std::optional<NetworkIndex> build(const RadialNetwork& net) {
    NetworkIndex ix;
    ix.net_ = &net;
    const std::size_t n = net.buses.size();
    if (n == 0 || net.lines.size() != n - 1) return std::nullopt;

    for (std::size_t i = 0; i < n; ++i) {
      if (!ix.bus_index_.emplace(net.buses[i].id, i).second)
        return std::nullopt;  // duplicate id
    }
    std::size_t root = 0;
    bool root_seen = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (net.buses[i].is_root) {
        if (root_seen) return std::nullopt;
        root = i;
        root_seen = true;
      }
    }
    if (!root_seen || net.buses[root].id != net.root) return std::nullopt;
    ix.root_ = root;

    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
    for (std::size_t l = 0; l < net.lines.size(); ++l) {
      if (!ix.line_index_.emplace(net.lines[l].id, l).second)
        return std::nullopt;
      auto fi = ix.bus_index_.find(net.lines[l].from_bus);
      auto ti = ix.bus_index_.find(net.lines[l].to_bus);
      if (fi == ix.bus_index_.end() || ti == ix.bus_index_.end())
        return std::nullopt;
      if (fi->second == ti->second) return std::nullopt;
      adj[fi->second].push_back({ti->second, l});
      adj[ti->second].push_back({fi->second, l});
    }

    ix.parent_line_.assign(n, npos);
    ix.parent_bus_.assign(n, npos);
    ix.depth_.assign(n, 0);
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    q.push(root);
    seen[root] = true;
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!q.empty()) {
      std::size_t b = q.front();
      q.pop();
      order.push_back(b);
      for (auto [nb, l] : adj[b]) {
        if (seen[nb]) continue;
        seen[nb] = true;
        ix.parent_line_[nb] = l;
        ix.parent_bus_[nb] = b;
        ix.depth_[nb] = ix.depth_[b] + 1;
        q.push(nb);
      }
    }
    if (order.size() != n) return std::nullopt;  // disconnected (or cyclic)
    // lines must point root-outward
    for (std::size_t l = 0; l < net.lines.size(); ++l) {
      std::size_t ti = ix.bus_index_.at(net.lines[l].to_bus);
      if (ix.parent_line_[ti] != l) return std::nullopt;
    }
    ix.topo_leaves_first_.assign(order.rbegin(), order.rend());
    return ix;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const RadialNetwork& network() const { return *net_; }
  std::size_t bus_count() const { return net_->buses.size(); }
  std::size_t line_count() const { return net_->lines.size(); }
  std::size_t root_index() const { return root_; }

  std::size_t bus_at(int id) const {
    auto it = bus_index_.find(id);
    if (it == bus_index_.end())
      throw std::out_of_range("unknown bus id " + std::to_string(id));
    return it->second;
  }
  std::size_t line_at(int id) const {
    auto it = line_index_.find(id);
    if (it == line_index_.end())
      throw std::out_of_range("unknown line id " + std::to_string(id));
    return it->second;
  }
  bool has_bus(int id) const { return bus_index_.count(id) != 0; }

  // parent line/bus of a bus index; npos at the root
  std::size_t parent_line(std::size_t bus) const { return parent_line_[bus]; }
  std::size_t parent_bus(std::size_t bus) const { return parent_bus_[bus]; }
  std::size_t depth(std::size_t bus) const { return depth_[bus]; }

  // every non-root bus appears after all buses in its subtree
  const std::vector<std::size_t>& leaves_first() const {
    return topo_leaves_first_;
  }

  // bus indices in the subtree hanging below `line` (its to_bus side)
  std::vector<std::size_t> subtree_of_line(std::size_t line) const {
    std::vector<std::size_t> out;
    std::size_t head = bus_index_.at(net_->lines[line].to_bus);
    for (std::size_t b : topo_leaves_first_) {
      if (b == head) {
        out.push_back(b);
        continue;
      }
      std::size_t cur = b;
      while (cur != npos && cur != head) cur = parent_bus_[cur];
      if (cur == head) out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  const RadialNetwork* net_ = nullptr;
  std::unordered_map<int, std::size_t> bus_index_;
  std::unordered_map<int, std::size_t> line_index_;
  std::size_t root_ = 0;
  std::vector<std::size_t> parent_line_, parent_bus_, depth_;
  std::vector<std::size_t> topo_leaves_first_;
};

namespace detail {

inline void check_bid_segments(const std::vector<BidSegment>& segs,
                               const std::string& where, std::size_t hour,
                               bool hourly, std::vector<Violation>& out) {
  std::string at = where;
  if (hourly) at += " hour " + std::to_string(hour);
  for (std::size_t g = 0; g < segs.size(); ++g) {
    if (!(segs[g].benefit >= 0.0))
      out.push_back({at, "segment " + std::to_string(g + 1) +
                             " benefit must be >= 0"});
    if (!(segs[g].max_quantity >= 0.0))
      out.push_back({at, "segment " + std::to_string(g + 1) +
                             " max_quantity must be >= 0"});
    if (g > 0 && segs[g].benefit > segs[g - 1].benefit + 1e-12) {
      out.push_back({at, "non-monotone bid: segment " + std::to_string(g + 1) +
                             " benefit rises above segment " +
                             std::to_string(g)});
    }
  }
}

}  // namespace detail

// Returns every violated structural invariant; empty list means the case is
// valid. Never throws; idempotent.
inline std::vector<Violation> validate_case(const MarketCase& cs) {
  std::vector<Violation> v;
  const RadialNetwork& net = cs.network;

  if (cs.horizon == 0) v.push_back({"case", "horizon must be >= 1"});
  if (cs.tlmp.size() != cs.horizon)
    v.push_back({"case", "tlmp profile length " +
                             std::to_string(cs.tlmp.size()) +
                             " does not match horizon " +
                             std::to_string(cs.horizon)});
  if (cs.mode == ClearingMode::ConstantPower) {
    if (cs.assigned_power.size() != cs.horizon) {
      v.push_back({"case", "assigned_power profile length " +
                               std::to_string(cs.assigned_power.size()) +
                               " does not match horizon " +
                               std::to_string(cs.horizon)});
    } else {
      for (std::size_t t = 0; t < cs.assigned_power.size(); ++t)
        if (!(cs.assigned_power[t] >= 0.0))
          v.push_back({"hour " + std::to_string(t),
                       "assigned_power must be >= 0"});
    }
  }

  if (net.buses.empty()) {
    v.push_back({"network", "no buses"});
    return v;
  }

  std::unordered_map<int, int> id_count;
  int roots = 0;
  for (const Bus& b : net.buses) {
    if (++id_count[b.id] == 2)
      v.push_back({"bus " + std::to_string(b.id), "duplicated bus id"});
    if (b.is_root) ++roots;
  }
  if (roots != 1)
    v.push_back({"network", "expected exactly one root bus, found " +
                                std::to_string(roots)});
  else if (const Bus* r = net.find_bus(net.root); !r || !r->is_root)
    v.push_back({"network", "root field does not name the root bus"});

  std::unordered_map<int, int> line_count;
  for (const Line& l : net.lines) {
    const std::string where = "line " + std::to_string(l.id);
    if (++line_count[l.id] == 2) v.push_back({where, "duplicated line id"});
    if (l.from_bus == l.to_bus)
      v.push_back({where, "from_bus equals to_bus"});
    if (!net.find_bus(l.from_bus))
      v.push_back({where, "unknown from_bus " + std::to_string(l.from_bus)});
    if (!net.find_bus(l.to_bus))
      v.push_back({where, "unknown to_bus " + std::to_string(l.to_bus)});
    if (l.capacity && !(*l.capacity >= 0.0))
      v.push_back({where, "capacity must be >= 0"});
  }

  // tree shape: |lines| = |buses| - 1, connected, acyclic, root-outward
  if (net.lines.size() != net.buses.size() - 1) {
    v.push_back({"network",
                 "not a tree: " + std::to_string(net.lines.size()) +
                     " lines for " + std::to_string(net.buses.size()) +
                     " buses"});
  } else if (roots == 1 && !NetworkIndex::build(net)) {
    v.push_back({"network",
                 "not a tree: disconnected, cyclic, or a line points toward "
                 "the root"});
  }

  for (const Bus& b : net.buses) {
    const std::string where = "bus " + std::to_string(b.id);
    if (!b.fixed_load.empty() && b.fixed_load.size() != cs.horizon)
      v.push_back({where, "fixed_load profile length " +
                              std::to_string(b.fixed_load.size()) +
                              " does not match horizon " +
                              std::to_string(cs.horizon)});
    for (std::size_t t = 0; t < b.fixed_load.size(); ++t)
      if (!(b.fixed_load[t] >= 0.0))
        v.push_back({where + " hour " + std::to_string(t),
                     "fixed_load must be >= 0"});
    if (b.is_root) {
      for (double d : b.fixed_load)
        if (d > 0.0) {
          v.push_back({where, "root bus must not carry fixed load"});
          break;
        }
      if (b.bid) v.push_back({where, "root bus must not carry a bid"});
      continue;
    }
    if (!b.bid) continue;
    if (b.bid->is_hourly()) {
      if (b.bid->hour_count() != cs.horizon)
        v.push_back({where, "hourly bid has " +
                                std::to_string(b.bid->hour_count()) +
                                " hours, horizon is " +
                                std::to_string(cs.horizon)});
      for (std::size_t t = 0; t < b.bid->hour_count(); ++t)
        detail::check_bid_segments(b.bid->hourly_segments()[t], where, t, true,
                                   v);
    } else {
      detail::check_bid_segments(b.bid->shared_segments(), where, 0, false, v);
    }
  }
  return v;
}

namespace detail {

inline void require_valid(const MarketCase& cs) {
  auto v = validate_case(cs);
  if (!v.empty())
    throw std::invalid_argument("invalid market case: " + v.front().where +
                                ": " + v.front().message);
}

inline void require_hour(const MarketCase& cs, std::size_t hour) {
  if (hour >= cs.horizon)
    throw std::out_of_range("hour " + std::to_string(hour) +
                            " outside horizon " + std::to_string(cs.horizon));
}

}  // namespace detail

// Incidence entries of one bus: line id -> +1 when the line leaves the bus
// toward a child, -1 when it enters from the parent. With this convention
// the bus balance reads (outflow - inflow) + fixed + responsive = 0 and the
// root balance reads outflow = grid power.
inline std::map<int, int> incidence_row(const RadialNetwork& net, int bus_id) {
  if (!net.find_bus(bus_id))
    throw std::out_of_range("unknown bus id " + std::to_string(bus_id));
  std::map<int, int> row;
  for (const Line& l : net.lines) {
    if (l.from_bus == bus_id) row[l.id] = +1;
    else if (l.to_bus == bus_id) row[l.id] = -1;
  }
  return row;
}

}  // namespace dmarket
