// suig/core.hpp
//
// Domain types for robot configurations on the infinite line graph:
// colors, robots, configurations, ego-centered views, and the
// per-configuration metrics (span, occupied count, max gap).

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace suig {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct UnknownRobotError : Error {
  using Error::Error;
};

/// A light color. Equality and ordering are by symbolic name.
struct Color {
  std::string name;
  friend auto operator<=>(const Color&, const Color&) = default;
};

/// Colors visible at one node. Multiplicities collapse: a node with two
/// White robots and a node with one produce the same set.
using ColorSet = std::set<Color>;

using RobotId = std::uint32_t;
using Position = std::int64_t;

/// One robot. Ids are bookkeeping only; rule selection never sees them.
struct Robot {
  RobotId id = 0;
  Position position = 0;
  Color color;
  bool crashed = false;

  friend bool operator==(const Robot&, const Robot&) = default;
};

/// A snapshot of all robots plus the shared visibility range phi.
/// Value type; copies are independent.
class Configuration {
 public:
  Configuration(std::vector<Robot> robots, int phi)
      : robots_(std::move(robots)), phi_(phi) {
    if (phi_ < 1) throw ConfigError("phi must be >= 1");
    if (robots_.empty()) throw ConfigError("configuration has no robots");
    std::sort(robots_.begin(), robots_.end(),
              [](const Robot& a, const Robot& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < robots_.size(); ++i) {
      if (robots_[i].id == robots_[i - 1].id)
        throw ConfigError("duplicate robot id " + std::to_string(robots_[i].id));
    }
  }

  int phi() const { return phi_; }

  /// All robots, sorted by id.
  const std::vector<Robot>& robots() const { return robots_; }

  bool has_robot(RobotId id) const { return find(id) != nullptr; }

  const Robot& robot(RobotId id) const {
    const Robot* r = find(id);
    if (!r) throw UnknownRobotError("unknown robot id " + std::to_string(id));
    return *r;
  }

  /// Position -> visible color set, for every occupied node.
  std::map<Position, ColorSet> occupancy() const {
    std::map<Position, ColorSet> occ;
    for (const Robot& r : robots_) occ[r.position].insert(r.color);
    return occ;
  }

  std::vector<Position> occupied_positions() const {
    std::set<Position> ps;
    for (const Robot& r : robots_) ps.insert(r.position);
    return {ps.begin(), ps.end()};
  }

  ColorSet colors_at(Position pos) const {
    ColorSet cs;
    for (const Robot& r : robots_)
      if (r.position == pos) cs.insert(r.color);
    return cs;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  const Robot* find(RobotId id) const {
    auto it = std::lower_bound(
        robots_.begin(), robots_.end(), id,
        [](const Robot& r, RobotId v) { return r.id < v; });
    return (it != robots_.end() && it->id == id) ? &*it : nullptr;
  }

  std::vector<Robot> robots_;
  int phi_;
};

/// Span / occupied-node count / max gap of a configuration.
struct Metrics {
  std::int64_t m_init = 0;
  std::int64_t o_init = 0;
  std::int64_t h_init = 0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// The 2*phi+1 color sets an observer senses, centered on its own node,
/// plus its own color. cells[phi] always contains observer_color.
struct View {
  std::vector<ColorSet> cells;
  Color observer_color;

  int phi() const { return static_cast<int>(cells.size() / 2); }
  const ColorSet& center() const { return cells[cells.size() / 2]; }

  friend bool operator==(const View&, const View&) = default;
};

inline View compute_view(const Configuration& config, RobotId id) {
  const Robot& obs = config.robot(id);
  auto occ = config.occupancy();
  View v;
  v.observer_color = obs.color;
  const int phi = config.phi();
  v.cells.reserve(2 * phi + 1);
  for (int d = -phi; d <= phi; ++d) {
    auto it = occ.find(obs.position + d);
    v.cells.push_back(it == occ.end() ? ColorSet{} : it->second);
  }
  return v;
}

inline Metrics metrics(const Configuration& config) {
  const std::vector<Position> ps = config.occupied_positions();
  Metrics m;
  m.m_init = ps.back() - ps.front() + 1;
  m.o_init = static_cast<std::int64_t>(ps.size());
  m.h_init = 0;
  for (std::size_t i = 1; i < ps.size(); ++i)
    m.h_init = std::max<std::int64_t>(m.h_init, ps[i] - ps[i - 1]);
  return m;
}

/// True iff some half-integer axis maps the occupancy (positions and
/// color sets, counts ignored) onto itself.
inline bool is_edge_symmetric(const Configuration& config) {
  auto occ = config.occupancy();
  const Position lo = occ.begin()->first;
  const Position hi = occ.rbegin()->first;
  // The only candidate axis is the midpoint of the occupied extent; it is
  // a half-integer exactly when lo+hi is odd.
  const Position s = lo + hi;
  if (s % 2 == 0) return false;
  for (const auto& [pos, colors] : occ) {
    auto it = occ.find(s - pos);
    if (it == occ.end() || it->second != colors) return false;
  }
  return true;
}

/// All robots, crashed ones included, on a single node.
inline bool is_gathered(const Configuration& config) {
  const Position p = config.robots().front().position;
  for (const Robot& r : config.robots())
    if (r.position != p) return false;
  return true;
}

inline std::optional<Position> gathered_node(const Configuration& config) {
  if (!is_gathered(config)) return std::nullopt;
  return config.robots().front().position;
}

inline Configuration shift(const Configuration& config, Position d) {
  std::vector<Robot> rs = config.robots();
  for (Robot& r : rs) r.position += d;
  return Configuration(std::move(rs), config.phi());
}

/// Reflection about node 0 (any axis is equivalent up to a shift).
inline Configuration mirror(const Configuration& config) {
  std::vector<Robot> rs = config.robots();
  for (Robot& r : rs) r.position = -r.position;
  return Configuration(std::move(rs), config.phi());
}

inline View mirror(const View& v) {
  View m = v;
  std::reverse(m.cells.begin(), m.cells.end());
  return m;
}

// --- configuration text format ---------------------------------------------
//
//   # comment
//   phi 2
//   node 0 W*2
//   node 2 W R
//
// `phi` must come first; each `node` line lists color*count atoms (count 1
// may be written as a bare color). The loader enforces phi >= h_init and
// n >= 2; mid-run snapshots with fewer robots are built directly instead.

namespace detail {

inline bool is_ident(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

[[noreturn]] inline void cfg_fail(int line_no, const std::string& msg) {
  throw ConfigError("config:" + std::to_string(line_no) + ": " + msg);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
}

}  // namespace detail

inline Configuration parse_configuration(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::optional<int> phi;
  std::vector<Robot> robots;
  std::set<Position> seen_nodes;
  RobotId next_id = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream ls(detail::strip_comment(raw));
    std::string kw;
    if (!(ls >> kw)) continue;

    if (kw == "phi") {
      if (phi) detail::cfg_fail(line_no, "duplicate phi line");
      long long v = 0;
      if (!(ls >> v) || v < 1) detail::cfg_fail(line_no, "phi must be a positive integer");
      phi = static_cast<int>(v);
    } else if (kw == "node") {
      if (!phi) detail::cfg_fail(line_no, "phi must precede node lines");
      long long pos = 0;
      if (!(ls >> pos)) detail::cfg_fail(line_no, "node needs a position");
      if (pos > (1LL << 60) || pos < -(1LL << 60))
        detail::cfg_fail(line_no, "position out of range");
      if (!seen_nodes.insert(pos).second)
        detail::cfg_fail(line_no, "duplicate node " + std::to_string(pos));
      std::string atom;
      bool any = false;
      while (ls >> atom) {
        any = true;
        std::string name = atom;
        long long count = 1;
        if (auto star = atom.find('*'); star != std::string::npos) {
          name = atom.substr(0, star);
          try {
            count = std::stoll(atom.substr(star + 1));
          } catch (...) {
            detail::cfg_fail(line_no, "bad count in '" + atom + "'");
          }
        }
        if (!detail::is_ident(name))
          detail::cfg_fail(line_no, "bad color name '" + name + "'");
        if (count < 1) detail::cfg_fail(line_no, "count must be >= 1");
        for (long long i = 0; i < count; ++i)
          robots.push_back(Robot{next_id++, pos, Color{name}, false});
      }
      if (!any) detail::cfg_fail(line_no, "node line lists no robots");
    } else {
      detail::cfg_fail(line_no, "unknown directive '" + kw + "'");
    }
  }

  if (!phi) throw ConfigError("config: missing phi header");
  if (robots.size() < 2) throw ConfigError("config: fewer than 2 robots");
  Configuration config(std::move(robots), *phi);
  if (metrics(config).h_init > config.phi())
    throw ConfigError("config: phi < h_init (visibility graph disconnected)");
  return config;
}

inline Configuration load_configuration_file(const std::string& path) {
  return parse_configuration(detail::read_file(path));
}

inline std::string format_configuration(const Configuration& config) {
  std::ostringstream out;
  out << "phi " << config.phi() << "\n";
  std::map<Position, std::map<Color, int>> counts;
  for (const Robot& r : config.robots()) counts[r.position][r.color]++;
  for (const auto& [pos, colors] : counts) {
    out << "node " << pos;
    for (const auto& [color, n] : colors) {
      out << ' ' << color.name;
      if (n > 1) out << '*' << n;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace suig
