#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pebblekit/errors.hpp"
#include "pebblekit/rational.hpp"

namespace pebblekit {

enum class Topology { plane, torus };

std::string_view to_string(Topology t);

struct Vertex {
  int col = 0;
  int row = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  /// Row-major order; this is the canonical serialization order.
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) {
    if (auto c = a.row <=> b.row; c != 0) return c;
    return a.col <=> b.col;
  }
};

std::string to_string(const Vertex& v);

/// A width x height grid graph, optionally with wrap-around edges.
class GridSpec {
 public:
  GridSpec(int width, int height, Topology topology = Topology::plane);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  Topology topology() const noexcept { return topology_; }
  bool is_torus() const noexcept { return topology_ == Topology::torus; }
  std::size_t vertex_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  bool contains(const Vertex& v) const noexcept {
    return v.col >= 0 && v.col < width_ && v.row >= 0 && v.row < height_;
  }
  void require(const Vertex& v) const;

  std::size_t index(const Vertex& v) const noexcept {
    return static_cast<std::size_t>(v.row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(v.col);
  }
  Vertex vertex(std::size_t index) const noexcept {
    return {static_cast<int>(index % static_cast<std::size_t>(width_)),
            static_cast<int>(index / static_cast<std::size_t>(width_))};
  }

  /// All vertices in row-major order.
  std::vector<Vertex> vertices() const;

  /// Distinct graph neighbours. On a torus of side 2 the two wraps coincide and on side 1
  /// there is no edge at all.
  std::vector<Vertex> neighbors(const Vertex& v) const;
  bool adjacent(const Vertex& u, const Vertex& v) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int width_;
  int height_;
  Topology topology_;
};

std::string to_string(const GridSpec& g);

/// Shortest-path distance. Both vertices must lie in the grid.
int distance(const GridSpec& g, const Vertex& u, const Vertex& v);

/// Manhattan distance on the unbounded grid.
inline int plane_distance(const Vertex& u, const Vertex& v) {
  return (u.col > v.col ? u.col - v.col : v.col - u.col) + (u.row > v.row ? u.row - v.row : v.row - u.row);
}

std::vector<Vertex> ball(const GridSpec& g, const Vertex& center, int radius);

template <class Count>
class BasicDistribution {
 public:
  using Map = std::map<Vertex, Count>;

  explicit BasicDistribution(GridSpec grid) : grid_(grid) {}

  const GridSpec& grid() const noexcept { return grid_; }
  const Map& entries() const noexcept { return counts_; }

  Count operator[](const Vertex& v) const {
    auto it = counts_.find(v);
    return it == counts_.end() ? Count(0) : it->second;
  }

  /// Sets D(v); zero erases the entry.
  BasicDistribution& set(const Vertex& v, const Count& c) {
    grid_.require(v);
    if (c < 0) throw InputError("negative pebble count at " + to_string(v));
    if (c == 0)
      counts_.erase(v);
    else
      counts_[v] = c;
    return *this;
  }
  BasicDistribution& add(const Vertex& v, const Count& c) { return set(v, (*this)[v] + c); }

  /// |D|
  Count size() const {
    Count s(0);
    for (const auto& [v, c] : counts_) s += c;
    return s;
  }
  bool empty() const noexcept { return counts_.empty(); }
  std::size_t unit_count() const noexcept { return counts_.size(); }

  std::vector<Vertex> units() const {
    std::vector<Vertex> out;
    out.reserve(counts_.size());
    for (const auto& [v, c] : counts_) out.push_back(v);
    return out;
  }

  /// Pointwise D(v) <= other(v) on the same grid.
  bool dominated_by(const BasicDistribution& other) const {
    if (!(grid_ == other.grid_)) return false;
    for (const auto& [v, c] : counts_)
      if (other[v] < c) return false;
    return true;
  }

  BasicDistribution without(const Vertex& v) const {
    BasicDistribution out = *this;
    out.counts_.erase(v);
    return out;
  }

  BasicDistribution& operator+=(const BasicDistribution& other) {
    if (!(grid_ == other.grid_)) throw InputError("distributions live on different grids");
    for (const auto& [v, c] : other.counts_) add(v, c);
    return *this;
  }
  friend BasicDistribution operator+(BasicDistribution a, const BasicDistribution& b) { return a += b; }

  friend bool operator==(const BasicDistribution&, const BasicDistribution&) = default;

 private:
  GridSpec grid_;
  Map counts_;
};

using Count = std::int64_t;
using Distribution = BasicDistribution<Count>;
using ContinuousDistribution = BasicDistribution<Rational>;

ContinuousDistribution to_continuous(const Distribution& d);

/// Parses the line-oriented distribution format. A header of the form
/// `grid W H plane|torus continuous` (or `force_continuous`) selects rational counts.
std::variant<Distribution, ContinuousDistribution> parse_distribution(std::string_view text,
                                                                      bool force_continuous = false);
Distribution parse_integer_distribution(std::string_view text);

std::string serialize_distribution(const Distribution& d);
std::string serialize_distribution(const ContinuousDistribution& d);

std::variant<Distribution, ContinuousDistribution> read_distribution_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace pebblekit
