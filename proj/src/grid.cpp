#include "pebblekit/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace pebblekit {

std::string_view to_string(Topology t) { return t == Topology::plane ? "plane" : "torus"; }

std::string to_string(const Vertex& v) {
  return "(" + std::to_string(v.col) + "," + std::to_string(v.row) + ")";
}

std::string to_string(const GridSpec& g) {
  return std::to_string(g.width()) + "x" + std::to_string(g.height()) + " " + std::string(to_string(g.topology()));
}

GridSpec::GridSpec(int width, int height, Topology topology) : width_(width), height_(height), topology_(topology) {
  if (width < 1 || height < 1)
    throw InputError("grid dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
}

void GridSpec::require(const Vertex& v) const {
  if (!contains(v)) throw InputError("vertex " + to_string(v) + " outside " + to_string(*this) + " grid");
}

std::vector<Vertex> GridSpec::vertices() const {
  std::vector<Vertex> out;
  out.reserve(vertex_count());
  for (int r = 0; r < height_; ++r)
    for (int c = 0; c < width_; ++c) out.push_back({c, r});
  return out;
}

std::vector<Vertex> GridSpec::neighbors(const Vertex& v) const {
  std::vector<Vertex> out;
  out.reserve(4);
  auto push = [&](Vertex u) {
    if (u == v) return;
    if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
  };
  if (topology_ == Topology::plane) {
    if (v.row > 0) push({v.col, v.row - 1});
    if (v.col > 0) push({v.col - 1, v.row});
    if (v.col + 1 < width_) push({v.col + 1, v.row});
    if (v.row + 1 < height_) push({v.col, v.row + 1});
  } else {
    push({v.col, (v.row + height_ - 1) % height_});
    push({(v.col + width_ - 1) % width_, v.row});
    push({(v.col + 1) % width_, v.row});
    push({v.col, (v.row + 1) % height_});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool GridSpec::adjacent(const Vertex& u, const Vertex& v) const {
  require(u);
  require(v);
  return distance(*this, u, v) == 1;
}

int distance(const GridSpec& g, const Vertex& u, const Vertex& v) {
  g.require(u);
  g.require(v);
  int dc = std::abs(u.col - v.col);
  int dr = std::abs(u.row - v.row);
  if (g.is_torus()) {
    dc = std::min(dc, g.width() - dc);
    dr = std::min(dr, g.height() - dr);
  }
  return dc + dr;
}

std::vector<Vertex> ball(const GridSpec& g, const Vertex& center, int radius) {
  g.require(center);
  if (radius < 0) throw InputError("ball radius must be non-negative");
  std::vector<Vertex> out;
  for (const auto& v : g.vertices())
    if (distance(g, center, v) <= radius) out.push_back(v);
  return out;
}

ContinuousDistribution to_continuous(const Distribution& d) {
  ContinuousDistribution out(d.grid());
  for (const auto& [v, c] : d.entries()) out.set(v, Rational(static_cast<long>(c)));
  return out;
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, std::size_t line, const char* what) {
  try {
    std::size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    if (v < -(1L << 30) || v > (1L << 30)) throw std::out_of_range(tok);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

std::variant<Distribution, ContinuousDistribution> parse_distribution(std::string_view text, bool force_continuous) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  bool continuous = force_continuous;
  GridSpec grid(1, 1);
  std::map<Vertex, Rational> counts;

  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    auto tok = split_ws(raw);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok[0] != "grid" || tok.size() < 4 || tok.size() > 5)
        throw ParseError(lineno, "expected 'grid <width> <height> <plane|torus> [continuous]'");
      Topology topo;
      if (tok[3] == "plane")
        topo = Topology::plane;
      else if (tok[3] == "torus")
        topo = Topology::torus;
      else
        throw ParseError(lineno, "unknown topology '" + tok[3] + "'");
      if (tok.size() == 5) {
        if (tok[4] != "continuous") throw ParseError(lineno, "unknown header flag '" + tok[4] + "'");
        continuous = true;
      }
      int w = parse_int(tok[1], lineno, "width");
      int h = parse_int(tok[2], lineno, "height");
      if (w < 1 || h < 1) throw ParseError(lineno, "grid dimensions must be positive");
      grid = GridSpec(w, h, topo);
      have_header = true;
      continue;
    }
    if (tok[0] != "pebble" || tok.size() != 4) throw ParseError(lineno, "expected 'pebble <col> <row> <count>'");
    Vertex v{parse_int(tok[1], lineno, "column"), parse_int(tok[2], lineno, "row")};
    if (!grid.contains(v)) throw ParseError(lineno, "vertex " + to_string(v) + " outside the grid");
    Rational q;
    try {
      q = parse_rational(tok[3]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    if (q < 0) throw ParseError(lineno, "negative pebble count");
    if (q == 0) throw ParseError(lineno, "pebble count must be positive");
    if (!continuous && q.get_den() != 1) throw ParseError(lineno, "fractional count in an integer distribution");
    if (!counts.emplace(v, q).second) throw ParseError(lineno, "duplicate vertex " + to_string(v));
  }
  if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "missing grid header");

  if (continuous) {
    ContinuousDistribution d(grid);
    for (const auto& [v, q] : counts) d.set(v, q);
    return d;
  }
  Distribution d(grid);
  for (const auto& [v, q] : counts) {
    if (!q.get_num().fits_slong_p()) throw InputError("pebble count too large at " + to_string(v));
    d.set(v, q.get_num().get_si());
  }
  return d;
}

Distribution parse_integer_distribution(std::string_view text) {
  auto parsed = parse_distribution(text);
  if (auto* d = std::get_if<Distribution>(&parsed)) return *d;
  throw InputError("expected an integer distribution, got a continuous one");
}

namespace {

template <class D, class F>
std::string serialize_impl(const D& d, bool continuous, F&& fmt) {
  std::ostringstream out;
  out << "grid " << d.grid().width() << ' ' << d.grid().height() << ' ' << to_string(d.grid().topology());
  if (continuous) out << " continuous";
  out << '\n';
  for (const auto& [v, c] : d.entries()) out << "pebble " << v.col << ' ' << v.row << ' ' << fmt(c) << '\n';
  return out.str();
}

}  // namespace

std::string serialize_distribution(const Distribution& d) {
  return serialize_impl(d, false, [](Count c) { return std::to_string(c); });
}

std::string serialize_distribution(const ContinuousDistribution& d) {
  return serialize_impl(d, true, [](const Rational& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : to_string(q);
  });
}

std::variant<Distribution, ContinuousDistribution> read_distribution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const bool by_extension = path.size() >= 6 && path.compare(path.size() - 6, 6, ".cdist") == 0;
  return parse_distribution(buf.str(), by_extension);
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

}  // namespace pebblekit
