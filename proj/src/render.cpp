#include "pebblekit/render.hpp"

#include <iomanip>
#include <sstream>

#include "pebblekit/weight.hpp"

namespace pebblekit {

RenderFormat parse_render_format(std::string_view text) {
  if (text == "ascii") return RenderFormat::ascii;
  if (text == "svg") return RenderFormat::svg;
  throw InputError("unknown render format '" + std::string(text) + "', expected ascii or svg");
}

Overlay parse_overlay(std::string_view text) {
  if (text == "none") return Overlay::none;
  if (text == "coverage") return Overlay::coverage;
  if (text == "weights") return Overlay::weights;
  throw InputError("unknown overlay '" + std::string(text) + "', expected none, coverage or weights");
}

namespace {

struct Cell {
  std::string label;   // empty for no pebbles
  bool reachable = false;
  Rational weight;
};

std::vector<Cell> cells(const AnyDistribution& any, Overlay overlay, const SearchOptions& options) {
  return std::visit(
      [&](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        const GridSpec& g = d.grid();
        std::vector<Cell> out(g.vertex_count());
        for (const auto& [v, c] : d.entries()) out[g.index(v)].label = to_string(Rational(c));
        if (overlay == Overlay::weights) {
          const auto field = weight_field(d);
          for (std::size_t i = 0; i < out.size(); ++i) out[i].weight = field[i];
        }
        if (overlay == Overlay::coverage) {
          if constexpr (std::is_same_v<D, Distribution>) {
            for (const auto& v : coverage(d, options).reachable) out[g.index(v)].reachable = true;
          } else {
            throw InputError("coverage overlay needs an integer distribution");
          }
        }
        if constexpr (std::is_same_v<D, ContinuousDistribution>)
          for (auto& c : out)
            if (!c.label.empty()) c.label = "*" + c.label;
        return out;
      },
      any);
}

const GridSpec& grid_of(const AnyDistribution& d) {
  return std::visit([](const auto& x) -> const GridSpec& { return x.grid(); }, d);
}

std::string ascii(const GridSpec& g, const std::vector<Cell>& cs, Overlay overlay) {
  std::vector<std::string> glyphs(cs.size());
  std::size_t width = 1;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Cell& c = cs[i];
    if (!c.label.empty()) {
      glyphs[i] = c.label[0] == '*' ? "*" : c.label.substr(0, c.label.find('/'));
    } else if (overlay == Overlay::coverage) {
      glyphs[i] = c.reachable ? "+" : ".";
    } else if (overlay == Overlay::weights) {
      glyphs[i] = c.weight >= 1 ? "#" : c.weight * 2 >= 1 ? ":" : ".";
    } else {
      glyphs[i] = ".";
    }
    width = std::max(width, glyphs[i].size());
  }
  std::ostringstream os;
  os << "# " << to_string(g) << "\n";
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      if (c) os << ' ';
      os << std::setw(static_cast<int>(width)) << glyphs[g.index({c, r})];
    }
    os << "\n";
  }
  return os.str();
}

std::string svg(const GridSpec& g, const std::vector<Cell>& cs, Overlay overlay) {
  constexpr int cell = 24;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << g.width() * cell << "\" height=\"" << g.height() * cell
     << "\" viewBox=\"0 0 " << g.width() * cell << ' ' << g.height() * cell << "\">\n";
  os << "<title>" << to_string(g) << "</title>\n";
  for (int r = 0; r < g.height(); ++r)
    for (int c = 0; c < g.width(); ++c) {
      const Cell& x = cs[g.index({c, r})];
      std::string fill = "#ffffff";
      if (overlay == Overlay::coverage && x.reachable) fill = "#9ecae1";
      if (overlay == Overlay::weights) {
        const double w = std::min(1.0, to_double(x.weight));
        const int shade = 255 - static_cast<int>(w * 160.0);
        std::ostringstream f;
        f << '#' << std::hex << std::setfill('0') << std::setw(2) << shade << std::setw(2) << shade << "ff";
        fill = f.str();
      }
      os << "<rect x=\"" << c * cell << "\" y=\"" << r * cell << "\" width=\"" << cell << "\" height=\"" << cell
         << "\" fill=\"" << fill << "\" stroke=\"#999999\" stroke-width=\"0.5\"";
      if (overlay == Overlay::weights) os << "><title>W=" << to_string(x.weight) << "</title></rect>\n";
      else os << "/>\n";
      if (!x.label.empty()) {
        const std::string text = x.label[0] == '*' ? x.label.substr(1) : x.label.substr(0, x.label.find('/'));
        os << "<circle cx=\"" << c * cell + cell / 2 << "\" cy=\"" << r * cell + cell / 2 << "\" r=\"" << cell * 2 / 5
           << "\" fill=\"#d62728\"/>\n";
        os << "<text x=\"" << c * cell + cell / 2 << "\" y=\"" << r * cell + cell / 2 + 4
           << "\" font-family=\"monospace\" font-size=\"" << (text.size() > 2 ? 7 : 11)
           << "\" text-anchor=\"middle\" fill=\"#ffffff\">" << text << "</text>\n";
      }
    }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string render(const AnyDistribution& d, RenderFormat format, Overlay overlay, const SearchOptions& options) {
  const auto cs = cells(d, overlay, options);
  const GridSpec& g = grid_of(d);
  return format == RenderFormat::ascii ? ascii(g, cs, overlay) : svg(g, cs, overlay);
}

}  // namespace pebblekit
