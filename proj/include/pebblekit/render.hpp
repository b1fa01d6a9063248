#pragma once

#include <string>
#include <string_view>

#include "pebblekit/constructions.hpp"

namespace pebblekit {

enum class RenderFormat { ascii, svg };
enum class Overlay { none, coverage, weights };

RenderFormat parse_render_format(std::string_view text);
Overlay parse_overlay(std::string_view text);

/// Row 0 is drawn at the top. Integer units show their count; continuous units show '*' in
/// ASCII and the exact amount in SVG. The coverage overlay needs an integer distribution.
///
/// ASCII legend: '.' empty, '+' empty but reachable, and for weights '#' W >= 1, ':' W >= 1/2.
std::string render(const AnyDistribution& d, RenderFormat format, Overlay overlay = Overlay::none,
                   const SearchOptions& options = {});

}  // namespace pebblekit
