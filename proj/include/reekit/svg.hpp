#pragma once

#include <string>
#include <string_view>

#include "reekit/viz.hpp"

namespace reekit::viz {

enum class Theme { Light, Dark };

std::optional<Theme> parse_theme(std::string_view text) noexcept;

struct SvgOptions {
  int width = 800;
  int height = 600;
  Theme theme = Theme::Light;
};

// Categorical palette; group i of VizPayload::groups uses colour i mod size.
std::string_view palette_color(std::size_t index) noexcept;

// Static vector rendering of any payload. Output depends only on the payload
// and options (fixed number formatting, sorted colour assignment). 3-D
// scatter plots are drawn as a fixed-angle orthographic projection.
std::string export_svg(const VizPayload& payload, const SvgOptions& options = {});

}  // namespace reekit::viz
