#include "socnav/render.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace socnav {

namespace {

constexpr std::size_t kMaxSide = 16384;
constexpr double kGoalMarkHalf = 0.15;  // meters
constexpr double kGoalMarkThickness = 0.04;

void paint(Image& img, double scale, Vec2 arena, const Shape& shape, Rgb color) {
  const Bounds box = bounding_box(shape);
  const auto col_range = [&](double lo, double hi) {
    const double a = std::floor(lo * scale - 0.5);
    const double b = std::ceil(hi * scale - 0.5);
    return std::pair{static_cast<long>(std::max(a, 0.0)),
                     static_cast<long>(std::min(b, static_cast<double>(img.width) - 1.0))};
  };
  // Rows count down from the top edge (y = arena.y).
  const auto row_range = [&](double lo, double hi) {
    const double a = std::floor((arena.y - hi) * scale - 0.5);
    const double b = std::ceil((arena.y - lo) * scale - 0.5);
    return std::pair{static_cast<long>(std::max(a, 0.0)),
                     static_cast<long>(std::min(b, static_cast<double>(img.height) - 1.0))};
  };
  const auto [c0, c1] = col_range(box.min.x, box.max.x);
  const auto [r0, r1] = row_range(box.min.y, box.max.y);
  for (long r = r0; r <= r1; ++r) {
    for (long c = c0; c <= c1; ++c) {
      const Vec2 p{(static_cast<double>(c) + 0.5) / scale,
                   arena.y - (static_cast<double>(r) + 0.5) / scale};
      if (contains(shape, p)) {
        const std::size_t i = 3 * (static_cast<std::size_t>(r) * img.width + static_cast<std::size_t>(c));
        img.rgb[i] = color.r;
        img.rgb[i + 1] = color.g;
        img.rgb[i + 2] = color.b;
      }
    }
  }
}

}  // namespace

void RenderSpec::validate() const {
  if (stride < 1) {
    throw std::invalid_argument("render stride must be >= 1");
  }
  if (!(pixels_per_meter >= 1.0) || !std::isfinite(pixels_per_meter)) {
    throw std::invalid_argument("render scale must be >= 1 pixel per meter");
  }
}

Image rasterize(const WorldState& state, double pixels_per_meter) {
  const double w = std::round(state.arena.x * pixels_per_meter);
  const double h = std::round(state.arena.y * pixels_per_meter);
  if (!(w >= 1.0 && h >= 1.0 && w <= kMaxSide && h <= kMaxSide)) {
    throw std::invalid_argument("arena does not fit the image bounds at this scale");
  }
  Image img;
  img.width = static_cast<std::size_t>(w);
  img.height = static_cast<std::size_t>(h);
  img.rgb.assign(img.width * img.height * 3, 255);

  const double s = pixels_per_meter;
  for (const Shape& shape : state.static_obstacles) {
    paint(img, s, state.arena, shape, palette::kStatic);
  }
  const Vec2 g = state.agent_goal;
  // At coarse scales keep the bars at least one pixel wide and three long.
  const double half = std::max(kGoalMarkHalf, 1.6 / s);
  const double thick = std::max(kGoalMarkThickness, 0.6 / s);
  paint(img, s, state.arena, AxisRect{g, {half, thick}}, palette::kGoal);
  paint(img, s, state.arena, AxisRect{g, {thick, half}}, palette::kGoal);
  for (const Human& hmn : state.humans) {
    paint(img, s, state.arena, Circle{hmn.pos, hmn.radius}, palette::kHuman);
  }
  paint(img, s, state.arena, Circle{state.agent_pos, state.agent_radius}, palette::kAgent);
  return img;
}

void write_ppm(const Image& image, std::ostream& sink) {
  const std::string header =
      "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  sink.write(header.data(), static_cast<std::streamsize>(header.size()));
  sink.write(reinterpret_cast<const char*>(image.rgb.data()),
             static_cast<std::streamsize>(image.rgb.size()));
  if (!sink) {
    throw std::runtime_error("failed to write image");
  }
}

void render_frame(const WorldState& state, const RenderSpec& spec, std::ostream& sink) {
  spec.validate();
  write_ppm(rasterize(state, spec.pixels_per_meter), sink);
}

}  // namespace socnav
