#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <vector>

#include "socnav/simulator.hpp"

namespace socnav {

struct RenderSpec {
  std::filesystem::path output_dir;
  std::uint64_t stride = 1;
  double pixels_per_meter = 50.0;

  void validate() const;
};

struct Rgb {
  std::uint8_t r, g, b;
  bool operator==(const Rgb&) const = default;
};

namespace palette {
inline constexpr Rgb kBackground{255, 255, 255};
inline constexpr Rgb kStatic{128, 128, 128};
inline constexpr Rgb kHuman{40, 90, 220};
inline constexpr Rgb kAgent{220, 40, 40};
inline constexpr Rgb kGoal{30, 170, 60};
}  // namespace palette

struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;  // row 0 is the top of the arena (max y)

  Rgb at(std::size_t col, std::size_t row) const {
    const std::size_t i = 3 * (row * width + col);
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
  }
};

/// Rasterizes the arena: statics, then the agent goal mark, humans, agent.
/// A pixel takes a shape's color when its center lies inside the shape.
Image rasterize(const WorldState& state, double pixels_per_meter);

/// Binary PPM (P6, 8-bit RGB).
void write_ppm(const Image& image, std::ostream& sink);

void render_frame(const WorldState& state, const RenderSpec& spec, std::ostream& sink);

}  // namespace socnav
