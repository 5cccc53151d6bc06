#include "socnav/rng.hpp"

#include <sstream>
#include <stdexcept>

namespace socnav {

std::string Rng::state() const {
  std::ostringstream out;
  out << engine_;
  return out.str();
}

Rng Rng::from_state(const std::string& text) {
  Rng rng;
  std::istringstream in(text);
  in >> rng.engine_;
  if (in.fail()) {
    throw std::invalid_argument("malformed generator state");
  }
  return rng;
}

}  // namespace socnav
