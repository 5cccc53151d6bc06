#include "socnav/dataset.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "socnav/evaluation.hpp"
#include "socnav/serialization.hpp"

namespace socnav {

namespace {

template <class T>
void put_le(std::uint8_t* out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out[i] = static_cast<std::uint8_t>(value >> (8 * i));
  }
}

template <class T>
T get_le(const std::uint8_t* in) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(in[i]) << (8 * i);
  }
  return value;
}

}  // namespace

std::array<std::uint8_t, kGridDatasetHeaderSize> GridDatasetHeader::encode() const {
  std::array<std::uint8_t, kGridDatasetHeaderSize> out{};
  std::copy(kGridDatasetMagic.begin(), kGridDatasetMagic.end(), out.begin());
  put_le(out.data() + 4, version);
  put_le(out.data() + 8, rows);
  put_le(out.data() + 12, cols);
  put_le(out.data() + 16, sample_count);
  std::copy(config_digest.begin(), config_digest.end(), out.begin() + 24);
  return out;
}

GridDatasetHeader GridDatasetHeader::decode(
    std::span<const std::uint8_t, kGridDatasetHeaderSize> bytes) {
  if (!std::equal(kGridDatasetMagic.begin(), kGridDatasetMagic.end(), bytes.begin(),
                  [](char a, std::uint8_t b) { return static_cast<std::uint8_t>(a) == b; })) {
    throw DatasetError("not a grid dataset");
  }
  GridDatasetHeader h;
  h.version = get_le<std::uint32_t>(bytes.data() + 4);
  if (h.version != kGridDatasetVersion) {
    throw DatasetError("unsupported version " + std::to_string(h.version));
  }
  h.rows = get_le<std::uint32_t>(bytes.data() + 8);
  h.cols = get_le<std::uint32_t>(bytes.data() + 12);
  h.sample_count = get_le<std::uint64_t>(bytes.data() + 16);
  std::copy(bytes.begin() + 24, bytes.end(), h.config_digest.begin());
  return h;
}

Sha256 config_digest(const ScenarioConfig& config) {
  return sha256(canonical_config_text(config));
}

std::uint64_t collect(const ScenarioConfig& config, std::uint64_t n_samples, std::uint64_t seed,
                      std::ostream& sink) {
  if (!config.sensors.modalities.has(Modality::kLeog)) {
    throw DatasetError("dataset collection requires the leog modality");
  }
  if (n_samples == 0) {
    throw DatasetError("n_samples must be >= 1");
  }
  const std::size_t side = config.sensors.leog_cells();
  if (side > std::numeric_limits<std::uint32_t>::max()) {
    throw DatasetError("grid too large for the dataset format");
  }

  GridDatasetHeader header;
  header.rows = static_cast<std::uint32_t>(side);
  header.cols = static_cast<std::uint32_t>(side);
  header.sample_count = n_samples;
  header.config_digest = config_digest(config);
  const auto head = header.encode();
  sink.write(reinterpret_cast<const char*>(head.data()), static_cast<std::streamsize>(head.size()));
  if (!sink) {
    throw DatasetError("write failed before any sample (partial file)");
  }

  Environment env(config);
  std::uint64_t written = 0;
  const auto emit = [&](const Observation& obs) {
    const auto& cells = obs.leog->cells;
    sink.write(reinterpret_cast<const char*>(cells.data()),
               static_cast<std::streamsize>(cells.size()));
    if (!sink) {
      throw DatasetError("write failed after " + std::to_string(written) + " of " +
                         std::to_string(n_samples) + " samples (partial file)");
    }
    ++written;
  };

  const std::uint64_t base = mix64(seed);
  for (std::uint64_t episode = 0; written < n_samples; ++episode) {
    emit(env.reset(base + episode, SeedNamespace::kTraining));
    while (env.active() && written < n_samples) {
      emit(env.step(random_policy(env.policy_rng())).observation);
    }
  }
  sink.flush();
  if (!sink) {
    throw DatasetError("flush failed (partial file)");
  }
  return written;
}

GridDatasetReader::GridDatasetReader(std::istream& source) : source_(source) {
  std::array<std::uint8_t, kGridDatasetHeaderSize> head{};
  source_.read(reinterpret_cast<char*>(head.data()), static_cast<std::streamsize>(head.size()));
  const auto got = static_cast<std::size_t>(source_.gcount());
  if (got >= kGridDatasetMagic.size() &&
      !std::equal(kGridDatasetMagic.begin(), kGridDatasetMagic.end(), head.begin(),
                  [](char a, std::uint8_t b) { return static_cast<std::uint8_t>(a) == b; })) {
    throw DatasetError("not a grid dataset");
  }
  if (got != head.size()) {
    throw DatasetError(got < kGridDatasetMagic.size() ? "not a grid dataset"
                                                      : "truncated dataset: incomplete header");
  }
  header_ = GridDatasetHeader::decode(head);

  const std::uint64_t grid = header_.grid_bytes();
  if (grid != 0 && header_.sample_count > std::numeric_limits<std::uint64_t>::max() / grid) {
    throw DatasetError("truncated dataset: declared payload size overflows");
  }
  const std::istream::pos_type start = source_.tellg();
  if (start != std::istream::pos_type(-1)) {
    source_.seekg(0, std::ios::end);
    const std::istream::pos_type end = source_.tellg();
    source_.seekg(start);
    if (end != std::istream::pos_type(-1)) {
      const auto payload = static_cast<std::uint64_t>(end - start);
      if (payload != header_.sample_count * grid) {
        throw DatasetError("truncated dataset: payload holds " + std::to_string(payload) +
                           " bytes, header declares " +
                           std::to_string(header_.sample_count * grid));
      }
    }
  }
}

bool GridDatasetReader::next(std::vector<std::uint8_t>& grid) {
  if (consumed_ == header_.sample_count) {
    return false;
  }
  std::vector<std::uint8_t> buffer(header_.grid_bytes());
  source_.read(reinterpret_cast<char*>(buffer.data()), static_cast<std::streamsize>(buffer.size()));
  if (static_cast<std::size_t>(source_.gcount()) != buffer.size()) {
    throw DatasetError("truncated dataset: sample " + std::to_string(consumed_) + " is incomplete");
  }
  if (std::any_of(buffer.begin(), buffer.end(), [](std::uint8_t c) { return c > 1; })) {
    throw DatasetError("corrupt dataset: cell value outside {0, 1} in sample " +
                       std::to_string(consumed_));
  }
  grid = std::move(buffer);
  ++consumed_;
  return true;
}

}  // namespace socnav
