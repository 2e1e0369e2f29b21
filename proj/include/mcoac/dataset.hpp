#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mcoac/topology.hpp"

namespace mcoac {

/// Row-major feature matrix in [0, 1] with integer class labels.
struct Dataset {
  std::size_t dims = 0;
  std::size_t classes = 0;
  std::vector<double> features;
  std::vector<int> labels;

  std::size_t size() const noexcept { return labels.size(); }
  bool empty() const noexcept { return labels.empty(); }
  std::span<const double> sample(std::size_t i) const { return {features.data() + i * dims, dims}; }

  void push_back(std::span<const double> x, int label);
  /// Sorted distinct labels present.
  std::vector<int> distinct_labels() const;
};

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

/// Reads an IDX image/label pair (big-endian). Pixels are scaled by 1/255.
Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                 std::size_t classes = 10);

/// Writes `data` as an IDX pair with 8-bit pixels (features are rounded from
/// [0, 1]); `rows * cols` must equal the feature dimension.
void write_idx(const Dataset& data, std::size_t rows, std::size_t cols, const std::filesystem::path& images,
               const std::filesystem::path& labels);

/// Unit-variance Gaussian blobs around class means `separation` apart, mapped
/// into [0, 1] by a fixed affine transform that depends only on the shape
/// arguments, so train and test sets drawn with different seeds share it.
Dataset make_synthetic(std::size_t classes, std::size_t dims, std::size_t per_class, std::uint64_t seed,
                       double separation = 6.0);

enum class PartitionMode { kHomogeneous, kLocationHeterogeneous };

struct PartitionSpec {
  PartitionMode mode = PartitionMode::kHomogeneous;
  std::size_t band_count = 5;
  /// Window width of labels per band; 0 means classes - band_count + 1.
  std::size_t labels_per_band = 0;
};

/// Band of each ED: `band_count` equal-width vertical strips spanning the ED
/// x-range.
std::vector<std::size_t> ed_bands(const Deployment& dep, std::size_t band_count);

/// Labels available in band b (0-based): {b, ..., b + width - 1} clipped to the
/// class range.
std::vector<int> band_labels(std::size_t band, std::size_t width, std::size_t classes);

std::vector<Dataset> partition(const Dataset& global, const Deployment& dep, const PartitionSpec& spec,
                               std::uint64_t seed);

}  // namespace mcoac
