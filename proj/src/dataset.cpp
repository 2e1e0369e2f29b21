#include "mcoac/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "mcoac/errors.hpp"
#include "mcoac/rng.hpp"

namespace mcoac {

namespace {

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(fmt::format("cannot open '{}'", path.string()));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::vector<unsigned char>& bytes, std::size_t offset,
                        const std::filesystem::path& path) {
  if (bytes.size() < offset + 4) {
    throw FormatError(fmt::format("'{}' truncated: expected at least {} bytes, got {}", path.string(),
                                  offset + 4, bytes.size()));
  }
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void write_be32(std::ofstream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16), static_cast<char>(v >> 8),
                         static_cast<char>(v)};
  out.write(bytes, 4);
}

void expect_payload(const std::vector<unsigned char>& bytes, std::size_t expected,
                    const std::filesystem::path& path) {
  if (bytes.size() < expected) {
    throw FormatError(fmt::format("'{}' truncated: expected {} bytes, got {}", path.string(), expected,
                                  bytes.size()));
  }
}

std::vector<std::vector<double>> class_means(std::size_t classes, std::size_t dims, double separation) {
  std::vector<std::vector<double>> means(classes, std::vector<double>(dims, 0.0));
  if (dims >= classes) {
    // Scaled simplex: pairwise distance equals `separation`.
    for (std::size_t c = 0; c < classes; ++c) means[c][c] = separation / std::numbers::sqrt2;
  } else if (dims >= 2) {
    const double radius = classes > 1 ? separation / (2.0 * std::sin(std::numbers::pi / classes)) : 0.0;
    for (std::size_t c = 0; c < classes; ++c) {
      const double angle = 2.0 * std::numbers::pi * c / classes;
      means[c][0] = radius * std::cos(angle);
      means[c][1] = radius * std::sin(angle);
    }
  } else {
    for (std::size_t c = 0; c < classes; ++c) means[c][0] = separation * c;
  }
  return means;
}

}  // namespace

void Dataset::push_back(std::span<const double> x, int label) {
  features.insert(features.end(), x.begin(), x.end());
  labels.push_back(label);
}

std::vector<int> Dataset::distinct_labels() const {
  std::set<int> unique(labels.begin(), labels.end());
  return {unique.begin(), unique.end()};
}

Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                 std::size_t classes) {
  const auto image_bytes = read_file(images);
  const auto label_bytes = read_file(labels);

  const std::uint32_t image_magic = read_be32(image_bytes, 0, images);
  if (image_magic != kIdxImagesMagic) {
    throw FormatError(fmt::format("'{}': bad magic 0x{:08x}, expected 0x{:08x}", images.string(), image_magic,
                                  kIdxImagesMagic));
  }
  const std::uint32_t label_magic = read_be32(label_bytes, 0, labels);
  if (label_magic != kIdxLabelsMagic) {
    throw FormatError(fmt::format("'{}': bad magic 0x{:08x}, expected 0x{:08x}", labels.string(), label_magic,
                                  kIdxLabelsMagic));
  }

  const std::size_t count = read_be32(image_bytes, 4, images);
  const std::size_t rows = read_be32(image_bytes, 8, images);
  const std::size_t cols = read_be32(image_bytes, 12, images);
  const std::size_t label_count = read_be32(label_bytes, 4, labels);
  if (count != label_count) {
    throw FormatError(fmt::format("IDX count mismatch: {} images, {} labels", count, label_count));
  }
  const std::size_t dims = rows * cols;
  expect_payload(image_bytes, 16 + count * dims, images);
  expect_payload(label_bytes, 8 + count, labels);

  Dataset data;
  data.dims = dims;
  data.classes = classes;
  data.features.resize(count * dims);
  data.labels.resize(count);
  for (std::size_t i = 0; i < count * dims; ++i) data.features[i] = image_bytes[16 + i] / 255.0;
  for (std::size_t i = 0; i < count; ++i) {
    const int label = label_bytes[8 + i];
    if (static_cast<std::size_t>(label) >= classes) {
      throw FormatError(fmt::format("'{}': label {} outside [0, {})", labels.string(), label, classes));
    }
    data.labels[i] = label;
  }
  return data;
}

void write_idx(const Dataset& data, std::size_t rows, std::size_t cols, const std::filesystem::path& images,
               const std::filesystem::path& labels) {
  if (rows * cols != data.dims) throw InvalidArgument("write_idx: rows * cols must equal dims");
  std::ofstream img(images, std::ios::binary);
  std::ofstream lab(labels, std::ios::binary);
  if (!img || !lab) throw FormatError("write_idx: cannot open output files");
  write_be32(img, kIdxImagesMagic);
  write_be32(img, static_cast<std::uint32_t>(data.size()));
  write_be32(img, static_cast<std::uint32_t>(rows));
  write_be32(img, static_cast<std::uint32_t>(cols));
  for (double v : data.features) {
    img.put(static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0))));
  }
  write_be32(lab, kIdxLabelsMagic);
  write_be32(lab, static_cast<std::uint32_t>(data.size()));
  for (int label : data.labels) lab.put(static_cast<char>(label));
}

Dataset make_synthetic(std::size_t classes, std::size_t dims, std::size_t per_class, std::uint64_t seed,
                       double separation) {
  if (classes == 0 || dims == 0 || per_class == 0) {
    throw InvalidArgument("make_synthetic: classes, dims and per_class must be positive");
  }
  const auto means = class_means(classes, dims, separation);
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& m : means) {
    lo = std::min(lo, *std::min_element(m.begin(), m.end()));
    hi = std::max(hi, *std::max_element(m.begin(), m.end()));
  }
  lo -= 6.0;
  hi += 6.0;

  Dataset data;
  data.dims = dims;
  data.classes = classes;
  data.features.reserve(classes * per_class * dims);
  data.labels.reserve(classes * per_class);
  CounterRng rng(StreamId{seed, 0, 0, Purpose::kSynthetic});
  std::vector<double> x(dims);
  for (std::size_t i = 0; i < per_class; ++i) {
    for (std::size_t c = 0; c < classes; ++c) {
      for (std::size_t d = 0; d < dims; ++d) {
        x[d] = std::clamp((means[c][d] + standard_normal(rng) - lo) / (hi - lo), 0.0, 1.0);
      }
      data.push_back(x, static_cast<int>(c));
    }
  }
  return data;
}

std::vector<std::size_t> ed_bands(const Deployment& dep, std::size_t band_count) {
  if (band_count == 0) throw InvalidArgument("ed_bands: band_count must be >= 1");
  std::vector<std::size_t> bands(dep.ed_count(), 0);
  if (dep.ed_positions.empty()) return bands;
  const auto [lo, hi] = std::minmax_element(dep.ed_positions.begin(), dep.ed_positions.end(),
                                            [](const Point& a, const Point& b) { return a.x < b.x; });
  const double width = hi->x - lo->x;
  if (width <= 0.0) return bands;
  for (std::size_t k = 0; k < dep.ed_count(); ++k) {
    const double t = (dep.ed_positions[k].x - lo->x) / width;
    bands[k] = std::min(band_count - 1, static_cast<std::size_t>(t * static_cast<double>(band_count)));
  }
  return bands;
}

std::vector<int> band_labels(std::size_t band, std::size_t width, std::size_t classes) {
  std::vector<int> labels;
  for (std::size_t l = band; l < band + width && l < classes; ++l) labels.push_back(static_cast<int>(l));
  return labels;
}

std::vector<Dataset> partition(const Dataset& global, const Deployment& dep, const PartitionSpec& spec,
                               std::uint64_t seed) {
  const std::size_t ed_count = dep.ed_count();
  if (ed_count == 0) throw InvalidArgument("partition: deployment has no EDs");

  std::vector<Dataset> parts(ed_count);
  for (auto& p : parts) {
    p.dims = global.dims;
    p.classes = global.classes;
  }

  std::vector<std::vector<std::size_t>> by_label(global.classes);
  for (std::size_t i = 0; i < global.size(); ++i) {
    by_label.at(static_cast<std::size_t>(global.labels[i])).push_back(i);
  }

  std::vector<std::vector<std::size_t>> eligible(global.classes);
  if (spec.mode == PartitionMode::kHomogeneous) {
    for (auto& e : eligible) {
      e.resize(ed_count);
      std::iota(e.begin(), e.end(), std::size_t{0});
    }
  } else {
    if (spec.band_count == 0 || spec.band_count > global.classes) {
      throw InvalidArgument("partition: band_count must be in [1, classes]");
    }
    const std::size_t width =
        spec.labels_per_band != 0 ? spec.labels_per_band : global.classes - spec.band_count + 1;
    const auto bands = ed_bands(dep, spec.band_count);
    for (std::size_t k = 0; k < ed_count; ++k) {
      for (int label : band_labels(bands[k], width, global.classes)) {
        eligible[static_cast<std::size_t>(label)].push_back(k);
      }
    }
  }

  // Round-robin over eligible EDs; the starting ED rotates across labels so
  // totals stay balanced.
  std::size_t offset = 0;
  for (std::size_t label = 0; label < global.classes; ++label) {
    auto& indices = by_label[label];
    if (indices.empty()) continue;
    const auto& eds = eligible[label];
    if (eds.empty()) throw UnplacedSampleError(fmt::format("label {} has no eligible ED", label));
    CounterRng rng(StreamId{seed, 0, label, Purpose::kPartition});
    for (std::size_t i = indices.size(); i > 1; --i) std::swap(indices[i - 1], indices[uniform_index(rng, i)]);
    for (std::size_t j = 0; j < indices.size(); ++j) {
      const std::size_t i = indices[j];
      parts[eds[(offset + j) % eds.size()]].push_back(global.sample(i), global.labels[i]);
    }
    offset += indices.size();
  }
  return parts;
}

}  // namespace mcoac
