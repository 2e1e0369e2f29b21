#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mcoac {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b) noexcept;

/// Edge servers (cell sites) and edge devices in metres.
struct Deployment {
  std::vector<Point> es_positions;
  std::vector<Point> ed_positions;
  double inter_site_distance = 0.0;

  std::size_t es_count() const noexcept { return es_positions.size(); }
  std::size_t ed_count() const noexcept { return ed_positions.size(); }

  friend bool operator==(const Deployment&, const Deployment&) = default;
};

enum class Placement {
  kBoundary,      // uniform on the shared hexagon edges
  kVerticesOnly,  // at hexagon corners
};

struct PathLossParams {
  double alpha = 4.0;
  double r_ul = 0.0;
  double r_dl = 0.0;
};

/// Dense (es, ed) gain matrix, row-major by ES.
class GainMatrix {
 public:
  GainMatrix() = default;
  GainMatrix(std::size_t es_count, std::size_t ed_count, double fill = 0.0)
      : es_count_(es_count), ed_count_(ed_count), values_(es_count * ed_count, fill) {}

  double operator()(std::size_t es, std::size_t ed) const { return values_[es * ed_count_ + ed]; }
  double& operator()(std::size_t es, std::size_t ed) { return values_[es * ed_count_ + ed]; }

  std::size_t es_count() const noexcept { return es_count_; }
  std::size_t ed_count() const noexcept { return ed_count_; }

  friend bool operator==(const GainMatrix&, const GainMatrix&) = default;

 private:
  std::size_t es_count_ = 0;
  std::size_t ed_count_ = 0;
  std::vector<double> values_;
};

/// Large-scale power gains normalised to the reference distances.
struct LinkGains {
  GainMatrix rho_ul;
  GainMatrix rho_dl;
};

struct ConnectivitySets {
  std::vector<std::vector<std::size_t>> eds_of_es;
  std::vector<std::vector<std::size_t>> ess_of_ed;
  double threshold = 0.0;
  /// Modal set sizes.
  std::size_t k_c = 0;
  std::size_t s_c = 0;
  std::vector<std::string> warnings;
};

/// ES sites on an axial hexagonal lattice, filled ring by ring from the origin.
Deployment build_hex_grid(std::size_t cell_count, double isd);

/// Returns `dep` with `ed_count` devices placed on cell edges. EDs are put on
/// edges shared by two present cells; a lone cell uses its own boundary.
Deployment place_cell_edge_eds(Deployment dep, std::size_t ed_count, std::uint64_t seed,
                               Placement placement = Placement::kBoundary);

/// Hexagon circumradius isd/sqrt(3); the cell-vertex distance.
double cell_radius(double isd) noexcept;

LinkGains compute_link_gains(const Deployment& dep, const PathLossParams& plp);

/// Fixed-connectivity gains: 1 for members of the sets, 0 otherwise.
LinkGains fixed_connectivity_gains(const ConnectivitySets& sets, std::size_t es_count,
                                   std::size_t ed_count);

ConnectivitySets connectivity_sets(const LinkGains& gains, double threshold);

/// Gain at 1.5 times the cell-vertex distance.
double default_connectivity_threshold(double isd, const PathLossParams& plp);

/// Tab-separated `kind id x_m y_m` table with a header row.
void write_deployment(std::ostream& out, const Deployment& dep);
Deployment read_deployment(std::istream& in, double isd);

}  // namespace mcoac
