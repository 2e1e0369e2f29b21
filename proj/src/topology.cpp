#include "mcoac/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "mcoac/errors.hpp"
#include "mcoac/rng.hpp"

namespace mcoac {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

struct Segment {
  Point a;
  Point b;
};

struct Axial {
  int q = 0;
  int r = 0;
};

constexpr std::array<Axial, 6> kDirections{{{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};

Point axial_to_point(Axial h, double isd) {
  return {isd * (h.q + 0.5 * h.r), isd * (kSqrt3 / 2.0) * h.r};
}

bool adjacent(const Point& a, const Point& b, double isd) {
  return std::abs(distance(a, b) - isd) <= 1e-9 * isd;
}

// Edges shared by two present cells. When no pair of cells is adjacent the
// boundary of every cell is used instead.
std::vector<Segment> candidate_edges(const Deployment& dep) {
  const double isd = dep.inter_site_distance;
  const double half_side = cell_radius(isd) / 2.0;
  std::vector<Segment> edges;
  const auto& es = dep.es_positions;
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      if (!adjacent(es[i], es[j], isd)) continue;
      const Point mid{(es[i].x + es[j].x) / 2.0, (es[i].y + es[j].y) / 2.0};
      const double ux = -(es[j].y - es[i].y) / isd;
      const double uy = (es[j].x - es[i].x) / isd;
      edges.push_back({{mid.x - ux * half_side, mid.y - uy * half_side},
                       {mid.x + ux * half_side, mid.y + uy * half_side}});
    }
  }
  if (!edges.empty()) return edges;

  const double radius = cell_radius(isd);
  for (const auto& site : es) {
    for (int v = 0; v < 6; ++v) {
      const double a0 = std::numbers::pi / 6.0 + v * std::numbers::pi / 3.0;
      const double a1 = a0 + std::numbers::pi / 3.0;
      edges.push_back({{site.x + radius * std::cos(a0), site.y + radius * std::sin(a0)},
                       {site.x + radius * std::cos(a1), site.y + radius * std::sin(a1)}});
    }
  }
  return edges;
}

std::vector<Point> candidate_vertices(const std::vector<Segment>& edges, double isd) {
  // Deduplicate on a grid much finer than the lattice.
  const double quantum = isd * 1e-6;
  std::map<std::pair<long long, long long>, Point> unique;
  for (const auto& e : edges) {
    for (const Point& p : {e.a, e.b}) {
      const auto key = std::make_pair(std::llround(p.x / quantum), std::llround(p.y / quantum));
      unique.emplace(key, p);
    }
  }
  std::vector<Point> vertices;
  vertices.reserve(unique.size());
  for (const auto& [key, p] : unique) vertices.push_back(p);
  return vertices;
}

std::size_t modal_size(const std::vector<std::vector<std::size_t>>& sets) {
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& s : sets) ++histogram[s.size()];
  std::size_t best = 0;
  std::size_t best_count = 0;
  for (const auto& [size, count] : histogram) {
    if (count > best_count) {
      best = size;
      best_count = count;
    }
  }
  return best;
}

}  // namespace

double distance(const Point& a, const Point& b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

double cell_radius(double isd) noexcept { return isd / kSqrt3; }

Deployment build_hex_grid(std::size_t cell_count, double isd) {
  if (cell_count == 0) throw InvalidArgument("build_hex_grid: cell_count must be >= 1");
  if (!(isd > 0.0) || !std::isfinite(isd)) throw InvalidArgument("build_hex_grid: isd must be > 0");

  Deployment dep;
  dep.inter_site_distance = isd;
  dep.es_positions.reserve(cell_count);
  dep.es_positions.push_back({0.0, 0.0});
  for (int ring = 1; dep.es_positions.size() < cell_count; ++ring) {
    Axial h{kDirections[4].q * ring, kDirections[4].r * ring};
    for (int side = 0; side < 6 && dep.es_positions.size() < cell_count; ++side) {
      for (int step = 0; step < ring && dep.es_positions.size() < cell_count; ++step) {
        dep.es_positions.push_back(axial_to_point(h, isd));
        h.q += kDirections[side].q;
        h.r += kDirections[side].r;
      }
    }
  }
  return dep;
}

Deployment place_cell_edge_eds(Deployment dep, std::size_t ed_count, std::uint64_t seed,
                               Placement placement) {
  if (ed_count == 0) throw InvalidArgument("place_cell_edge_eds: ed_count must be >= 1");
  if (dep.es_positions.empty()) throw InvalidArgument("place_cell_edge_eds: no edge servers");

  const auto edges = candidate_edges(dep);
  dep.ed_positions.clear();
  dep.ed_positions.reserve(ed_count);

  if (placement == Placement::kBoundary) {
    for (std::size_t k = 0; k < ed_count; ++k) {
      CounterRng rng(StreamId{seed, 0, k, Purpose::kPlacement});
      const auto& e = edges[uniform_index(rng, edges.size())];
      const double t = uniform01(rng);
      dep.ed_positions.push_back({e.a.x + t * (e.b.x - e.a.x), e.a.y + t * (e.b.y - e.a.y)});
    }
    return dep;
  }

  auto vertices = candidate_vertices(edges, dep.inter_site_distance);
  CounterRng rng(StreamId{seed, 0, 0, Purpose::kPlacement});
  for (std::size_t i = vertices.size(); i > 1; --i) {
    std::swap(vertices[i - 1], vertices[uniform_index(rng, i)]);
  }
  for (std::size_t k = 0; k < ed_count; ++k) dep.ed_positions.push_back(vertices[k % vertices.size()]);
  return dep;
}

LinkGains compute_link_gains(const Deployment& dep, const PathLossParams& plp) {
  if (!(plp.alpha > 0.0) || !(plp.r_ul > 0.0) || !(plp.r_dl > 0.0)) {
    throw InvalidArgument("compute_link_gains: alpha, r_ul and r_dl must be > 0");
  }
  LinkGains gains{GainMatrix(dep.es_count(), dep.ed_count()), GainMatrix(dep.es_count(), dep.ed_count())};
  for (std::size_t s = 0; s < dep.es_count(); ++s) {
    for (std::size_t k = 0; k < dep.ed_count(); ++k) {
      const double d = distance(dep.es_positions[s], dep.ed_positions[k]);
      if (d == 0.0) {
        throw CoincidentNodeError(fmt::format("ED {} coincides with ES {}", k, s));
      }
      gains.rho_ul(s, k) = std::pow(d / plp.r_ul, -plp.alpha);
      gains.rho_dl(s, k) = std::pow(d / plp.r_dl, -plp.alpha);
    }
  }
  return gains;
}

LinkGains fixed_connectivity_gains(const ConnectivitySets& sets, std::size_t es_count,
                                   std::size_t ed_count) {
  LinkGains gains{GainMatrix(es_count, ed_count), GainMatrix(es_count, ed_count)};
  for (std::size_t s = 0; s < sets.eds_of_es.size(); ++s) {
    for (std::size_t k : sets.eds_of_es[s]) gains.rho_ul(s, k) = 1.0;
  }
  for (std::size_t k = 0; k < sets.ess_of_ed.size(); ++k) {
    for (std::size_t s : sets.ess_of_ed[k]) gains.rho_dl(s, k) = 1.0;
  }
  return gains;
}

ConnectivitySets connectivity_sets(const LinkGains& gains, double threshold) {
  if (!(threshold > 0.0)) throw InvalidArgument("connectivity_sets: threshold must be > 0");
  const std::size_t es_count = gains.rho_ul.es_count();
  const std::size_t ed_count = gains.rho_ul.ed_count();

  ConnectivitySets sets;
  sets.threshold = threshold;
  sets.eds_of_es.resize(es_count);
  sets.ess_of_ed.resize(ed_count);
  for (std::size_t s = 0; s < es_count; ++s) {
    for (std::size_t k = 0; k < ed_count; ++k) {
      if (gains.rho_ul(s, k) >= threshold) sets.eds_of_es[s].push_back(k);
      if (gains.rho_dl(s, k) >= threshold) sets.ess_of_ed[k].push_back(s);
    }
  }
  for (std::size_t s = 0; s < es_count; ++s) {
    if (sets.eds_of_es[s].empty()) sets.warnings.push_back(fmt::format("ES {} hears no ED", s));
  }
  for (std::size_t k = 0; k < ed_count; ++k) {
    if (sets.ess_of_ed[k].empty()) sets.warnings.push_back(fmt::format("ED {} hears no ES", k));
  }
  sets.k_c = modal_size(sets.eds_of_es);
  sets.s_c = modal_size(sets.ess_of_ed);
  return sets;
}

double default_connectivity_threshold(double isd, const PathLossParams& plp) {
  return std::pow(1.5 * cell_radius(isd) / plp.r_ul, -plp.alpha);
}

void write_deployment(std::ostream& out, const Deployment& dep) {
  out << "kind\tid\tx_m\ty_m\n";
  for (std::size_t s = 0; s < dep.es_count(); ++s) {
    out << fmt::format("ES\t{}\t{}\t{}\n", s, dep.es_positions[s].x, dep.es_positions[s].y);
  }
  for (std::size_t k = 0; k < dep.ed_count(); ++k) {
    out << fmt::format("ED\t{}\t{}\t{}\n", k, dep.ed_positions[k].x, dep.ed_positions[k].y);
  }
}

Deployment read_deployment(std::istream& in, double isd) {
  Deployment dep;
  dep.inter_site_distance = isd;
  std::string line;
  if (!std::getline(in, line) || line != "kind\tid\tx_m\ty_m") {
    throw FormatError("deployment table: missing or wrong header");
  }
  std::vector<std::pair<std::size_t, Point>> es_rows;
  std::vector<std::pair<std::size_t, Point>> ed_rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string kind;
    std::size_t id = 0;
    Point p;
    if (!(row >> kind >> id >> p.x >> p.y) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw FormatError(fmt::format("deployment table: malformed row at line {}", line_no));
    }
    if (kind == "ES") {
      es_rows.emplace_back(id, p);
    } else if (kind == "ED") {
      ed_rows.emplace_back(id, p);
    } else {
      throw FormatError(fmt::format("deployment table: unknown kind '{}' at line {}", kind, line_no));
    }
  }
  auto collect = [](std::vector<std::pair<std::size_t, Point>>& rows, const char* kind) {
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Point> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].first != i) throw FormatError(fmt::format("deployment table: {} ids not contiguous", kind));
      out.push_back(rows[i].second);
    }
    return out;
  };
  dep.es_positions = collect(es_rows, "ES");
  dep.ed_positions = collect(ed_rows, "ED");
  if (dep.es_positions.empty()) throw FormatError("deployment table: no ES rows");
  return dep;
}

}  // namespace mcoac
