#pragma once

#include <cstddef>
#include <vector>

namespace qcu {

/// Uniform cell-centred axis: `count` cells of equal width covering
/// [min, max]; node i sits at the centre of cell i, so the edges themselves
/// are never sampled.
struct Axis {
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 0;

  double width() const { return (max - min) / static_cast<double>(count); }
  double node(std::size_t i) const { return min + (static_cast<double>(i) + 0.5) * width(); }
  double lower_edge(std::size_t i) const { return min + static_cast<double>(i) * width(); }
  double upper_edge(std::size_t i) const { return min + static_cast<double>(i + 1) * width(); }
  std::vector<double> nodes() const;

  friend bool operator==(const Axis&, const Axis&) = default;
};

/// Sampled probability density on a 1D or 2D cell-centred grid.
///
/// `values` holds point densities at the nodes; `cell_mass` holds the
/// probability carried by each cell. For 2D grids both are row-major with the
/// first axis slow: index = i * axes[1].count + j.
struct DensityGrid {
  std::size_t dimension = 1;
  std::vector<Axis> axes;
  std::vector<double> values;
  std::vector<double> cell_mass;
  /// |sum(cell_mass) - 1|.
  double normalization_residual = 0.0;

  double cell_area() const;
  double total_mass() const;
  std::size_t size() const { return values.size(); }
  double at(std::size_t i) const { return values.at(i); }
  double at(std::size_t i, std::size_t j) const { return values.at(i * axes.at(1).count + j); }
  bool same_layout(const DensityGrid& other) const;
};

/// Builds a grid from point densities using the midpoint rule for cell masses.
DensityGrid midpoint_grid(std::vector<Axis> axes, std::vector<double> values);

}  // namespace qcu
