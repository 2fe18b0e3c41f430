#include "qcu/grid.hpp"

#include "qcu/errors.hpp"

#include <cmath>
#include <numeric>

namespace qcu {

std::vector<double> Axis::nodes() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = node(i);
  return out;
}

double DensityGrid::cell_area() const {
  double a = 1.0;
  for (const auto& ax : axes) a *= ax.width();
  return a;
}

double DensityGrid::total_mass() const { return std::accumulate(cell_mass.begin(), cell_mass.end(), 0.0); }

bool DensityGrid::same_layout(const DensityGrid& other) const {
  return dimension == other.dimension && axes == other.axes && values.size() == other.values.size();
}

DensityGrid midpoint_grid(std::vector<Axis> axes, std::vector<double> values) {
  if (axes.empty() || axes.size() > 2) throw InputError("density grids are 1D or 2D", "dim");
  std::size_t expected = 1;
  for (const auto& ax : axes) expected *= ax.count;
  if (expected != values.size()) throw InputError("value count does not match the grid", "grid");

  DensityGrid g;
  g.dimension = axes.size();
  g.axes = std::move(axes);
  g.values = std::move(values);
  const double area = g.cell_area();
  g.cell_mass.resize(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) g.cell_mass[i] = g.values[i] * area;
  g.normalization_residual = std::abs(g.total_mass() - 1.0);
  return g;
}

}  // namespace qcu
