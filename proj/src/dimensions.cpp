#include "qcu/dimensions.hpp"

#include "qcu/errors.hpp"

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace qcu {

DimensionVector::DimensionVector(std::size_t base_count) : exponents_(base_count) {
  if (base_count == 0) throw InputError("dimension vector needs at least one base dimension");
}

DimensionVector::DimensionVector(std::initializer_list<Rational> exponents)
    : DimensionVector(std::vector<Rational>(exponents)) {}

DimensionVector::DimensionVector(std::vector<Rational> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw InputError("dimension vector needs at least one base dimension");
}

bool DimensionVector::is_zero() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](const Rational& r) { return r.is_zero(); });
}

std::string DimensionVector::str() const {
  static constexpr const char* kBase[] = {"M", "L", "T"};
  std::ostringstream os;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) os << ' ';
    if (exponents_.size() == kDefaultBaseCount)
      os << kBase[i];
    else
      os << 'D' << i;
    os << '^' << exponents_[i];
  }
  return os.str();
}

DimensionVector& DimensionVector::operator+=(const DimensionVector& rhs) {
  if (rhs.size() != size()) throw InputError("dimension vectors over different bases");
  for (std::size_t i = 0; i < size(); ++i) exponents_[i] += rhs.exponents_[i];
  return *this;
}

DimensionVector operator*(const Rational& s, const DimensionVector& v) {
  DimensionVector out = v;
  for (auto& e : out.exponents_) e *= s;
  return out;
}

Rational PiGroup::exponent(const std::string& name) const {
  for (const auto& [n, e] : exponents) {
    if (n == name) return e;
  }
  return {};
}

DimensionVector combine(const Quantity& a, const Rational& exp_a, const Quantity& b,
                        const Rational& exp_b) {
  return exp_a * a.dim + exp_b * b.dim;
}

namespace {

void validate(std::span<const Quantity> quantities) {
  if (quantities.empty()) throw InputError("at least one quantity is required", "quantities");
  const std::size_t base = quantities.front().dim.size();
  for (const auto& q : quantities) {
    if (q.dim.size() != base)
      throw InputError("quantity '" + q.name + "' has a different number of base dimensions", q.name);
  }
  auto duplicate = [](const std::string& name) {
    return InputError("duplicate quantity name '" + name + "'", name);
  };
  if (quantities.size() <= 16) {
    for (std::size_t i = 1; i < quantities.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (quantities[i].name == quantities[j].name) throw duplicate(quantities[i].name);
      }
    }
    return;
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& q : quantities) {
    if (!seen.insert(q.name).second) throw duplicate(q.name);
  }
}

// Reduced row-echelon form. Row i of `cells` is the pivot row for column
// pivots[i]; the entry (i, c) is num(i, c) / den(i).
template <class T>
struct Echelon {
  std::size_t n_cols = 0;
  boost::container::small_vector<T, 48> cells;
  boost::container::small_vector<std::size_t, 8> pivots;

  T& at(std::size_t r, std::size_t c) { return cells[r * n_cols + c]; }
  const T& at(std::size_t r, std::size_t c) const { return cells[r * n_cols + c]; }
};

// Fraction-free Gauss-Jordan on integer exponents: rows are combined as
// p * row_r - f * row_lead and divided by their content, so entries stay
// small. Pivot rows are left unscaled. Returns false on overflow or
// non-integer input.
bool reduce_integer(std::span<const Quantity> quantities, Echelon<std::int64_t>& e) {
  const std::size_t n_rows = quantities.front().dim.size();
  const std::size_t n_cols = quantities.size();
  e.n_cols = n_cols;
  e.cells.resize(n_rows * n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) {
    for (std::size_t r = 0; r < n_rows; ++r) {
      const Rational& v = quantities[c].dim[r];
      if (!v.is_compact() || !v.is_integer()) return false;
      e.at(r, c) = v.to_int64();
    }
  }

  std::size_t lead = 0;
  for (std::size_t c = 0; c < n_cols && lead < n_rows; ++c) {
    std::size_t pivot = lead;
    while (pivot < n_rows && e.at(pivot, c) == 0) ++pivot;
    if (pivot == n_rows) continue;
    if (pivot != lead) {
      for (std::size_t k = 0; k < n_cols; ++k) std::swap(e.at(pivot, k), e.at(lead, k));
    }
    const std::int64_t p = e.at(lead, c);
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (r == lead || e.at(r, c) == 0) continue;
      const std::int64_t f = e.at(r, c);
      std::int64_t content = 0;
      for (std::size_t k = 0; k < n_cols; ++k) {
        std::int64_t a = 0;
        std::int64_t b = 0;
        std::int64_t& cell = e.at(r, k);
        if (__builtin_mul_overflow(p, cell, &a) || __builtin_mul_overflow(f, e.at(lead, k), &b) ||
            __builtin_sub_overflow(a, b, &cell) || cell == std::numeric_limits<std::int64_t>::min())
          return false;
        content = std::gcd(content, cell);
      }
      if (content > 1) {
        for (std::size_t k = 0; k < n_cols; ++k) e.at(r, k) /= content;
      }
    }
    e.pivots.push_back(c);
    ++lead;
  }
  return true;
}

// Exact Gauss-Jordan over the rationals; pivot rows are scaled to 1.
Echelon<Rational> reduce_rational(std::span<const Quantity> quantities) {
  const std::size_t n_rows = quantities.front().dim.size();
  const std::size_t n_cols = quantities.size();
  Echelon<Rational> e;
  e.n_cols = n_cols;
  e.cells.resize(n_rows * n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) {
    for (std::size_t r = 0; r < n_rows; ++r) e.at(r, c) = quantities[c].dim[r];
  }

  std::size_t lead = 0;
  for (std::size_t c = 0; c < n_cols && lead < n_rows; ++c) {
    std::size_t pivot = lead;
    while (pivot < n_rows && e.at(pivot, c).is_zero()) ++pivot;
    if (pivot == n_rows) continue;
    if (pivot != lead) {
      for (std::size_t k = c; k < n_cols; ++k) std::swap(e.at(pivot, k), e.at(lead, k));
    }

    const Rational inv = Rational(1) / e.at(lead, c);
    for (std::size_t k = c; k < n_cols; ++k) {
      if (!e.at(lead, k).is_zero()) e.at(lead, k) *= inv;
    }
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (r == lead || e.at(r, c).is_zero()) continue;
      const Rational f = e.at(r, c);
      for (std::size_t k = c; k < n_cols; ++k) {
        if (!e.at(lead, k).is_zero()) e.at(r, k) -= f * e.at(lead, k);
      }
    }
    e.pivots.push_back(c);
    ++lead;
  }
  return e;
}

// Calls emit(free_column, exponent_of(column)) for every free column, where
// exponent_of gives the nullspace vector's entries.
template <class Emit>
void for_each_null_vector(std::span<const Quantity> quantities, Emit&& emit) {
  const std::size_t n = quantities.size();
  Echelon<std::int64_t> ie;
  if (reduce_integer(quantities, ie)) {
    std::size_t next = 0;
    for (std::size_t free = 0; free < n; ++free) {
      if (next < ie.pivots.size() && ie.pivots[next] == free) {
        ++next;
        continue;
      }
      emit(free, [&](std::size_t c) -> Rational {
        if (c == free) return 1;
        for (std::size_t i = 0; i < ie.pivots.size(); ++i) {
          if (ie.pivots[i] == c) {
            const std::int64_t num = ie.at(i, free);
            return num == 0 ? Rational() : Rational(-num, ie.at(i, c));
          }
        }
        return {};
      });
    }
    return;
  }
  const Echelon<Rational> e = reduce_rational(quantities);
  std::size_t next = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (next < e.pivots.size() && e.pivots[next] == free) {
      ++next;
      continue;
    }
    emit(free, [&](std::size_t c) -> Rational {
      if (c == free) return 1;
      for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == c) return -e.at(i, free);
      }
      return {};
    });
  }
}

}  // namespace

std::size_t dimension_rank(std::span<const Quantity> quantities) {
  validate(quantities);
  std::size_t nullity = 0;
  for_each_null_vector(quantities, [&](std::size_t, auto&&) { ++nullity; });
  return quantities.size() - nullity;
}

std::vector<PiGroup> pi_basis(std::span<const Quantity> quantities) {
  validate(quantities);
  std::vector<PiGroup> groups;
  for_each_null_vector(quantities, [&](std::size_t, auto&& exponent_of) {
    PiGroup g;
    g.exponents.reserve(quantities.size());
    for (std::size_t c = 0; c < quantities.size(); ++c) {
      Rational x = exponent_of(c);
      if (!x.is_zero()) g.exponents.emplace_back(quantities[c].name, std::move(x));
    }
    groups.push_back(std::move(g));
  });
  return groups;
}

DimensionVector group_dimension(const PiGroup& group, std::span<const Quantity> quantities) {
  if (quantities.empty()) throw InputError("at least one quantity is required", "quantities");
  DimensionVector total(quantities.front().dim.size());
  for (const auto& [name, exp] : group.exponents) {
    auto it = std::find_if(quantities.begin(), quantities.end(),
                           [&](const Quantity& q) { return q.name == name; });
    if (it == quantities.end()) throw InputError("unknown quantity '" + name + "'", name);
    if (!exp.is_zero()) total += exp * it->dim;
  }
  return total;
}

bool is_dimensionless(const PiGroup& group, std::span<const Quantity> quantities) {
  return group_dimension(group, quantities).is_zero();
}

std::string to_string(const PiGroup& group) {
  std::ostringstream os;
  for (std::size_t i = 0; i < group.exponents.size(); ++i) {
    if (i) os << ' ';
    os << group.exponents[i].first << '^' << group.exponents[i].second;
  }
  return os.str();
}

}  // namespace qcu
