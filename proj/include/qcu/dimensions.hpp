#pragma once

#include "qcu/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qcu {

/// Exponents of a physical dimension over an ordered set of base dimensions.
/// The default base is (M, L, T).
class DimensionVector {
public:
  static constexpr std::size_t kDefaultBaseCount = 3;

  explicit DimensionVector(std::size_t base_count = kDefaultBaseCount);
  DimensionVector(std::initializer_list<Rational> exponents);
  explicit DimensionVector(std::vector<Rational> exponents);

  std::size_t size() const noexcept { return exponents_.size(); }
  const Rational& operator[](std::size_t i) const { return exponents_.at(i); }
  const std::vector<Rational>& exponents() const noexcept { return exponents_; }

  bool is_zero() const;
  /// e.g. "M^1 L^2 T^-1" for the default base, "D0^.. D1^.." otherwise.
  std::string str() const;

  DimensionVector& operator+=(const DimensionVector& rhs);
  friend DimensionVector operator+(DimensionVector a, const DimensionVector& b) { return a += b; }
  friend DimensionVector operator*(const Rational& s, const DimensionVector& v);
  friend bool operator==(const DimensionVector&, const DimensionVector&) = default;

private:
  std::vector<Rational> exponents_;
};

struct Quantity {
  std::string name;
  DimensionVector dim;
};

/// A product of powers of quantities whose combined dimension is zero.
/// Exponents are listed in the order of the quantities the group was built
/// from; quantities with a zero exponent are omitted.
struct PiGroup {
  std::vector<std::pair<std::string, Rational>> exponents;

  /// Exponent of `name`, zero if absent.
  Rational exponent(const std::string& name) const;
  friend bool operator==(const PiGroup&, const PiGroup&) = default;
};

/// exp_a * dim(a) + exp_b * dim(b).
DimensionVector combine(const Quantity& a, const Rational& exp_a, const Quantity& b,
                        const Rational& exp_b);

/// Rank of the dimension matrix (base dimensions x quantities).
std::size_t dimension_rank(std::span<const Quantity> quantities);

/// Basis of the dimensionless groups that can be formed from `quantities`.
///
/// The dimension matrix is brought to reduced row-echelon form; every free
/// column, taken in input order, yields one group with unit exponent on that
/// quantity. The result has exactly quantities.size() - rank groups.
///
/// Throws InputError on an empty list, duplicate names or mismatched base
/// dimension counts.
std::vector<PiGroup> pi_basis(std::span<const Quantity> quantities);

/// True iff the group's combined dimension over `quantities` is zero.
/// Throws InputError if the group names a quantity not in the list.
bool is_dimensionless(const PiGroup& group, std::span<const Quantity> quantities);

/// Combined dimension vector of a group.
DimensionVector group_dimension(const PiGroup& group, std::span<const Quantity> quantities);

/// Human readable form, e.g. "hbar^1 A^-1".
std::string to_string(const PiGroup& group);

}  // namespace qcu
