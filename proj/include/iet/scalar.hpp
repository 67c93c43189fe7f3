#pragma once

#include <vector>

#include "iet/basis.hpp"

namespace iet {

enum class Cmp { Less, Equal, Greater };

// Exact real number in the Q-span of a Basis, held as the vector of rational
// coordinates (coords[0] is the rational part). Equality is coordinatewise;
// order is decided by enclosure refinement and is always exact.
class Scalar {
 public:
  Scalar(BasisPtr basis, std::vector<Rational> coords);

  static Scalar zero(const BasisPtr& b);
  static Scalar one(const BasisPtr& b);
  static Scalar from_rational(const BasisPtr& b, const Rational& q);
  // q * generator(i)
  static Scalar multiple_of(const BasisPtr& b, int i, const Rational& q);

  const BasisPtr& basis() const { return basis_; }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& rational_part() const { return coords_[0]; }
  Rational project(int i) const;

  bool is_zero() const;
  bool is_rational() const;

  Scalar operator-() const;
  Scalar scaled(const Rational& q) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const;
  bool operator<=(const Scalar& o) const;
  bool operator>(const Scalar& o) const { return o < *this; }
  bool operator>=(const Scalar& o) const { return o <= *this; }

  Integer floor() const;
  Scalar mod_one() const;

  // Interval containing the value, at the basis' current cache or deeper.
  Enclosure enclosure(int depth) const;

  std::string str() const;

 private:
  BasisPtr basis_;
  std::vector<Rational> coords_;
};

Cmp compare(const Scalar& a, const Scalar& b);
inline Cmp sign(const Scalar& a) { return compare(a, Scalar::zero(a.basis())); }

inline Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar scale(const Scalar& a, const Rational& q) { return a.scaled(q); }
inline Scalar mod_one(const Scalar& a) { return a.mod_one(); }
inline Rational project(const Scalar& a, int i) { return a.project(i); }

}  // namespace iet
