#include "iet/scalar.hpp"

#include <sstream>

namespace iet {

namespace {
constexpr int kDepthStep = 32;
}

Scalar::Scalar(BasisPtr basis, std::vector<Rational> coords)
    : basis_(std::move(basis)), coords_(std::move(coords)) {
  if (!basis_) throw std::invalid_argument("scalar needs a basis");
  if (static_cast<int>(coords_.size()) != basis_->size())
    throw std::invalid_argument("coordinate count does not match basis size");
}

Scalar Scalar::zero(const BasisPtr& b) {
  return Scalar(b, std::vector<Rational>(b->size(), Rational(0)));
}

Scalar Scalar::one(const BasisPtr& b) { return from_rational(b, Rational(1)); }

Scalar Scalar::from_rational(const BasisPtr& b, const Rational& q) {
  std::vector<Rational> c(b->size(), Rational(0));
  c[0] = q;
  return Scalar(b, std::move(c));
}

Scalar Scalar::multiple_of(const BasisPtr& b, int i, const Rational& q) {
  if (i < 0 || i >= b->size()) throw std::out_of_range("generator index");
  std::vector<Rational> c(b->size(), Rational(0));
  c[i] = q;
  return Scalar(b, std::move(c));
}

Rational Scalar::project(int i) const {
  if (i < 0 || i >= basis_->size()) throw std::out_of_range("generator index");
  return coords_[i];
}

bool Scalar::is_zero() const {
  for (const Rational& c : coords_)
    if (c != 0) return false;
  return true;
}

bool Scalar::is_rational() const {
  for (size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Scalar Scalar::operator-() const {
  std::vector<Rational> c(coords_.size());
  for (size_t i = 0; i < coords_.size(); ++i) c[i] = -coords_[i];
  return Scalar(basis_, std::move(c));
}

Scalar Scalar::scaled(const Rational& q) const {
  std::vector<Rational> c(coords_.size());
  for (size_t i = 0; i < coords_.size(); ++i) c[i] = coords_[i] * q;
  return Scalar(basis_, std::move(c));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (!same_basis(a.basis_, b.basis_)) throw BasisMismatchError();
  std::vector<Rational> c(a.coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coords_[i] + b.coords_[i];
  return Scalar(a.basis_, std::move(c));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (!same_basis(a.basis_, b.basis_)) throw BasisMismatchError();
  std::vector<Rational> c(a.coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coords_[i] - b.coords_[i];
  return Scalar(a.basis_, std::move(c));
}

bool Scalar::operator==(const Scalar& o) const {
  if (!same_basis(basis_, o.basis_)) throw BasisMismatchError();
  return coords_ == o.coords_;
}

bool Scalar::operator<(const Scalar& o) const { return compare(*this, o) == Cmp::Less; }

bool Scalar::operator<=(const Scalar& o) const { return compare(*this, o) != Cmp::Greater; }

Enclosure Scalar::enclosure(int depth) const {
  Enclosure acc{coords_[0], coords_[0]};
  for (int i = 1; i < basis_->size(); ++i) {
    const Rational& c = coords_[i];
    if (c == 0) continue;
    Enclosure e = basis_->enclosure(i, depth);
    if (c > 0) {
      acc.lo += c * e.lo;
      acc.hi += c * e.hi;
    } else {
      acc.lo += c * e.hi;
      acc.hi += c * e.lo;
    }
  }
  return acc;
}

Cmp compare(const Scalar& a, const Scalar& b) {
  if (!same_basis(a.basis(), b.basis())) throw BasisMismatchError();
  Scalar d = a - b;
  if (d.is_zero()) return Cmp::Equal;
  if (d.is_rational()) return d.rational_part() > 0 ? Cmp::Greater : Cmp::Less;
  const int max_depth = a.basis()->max_refine_depth();
  int depth = 0;
  for (;;) {
    Enclosure e = d.enclosure(depth);
    if (e.lo > 0) return Cmp::Greater;
    if (e.hi < 0) return Cmp::Less;
    if (depth >= max_depth)
      throw RefinementDepthExceeded(
          "compare could not separate values at maximum refinement depth");
    depth = std::min(depth + kDepthStep, max_depth);
  }
}

Integer Scalar::floor() const {
  if (is_rational()) return floor_int(coords_[0]);
  const int max_depth = basis_->max_refine_depth();
  int depth = 0;
  for (;;) {
    Enclosure e = enclosure(depth);
    Integer fl = floor_int(e.lo);
    Integer fh = floor_int(e.hi);
    if (fl == fh) return fl;
    if (depth >= max_depth)
      throw RefinementDepthExceeded("floor could not be decided at maximum refinement depth");
    depth = std::min(depth + kDepthStep, max_depth);
  }
}

Scalar Scalar::mod_one() const {
  Integer n = floor();
  if (n == 0) return *this;
  return *this - from_rational(basis_, Rational(n));
}

std::string Scalar::str() const {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < basis_->size(); ++i) {
    if (coords_[i] == 0) continue;
    if (!first) out << " + ";
    out << rational_string(coords_[i]);
    if (i > 0) out << "*g" << i;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace iet
