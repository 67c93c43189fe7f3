#pragma once

#include <optional>
#include <vector>

#include "iet/scalar.hpp"

namespace iet {

// Half-open circle arc [start, start + length mod 1); 0 < length <= 1.
struct CircArc {
  Scalar start;
  Scalar length;

  bool contains(const Scalar& x) const { return (x - start).mod_one() < length; }
  Scalar end() const { return (start + length).mod_one(); }
  bool operator==(const CircArc& o) const { return start == o.start && length == o.length; }
};

// (pi, lambda) presentation: pi is a permutation of {1..n} (pi[j-1] = pi(j)),
// lambda the interval lengths, positive and summing to 1 exactly.
struct PiLambda {
  std::vector<int> pi;
  std::vector<Scalar> lambda;

  void validate() const;  // throws std::invalid_argument naming the violated invariant
};

// Interval exchange transformation of the circle in canonical form: sorted
// cut points (0 always stored, flagged artificial when the map is continuous
// there) with one translation per arc, reduced mod 1. No interior cut ever
// has equal translations on both sides.
class Iet {
 public:
  static Iet identity(const BasisPtr& b);
  static Iet rotation(const BasisPtr& b, const Scalar& gamma);
  // Rotation by alpha confined to [0, beta): pi=(2,1,3),
  // lambda=(beta-alpha, alpha, 1-beta); requires 0 < alpha < beta <= 1.
  // beta = 1 degenerates to rotation(alpha).
  static Iet restricted_rotation(const Scalar& alpha, const Scalar& beta);
  static Iet from_pi_lambda(const PiLambda& data);
  // Canonicalizes and validates (cuts sorted starting at 0, bijectivity).
  static Iet from_cuts(BasisPtr b, std::vector<Scalar> cuts, std::vector<Scalar> trans);

  const BasisPtr& basis() const { return basis_; }
  const std::vector<Scalar>& cuts() const { return cuts_; }
  const std::vector<Scalar>& trans() const { return trans_; }
  bool zero_is_artificial() const { return zero_artificial_; }
  int arc_count() const { return static_cast<int>(cuts_.size()); }

  // Number of discontinuity points as a circle map.
  int d() const { return arc_count() - (zero_artificial_ ? 1 : 0); }
  // Minimal number of exchanged intervals viewed as a map [0,1) -> [0,1).
  int delta() const;

  bool is_identity() const;
  bool is_rotation() const { return d() == 0; }
  bool has_rational_coordinates() const;

  Scalar right(const Scalar& x) const;  // f_+(x)
  Scalar left(const Scalar& x) const;   // f_-(x)

  // Index of the arc [cuts[i], cuts[i+1]) containing x.
  int arc_index(const Scalar& x) const;
  const Scalar& trans_at(const Scalar& x) const { return trans_[arc_index(x)]; }

  // Membership in D(f) (genuine discontinuities only).
  bool is_discontinuity(const Scalar& x) const;
  std::vector<Scalar> discontinuities() const;

  // The unique x with f_+(x) = 0.
  Scalar preimage_of_zero() const;

  bool operator==(const Iet& o) const;
  bool operator!=(const Iet& o) const { return !(*this == o); }

 private:
  Iet(BasisPtr b, std::vector<Scalar> cuts, std::vector<Scalar> trans, bool artificial)
      : basis_(std::move(b)),
        cuts_(std::move(cuts)),
        trans_(std::move(trans)),
        zero_artificial_(artificial) {}

  static Iet canonicalize(BasisPtr b, std::vector<Scalar> cuts, std::vector<Scalar> trans);
  void validate_bijectivity() const;

  BasisPtr basis_;
  std::vector<Scalar> cuts_;
  std::vector<Scalar> trans_;
  bool zero_artificial_;
};

Iet compose(const Iet& f, const Iet& g);  // f o g
Iet inverse(const Iet& f);
Iet power(const Iet& f, long n);
// g f g^{-1}
Iet conjugate(const Iet& f, const Iet& g);
// Conjugation by T(x) = -x followed by right-continuization; an involutive
// automorphism of the interval exchange group.
Iet psi_T(const Iet& f);

inline Scalar evaluate_right(const Iet& f, const Scalar& x) { return f.right(x); }
inline Scalar evaluate_left(const Iet& f, const Scalar& x) { return f.left(x); }
inline int d(const Iet& f) { return f.d(); }
inline int delta(const Iet& f) { return f.delta(); }

// Maximal arcs of {x : f(x) != x}, sorted by start, merged across 0.
std::vector<CircArc> support(const Iet& f);
// Maximal arcs of the fixed-point set (translation pieces cannot have
// isolated fixed points).
std::vector<CircArc> fix_set(const Iet& f);

}  // namespace iet
