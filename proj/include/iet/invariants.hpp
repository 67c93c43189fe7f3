#pragma once

#include <optional>
#include <vector>

#include "iet/iet.hpp"

namespace iet {

// The scissors invariant phi(f) = sum_i lambda_i /\_Q omega_i held as an
// antisymmetric rational matrix over the basis generators; entry (i,j) is
// the coefficient of g_i /\ g_j. Comparable only within one Basis.
class SafInvariant {
 public:
  explicit SafInvariant(BasisPtr basis);

  const BasisPtr& basis() const { return basis_; }
  const Rational& entry(int i, int j) const;
  void add_wedge(const std::vector<Rational>& v, const std::vector<Rational>& w,
                 const Rational& weight);

  bool is_zero() const;
  SafInvariant operator+(const SafInvariant& o) const;
  SafInvariant operator-() const;
  bool operator==(const SafInvariant& o) const;
  bool operator!=(const SafInvariant& o) const { return !(*this == o); }

  // Entries (i, j, value) with i < j and value != 0.
  std::vector<std::tuple<int, int, Rational>> sparse() const;

 private:
  BasisPtr basis_;
  std::vector<std::vector<Rational>> m_;
};

// phi(f): arcs are split at their wrap point so each piece carries its real
// displacement (the omega of a (pi,lambda) presentation); normalized so that
// phi(r_alpha) = 1 /\ alpha.
SafInvariant saf(const Iet& f);

// saf(f o g) == saf(f) + saf(g); holds for every pair.
bool saf_is_homomorphic_check(const Iet& f, const Iet& g);

// phi_{i,p}(f) = P_i(f(p) - p), the g_i-coordinate of the displacement at p,
// with the stored mod-1 translation as the representative. Convention-free
// for i >= 1; the integer ambiguity lives in coordinate 0 only.
Rational cocycle(const Iet& f, int gen_index, const Scalar& p);

struct WordBound {
  std::vector<Iet> generators;
  long M_disc = 0;      // max d(g) over generators
  Rational M_coc = 0;   // max |P_i(translation)| over generators and arcs
  int index = -1;       // cocycle generator index used, -1 if none
  int requested_index = -1;
  bool index_was_substituted = false;  // requested index had zero trend

  struct Entry {
    long n;
    long bound;          // certified lower bound on |f^n|_S
    bool from_cocycle;   // which ingredient achieved it
  };
  std::vector<Entry> bounds;
  bool no_bound_available = false;
};

// Lower bounds |f^n|_S >= max(ceil(d(f^n)/M_disc), ceil(|phi_{i,0}(f^n)|/M_coc))
// for n = 1..N. Exact in both ingredients, hence valid for every n.
WordBound undistortion_bounds(const std::vector<Iet>& S, const Iet& f, long N,
                              std::optional<int> gen_index);

}  // namespace iet
