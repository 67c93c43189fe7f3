#pragma once

#include <random>
#include <set>
#include <vector>

#include "iet/document.hpp"
#include "iet/growth.hpp"
#include "iet/invariants.hpp"
#include "iet/structure.hpp"

namespace iet::testing {

inline BasisPtr basis1() {
  static BasisPtr b = Basis::rationals();
  return b;
}
inline BasisPtr basis2() {
  static BasisPtr b = Basis::with_sqrts({Rational(2)});
  return b;
}
inline BasisPtr basis3() {
  static BasisPtr b = Basis::with_sqrts({Rational(2), Rational(3)});
  return b;
}

// Scalar from rational-string coordinates, padded with zeros.
inline Scalar sc(const BasisPtr& b, const std::vector<std::string>& coords) {
  std::vector<Rational> c;
  for (const auto& s : coords) c.push_back(parse_rational(s));
  c.resize(b->size(), Rational(0));
  return Scalar(b, std::move(c));
}

inline Scalar frac(const BasisPtr& b, long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return Scalar::from_rational(b, r);
}

inline Iet rot(const BasisPtr& b, long p, long q) { return Iet::rotation(b, frac(b, p, q)); }

inline Scalar sqrt2(const BasisPtr& b) { return Scalar::multiple_of(b, 1, 1); }
inline Scalar sqrt3(const BasisPtr& b) { return Scalar::multiple_of(b, 2, 1); }

// Rotation by an irrational sqrt(2)-1 over basis2 or basis3.
inline Iet irrational_rotation(const BasisPtr& b) {
  return Iet::rotation(b, Scalar::multiple_of(b, 1, 1) - Scalar::one(b));
}

// Restricted rotation placed at gamma: rotate [gamma, gamma+beta) by alpha.
inline Iet rotor_at(const BasisPtr& b, const Scalar& gamma, const Scalar& alpha,
                    const Scalar& beta) {
  Iet base = Iet::restricted_rotation(alpha, beta);
  if (gamma.is_zero()) return base;
  return conjugate(base, Iet::rotation(b, gamma));
}

// 3-interval map with linear growth of slope 2: pi = (3,2,1),
// breakpoints beta1 = sqrt(2)/2, beta2 = (1+sqrt(3))/3.
inline Iet linear_slope2_map() {
  BasisPtr b = basis3();
  Scalar beta1 = sc(b, {"0", "1/2", "0"});
  Scalar beta2 = sc(b, {"1/3", "0", "1/3"});
  PiLambda data;
  data.pi = {3, 2, 1};
  data.lambda = {beta1, beta2 - beta1, Scalar::one(b) - beta2};
  return Iet::from_pi_lambda(data);
}

// 3-interval map with nonresolving fundamental discontinuities at alpha and
// alpha+beta: pi = (3,2,1), lambda = (alpha, beta, 1-alpha-beta).
inline Iet interleaved_three_cut_map() {
  BasisPtr b = basis3();
  Scalar alpha = sc(b, {"-1", "1", "0"});     // sqrt(2)-1
  Scalar beta = sc(b, {"-3/2", "0", "1"});    // sqrt(3)-3/2
  PiLambda data;
  data.pi = {3, 2, 1};
  data.lambda = {alpha, beta, Scalar::one(b) - alpha - beta};
  return Iet::from_pi_lambda(data);
}

// Product of two restricted irrational rotations: by gamma on [0,1/2) and by
// delta on [1/2,1); fundamental discontinuities at 1/2-gamma and 1-delta,
// both eventually resolving.
inline Iet disjoint_rotor_product() {
  BasisPtr b = basis3();
  Scalar gamma = sc(b, {"0", "1/4", "0"});  // sqrt(2)/4
  Scalar delta = sc(b, {"0", "0", "1/4"});  // sqrt(3)/4
  Scalar half = frac(b, 1, 2);
  Iet left = Iet::restricted_rotation(gamma, half);
  Iet right = rotor_at(b, half, delta, half);
  return compose(left, right);
}

// r_{1/2} composed with a rotor on [0,1/2): swaps the two halves, and its
// square is the product of equal rotors on each half (k = 2 normal form).
inline Iet swap_example() {
  BasisPtr b = basis2();
  Scalar gamma = sc(b, {"0", "1/4"});  // sqrt(2)/4
  Iet g0 = Iet::restricted_rotation(gamma, frac(b, 1, 2));
  return compose(rot(b, 1, 2), g0);
}

inline long d_oracle(const Iet& f, long n) { return power(f, n).d(); }

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long seed) : gen(seed) {}

  long uniform(long lo, long hi) {  // inclusive
    return std::uniform_int_distribution<long>(lo, hi)(gen);
  }

  Rational rational(long den_max) {
    long q = uniform(2, den_max);
    long p = uniform(0, q - 1);
    Rational r(p, q);
    r.canonicalize();
    return r;
  }

  // Random point of [0,1) with small rational coordinates over b.
  Scalar scalar01(const BasisPtr& b, bool irrational_parts = true) {
    std::vector<Rational> c(b->size(), Rational(0));
    c[0] = rational(64);
    if (irrational_parts) {
      for (int i = 1; i < b->size(); ++i) {
        if (uniform(0, 2) == 0) continue;  // keep some coordinates zero
        long q = uniform(2, 16);
        long p = uniform(-q, q);
        c[i] = Rational(p, q);
        c[i].canonicalize();
      }
    }
    return Scalar(b, std::move(c)).mod_one();
  }

  std::vector<int> permutation(int n) {
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 1);
    std::shuffle(pi.begin(), pi.end(), gen);
    return pi;
  }

  // Random IET with n_min..n_max intervals; quadratic coordinates when the
  // basis has irrational generators.
  Iet iet(const BasisPtr& b, int n_min = 2, int n_max = 5, bool irrational_parts = true) {
    int n = static_cast<int>(uniform(n_min, n_max));
    std::vector<Scalar> cuts;
    std::set<std::vector<Rational>> seen;
    const Scalar zero = Scalar::zero(b);
    while (static_cast<int>(cuts.size()) < n - 1) {
      Scalar x = scalar01(b, irrational_parts);
      if (x.is_zero()) continue;
      if (!seen.insert(x.coords()).second) continue;
      cuts.push_back(std::move(x));
    }
    std::sort(cuts.begin(), cuts.end());
    PiLambda data;
    data.pi = permutation(n);
    Scalar prev = zero;
    for (const Scalar& c : cuts) {
      data.lambda.push_back(c - prev);
      prev = c;
    }
    data.lambda.push_back(Scalar::one(b) - prev);
    return Iet::from_pi_lambda(data);
  }

  Iet rational_iet(const BasisPtr& b, int n_min = 2, int n_max = 5) {
    return iet(b, n_min, n_max, false);
  }

  Iet rotation(const BasisPtr& b, bool irrational = true) {
    return Iet::rotation(b, scalar01(b, irrational));
  }

  // Random IET with d(g) >= 1.
  Iet non_rotation(const BasisPtr& b) {
    for (;;) {
      Iet g = iet(b, 3, 5);
      if (g.d() > 0) return g;
    }
  }

  // Random element of P_n: canonical step function on [0, 1/n).
  PnElement pn_element(const BasisPtr& b, long n, int pieces_max = 4) {
    PnElement p;
    p.n = n;
    int pieces = static_cast<int>(uniform(1, pieces_max));
    std::set<std::vector<Rational>> seen;
    std::vector<Scalar> breaks{Scalar::zero(b)};
    Rational inv_n(1, n);
    while (static_cast<int>(breaks.size()) < pieces) {
      Scalar u = scalar01(b).scaled(inv_n);
      if (u.is_zero()) continue;
      if (!seen.insert(u.coords()).second) continue;
      breaks.push_back(std::move(u));
    }
    std::sort(breaks.begin(), breaks.end());
    long prev = -1;
    for (const Scalar& u : breaks) {
      long v = uniform(0, n - 1);
      while (v == prev) v = uniform(0, n - 1);  // canonical: neighbors differ
      p.breaks.push_back(u);
      p.values.push_back(v);
      prev = v;
    }
    if (p.values.size() == 1 && p.values[0] == 0 && uniform(0, 1) == 0) p.values[0] = 1;
    return p;
  }

  // Random element of the diagonal subgroup: one IET copied into every I_j.
  // Arcs of h wrapping past 1 become interior wraps of each cell, so they
  // are split at the wrap point with displacement t - 1.
  Iet diagonal_element(const BasisPtr& b, long n) {
    Iet h = iet(b, 2, 4);
    Rational inv_n(1, n);
    const Scalar one = Scalar::one(b);
    std::vector<Scalar> cuts, trans;
    for (long j = 0; j < n; ++j) {
      Scalar base = Scalar::from_rational(b, make_frac(j, n));
      for (int i = 0; i < h.arc_count(); ++i) {
        const Scalar& c = h.cuts()[i];
        Scalar cend = (i + 1 < h.arc_count()) ? h.cuts()[i + 1] : one;
        const Scalar& t = h.trans()[i];
        cuts.push_back(base + c.scaled(inv_n));
        if (t.is_zero()) {
          trans.push_back(Scalar::zero(b));
          continue;
        }
        Scalar w = one - t;
        if (w <= c) {
          trans.push_back((t - one).scaled(inv_n).mod_one());
        } else if (w >= cend) {
          trans.push_back(t.scaled(inv_n));
        } else {
          trans.push_back(t.scaled(inv_n));
          cuts.push_back(base + w.scaled(inv_n));
          trans.push_back((t - one).scaled(inv_n).mod_one());
        }
      }
    }
    return Iet::from_cuts(b, std::move(cuts), std::move(trans));
  }
};

}  // namespace iet::testing
