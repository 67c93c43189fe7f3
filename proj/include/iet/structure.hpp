#pragma once

#include <optional>
#include <vector>

#include "iet/growth.hpp"
#include "iet/iet.hpp"

namespace iet {

bool commutes(const Iet& f, const Iet& g);

struct OrderResult {
  bool finite = false;
  long order = 0;  // when finite
  Certainty certainty = Certainty::Exact;
};

// Exact order for rational-coordinate maps and for maps with some
// d(f^n) = 0, n <= horizon; otherwise Infinite, certified Exact when a
// nonzero homomorphism image (saf) witnesses it.
OrderResult order(const Iet& f, long horizon);

struct ComponentDecomposition {
  struct PeriodicPart {
    std::vector<CircArc> arcs;
    long period = 1;  // Per_j(f) piece: every point has exact period j
  };
  std::vector<PeriodicPart> periodic_parts;
  // f-invariant arc unions; invariance is exact, minimality horizon-checked.
  std::vector<std::vector<CircArc>> minimal_candidates;
  // How f permutes the minimal candidates (identity for f's own components).
  std::vector<int> permutation;
  bool stabilized = false;  // candidate set unchanged under deeper refinement
  long refinement_depth = 0;
};

ComponentDecomposition components(const Iet& f, long horizon);

struct RestrictedRotationForm {
  CircArc rotor_interval;  // [gamma, gamma + beta mod 1)
  Scalar alpha;
  Scalar beta;
  Scalar gamma;  // conjugating rotation: r_{-gamma} f r_{gamma} = r_{alpha,beta}
};

// Some iff the support is a single arc carried by a rotation to [0, beta)
// where f acts as the two-arc swap r_{alpha,beta}.
std::optional<RestrictedRotationForm> detect_restricted_rotation(const Iet& f);

struct BoundedNormalForm {
  long k = 1;
  std::vector<RestrictedRotationForm> rotors;  // pairwise disjoint supports
};

// Normal form for infinite-order maps of bounded growth: smallest
// k <= k_max with power(f,k) a product of restricted rotations on disjoint
// intervals; nullopt when the search is inconclusive (only
// rotation-conjugacies are attempted).
std::optional<BoundedNormalForm> bounded_normal_form(const Iet& f, long horizon,
                                                     long k_max = 64);

// Right-continuous step function sigma: [0,1/n) -> Z/nZ with finitely many
// jumps; induces x -> x + sigma(x mod 1/n)/n, a bijection commuting with
// r_{1/n}. Canonical: breaks[0] = 0, adjacent values distinct.
struct PnElement {
  long n = 1;
  std::vector<Scalar> breaks;
  std::vector<long> values;  // representatives 0..n-1

  Iet to_iet(const BasisPtr& b) const;
  bool operator==(const PnElement& o) const {
    return n == o.n && breaks == o.breaks && values == o.values;
  }
};

// Unique factorization g = p o e with p in P_n and e preserving (and acting
// identically on) every I_j = [(j-1)/n, j/n). Precondition: g commutes with
// r_{1/n}.
std::pair<PnElement, Iet> centralizer_factor(const Iet& g, long n);

// For f = r_alpha with alpha certified irrational: commutes(f,g) <=> g is a
// rotation. Returns the equivalence value for the given g.
bool rotation_centralizer_check(const Iet& f, const Iet& g);

}  // namespace iet
