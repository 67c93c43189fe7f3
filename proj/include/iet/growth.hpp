#pragma once

#include <optional>
#include <vector>

#include "iet/iet.hpp"

namespace iet {

enum class Certainty { Exact, HorizonStable };

// Tracked pair (f_+^n(x), f_-^n(x)) for a discontinuity x of f.
struct OrbitPair {
  Scalar origin;
  long step = 0;
  Scalar right;
  Scalar left;

  struct Hit {
    long step;
    bool right_side;  // which side landed on a cut
    int cut_index;    // arc index in f.cuts()
  };
  std::vector<Hit> hit_log;

  bool split() const { return right != left; }
};

OrbitPair make_orbit_pair(const Iet& f, const Scalar& x);
// One step: right <- f_+(right), left <- f_-(left); logs D(f) hits at the new step.
OrbitPair advance(const Iet& f, OrbitPair pair);

enum class Resolution { Resolving, Nonresolving, Unknown };

struct DiscontinuityStatus {
  Scalar point;
  bool periodic = false;
  long period = 0;                 // exact period when periodic
  Certainty periodic_certainty = Certainty::HorizonStable;
  bool fundamental = false;        // no f^{-i}(x) lies in D(f)
  Certainty fundamental_certainty = Certainty::HorizonStable;
  long chain_length = 0;           // c(x): clean backward steps before a D(f) hit
  bool chain_certified_infinite = false;
  Resolution resolution = Resolution::Unknown;
  long resolution_step = 0;        // merged at / split since this step
  long last_pair_hit = 0;          // last step <= horizon where a side met D(f)
};

struct DiscontinuityReport {
  std::vector<Scalar> D;
  std::vector<DiscontinuityStatus> status;  // aligned with D
  long horizon = 0;
  long window = 0;

  std::vector<Scalar> D_np() const;
  std::vector<Scalar> D_F() const;  // fundamental at the report's certainty level
};

// window = 0 picks max(1, horizon/10); hits inside the final window leave a
// pair's resolution Unknown.
DiscontinuityReport discontinuity_report(const Iet& f, long horizon, long window = 0);

struct GrowthVerdict {
  enum class Kind { Bounded, Linear, Undetermined };
  Kind kind = Kind::Undetermined;
  long k = 0;       // slope for Linear
  long bound = 0;   // observed max for Bounded
  long n0 = 0;      // stabilization time when determined
  Certainty certainty = Certainty::HorizonStable;
  long window = 0;
  long horizon = 0;
  long series_checked_to = 0;
  std::vector<DiscontinuityStatus> witnesses;
};

// Exact values d(f^n) for n = 1..N via the backward-chain decomposition;
// O(|D(f)| * N) scalar steps, equal to d(power(f,n)) for every n.
std::vector<long> growth_series(const Iet& f, long N);

GrowthVerdict classify_growth(const Iet& f, long horizon, long window);

// Least n0 <= horizon after which no fundamental orbit pair meets D(f);
// nullopt when hits persist into the final window.
std::optional<long> stabilization_time(const Iet& f, long horizon, long window);

}  // namespace iet
