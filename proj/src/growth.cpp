#include "iet/growth.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace iet {

namespace {

// Cycle length, in the permutation of the 1/q grid cells induced by a
// rational-coordinate map, of the cell containing x. Every point of a cell
// has exactly this period.
long rational_point_period(const Iet& f, const Scalar& x) {
  Integer q = 1;
  for (const Scalar& c : f.cuts()) q = lcm(q, c.rational_part().get_den());
  for (const Scalar& t : f.trans()) q = lcm(q, t.rational_part().get_den());
  if (!q.fits_slong_p())
    throw std::invalid_argument("rational coordinate denominators too large for grid analysis");
  long qi = static_cast<long>(q.get_si());
  auto cell_of = [&](const Rational& v) {
    return static_cast<long>(Integer(floor_int(v * Rational(q))).get_si());
  };
  auto cell_shift = [&](long cell) {
    Rational p(cell, qi);
    p.canonicalize();
    const Scalar& t = f.trans_at(Scalar::from_rational(f.basis(), p));
    long s = cell + cell_of(t.rational_part());
    return s % qi;
  };
  long start = cell_of(x.rational_part());
  long cur = cell_shift(start);
  long len = 1;
  while (cur != start) {
    cur = cell_shift(cur);
    ++len;
  }
  return len;
}

}  // namespace

OrbitPair make_orbit_pair(const Iet& f, const Scalar& x) {
  OrbitPair p{x, 0, x, x, {}};
  if (f.is_discontinuity(x)) {
    p.hit_log.push_back({0, true, f.arc_index(x)});
    p.hit_log.push_back({0, false, f.arc_index(x)});
  }
  return p;
}

OrbitPair advance(const Iet& f, OrbitPair pair) {
  pair.right = f.right(pair.right);
  pair.left = f.left(pair.left);
  pair.step += 1;
  if (f.is_discontinuity(pair.right))
    pair.hit_log.push_back({pair.step, true, f.arc_index(pair.right)});
  if (f.is_discontinuity(pair.left))
    pair.hit_log.push_back({pair.step, false, f.arc_index(pair.left)});
  return pair;
}

std::vector<Scalar> DiscontinuityReport::D_np() const {
  std::vector<Scalar> out;
  for (size_t i = 0; i < D.size(); ++i)
    if (!status[i].periodic) out.push_back(D[i]);
  return out;
}

std::vector<Scalar> DiscontinuityReport::D_F() const {
  std::vector<Scalar> out;
  for (size_t i = 0; i < D.size(); ++i)
    if (status[i].fundamental) out.push_back(D[i]);
  return out;
}

DiscontinuityReport discontinuity_report(const Iet& f, long horizon, long window) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (window <= 0) window = std::max<long>(1, horizon / 10);
  if (window >= horizon) window = horizon - 1;
  DiscontinuityReport rep;
  rep.horizon = horizon;
  rep.window = std::max<long>(window, 1);
  rep.D = f.discontinuities();
  const long m = static_cast<long>(rep.D.size());
  if (m == 0) return rep;
  const Iet finv = inverse(f);
  const bool rational = f.has_rational_coordinates();

  for (const Scalar& x : rep.D) {
    DiscontinuityStatus st{x};

    // Periodicity and the D-points visited by the forward orbit.
    std::set<int> forward_hits;  // arc indices of D-points met, x included
    forward_hits.insert(f.arc_index(x));
    if (rational) {
      st.periodic = true;
      st.periodic_certainty = Certainty::Exact;
      st.period = rational_point_period(f, x);
    } else {
      Scalar y = x;
      for (long i = 1; i <= horizon; ++i) {
        y = f.right(y);
        if (y == x) {
          st.periodic = true;
          st.periodic_certainty = Certainty::Exact;
          st.period = i;
          break;
        }
        if (f.is_discontinuity(y)) forward_hits.insert(f.arc_index(y));
      }
    }

    // Backward chain c(x).
    bool back_hit = false;
    {
      Scalar y = x;
      long clean = 0;
      for (long i = 1; i <= horizon; ++i) {
        y = finv.right(y);
        if (f.is_discontinuity(y)) {
          back_hit = true;
          break;
        }
        ++clean;
      }
      st.chain_length = clean;
    }

    // Fundamentality. A backward hit disproves it exactly; a clean chain to
    // the horizon together with the maximum possible number of D-incidences
    // on the orbit (injectivity: a nonperiodic orbit meets D at most |D|
    // times) certifies it.
    if (st.periodic) {
      st.fundamental = false;
      st.fundamental_certainty = st.periodic_certainty;
    } else if (back_hit) {
      st.fundamental = false;
      st.fundamental_certainty = Certainty::Exact;
    } else {
      st.fundamental = true;
      if (static_cast<long>(forward_hits.size()) == m) {
        st.chain_certified_infinite = true;
        st.fundamental_certainty = Certainty::Exact;
      } else {
        st.fundamental_certainty = Certainty::HorizonStable;
      }
    }

    // Orbit-pair resolution over the horizon.
    OrbitPair pair = make_orbit_pair(f, x);
    for (long i = 0; i < horizon; ++i) pair = advance(f, pair);
    long last_hit = 0;
    for (const auto& h : pair.hit_log)
      if (h.step >= 1) last_hit = std::max(last_hit, h.step);
    st.last_pair_hit = last_hit;
    if (last_hit > horizon - rep.window) {
      st.resolution = Resolution::Unknown;
      st.resolution_step = last_hit;
    } else if (pair.split()) {
      st.resolution = Resolution::Nonresolving;
      st.resolution_step = last_hit + 1;
    } else {
      st.resolution = Resolution::Resolving;
      st.resolution_step = last_hit + 1;
    }

    rep.status.push_back(std::move(st));
  }
  return rep;
}

std::vector<long> growth_series(const Iet& f, long N) {
  if (N < 1) throw std::invalid_argument("series length must be >= 1");
  std::vector<Scalar> D = f.discontinuities();
  const long m = static_cast<long>(D.size());
  std::vector<long> series(static_cast<size_t>(N) + 1, 0);  // series[n], n = 1..N
  if (m == 0) {
    series.erase(series.begin());
    return series;
  }
  const Iet finv = inverse(f);

  for (const Scalar& x : D) {
    // split_x(n) = [f_+^n(x) != f_-^n(x)] as prefix sums.
    std::vector<long> split_prefix(static_cast<size_t>(N) + 1, 0);
    Scalar r = x, l = x;
    for (long n = 1; n <= N; ++n) {
      r = f.right(r);
      l = f.left(l);
      split_prefix[n] = split_prefix[n - 1] + (r != l ? 1 : 0);
    }
    // c(x): clean backward steps before the first D(f) hit, capped at N-1.
    long c = 0;
    {
      Scalar y = x;
      for (long i = 1; i <= N - 1; ++i) {
        y = finv.right(y);
        if (f.is_discontinuity(y)) break;
        ++c;
      }
    }
    // d(f^n) contribution: the points f^{-i}(x), 0 <= i <= min(n-1, c), are
    // exactly those whose f^n-continuity is controlled by x; f^n is
    // discontinuous at f^{-i}(x) iff split_x(n-i).
    for (long n = 1; n <= N; ++n) {
      long lo = n - std::min(n - 1, c);  // smallest split argument counted
      series[n] += split_prefix[n] - split_prefix[lo - 1];
    }
  }
  series.erase(series.begin());
  return series;
}

GrowthVerdict classify_growth(const Iet& f, long horizon, long window) {
  if (horizon < 2) throw std::invalid_argument("horizon must be >= 2");
  if (window < 1 || window >= horizon) throw std::invalid_argument("window must satisfy 0 < window < horizon");

  GrowthVerdict v;
  v.horizon = horizon;
  v.window = window;

  // Continuous maps are rotations: d(f^n) = 0 for all n, provably.
  if (f.d() == 0) {
    v.kind = GrowthVerdict::Kind::Bounded;
    v.bound = 0;
    v.n0 = 1;
    v.certainty = Certainty::Exact;
    v.series_checked_to = horizon;
    return v;
  }

  std::vector<long> series = growth_series(f, horizon);
  v.series_checked_to = horizon;
  long max_d = *std::max_element(series.begin(), series.end());

  // Rational coordinates give finite order outright (grid permutation).
  if (f.has_rational_coordinates()) {
    v.kind = GrowthVerdict::Kind::Bounded;
    v.bound = max_d;
    v.n0 = 1;
    v.certainty = Certainty::Exact;
    return v;
  }

  // d(f^n) = 0 forces f^n to be a rotation; with D(f) nonempty its angle is
  // rational (an irrational rotation would make f itself a rotation), so f
  // has finite order and the series is periodic: exact bounded verdict.
  for (long n = 1; n <= horizon; ++n) {
    if (series[n - 1] != 0) continue;
    Scalar g = Scalar::zero(f.basis());
    for (long i = 0; i < n; ++i) g = f.right(g);
    if (g.is_rational()) {
      v.kind = GrowthVerdict::Kind::Bounded;
      v.bound = max_d;
      v.n0 = 1;
      v.certainty = Certainty::Exact;
      return v;
    }
    break;
  }

  DiscontinuityReport rep = discontinuity_report(f, horizon, window);
  long k = 0;
  long n0 = 1;
  bool unknown = false;
  for (const auto& st : rep.status) {
    if (!st.fundamental) continue;
    v.witnesses.push_back(st);
    switch (st.resolution) {
      case Resolution::Unknown:
        unknown = true;
        break;
      case Resolution::Nonresolving:
        ++k;
        n0 = std::max(n0, st.resolution_step);
        break;
      case Resolution::Resolving:
        n0 = std::max(n0, st.resolution_step);
        break;
    }
  }
  if (unknown) {
    v.kind = GrowthVerdict::Kind::Undetermined;
    return v;
  }
  if (k == 0) {
    v.kind = GrowthVerdict::Kind::Bounded;
    v.bound = max_d;
    v.n0 = n0;
    v.certainty = Certainty::HorizonStable;
    return v;
  }
  // Linear pattern must hold on the final window: d(f^n) - k*n constant.
  long c0 = series[horizon - 1] - k * horizon;
  for (long n = horizon - window; n <= horizon; ++n) {
    if (series[n - 1] - k * n != c0) {
      v.kind = GrowthVerdict::Kind::Undetermined;
      return v;
    }
  }
  v.kind = GrowthVerdict::Kind::Linear;
  v.k = k;
  v.n0 = n0;
  v.certainty = Certainty::HorizonStable;
  return v;
}

std::optional<long> stabilization_time(const Iet& f, long horizon, long window) {
  if (window < 1 || window >= horizon) throw std::invalid_argument("window must satisfy 0 < window < horizon");
  DiscontinuityReport rep = discontinuity_report(f, horizon, window);
  long last_hit = 0;
  for (const auto& st : rep.status) {
    if (!st.fundamental) continue;
    last_hit = std::max(last_hit, st.last_pair_hit);
  }
  if (last_hit > horizon - window) return std::nullopt;
  return last_hit + 1;
}

}  // namespace iet
