#include "iet/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "iet/invariants.hpp"

namespace iet {

namespace {

// Sort by start and merge abutting arcs, including across 0.
std::vector<CircArc> normalize_arcs(const BasisPtr& b, std::vector<CircArc> arcs) {
  if (arcs.empty()) return arcs;
  std::sort(arcs.begin(), arcs.end(),
            [](const CircArc& x, const CircArc& y) { return x.start < y.start; });
  const Scalar one = Scalar::one(b);
  std::vector<CircArc> out;
  for (auto& a : arcs) {
    if (!out.empty() && out.back().start + out.back().length == a.start)
      out.back().length = out.back().length + a.length;
    else
      out.push_back(std::move(a));
  }
  if (out.size() >= 2 && out.front().start.is_zero() &&
      out.back().start + out.back().length == one) {
    out.back().length = out.back().length + out.front().length;
    out.erase(out.begin());
  }
  // The full circle has no distinguished start; put it at 0.
  if (out.size() == 1 && out[0].length == one) out[0].start = Scalar::zero(b);
  return out;
}

// Exact image f(U) of a finite union of arcs, normalized.
std::vector<CircArc> image_of_union(const Iet& f, const std::vector<CircArc>& arcs) {
  std::vector<CircArc> pieces;
  for (const CircArc& a : arcs) {
    // Split [start, start+length) at the cuts of f it contains.
    Scalar pos = a.start;
    Scalar remaining = a.length;
    const Scalar zero = Scalar::zero(f.basis());
    while (remaining > zero) {
      int idx = f.arc_index(pos);
      Scalar arc_end = (idx + 1 < f.arc_count()) ? f.cuts()[idx + 1] : Scalar::one(f.basis());
      Scalar step = arc_end - pos;
      if (remaining < step) step = remaining;
      pieces.push_back(CircArc{f.right(pos), step});
      remaining = remaining - step;
      pos = (pos + step).mod_one();
    }
  }
  return normalize_arcs(f.basis(), pieces);
}

// f restricted to an invariant region, extended by the identity.
Iet restrict_to(const Iet& f, const std::vector<CircArc>& region) {
  const BasisPtr& b = f.basis();
  const Scalar zero = Scalar::zero(b);
  const Scalar one = Scalar::one(b);
  std::vector<Scalar> pts{zero};
  for (const CircArc& a : region) {
    pts.push_back(a.start);
    Scalar e = a.end();
    if (!e.is_zero()) pts.push_back(e);
  }
  for (const Scalar& c : f.cuts()) pts.push_back(c);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto in_region = [&](const Scalar& x) {
    for (const CircArc& a : region)
      if (a.contains(x)) return true;
    return false;
  };
  std::vector<Scalar> trans;
  trans.reserve(pts.size());
  for (const Scalar& p : pts) trans.push_back(in_region(p) ? f.trans_at(p) : zero);
  return Iet::from_cuts(b, std::move(pts), std::move(trans));
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Index j with j/n <= x < (j+1)/n.
long interval_index(const Scalar& x, long n) {
  const BasisPtr& b = x.basis();
  long lo = 0, hi = n - 1;
  while (lo < hi) {
    long mid = (lo + hi + 1) / 2;
    if (Scalar::from_rational(b, make_frac(mid, n)) <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// Least j <= horizon with f^j identical on U, via the zero entries of the
// exact growth series of the restriction (a continuous IET fixing the
// complement of U is the identity; for U the whole circle, a rotation whose
// angle decides the period).
std::optional<long> pointwise_period(const Iet& f, const std::vector<CircArc>& region,
                                     long horizon) {
  const BasisPtr& b = f.basis();
  const Scalar one = Scalar::one(b);
  Scalar total = Scalar::zero(b);
  for (const CircArc& a : region) total = total + a.length;
  const bool full_circle = total == one;

  Iet g = full_circle ? f : restrict_to(f, region);
  if (g.is_identity()) return 1;
  if (g.d() == 0) {
    // Rotation: periodic iff the angle is rational.
    const Scalar& gamma = g.trans()[0];
    if (!gamma.is_rational()) return std::nullopt;
    long q = static_cast<long>(gamma.rational_part().get_den().get_si());
    return q <= horizon ? std::optional<long>(q) : std::nullopt;
  }
  std::vector<long> series = growth_series(g, horizon);
  for (long n = 1; n <= horizon; ++n) {
    if (series[n - 1] != 0) continue;
    if (!full_circle) return n;
    Scalar p = Scalar::zero(b);
    for (long i = 0; i < n; ++i) p = g.right(p);
    if (p.is_zero()) return n;
    if (!p.is_rational()) return std::nullopt;
    long q = static_cast<long>(p.rational_part().get_den().get_si());
    return n * q <= horizon ? std::optional<long>(n * q) : std::nullopt;
  }
  return std::nullopt;
}

ComponentDecomposition grid_decomposition(const Iet& f) {
  Integer q = 1;
  for (const Scalar& c : f.cuts()) q = lcm(q, c.rational_part().get_den());
  for (const Scalar& t : f.trans()) q = lcm(q, t.rational_part().get_den());
  if (!q.fits_slong_p())
    throw std::invalid_argument("rational coordinate denominators too large for grid analysis");
  const long qi = static_cast<long>(q.get_si());
  const BasisPtr& b = f.basis();
  auto cell_point = [&](long c) {
    Rational p(c, qi);
    p.canonicalize();
    return Scalar::from_rational(b, p);
  };
  std::vector<long> shift(qi);
  for (long c = 0; c < qi; ++c) {
    Rational t = f.trans_at(cell_point(c)).rational_part();
    shift[c] = static_cast<long>(Integer(t.get_num() * (q / t.get_den())).get_si());
  }
  std::vector<long> period(qi, 0);
  for (long c = 0; c < qi; ++c) {
    if (period[c]) continue;
    std::vector<long> cycle{c};
    long cur = (c + shift[c]) % qi;
    while (cur != c) {
      cycle.push_back(cur);
      cur = (cur + shift[cur]) % qi;
    }
    for (long v : cycle) period[v] = static_cast<long>(cycle.size());
  }
  // Merge consecutive cells of equal period into arcs, grouped by period.
  std::map<long, std::vector<CircArc>> parts;
  long run_start = 0;
  for (long c = 1; c <= qi; ++c) {
    if (c < qi && period[c] == period[run_start]) continue;
    Scalar start = cell_point(run_start);
    Scalar len = Scalar::from_rational(b, make_frac(c - run_start, qi));
    parts[period[run_start]].push_back(CircArc{start, len});
    run_start = c;
  }
  ComponentDecomposition out;
  out.stabilized = true;
  for (auto& [j, arcs] : parts)
    out.periodic_parts.push_back({normalize_arcs(b, std::move(arcs)), j});
  return out;
}

}  // namespace

bool commutes(const Iet& f, const Iet& g) { return compose(f, g) == compose(g, f); }

OrderResult order(const Iet& f, long horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (f.d() == 0) {
    const Scalar& gamma = f.trans()[0];
    if (gamma.is_rational()) {
      long q = static_cast<long>(gamma.rational_part().get_den().get_si());
      return {true, q, Certainty::Exact};
    }
    return {false, 0, Certainty::Exact};  // irrational rotation
  }
  if (f.has_rational_coordinates()) {
    ComponentDecomposition dec = grid_decomposition(f);
    long o = 1;
    for (const auto& part : dec.periodic_parts) o = std::lcm(o, part.period);
    return {true, o, Certainty::Exact};
  }
  std::vector<long> series = growth_series(f, horizon);
  for (long n = 1; n <= horizon; ++n) {
    if (series[n - 1] != 0) continue;
    // f^n is a rotation; its angle settles the order.
    Scalar p = Scalar::zero(f.basis());
    for (long i = 0; i < n; ++i) p = f.right(p);
    if (p.is_zero()) return {true, n, Certainty::Exact};
    if (!p.is_rational()) return {false, 0, Certainty::Exact};
    long q = static_cast<long>(p.rational_part().get_den().get_si());
    // order = q*s for the smallest divisor s of n with power(f, q*s) = id.
    for (long s = 1; s <= n; ++s) {
      if (n % s != 0) continue;
      if (power(f, q * s).is_identity()) return {true, q * s, Certainty::Exact};
    }
    throw std::logic_error("finite order certified but not found");
  }
  if (!saf(f).is_zero()) return {false, 0, Certainty::Exact};
  return {false, 0, Certainty::HorizonStable};
}

ComponentDecomposition components(const Iet& f, long horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const BasisPtr& b = f.basis();
  if (f.has_rational_coordinates()) return grid_decomposition(f);

  const Scalar one = Scalar::one(b);
  const Iet finv = inverse(f);

  std::vector<Scalar> pts = f.cuts();
  std::vector<Scalar> layer = f.cuts();
  long depth_done = 0;

  auto refine_to = [&](long h) {
    for (long i = depth_done + 1; i <= h; ++i) {
      for (Scalar& x : layer) x = finv.right(x);
      pts.insert(pts.end(), layer.begin(), layer.end());
    }
    depth_done = std::max(depth_done, h);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  };

  ComponentDecomposition prev;
  bool have_prev = false;
  long h = 1;
  for (;;) {
    refine_to(h);
    const int M = static_cast<int>(pts.size());
    auto arc_end = [&](int i) { return (i + 1 < M) ? pts[i + 1] : one; };
    auto point_arc = [&](const Scalar& x) {
      int lo = 0, hi = M - 1;
      while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (pts[mid] <= x)
          lo = mid;
        else
          hi = mid - 1;
      }
      return lo;
    };
    UnionFind uf(M);
    for (int i = 0; i < M; ++i) {
      // Walk the image of arc i across the refined arcs it meets.
      Scalar pos = f.right(pts[i]);
      Scalar remaining = arc_end(i) - pts[i];
      const Scalar zero = Scalar::zero(b);
      while (remaining > zero) {
        int j = point_arc(pos);
        uf.unite(i, j);
        Scalar step = arc_end(j) - pos;
        if (remaining < step) step = remaining;
        remaining = remaining - step;
        pos = (pos + step).mod_one();
      }
    }
    std::map<int, std::vector<CircArc>> classes;
    for (int i = 0; i < M; ++i)
      classes[uf.find(i)].push_back(CircArc{pts[i], arc_end(i) - pts[i]});

    ComponentDecomposition cur;
    cur.refinement_depth = h;
    long needed_depth = h;
    std::map<long, std::vector<CircArc>> periodic_by_period;
    for (auto& [root, arcs] : classes) {
      std::vector<CircArc> region = normalize_arcs(b, std::move(arcs));
      if (auto j = pointwise_period(f, region, horizon)) {
        for (const CircArc& a : region) periodic_by_period[*j].push_back(a);
        needed_depth = std::max(needed_depth, *j - 1);
      } else {
        cur.minimal_candidates.push_back(std::move(region));
      }
    }
    for (auto& [j, arcs] : periodic_by_period)
      cur.periodic_parts.push_back({normalize_arcs(b, std::move(arcs)), j});

    bool same = false;
    if (have_prev) {
      same = prev.minimal_candidates == cur.minimal_candidates &&
             prev.periodic_parts.size() == cur.periodic_parts.size();
      if (same)
        for (size_t i = 0; i < cur.periodic_parts.size(); ++i)
          same = same && prev.periodic_parts[i].arcs == cur.periodic_parts[i].arcs &&
                 prev.periodic_parts[i].period == cur.periodic_parts[i].period;
    }
    if ((same && h >= needed_depth) || h >= horizon) {
      cur.stabilized = same;
      // Invariance is exact by construction; verify and fill the permutation.
      for (size_t i = 0; i < cur.minimal_candidates.size(); ++i) {
        if (image_of_union(f, cur.minimal_candidates[i]) != cur.minimal_candidates[i])
          throw std::logic_error("component candidate is not exactly invariant");
        cur.permutation.push_back(static_cast<int>(i));
      }
      return cur;
    }
    prev = std::move(cur);
    have_prev = true;
    h = std::min(std::max({2 * h, needed_depth, h + 1}), horizon);
  }
}

std::optional<RestrictedRotationForm> detect_restricted_rotation(const Iet& f) {
  const BasisPtr& b = f.basis();
  std::vector<CircArc> sup = support(f);
  if (sup.size() != 1) return std::nullopt;
  const Scalar& gamma = sup[0].start;
  const Scalar& beta = sup[0].length;
  Iet g = gamma.is_zero() ? f : conjugate(f, Iet::rotation(b, -gamma));
  Scalar alpha = g.right(Scalar::zero(b));
  const Scalar zero = Scalar::zero(b);
  if (!(zero < alpha) || !(alpha < beta)) return std::nullopt;
  if (g != Iet::restricted_rotation(alpha, beta)) return std::nullopt;
  return RestrictedRotationForm{sup[0], alpha, beta, gamma};
}

namespace {

Iet rotor_iet(const RestrictedRotationForm& r, const BasisPtr& b) {
  Iet base = Iet::restricted_rotation(r.alpha, r.beta);
  if (r.gamma.is_zero()) return base;
  return conjugate(base, Iet::rotation(b, r.gamma));
}

}  // namespace

std::optional<BoundedNormalForm> bounded_normal_form(const Iet& f, long horizon, long k_max) {
  OrderResult ord = order(f, horizon);
  if (ord.finite) throw std::invalid_argument("bounded_normal_form requires an infinite-order map");
  GrowthVerdict gv = classify_growth(f, horizon, std::max<long>(1, horizon / 10));
  if (gv.kind != GrowthVerdict::Kind::Bounded)
    throw std::invalid_argument("bounded_normal_form requires certified bounded growth");

  const BasisPtr& b = f.basis();
  for (long k = 1; k <= k_max; ++k) {
    Iet g = power(f, k);
    ComponentDecomposition dec = components(g, horizon);
    bool ok = !dec.minimal_candidates.empty();
    for (const auto& part : dec.periodic_parts)
      if (part.period != 1) ok = false;  // g must fix everything off the rotors
    std::vector<RestrictedRotationForm> rotors;
    if (ok) {
      for (const auto& region : dec.minimal_candidates) {
        auto rr = detect_restricted_rotation(restrict_to(g, region));
        if (!rr) {
          ok = false;
          break;
        }
        rotors.push_back(*rr);
      }
    }
    if (!ok) continue;
    Iet product = Iet::identity(b);
    for (const auto& r : rotors) product = compose(product, rotor_iet(r, b));
    if (product == g) return BoundedNormalForm{k, std::move(rotors)};
  }
  return std::nullopt;
}

Iet PnElement::to_iet(const BasisPtr& b) const {
  if (n < 1) throw std::invalid_argument("PnElement needs n >= 1");
  std::vector<Scalar> cuts, trans;
  for (long j = 0; j < n; ++j) {
    Scalar base = Scalar::from_rational(b, make_frac(j, n));
    for (size_t l = 0; l < breaks.size(); ++l) {
      cuts.push_back(base + breaks[l]);
      Rational v(values[l] % n, n);
      v.canonicalize();
      trans.push_back(Scalar::from_rational(b, v));
    }
  }
  return Iet::from_cuts(b, std::move(cuts), std::move(trans));
}

std::pair<PnElement, Iet> centralizer_factor(const Iet& g, long n) {
  if (n < 2) throw std::invalid_argument("centralizer_factor needs n >= 2");
  const BasisPtr& b = g.basis();
  Rational one_over_n(1, n);
  Iet r = Iet::rotation(b, Scalar::from_rational(b, one_over_n));
  if (!commutes(g, r))
    throw std::invalid_argument("g does not commute with r_{1/n}");

  // Refine so every piece of g lies in one I_i and maps into one I_j.
  Iet ginv = inverse(g);
  std::vector<Scalar> pts = g.cuts();
  for (long j = 0; j < n; ++j) {
    Scalar boundary = Scalar::from_rational(b, make_frac(j, n));
    pts.push_back(boundary);
    pts.push_back(ginv.right(boundary));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // sigma_p at u = g(x) mod 1/n equals the interval shift of g at x; the
  // pieces tile [0,1/n) exactly n-fold and consistently, by commutation.
  struct Piece {
    Scalar start;
    Scalar length;
    long value;
  };
  std::vector<Piece> pieces;
  const Scalar one = Scalar::one(b);
  const Scalar cell = Scalar::from_rational(b, one_over_n);
  for (size_t i = 0; i < pts.size(); ++i) {
    const Scalar& a = pts[i];
    Scalar end = (i + 1 < pts.size()) ? pts[i + 1] : one;
    Scalar img = g.right(a);
    long ii = interval_index(a, n);
    long jj = interval_index(img, n);
    long v = ((jj - ii) % n + n) % n;
    Scalar u = img - Scalar::from_rational(b, make_frac(jj, n));
    pieces.push_back({std::move(u), end - a, v});
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return x.start < y.start; });
  PnElement p;
  p.n = n;
  Scalar cursor = Scalar::zero(b);
  for (const Piece& pc : pieces) {
    if (pc.start < cursor) {
      if (pc.start + pc.length > cursor)
        throw std::logic_error("inconsistent orbit shift tiling");
      continue;  // duplicate copy from another I_j
    }
    if (pc.start != cursor) throw std::logic_error("orbit shift tiling has a gap");
    if (!p.values.empty() && p.values.back() == pc.value) {
      cursor = cursor + pc.length;
      continue;
    }
    p.breaks.push_back(pc.start);
    p.values.push_back(pc.value);
    cursor = cursor + pc.length;
  }
  if (cursor != cell) throw std::logic_error("orbit shift tiling incomplete");

  Iet p_iet = p.to_iet(b);
  Iet e = compose(inverse(p_iet), g);
  // e must preserve every I_j and act identically on each of them.
  if (!commutes(e, r)) throw std::logic_error("diagonal factor does not commute with r_{1/n}");
  for (long j = 0; j < n; ++j) {
    CircArc I{Scalar::from_rational(b, make_frac(j, n)), cell};
    std::vector<CircArc> im = image_of_union(e, {I});
    if (im.size() != 1 || !(im[0] == I))
      throw std::logic_error("diagonal factor does not preserve the intervals I_j");
  }
  if (compose(p_iet, e) != g) throw std::logic_error("factorization does not recompose");
  return {std::move(p), std::move(e)};
}

bool rotation_centralizer_check(const Iet& f, const Iet& g) {
  if (f.d() != 0 || f.trans()[0].is_rational())
    throw std::invalid_argument("rotation_centralizer_check needs an irrational rotation");
  return commutes(f, g) == g.is_rotation();
}

}  // namespace iet
