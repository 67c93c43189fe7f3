#include "iet/iet.hpp"

#include <algorithm>
#include <map>

namespace iet {

namespace {

// x + t reduced mod 1, for x in [0,1) and t in [0,1).
Scalar wrap_add(const Scalar& x, const Scalar& t) {
  Scalar y = x + t;
  if (y >= Scalar::one(x.basis())) return y - Scalar::one(x.basis());
  return y;
}

}  // namespace

void PiLambda::validate() const {
  const size_t n = pi.size();
  if (n == 0) throw std::invalid_argument("pi must be nonempty");
  if (lambda.size() != n) throw std::invalid_argument("pi and lambda must have equal length");
  std::vector<bool> seen(n, false);
  for (int v : pi) {
    if (v < 1 || static_cast<size_t>(v) > n || seen[v - 1])
      throw std::invalid_argument("pi must be a permutation of 1..n");
    seen[v - 1] = true;
  }
  const BasisPtr& b = lambda[0].basis();
  Scalar sum = Scalar::zero(b);
  for (const Scalar& l : lambda) {
    if (!same_basis(l.basis(), b)) throw BasisMismatchError();
    if (compare(l, Scalar::zero(b)) != Cmp::Greater)
      throw std::invalid_argument("lambda entries must be positive");
    sum = sum + l;
  }
  if (sum != Scalar::one(b)) throw std::invalid_argument("lambda must sum to 1");
}

Iet Iet::canonicalize(BasisPtr b, std::vector<Scalar> cuts, std::vector<Scalar> trans) {
  if (cuts.empty() || cuts.size() != trans.size())
    throw std::invalid_argument("cuts and trans must be nonempty and of equal length");
  const Scalar zero = Scalar::zero(b);
  if (cuts[0] != zero) throw std::invalid_argument("cuts[0] must be 0");
  std::vector<Scalar> ccuts, ctrans;
  ccuts.reserve(cuts.size());
  ctrans.reserve(trans.size());
  for (size_t i = 0; i < cuts.size(); ++i) {
    if (!ctrans.empty() && trans[i] == ctrans.back()) continue;  // merge equal neighbors
    ccuts.push_back(cuts[i]);
    ctrans.push_back(trans[i]);
  }
  // Merging across 0 is recorded by the artificiality flag, not by removal.
  bool artificial = ctrans.front() == ctrans.back();
  return Iet(std::move(b), std::move(ccuts), std::move(ctrans), artificial);
}

void Iet::validate_bijectivity() const {
  // Image arcs, sorted by start, must tile the circle end to end.
  const int m = arc_count();
  std::vector<std::pair<Scalar, Scalar>> images;  // (start, length)
  images.reserve(m);
  const Scalar one = Scalar::one(basis_);
  for (int i = 0; i < m; ++i) {
    Scalar len = (i + 1 < m ? cuts_[i + 1] : one) - cuts_[i];
    images.emplace_back(wrap_add(cuts_[i], trans_[i]), std::move(len));
  }
  std::sort(images.begin(), images.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (int i = 0; i + 1 < m; ++i) {
    if (images[i].first + images[i].second != images[i + 1].first)
      throw std::invalid_argument("arcs do not map to a disjoint tiling (not a bijection)");
  }
  if (images.back().first + images.back().second != images.front().first + one)
    throw std::invalid_argument("arcs do not map to a disjoint tiling (not a bijection)");
}

Iet Iet::identity(const BasisPtr& b) {
  return Iet(b, {Scalar::zero(b)}, {Scalar::zero(b)}, true);
}

Iet Iet::rotation(const BasisPtr& b, const Scalar& gamma) {
  return Iet(b, {Scalar::zero(b)}, {gamma.mod_one()}, true);
}

Iet Iet::restricted_rotation(const Scalar& alpha, const Scalar& beta) {
  const BasisPtr& b = alpha.basis();
  const Scalar zero = Scalar::zero(b);
  const Scalar one = Scalar::one(b);
  if (!(zero < alpha && alpha < beta && beta <= one))
    throw std::invalid_argument("restricted rotation needs 0 < alpha < beta <= 1");
  if (beta == one) return rotation(b, alpha);
  PiLambda data;
  data.pi = {2, 1, 3};
  data.lambda = {beta - alpha, alpha, one - beta};
  return from_pi_lambda(data);
}

Iet Iet::from_pi_lambda(const PiLambda& data) {
  data.validate();
  const size_t n = data.pi.size();
  const BasisPtr& b = data.lambda[0].basis();
  std::vector<Scalar> cuts, trans;
  cuts.reserve(n);
  trans.reserve(n);
  Scalar beta = Scalar::zero(b);
  for (size_t j = 0; j < n; ++j) {
    cuts.push_back(beta);
    // omega_j = -sum_{i<j} lambda_i + sum_{pi(i)<pi(j)} lambda_i
    Scalar omega = -beta;
    for (size_t i = 0; i < n; ++i)
      if (data.pi[i] < data.pi[j]) omega = omega + data.lambda[i];
    trans.push_back(omega.mod_one());
    beta = beta + data.lambda[j];
  }
  Iet f = canonicalize(b, std::move(cuts), std::move(trans));
  f.validate_bijectivity();
  return f;
}

Iet Iet::from_cuts(BasisPtr b, std::vector<Scalar> cuts, std::vector<Scalar> trans) {
  if (cuts.empty() || cuts.size() != trans.size())
    throw std::invalid_argument("cuts and trans must be nonempty and of equal length");
  const Scalar zero = Scalar::zero(b);
  const Scalar one = Scalar::one(b);
  if (cuts[0] != zero) throw std::invalid_argument("cuts[0] must be 0");
  for (size_t i = 0; i < cuts.size(); ++i) {
    if (!same_basis(cuts[i].basis(), b) || !same_basis(trans[i].basis(), b))
      throw BasisMismatchError();
    if (i > 0 && !(cuts[i - 1] < cuts[i]))
      throw std::invalid_argument("cuts must be strictly increasing");
    if (!(cuts[i] < one) || cuts[i] < zero)
      throw std::invalid_argument("cuts must lie in [0,1)");
    trans[i] = trans[i].mod_one();
  }
  Iet f = canonicalize(std::move(b), std::move(cuts), std::move(trans));
  f.validate_bijectivity();
  return f;
}

int Iet::delta() const {
  // The breakpoints of a minimal [0,1) presentation are {0, f^{-1}(0)} and
  // every circle discontinuity; delta counts them without duplicates.
  int extra = 0;
  const Scalar zero = Scalar::zero(basis_);
  if (!is_discontinuity(zero)) extra++;
  Scalar pre = preimage_of_zero();
  if (pre != zero && !is_discontinuity(pre)) extra++;
  return d() + extra;
}

bool Iet::is_identity() const { return arc_count() == 1 && trans_[0].is_zero(); }

bool Iet::has_rational_coordinates() const {
  for (const Scalar& c : cuts_)
    if (!c.is_rational()) return false;
  for (const Scalar& t : trans_)
    if (!t.is_rational()) return false;
  return true;
}

int Iet::arc_index(const Scalar& x) const {
  // Largest i with cuts[i] <= x.
  int lo = 0, hi = arc_count() - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (cuts_[mid] <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

Scalar Iet::right(const Scalar& x) const { return wrap_add(x, trans_[arc_index(x)]); }

Scalar Iet::left(const Scalar& x) const {
  int i = arc_index(x);
  if (cuts_[i] == x) i = (i + arc_count() - 1) % arc_count();
  return wrap_add(x, trans_[i]);
}

bool Iet::is_discontinuity(const Scalar& x) const {
  int i = arc_index(x);
  if (cuts_[i] != x) return false;
  if (i == 0) return !zero_artificial_;
  return true;  // interior cuts are genuine in canonical form
}

std::vector<Scalar> Iet::discontinuities() const {
  std::vector<Scalar> result;
  result.reserve(d());
  for (int i = 0; i < arc_count(); ++i) {
    if (i == 0 && zero_artificial_) continue;
    result.push_back(cuts_[i]);
  }
  return result;
}

Scalar Iet::preimage_of_zero() const {
  const Scalar zero = Scalar::zero(basis_);
  for (int i = 0; i < arc_count(); ++i) {
    Scalar x = (-trans_[i]).mod_one();
    if (arc_index(x) == i) return x;
  }
  throw std::logic_error("bijection has no preimage of 0");
}

bool Iet::operator==(const Iet& o) const {
  if (!same_basis(basis_, o.basis_)) throw BasisMismatchError();
  return cuts_ == o.cuts_ && trans_ == o.trans_;
}

Iet compose(const Iet& f, const Iet& g) {
  if (!same_basis(f.basis(), g.basis())) throw BasisMismatchError();
  const BasisPtr& b = f.basis();
  Iet ginv = inverse(g);
  std::vector<Scalar> candidates = g.cuts();
  for (const Scalar& c : f.cuts()) candidates.push_back(ginv.right(c));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<Scalar> trans;
  trans.reserve(candidates.size());
  for (const Scalar& a : candidates) {
    const Scalar& tg = g.trans_at(a);
    const Scalar& tf = f.trans_at(g.right(a));
    trans.push_back((tg + tf).mod_one());
  }
  return Iet::from_cuts(b, std::move(candidates), std::move(trans));
}

Iet inverse(const Iet& f) {
  const BasisPtr& b = f.basis();
  const int m = f.arc_count();
  std::vector<std::pair<Scalar, Scalar>> arcs;  // (image start, -trans mod 1)
  arcs.reserve(m + 1);
  for (int i = 0; i < m; ++i)
    arcs.emplace_back(f.right(f.cuts()[i]), (-f.trans()[i]).mod_one());
  std::sort(arcs.begin(), arcs.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
  const Scalar zero = Scalar::zero(b);
  if (arcs.front().first != zero) {
    // 0 is interior to the image of the last-starting arc; split there.
    arcs.insert(arcs.begin(), {zero, arcs.back().second});
  }
  std::vector<Scalar> cuts, trans;
  cuts.reserve(arcs.size());
  trans.reserve(arcs.size());
  for (auto& a : arcs) {
    cuts.push_back(std::move(a.first));
    trans.push_back(std::move(a.second));
  }
  return Iet::from_cuts(b, std::move(cuts), std::move(trans));
}

Iet power(const Iet& f, long n) {
  if (n < 0) return power(inverse(f), -n);
  Iet acc = Iet::identity(f.basis());
  Iet base = f;
  while (n > 0) {
    if (n & 1) acc = compose(acc, base);
    n >>= 1;
    if (n > 0) base = compose(base, base);
  }
  return acc;
}

Iet conjugate(const Iet& f, const Iet& g) { return compose(g, compose(f, inverse(g))); }

Iet psi_T(const Iet& f) {
  const BasisPtr& b = f.basis();
  const Scalar one = Scalar::one(b);
  const int m = f.arc_count();
  // Arc [c_i, c_{i+1}) with translation t becomes [1-c_{i+1}, 1-c_i) with -t.
  std::vector<std::pair<Scalar, Scalar>> arcs;
  arcs.reserve(m);
  for (int i = 0; i < m; ++i) {
    Scalar hi = (i + 1 < m) ? (one - f.cuts()[i + 1]) : Scalar::zero(b);
    arcs.emplace_back(std::move(hi), (-f.trans()[i]).mod_one());
  }
  std::sort(arcs.begin(), arcs.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
  std::vector<Scalar> cuts, trans;
  for (auto& a : arcs) {
    cuts.push_back(std::move(a.first));
    trans.push_back(std::move(a.second));
  }
  return Iet::from_cuts(b, std::move(cuts), std::move(trans));
}

std::vector<CircArc> support(const Iet& f) {
  const BasisPtr& b = f.basis();
  const Scalar zero = Scalar::zero(b);
  const Scalar one = Scalar::one(b);
  const int m = f.arc_count();
  std::vector<CircArc> out;
  for (int i = 0; i < m; ++i) {
    if (f.trans()[i].is_zero()) continue;
    Scalar start = f.cuts()[i];
    Scalar end = (i + 1 < m) ? f.cuts()[i + 1] : one;
    if (!out.empty() && out.back().start + out.back().length == start) {
      out.back().length = out.back().length + (end - start);
    } else {
      out.push_back(CircArc{start, end - start});
    }
  }
  // Merge across 0 when both the first and the wrapped last arc move points.
  if (out.size() >= 2 && out.front().start == zero &&
      out.back().start + out.back().length == one) {
    out.back().length = out.back().length + out.front().length;
    out.erase(out.begin());
  }
  return out;
}

std::vector<CircArc> fix_set(const Iet& f) {
  const BasisPtr& b = f.basis();
  const Scalar zero = Scalar::zero(b);
  const Scalar one = Scalar::one(b);
  const int m = f.arc_count();
  std::vector<CircArc> out;
  for (int i = 0; i < m; ++i) {
    if (!f.trans()[i].is_zero()) continue;
    Scalar start = f.cuts()[i];
    Scalar end = (i + 1 < m) ? f.cuts()[i + 1] : one;
    if (!out.empty() && out.back().start + out.back().length == start) {
      out.back().length = out.back().length + (end - start);
    } else {
      out.push_back(CircArc{start, end - start});
    }
  }
  if (out.size() >= 2 && out.front().start == zero &&
      out.back().start + out.back().length == one) {
    out.back().length = out.back().length + out.front().length;
    out.erase(out.begin());
  }
  return out;
}

}  // namespace iet
