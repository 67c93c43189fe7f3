#include "iet/invariants.hpp"

#include <algorithm>

#include "iet/growth.hpp"

namespace iet {

SafInvariant::SafInvariant(BasisPtr basis) : basis_(std::move(basis)) {
  const int n = basis_->size();
  m_.assign(n, std::vector<Rational>(n, Rational(0)));
}

const Rational& SafInvariant::entry(int i, int j) const { return m_.at(i).at(j); }

void SafInvariant::add_wedge(const std::vector<Rational>& v, const std::vector<Rational>& w,
                             const Rational& weight) {
  const int n = basis_->size();
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0 && w[i] == 0) continue;
    for (int j = i + 1; j < n; ++j) {
      Rational c = weight * (v[i] * w[j] - v[j] * w[i]);
      if (c == 0) continue;
      m_[i][j] += c;
      m_[j][i] -= c;
    }
  }
}

bool SafInvariant::is_zero() const {
  for (const auto& row : m_)
    for (const Rational& c : row)
      if (c != 0) return false;
  return true;
}

SafInvariant SafInvariant::operator+(const SafInvariant& o) const {
  if (!same_basis(basis_, o.basis_)) throw BasisMismatchError();
  SafInvariant r(basis_);
  const int n = basis_->size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.m_[i][j] = m_[i][j] + o.m_[i][j];
  return r;
}

SafInvariant SafInvariant::operator-() const {
  SafInvariant r(basis_);
  const int n = basis_->size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.m_[i][j] = -m_[i][j];
  return r;
}

bool SafInvariant::operator==(const SafInvariant& o) const {
  if (!same_basis(basis_, o.basis_)) throw BasisMismatchError();
  return m_ == o.m_;
}

std::vector<std::tuple<int, int, Rational>> SafInvariant::sparse() const {
  std::vector<std::tuple<int, int, Rational>> out;
  const int n = basis_->size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m_[i][j] != 0) out.emplace_back(i, j, m_[i][j]);
  return out;
}

SafInvariant saf(const Iet& f) {
  const BasisPtr& b = f.basis();
  SafInvariant phi(b);
  const Scalar one = Scalar::one(b);
  const Rational half(1, 2);
  const int m = f.arc_count();
  for (int i = 0; i < m; ++i) {
    const Scalar& t = f.trans()[i];
    if (t.is_zero()) continue;
    const Scalar& lo = f.cuts()[i];
    Scalar hi = (i + 1 < m) ? f.cuts()[i + 1] : one;
    // The arc translates by t until x + t reaches 1, by t - 1 afterwards.
    Scalar wrap = one - t;
    Scalar disp_plus = t;
    Scalar disp_minus = t - one;
    if (wrap <= lo) {
      phi.add_wedge((hi - lo).coords(), disp_minus.coords(), half);
    } else if (wrap >= hi) {
      phi.add_wedge((hi - lo).coords(), disp_plus.coords(), half);
    } else {
      phi.add_wedge((wrap - lo).coords(), disp_plus.coords(), half);
      phi.add_wedge((hi - wrap).coords(), disp_minus.coords(), half);
    }
  }
  return phi;
}

bool saf_is_homomorphic_check(const Iet& f, const Iet& g) {
  return saf(compose(f, g)) == saf(f) + saf(g);
}

Rational cocycle(const Iet& f, int gen_index, const Scalar& p) {
  return f.trans_at(p).project(gen_index);
}

namespace {

// phi_{i,0}(f^n) for n = 1..N, accumulated along the orbit of 0; exact for
// irrational generator indices (the wrap integers have no g_i coordinate).
std::vector<Rational> cocycle_series(const Iet& f, int index, long N) {
  std::vector<Rational> out;
  out.reserve(N);
  Scalar p = Scalar::zero(f.basis());
  Rational acc(0);
  for (long n = 1; n <= N; ++n) {
    acc += f.trans_at(p).project(index);
    p = f.right(p);
    out.push_back(acc);
  }
  return out;
}

}  // namespace

WordBound undistortion_bounds(const std::vector<Iet>& S, const Iet& f, long N,
                              std::optional<int> gen_index) {
  if (S.empty()) throw std::invalid_argument("generator set must be nonempty");
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  WordBound wb;
  wb.generators = S;
  for (const Iet& g : S) {
    if (!same_basis(g.basis(), f.basis())) throw BasisMismatchError();
    wb.M_disc = std::max<long>(wb.M_disc, g.d());
  }

  auto coc_cap = [&](int idx) {
    Rational cap(0);
    for (const Iet& g : S)
      for (const Scalar& t : g.trans()) cap = std::max(cap, abs_rational(t.project(idx)));
    return cap;
  };

  wb.requested_index = gen_index.value_or(-1);
  std::vector<Rational> coc;
  if (gen_index) {
    int idx = *gen_index;
    if (idx < 1 || idx >= f.basis()->size())
      throw std::invalid_argument("cocycle index must name an irrational generator");
    coc = cocycle_series(f, idx, N);
    bool trivial = std::all_of(coc.begin(), coc.end(), [](const Rational& c) { return c == 0; });
    wb.index = idx;
    if (trivial) {
      // Requested projection is blind to f; fall back to the irrational
      // generator with the strongest linear trend, if any.
      int best = -1;
      Rational best_abs(0);
      for (int j = 1; j < f.basis()->size(); ++j) {
        if (j == idx) continue;
        std::vector<Rational> cj = cocycle_series(f, j, N);
        Rational a = abs_rational(cj.back());
        if (a > best_abs) {
          best_abs = a;
          best = j;
          coc = std::move(cj);
        }
      }
      if (best >= 0) {
        wb.index = best;
        wb.index_was_substituted = true;
      }
    }
  }
  if (wb.index >= 0) {
    wb.M_coc = coc_cap(wb.index);
    if (wb.M_coc == 0) {
      // No generator moves along this coordinate at all; a nonzero cocycle
      // on f would mean f is not in <S>. Drop the ingredient.
      coc.clear();
      wb.index = -1;
    }
  }

  bool have_disc = wb.M_disc > 0;
  bool have_coc = wb.index >= 0;
  if (!have_disc && !have_coc) {
    wb.no_bound_available = true;
    return wb;
  }

  std::vector<long> series = growth_series(f, N);
  for (long n = 1; n <= N; ++n) {
    long best = 0;
    bool from_coc = false;
    if (have_disc) {
      long bd = static_cast<long>(
          ceil_int(Rational(series[n - 1]) / Rational(wb.M_disc)).get_si());
      best = bd;
    }
    if (have_coc) {
      long bc =
          static_cast<long>(ceil_int(abs_rational(coc[n - 1]) / wb.M_coc).get_si());
      if (bc > best) {
        best = bc;
        from_coc = true;
      }
    }
    wb.bounds.push_back({n, best, from_coc});
  }
  return wb;
}

}  // namespace iet
