#include "iet/basis.hpp"

#include <set>

namespace iet {

namespace {

constexpr int kInitialBits = 16;

// floor(sqrt(arg) * 2^bits) for a positive rational arg = a/b:
// sqrt(a/b) * 2^bits = sqrt(a*b*4^bits) / b, so the floor is
// floor(isqrt(a*b*4^bits) / b).
Integer sqrt_floor_scaled(const Rational& arg, int bits) {
  Integer a = arg.get_num();
  Integer b = arg.get_den();
  Integer x = a * b;
  mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), 2 * static_cast<unsigned>(bits));
  Integer s = sqrt(x);
  Integer m;
  mpz_fdiv_q(m.get_mpz_t(), s.get_mpz_t(), b.get_mpz_t());
  return m;
}

Enclosure sqrt_enclosure(const Rational& arg, int bits) {
  Integer m = sqrt_floor_scaled(arg, bits);
  Rational scale(1);
  mpz_mul_2exp(scale.get_den_mpz_t(), scale.get_den_mpz_t(), static_cast<unsigned>(bits));
  Enclosure e;
  e.lo = Rational(m) * scale;
  e.hi = Rational(m + 1) * scale;
  return e;
}

}  // namespace

Basis::Basis(std::vector<GeneratorDesc> gens, int max_refine_depth)
    : gens_(std::move(gens)), max_depth_(max_refine_depth) {
  if (gens_.empty() || gens_[0].kind != GeneratorDesc::Kind::Unit)
    throw std::invalid_argument("generator 0 must be the rational unit 1");
  if (max_depth_ < 1) throw std::invalid_argument("max_refine_depth must be positive");

  sqrt_args_.reserve(gens_.size());
  std::set<Integer> kernels;
  for (size_t i = 0; i < gens_.size(); ++i) {
    const GeneratorDesc& g = gens_[i];
    switch (g.kind) {
      case GeneratorDesc::Kind::Unit: {
        if (i != 0) throw std::invalid_argument("the unit generator is only allowed at index 0");
        sqrt_args_.push_back(Rational(1));
        break;
      }
      case GeneratorDesc::Kind::SqrtRational: {
        if (g.radicand <= 0) throw std::invalid_argument("sqrt radicand must be positive");
        sqrt_args_.push_back(g.radicand);
        break;
      }
      case GeneratorDesc::Kind::ProductOfSqrts: {
        if (g.factors.size() < 2)
          throw std::invalid_argument("product generator needs at least two factors");
        Rational arg(1);
        for (int j : g.factors) {
          if (j <= 0 || static_cast<size_t>(j) >= i)
            throw std::invalid_argument("product factor index out of range");
          if (gens_[j].kind != GeneratorDesc::Kind::SqrtRational)
            throw std::invalid_argument("product factors must be sqrt generators");
          arg *= gens_[j].radicand;
        }
        sqrt_args_.push_back(arg);
        break;
      }
    }
    if (i > 0) {
      // sqrt(a/b) is rationally proportional to sqrt(kernel(a*b)); distinct
      // kernels > 1 give a Q-independent family together with 1.
      Integer k = squarefree_kernel(sqrt_args_[i].get_num() * sqrt_args_[i].get_den());
      if (k == 1)
        throw std::invalid_argument("generator " + std::to_string(i) +
                                    " is rational (perfect-square radicand)");
      if (!kernels.insert(k).second)
        throw std::invalid_argument("generators are not Q-independent (equal squarefree kernels)");
    }
  }

  cache_.resize(gens_.size());
  cache_depth_.assign(gens_.size(), 0);
  for (size_t i = 1; i < gens_.size(); ++i) cache_[i] = sqrt_enclosure(sqrt_args_[i], kInitialBits);
}

Enclosure Basis::enclosure(int i, int depth) const {
  if (i <= 0 || i >= size()) throw std::out_of_range("generator index");
  if (depth > max_depth_)
    throw RefinementDepthExceeded(
        "enclosure refinement depth " + std::to_string(depth) + " exceeds maximum " +
        std::to_string(max_depth_) + " (violated independence declaration?)");
  std::lock_guard<std::mutex> lock(mu_);
  if (cache_depth_[i] < depth) {
    cache_[i] = sqrt_enclosure(sqrt_args_[i], kInitialBits + depth);
    cache_depth_[i] = depth;
  }
  return cache_[i];
}

std::shared_ptr<const Basis> Basis::rationals(int max_refine_depth) {
  return std::make_shared<Basis>(std::vector<GeneratorDesc>{GeneratorDesc::unit()},
                                 max_refine_depth);
}

std::shared_ptr<const Basis> Basis::with_sqrts(const std::vector<Rational>& qs,
                                               int max_refine_depth) {
  std::vector<GeneratorDesc> gens{GeneratorDesc::unit()};
  for (const Rational& q : qs) gens.push_back(GeneratorDesc::sqrt_of(q));
  return std::make_shared<Basis>(std::move(gens), max_refine_depth);
}

}  // namespace iet
