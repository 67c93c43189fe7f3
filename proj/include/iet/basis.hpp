#pragma once

#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "iet/rational.hpp"

namespace iet {

// Closed interval with rational (dyadic) endpoints bracketing a real value.
struct Enclosure {
  Rational lo;
  Rational hi;
};

struct GeneratorDesc {
  enum class Kind { Unit, SqrtRational, ProductOfSqrts };
  Kind kind = Kind::Unit;
  Rational radicand;         // SqrtRational: value is sqrt(radicand)
  std::vector<int> factors;  // ProductOfSqrts: indices of sqrt generators

  static GeneratorDesc unit() { return GeneratorDesc{}; }
  static GeneratorDesc sqrt_of(const Rational& q) {
    GeneratorDesc g;
    g.kind = Kind::SqrtRational;
    g.radicand = q;
    return g;
  }
  static GeneratorDesc product_of(std::vector<int> indices) {
    GeneratorDesc g;
    g.kind = Kind::ProductOfSqrts;
    g.factors = std::move(indices);
    return g;
  }
  bool operator==(const GeneratorDesc& o) const {
    return kind == o.kind && radicand == o.radicand && factors == o.factors;
  }
};

class RefinementDepthExceeded : public std::runtime_error {
 public:
  explicit RefinementDepthExceeded(const std::string& what) : std::runtime_error(what) {}
};

class BasisMismatchError : public std::invalid_argument {
 public:
  BasisMismatchError() : std::invalid_argument("scalars belong to different bases") {}
};

// Ordered family {1, g_1, ..., g_m} of Q-linearly independent reals.
// Generator 0 is always the rational unit. Every irrational generator is
// internally sqrt(arg) for a positive non-square rational arg; independence
// is certified at construction by pairwise-distinct squarefree kernels.
// Immutable after construction; the enclosure cache is mutex-guarded.
class Basis {
 public:
  explicit Basis(std::vector<GeneratorDesc> gens, int max_refine_depth = 256);

  int size() const { return static_cast<int>(gens_.size()); }
  const GeneratorDesc& generator(int i) const { return gens_.at(i); }
  const std::vector<GeneratorDesc>& generators() const { return gens_; }
  int max_refine_depth() const { return max_depth_; }

  // Enclosure of generator i whose width has been halved at least `depth`
  // times past the initial one-bit bracket. Successive calls return nested
  // intervals. Throws RefinementDepthExceeded past max_refine_depth.
  Enclosure enclosure(int i, int depth) const;

  bool operator==(const Basis& o) const { return gens_ == o.gens_; }

  static std::shared_ptr<const Basis> rationals(int max_refine_depth = 256);
  // {1, sqrt(q_1), ..., sqrt(q_m)}
  static std::shared_ptr<const Basis> with_sqrts(const std::vector<Rational>& qs,
                                                 int max_refine_depth = 256);

 private:
  std::vector<GeneratorDesc> gens_;
  std::vector<Rational> sqrt_args_;  // value of generator i is sqrt(sqrt_args_[i])
  int max_depth_;

  mutable std::mutex mu_;
  mutable std::vector<Enclosure> cache_;
  mutable std::vector<int> cache_depth_;
};

using BasisPtr = std::shared_ptr<const Basis>;

inline bool same_basis(const BasisPtr& a, const BasisPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace iet
