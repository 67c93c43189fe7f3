#include <doctest.h>

#include "helpers.hpp"

using namespace iet;
using namespace iet::testing;

TEST_CASE("commutes examples") {
  auto b = basis3();
  CHECK(commutes(irrational_rotation(b), rot(b, 2, 5)));

  Rng rng(401);
  Iet ra = irrational_rotation(b);
  for (int t = 0; t < 10; ++t) {
    Iet g = rng.non_rotation(b);
    CHECK_FALSE(commutes(ra, g));
  }

  // disjointly supported restricted rotations commute
  Scalar small = sc(b, {"0", "1/8"});
  Iet u = Iet::restricted_rotation(small, frac(b, 1, 4));
  Iet v = rotor_at(b, frac(b, 1, 2), small, frac(b, 1, 4));
  CHECK(commutes(u, v));
}

TEST_CASE("order examples") {
  auto b = basis3();
  OrderResult o6 = order(rot(b, 1, 6), 100);
  CHECK(o6.finite);
  CHECK(o6.order == 6);
  CHECK(o6.certainty == Certainty::Exact);

  OrderResult oi = order(irrational_rotation(b), 100);
  CHECK_FALSE(oi.finite);
  CHECK(oi.certainty == Certainty::Exact);

  OrderResult o2 = order(rot(b, 1, 2), 100);
  CHECK(o2.finite);
  CHECK(o2.order == 2);

  // infinite order via nonzero saf, without any series zero
  OrderResult of = order(interleaved_three_cut_map(), 50);
  CHECK_FALSE(of.finite);

  // saf-blind finite order with irrational coordinates: half turn of [0,beta)
  Scalar beta = sc(b, {"-1/2", "3/4"});
  Iet h = Iet::restricted_rotation(beta.scaled(Rational(1, 2)), beta);
  OrderResult oh = order(h, 100);
  CHECK(oh.finite);
  CHECK(oh.order == 2);
  CHECK(oh.certainty == Certainty::Exact);

  // quarter turn: first series zero at 4 with angle 0
  Iet q = Iet::restricted_rotation(beta.scaled(Rational(1, 4)), beta);
  OrderResult oq = order(q, 100);
  CHECK(oq.finite);
  CHECK(oq.order == 4);

  // rational-angle rotor inside an irrational interval: infinite order
  OrderResult orr = order(Iet::restricted_rotation(frac(b, 1, 5), beta), 60);
  CHECK_FALSE(orr.finite);
}

TEST_CASE("order matches brute force on random rational maps") {
  auto b = basis1();
  Rng rng(402);
  for (int t = 0; t < 12; ++t) {
    Iet f = rng.rational_iet(b, 2, 4);
    OrderResult o = order(f, 10);
    REQUIRE(o.finite);
    CHECK(power(f, o.order).is_identity());
    for (long m = 1; m < o.order && m <= 30; ++m) CHECK_FALSE(power(f, m).is_identity());
  }
}

TEST_CASE("components of an irrational rotation") {
  auto b = basis2();
  ComponentDecomposition dec = components(irrational_rotation(b), 200);
  CHECK(dec.periodic_parts.empty());
  REQUIRE(dec.minimal_candidates.size() == 1);
  REQUIRE(dec.minimal_candidates[0].size() == 1);
  CHECK(dec.minimal_candidates[0][0].length == Scalar::one(b));
  CHECK(dec.stabilized);
}

TEST_CASE("components of a rational rotation") {
  auto b = basis2();
  ComponentDecomposition dec = components(rot(b, 1, 3), 100);
  CHECK(dec.minimal_candidates.empty());
  REQUIRE(dec.periodic_parts.size() == 1);
  CHECK(dec.periodic_parts[0].period == 3);
  REQUIRE(dec.periodic_parts[0].arcs.size() == 1);
  CHECK(dec.periodic_parts[0].arcs[0].length == Scalar::one(b));
}

TEST_CASE("components of disjoint rotors with fixed complement") {
  auto b = basis3();
  Scalar small = sc(b, {"0", "1/8"});
  Iet f = compose(Iet::restricted_rotation(small, frac(b, 1, 4)),
                  rotor_at(b, frac(b, 1, 2), small, frac(b, 1, 4)));
  ComponentDecomposition dec = components(f, 300);
  REQUIRE(dec.minimal_candidates.size() == 2);
  for (const auto& cand : dec.minimal_candidates) {
    REQUIRE(cand.size() == 1);
    CHECK(cand[0].length == frac(b, 1, 4));
  }
  REQUIRE(dec.periodic_parts.size() == 1);
  CHECK(dec.periodic_parts[0].period == 1);

  // exact invariance of each candidate was verified internally; check again
  for (const auto& cand : dec.minimal_candidates) {
    Scalar x = cand[0].start;
    Scalar y = f.right(x + sc(b, {"0", "0", "1/64"}));
    CHECK(cand[0].contains(y));
  }
}

TEST_CASE("components of an irrational-coordinate periodic rotor") {
  auto b = basis2();
  Scalar beta = sc(b, {"-1/2", "3/4"});
  Iet h = Iet::restricted_rotation(beta.scaled(Rational(1, 4)), beta);  // order 4
  ComponentDecomposition dec = components(h, 100);
  CHECK(dec.minimal_candidates.empty());
  REQUIRE(dec.periodic_parts.size() == 2);
  // one fixed part ([beta,1)) and one period-4 part ([0,beta))
  bool saw_fixed = false, saw_four = false;
  for (const auto& part : dec.periodic_parts) {
    if (part.period == 1) {
      saw_fixed = true;
      REQUIRE(part.arcs.size() == 1);
      CHECK(part.arcs[0].start == beta);
    }
    if (part.period == 4) {
      saw_four = true;
      REQUIRE(part.arcs.size() == 1);
      CHECK(part.arcs[0].start == Scalar::zero(b));
      CHECK(part.arcs[0].length == beta);
    }
  }
  CHECK(saw_fixed);
  CHECK(saw_four);
}

TEST_CASE("detect_restricted_rotation") {
  auto b = basis3();
  Scalar alpha = sc(b, {"0", "1/4"});
  Scalar beta = frac(b, 2, 3);
  Iet f = Iet::restricted_rotation(alpha, beta);

  auto r0 = detect_restricted_rotation(f);
  REQUIRE(r0.has_value());
  CHECK(r0->gamma == Scalar::zero(b));
  CHECK(r0->alpha == alpha);
  CHECK(r0->beta == beta);

  auto r7 = detect_restricted_rotation(conjugate(f, rot(b, 1, 7)));
  REQUIRE(r7.has_value());
  CHECK(r7->gamma == frac(b, 1, 7));
  CHECK(r7->alpha == alpha);
  CHECK(r7->beta == beta);

  CHECK_FALSE(detect_restricted_rotation(interleaved_three_cut_map()).has_value());
  CHECK_FALSE(detect_restricted_rotation(Iet::identity(b)).has_value());

  // conjugation equivariance on a wrapped placement
  auto rw = detect_restricted_rotation(conjugate(f, Iet::rotation(b, sc(b, {"0", "0", "1/2"}))));
  REQUIRE(rw.has_value());
  CHECK(rw->gamma == sc(b, {"0", "0", "1/2"}));
}

TEST_CASE("bounded_normal_form on fig 5 g: one power, two rotors") {
  Iet g = disjoint_rotor_product();
  auto nf = bounded_normal_form(g, 400);
  REQUIRE(nf.has_value());
  CHECK(nf->k == 1);
  REQUIRE(nf->rotors.size() == 2);

  auto b = g.basis();
  Iet product = Iet::identity(b);
  for (const auto& r : nf->rotors) {
    Iet rotor = conjugate(Iet::restricted_rotation(r.alpha, r.beta), Iet::rotation(b, r.gamma));
    product = compose(product, rotor);
  }
  CHECK(product == g);
  // disjoint supports
  REQUIRE(nf->rotors.size() == 2);
  CHECK_FALSE(nf->rotors[0].rotor_interval.contains(nf->rotors[1].rotor_interval.start));
  CHECK_FALSE(nf->rotors[1].rotor_interval.contains(nf->rotors[0].rotor_interval.start));
}

TEST_CASE("bounded_normal_form on the half-swap: k = 2") {
  Iet f = swap_example();
  auto nf = bounded_normal_form(f, 400);
  REQUIRE(nf.has_value());
  CHECK(nf->k == 2);
  REQUIRE(nf->rotors.size() == 2);
  auto b = f.basis();
  Iet product = Iet::identity(b);
  for (const auto& r : nf->rotors) {
    Iet rotor = conjugate(Iet::restricted_rotation(r.alpha, r.beta), Iet::rotation(b, r.gamma));
    product = compose(product, rotor);
  }
  CHECK(product == power(f, 2));
}

TEST_CASE("bounded_normal_form on an irrational rotation: full-circle rotor") {
  auto b = basis2();
  Iet r = irrational_rotation(b);
  auto nf = bounded_normal_form(r, 200);
  REQUIRE(nf.has_value());
  CHECK(nf->k == 1);
  REQUIRE(nf->rotors.size() == 1);
  CHECK(nf->rotors[0].beta == Scalar::one(b));
  CHECK(nf->rotors[0].alpha == r.trans()[0]);
}

TEST_CASE("bounded_normal_form stays inconclusive beyond rotation conjugacies") {
  auto b = basis3();
  Rng rng(409);
  Iet g = rng.non_rotation(b);
  // conjugate of an irrational rotation: minimal, bounded growth, infinite
  // order, but only rotation conjugacies are searched
  Iet h = conjugate(irrational_rotation(b), g);
  REQUIRE(h.d() > 0);
  auto nf = bounded_normal_form(h, 200, 6);
  CHECK_FALSE(nf.has_value());
}

TEST_CASE("bounded_normal_form rejects bad inputs") {
  auto b = basis2();
  CHECK_THROWS_AS(bounded_normal_form(rot(b, 1, 3), 100), std::invalid_argument);
  CHECK_THROWS_AS(bounded_normal_form(interleaved_three_cut_map(), 200), std::invalid_argument);
}

TEST_CASE("PnElement round trip through its induced map") {
  auto b = basis2();
  Rng rng(403);
  for (long n : {2L, 3L, 4L}) {
    for (int t = 0; t < 5; ++t) {
      PnElement p = rng.pn_element(b, n);
      Iet r = rot(b, 1, n);
      Iet pi = p.to_iet(b);
      CHECK(commutes(pi, r));
      // invariant on r_{1/n}-orbits: p(x) - x is a multiple of 1/n
      for (int s = 0; s < 5; ++s) {
        Scalar x = rng.scalar01(b);
        Scalar diff = (pi.right(x) - x).mod_one();
        Rational v = diff.rational_part() * n;
        CHECK(diff == Scalar::from_rational(b, Rational(v.get_num()) / n / Rational(v.get_den())));
      }
    }
  }
}

TEST_CASE("centralizer_factor trivial cases") {
  auto b = basis2();
  for (long n : {2L, 3L, 5L}) {
    Iet r = rot(b, 1, n);
    auto [p, e] = centralizer_factor(r, n);
    CHECK(e.is_identity());
    REQUIRE(p.values.size() == 1);
    CHECK(p.values[0] == 1);  // constant shift by one

    auto [pid, eid] = centralizer_factor(Iet::identity(b), n);
    CHECK(eid.is_identity());
    REQUIRE(pid.values.size() == 1);
    CHECK(pid.values[0] == 0);
  }
}

TEST_CASE("centralizer_factor on a diagonal element") {
  auto b = basis2();
  Rng rng(404);
  for (long n : {2L, 3L}) {
    Iet e = rng.diagonal_element(b, n);
    auto [p, e2] = centralizer_factor(e, n);
    CHECK(e2 == e);
    REQUIRE(p.values.size() == 1);
    CHECK(p.values[0] == 0);
  }
}

TEST_CASE("centralizer_factor on the quarter swap") {
  auto b = basis2();
  // swap [0,1/4) <-> [1/2,3/4), identity elsewhere; commutes with r_{1/2}
  Iet g = Iet::from_cuts(
      b, {Scalar::zero(b), frac(b, 1, 4), frac(b, 1, 2), frac(b, 3, 4)},
      {frac(b, 1, 2), Scalar::zero(b), frac(b, 1, 2), Scalar::zero(b)});
  auto [p, e] = centralizer_factor(g, 2);
  CHECK(e.is_identity());
  REQUIRE(p.breaks.size() == 2);
  CHECK(p.breaks[0] == Scalar::zero(b));
  CHECK(p.breaks[1] == frac(b, 1, 4));
  CHECK(p.values == std::vector<long>{1, 0});
  CHECK(p.to_iet(b) == g);
}

TEST_CASE("centralizer_factor recovers random products exactly") {
  auto b = basis2();
  Rng rng(405);
  for (long n : {2L, 3L, 4L}) {
    for (int t = 0; t < 8; ++t) {
      PnElement p = rng.pn_element(b, n);
      Iet e = rng.diagonal_element(b, n);
      Iet g = compose(p.to_iet(b), e);
      REQUIRE(commutes(g, rot(b, 1, n)));
      auto [p2, e2] = centralizer_factor(g, n);
      CHECK(p2 == p);
      CHECK(e2 == e);
      CHECK(compose(p2.to_iet(b), e2) == g);
    }
  }
}

TEST_CASE("centralizer_factor rejects non-commuting input") {
  auto b = basis2();
  Rng rng(406);
  Iet g = rng.non_rotation(b);
  if (commutes(g, rot(b, 1, 2))) return;  // astronomically unlikely
  CHECK_THROWS_AS(centralizer_factor(g, 2), std::invalid_argument);
}

TEST_CASE("irrational rotations commute only with rotations") {
  auto b = basis3();
  Iet ra = irrational_rotation(b);
  Rng rng(407);
  for (int t = 0; t < 20; ++t) {
    CHECK(rotation_centralizer_check(ra, rng.rotation(b)));
    CHECK(rotation_centralizer_check(ra, rng.non_rotation(b)));
  }
  CHECK(rotation_centralizer_check(ra, Iet::identity(b)));
  CHECK_THROWS_AS(rotation_centralizer_check(rot(b, 1, 2), Iet::identity(b)),
                  std::invalid_argument);
}

TEST_CASE("order trichotomy consistency") {
  auto b = basis3();
  Rng rng(408);
  for (int t = 0; t < 6; ++t) {
    Iet f = rng.rational_iet(basis1(), 2, 4);
    OrderResult o = order(f, 50);
    REQUIRE(o.finite);
    GrowthVerdict v = classify_growth(f, 60, 6);
    CHECK(v.kind == GrowthVerdict::Kind::Bounded);
    CHECK(v.certainty == Certainty::Exact);
  }
  for (int t = 0; t < 6; ++t) {
    Iet f = rng.iet(b, 3, 5);
    if (!saf(f).is_zero()) {
      OrderResult o = order(f, 50);
      CHECK_FALSE(o.finite);
    }
  }
}
