#include <cmath>
#include <random>

#include "cvp/representation.hpp"
#include "cvp/reps.hpp"
#include "doctest.h"

using namespace cvp;

namespace {

std::mt19937_64 rng(99102);

// A free pair of loxodromics in general position.
Representation free_pair() {
  Mat3 a = Mat3::diag(3.0, 1.0, 1.0 / 3.0);
  Mat3 p{{1, 0.4, -0.2, 0.3, 1, 0.5, -0.1, 0.2, 1}};
  Mat3 b = normalize_det1(p) * Mat3::diag(2.5, 0.8, 1.0 / 2.0) * normalize_det1(p).inverse();
  return make_representation({"a", "b"}, {a, b});
}

Word random_word(int n_gens, int len) {
  std::uniform_int_distribution<int> g(1, n_gens);
  std::uniform_int_distribution<int> s(0, 1);
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(s(rng) ? g(rng) : -g(rng));
  return w;
}

}  // namespace

TEST_CASE("evaluate basics") {
  Representation rep = free_pair();
  CHECK(max_abs_diff(evaluate(rep, {}), Mat3::identity()) == 0.0);
  Word w{1, 2, -1};
  Mat3 ww = evaluate(rep, concat(w, inverse_word(w)));
  CHECK(max_abs_diff(ww, Mat3::identity()) < 1e-10);
  CHECK_THROWS_AS(evaluate(rep, {3}), error);
}

TEST_CASE("evaluate is a homomorphism") {
  Representation rep = free_pair();
  for (int i = 0; i < 200; ++i) {
    Word u = random_word(2, 4), v = random_word(2, 4);
    Mat3 lhs = evaluate(rep, concat(u, v));
    Mat3 rhs = evaluate(rep, u) * evaluate(rep, v);
    CHECK(max_abs_diff(lhs, rhs) < 1e-10 * std::fmax(1.0, rhs.max_abs()));
  }
}

TEST_CASE("prefix evaluator agrees with evaluate") {
  Representation rep = free_pair();
  PrefixEvaluator pe(rep);
  for (int i = 0; i < 200; ++i) {
    Word w = random_word(2, 8);
    CHECK(max_abs_diff(pe(w), evaluate(rep, w)) < 1e-12 * std::fmax(1.0, evaluate(rep, w).max_abs()));
  }
}

TEST_CASE("relator validation") {
  Representation rep = free_pair();
  rep.relators = {Word{1, -1}};
  CHECK_NOTHROW(validate(rep));
  rep.relators = {Word{1, 2}};
  CHECK_THROWS_AS(validate(rep), error);
}

TEST_CASE("orbit_ball free counts") {
  Representation rep = free_pair();
  // radius 1: the 2 n_gens generator images.
  CHECK(orbit_ball(rep, 1).size() == 4);
  // radius 2: 4 + 4*3 reduced words, all distinct in a free group.
  auto ball = orbit_ball(rep, 2);
  CHECK(ball.size() == 16);
  for (const OrbitElement& e : ball) CHECK(int(e.word.size()) <= 2);
}

TEST_CASE("orbit_ball with a relator collapses") {
  // b = a^-1 forces massive collisions: the group is cyclic.
  Mat3 a = Mat3::diag(2.0, 1.0, 0.5);
  Representation rep = make_representation({"a", "b"}, {a, a.inverse()}, {Word{1, 2}});
  auto ball = orbit_ball(rep, 3);
  // Elements a^k, k in [-3, 3], k != 0.
  CHECK(ball.size() == 6);
  auto free_ball = orbit_ball(free_pair(), 3);
  CHECK(ball.size() < free_ball.size());
}

TEST_CASE("orbit_ball dedup soundness at small radius") {
  Representation rep = pants_amalgam_demo({2.0, 2.0, 2.0});
  auto ball = orbit_ball(rep, 3);
  // No two emitted elements within 1e-6 of each other (relative).
  for (size_t i = 0; i < ball.size(); ++i)
    for (size_t j = i + 1; j < ball.size(); ++j) {
      double scale = std::fmax(ball[i].image.max_abs(), ball[j].image.max_abs());
      CHECK(max_abs_diff(ball[i].image, ball[j].image) > 1e-6 * scale);
    }
}

TEST_CASE("orbit_ball completeness: products of ball elements reappear") {
  Representation rep = pants_amalgam_demo({2.0, 2.0, 2.0});
  auto b2 = orbit_ball(rep, 2);
  auto b3 = orbit_ball(rep, 3);
  // Every length-2 element times every generator either collides with a
  // known element or shows up at radius 3.
  for (const OrbitElement& e : b2) {
    if (e.word.size() != 2) continue;
    for (int letter : {1, -1, 2, -2, 3, -3, 4, -4}) {
      Mat3 prod = e.image * rep.letter_image(letter);
      bool found = false;
      double scale = std::fmax(1.0, prod.max_abs());
      if (max_abs_diff(prod, Mat3::identity()) < 1e-7 * scale) continue;
      for (const OrbitElement& f : b3) {
        if (max_abs_diff(prod, f.image) < 1e-7 * scale ||
            max_abs_diff(prod * -1.0, f.image) < 1e-7 * scale) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("orbit budget fails loudly") {
  CHECK_THROWS_AS(orbit_ball(free_pair(), 12, 100), error);
}

TEST_CASE("orbit is deterministic") {
  Representation rep = pants_amalgam_demo({2.0, 2.0, 2.0});
  auto b1 = orbit_ball(rep, 3);
  auto b2 = orbit_ball(rep, 3);
  REQUIRE(b1.size() == b2.size());
  for (size_t i = 0; i < b1.size(); ++i) {
    CHECK(b1[i].word == b2[i].word);
    CHECK(max_abs_diff(b1[i].image, b2[i].image) == 0.0);
  }
}
