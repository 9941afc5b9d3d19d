#include "cvp/representation.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace cvp {

const Mat3& Representation::letter_image(int letter) const {
  int g = letter > 0 ? letter : -letter;
  if (g < 1 || g > n_gens()) fail(errc::unknown_generator, "letter indexes no declared generator");
  if (letter > 0) return images[size_t(g - 1)];
  if (inv_cache_.size() != images.size()) {
    inv_cache_.clear();
    // Images are det-1, so the adjugate is the inverse without dividing by
    // a computed determinant.
    for (const Mat3& m : images) inv_cache_.push_back(m.adjugate());
  }
  return inv_cache_[size_t(g - 1)];
}

void Representation::invalidate_cache() { inv_cache_.clear(); }

Representation make_representation(std::vector<std::string> gens, std::vector<Mat3> images,
                                   std::vector<Word> relators,
                                   std::optional<Splitting> splitting) {
  if (gens.size() != images.size())
    fail(errc::config_error, "generator names and images differ in count");
  Representation rep;
  rep.gens = std::move(gens);
  rep.images.reserve(images.size());
  for (const Mat3& m : images) rep.images.push_back(normalize_det1(m));
  rep.relators = std::move(relators);
  rep.splitting = std::move(splitting);
  return rep;
}

void validate(const Representation& rep, double relator_tol) {
  for (const Word& r : rep.relators) {
    Mat3 v = evaluate(rep, r);
    double resid = std::fmin(max_abs_diff(v, Mat3::identity()),
                             max_abs_diff(v * -1.0, Mat3::identity()));
    if (resid > relator_tol) fail(errc::config_error, "relator does not evaluate to +-identity");
  }
  if (rep.splitting) {
    const Splitting& sp = *rep.splitting;
    auto check_gen = [&](int idx) {
      if (idx < 0 || idx >= rep.n_gens())
        fail(errc::config_error, "splitting references an undeclared generator");
    };
    for (int i : sp.left_gens) check_gen(i);
    if (sp.kind == Splitting::Kind::amalgam)
      for (int i : sp.right_gens) check_gen(i);
    else
      check_gen(sp.stable_letter);
    for (int letter : sp.gamma) check_gen((letter > 0 ? letter : -letter) - 1);
    if (!is_hyperbolic(evaluate(rep, sp.gamma)))
      fail(errc::not_hyperbolic, "splitting curve gamma is not hyperbolic");
  }
}

// The factors all have determinant 1, so the product does too (to machine
// precision); renormalizing against a computed determinant would inject
// noise of order eps * scale^3 at large entry scales.
Mat3 evaluate(const Representation& rep, const Word& w) {
  Mat3 acc = Mat3::identity();
  for (int letter : reduce(w)) acc = acc * rep.letter_image(letter);
  return acc;
}

Mat3 PrefixEvaluator::operator()(const Word& w) {
  Word r = reduce(w);
  size_t common = 0;
  while (common < r.size() && common < stack_word_.size() && r[common] == stack_word_[common])
    ++common;
  stack_word_.resize(common);
  stack_prod_.resize(common);
  for (size_t i = common; i < r.size(); ++i) {
    Mat3 prev = stack_prod_.empty() ? Mat3::identity() : stack_prod_.back();
    stack_prod_.push_back(prev * rep_.letter_image(r[i]));
    stack_word_.push_back(r[i]);
  }
  return stack_prod_.empty() ? Mat3::identity() : stack_prod_.back();
}

namespace {

// 128-bit fingerprint of the quantized matrix. Entries are scaled to unit
// max-abs and sign-canonicalized first, so the quantum acts relatively and
// +-M collide as the same projective element.
struct Fingerprint {
  std::uint64_t a = 0, b = 0;
  bool operator==(const Fingerprint& o) const { return a == o.a && b == o.b; }
};

struct FingerprintHash {
  size_t operator()(const Fingerprint& f) const {
    std::uint64_t x = f.a * 0x9E3779B97F4A7C15ull ^ (f.b + 0xD1B54A32D192ED03ull);
    x ^= x >> 31;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 29;
    return size_t(x);
  }
};

// FNV-1a over the 9 quantized entries; two different offsets give the two
// fingerprint halves.
std::uint64_t fnv1a(const std::int64_t* q, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (int i = 0; i < 9; ++i) {
    std::uint64_t v = std::uint64_t(q[i]);
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xFF;
      h *= 0x100000001B3ull;
    }
  }
  return h;
}

struct QuantizedKey {
  std::int64_t q[9];
  double frac[9];  // distance of each scaled entry to its rounding boundary
};

QuantizedKey quantize(const Mat3& M, double quantum) {
  QuantizedKey k{};
  double scale = M.max_abs();
  int pivot = 0;
  double best = 0;
  for (int i = 0; i < 9; ++i) {
    double a = std::fabs(M.m[size_t(i)]);
    if (a > best) {
      best = a;
      pivot = i;
    }
  }
  double sgn = M.m[size_t(pivot)] < 0 ? -1.0 : 1.0;
  for (int i = 0; i < 9; ++i) {
    double v = sgn * M.m[size_t(i)] / scale / quantum;
    double r = std::nearbyint(v);
    k.q[i] = std::int64_t(r);
    k.frac[i] = v - r;
  }
  return k;
}

Fingerprint key_fingerprint(const std::int64_t* q) {
  return {fnv1a(q, 0xCBF29CE484222325ull), fnv1a(q, 0x2545F4914F6CDD1Dull)};
}

}  // namespace

std::uint64_t orbit_scan(
    const Representation& rep, int radius,
    const std::function<void(const Word&, const Mat3&, const Mat3&)>& fn,
    std::uint64_t budget, double quantum) {
  if (radius < 1) fail(errc::parameter_range, "orbit radius must be >= 1");
  int ng = rep.n_gens();
  std::vector<int> letters;
  for (int g = 1; g <= ng; ++g) {
    letters.push_back(g);
    letters.push_back(-g);
  }

  std::unordered_set<Fingerprint, FingerprintHash> seen;
  seen.reserve(1 << 16);

  // An element straddling a rounding boundary in one coordinate is caught by
  // probing the two neighbour keys of any near-boundary coordinate.
  auto lookup_or_insert = [&](const QuantizedKey& k) -> bool {
    Fingerprint f = key_fingerprint(k.q);
    if (seen.count(f)) return false;
    std::int64_t probe[9];
    for (int i = 0; i < 9; ++i) {
      if (std::fabs(k.frac[i]) < 0.45) continue;
      std::copy(k.q, k.q + 9, probe);
      probe[i] += (k.frac[i] > 0 ? 1 : -1);
      if (seen.count(key_fingerprint(probe))) return false;
    }
    seen.insert(f);
    return true;
  };

  QuantizedKey idk = quantize(Mat3::identity(), quantum);
  lookup_or_insert(idk);

  struct Node {
    Word word;
    Mat3 image;
    Mat3 inv;
  };
  std::vector<Node> frontier{{Word{}, Mat3::identity(), Mat3::identity()}};
  std::uint64_t emitted = 0;

  for (int level = 1; level <= radius; ++level) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (int letter : letters) {
        if (!node.word.empty() && node.word.back() == -letter) continue;
        Mat3 cand = node.image * rep.letter_image(letter);
        QuantizedKey key = quantize(cand, quantum);
        if (!lookup_or_insert(key)) continue;
        if (++emitted > budget) fail(errc::budget_exceeded, "orbit budget exceeded");
        Mat3 cand_inv = rep.letter_image(-letter) * node.inv;
        Word w = node.word;
        w.push_back(letter);
        fn(w, cand, cand_inv);
        if (level < radius) next.push_back({std::move(w), cand, cand_inv});
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return emitted;
}

std::vector<OrbitElement> orbit_ball(const Representation& rep, int radius, std::uint64_t budget,
                                     double quantum) {
  std::vector<OrbitElement> out;
  orbit_scan(
      rep, radius,
      [&](const Word& w, const Mat3& m, const Mat3& mi) { out.push_back({w, m, mi}); }, budget,
      quantum);
  return out;
}

}  // namespace cvp
