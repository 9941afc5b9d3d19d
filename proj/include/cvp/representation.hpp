#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cvp/mat3.hpp"
#include "cvp/word.hpp"

namespace cvp {

// Splitting of the group along a curve gamma: an amalgam moves the
// right-hand generators by conjugation, an HNN extension left-multiplies
// the stable letter. Generator references are 0-based indices.
struct Splitting {
  enum class Kind { amalgam, hnn };
  Kind kind = Kind::amalgam;
  Word gamma;
  std::vector<int> left_gens;
  std::vector<int> right_gens;   // amalgam only
  int stable_letter = -1;        // hnn only
};

struct Representation {
  std::vector<std::string> gens;
  std::vector<Mat3> images;
  std::vector<Word> relators;
  std::optional<Splitting> splitting;
  bool pingpong_certified = false;

  int n_gens() const { return int(gens.size()); }
  // Image of a signed letter; inverses computed on demand and cached.
  const Mat3& letter_image(int letter) const;
  void invalidate_cache();

private:
  mutable std::vector<Mat3> inv_cache_;
};

Representation make_representation(std::vector<std::string> gens, std::vector<Mat3> images,
                                   std::vector<Word> relators = {},
                                   std::optional<Splitting> splitting = std::nullopt);

// Checks the Representation invariants: relators evaluate to the identity
// within `relator_tol`, splitting references declared generators, gamma is
// hyperbolic. Throws on violation.
void validate(const Representation& rep, double relator_tol = 1e-8);

// Ordered product of generator images over the word, renormalized to det 1.
Mat3 evaluate(const Representation& rep, const Word& w);

// Evaluates words sharing prefixes in amortized O(1) matrix products per
// word when fed in lexicographic-ish order (a DFS stack of partials).
class PrefixEvaluator {
public:
  explicit PrefixEvaluator(const Representation& rep) : rep_(rep) {}
  Mat3 operator()(const Word& w);

private:
  const Representation& rep_;
  Word stack_word_;
  std::vector<Mat3> stack_prod_;
};

struct OrbitElement {
  Word word;
  Mat3 image;
  Mat3 image_inv;  // product of inverse images; exact inverse of `image`
};

// Breadth-first enumeration of reduced words up to `radius`, deduplicated
// by a quantized matrix fingerprint (entries scaled to unit max-abs, then
// rounded to `quantum`), each element reported once with a shortest word.
// The inverse is maintained as its own product so downstream spectral code
// never has to invert a large-entry matrix numerically.
// Deterministic: candidates are merged level by level in generation order.
std::vector<OrbitElement> orbit_ball(const Representation& rep, int radius,
                                     std::uint64_t budget = 100000000ull,
                                     double quantum = 1e-7);

// Streaming variant: fn is called once per distinct element (identity
// excluded) in deterministic order. Returns the number of elements.
std::uint64_t orbit_scan(
    const Representation& rep, int radius,
    const std::function<void(const Word&, const Mat3&, const Mat3&)>& fn,
    std::uint64_t budget = 100000000ull, double quantum = 1e-7);

}  // namespace cvp
