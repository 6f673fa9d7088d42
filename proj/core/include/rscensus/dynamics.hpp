#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rscensus/numeric.hpp"

namespace rsc {

// Branch taken by a piecewise map. R/S belong to theta (inverting
// r(x) = 3x + 1 and s(x) = x / (x + 2)), F/G to phi (inverting f(x) = x + 1
// and g(x) = x / (x + 1)). R and F are taken exactly when the point is >= 1.
enum class Branch : std::uint8_t { R, S, F, G };

enum class MapKind : std::uint8_t { Theta, Phi };

char to_char(Branch b);
std::string to_string(std::span<const Branch> word);

/// theta(x) = (x - 1)/3 for x >= 1, 2x/(1 - x) for x < 1.
std::pair<Rational, Branch> theta_step(const Rational& x);
/// phi(x) = x - 1 for x >= 1, x/(1 - x) for x < 1.
std::pair<Rational, Branch> phi_step(const Rational& x);

struct OrbitRecord {
  MapKind map = MapKind::Theta;
  std::vector<Rational> points;
  std::vector<Branch> branches;
  bool terminated = false;
  std::optional<std::uint64_t> stopping_time;
};

/// Iterates until the orbit hits 0 or `step_cap` steps have been taken.
/// Phi orbits are checked for non-increasing p + q as they are built; a
/// violation throws InvariantViolation.
OrbitRecord orbit(const Rational& x, MapKind map, std::uint64_t step_cap);

/// The generator r, s, f or g inverted by a branch, as a matrix acting by
/// linear fractional transformation.
const Mat2& branch_generator(Branch b);

/// Word w1 ... wn with w1 o ... o wn (0) equal to the orbit's start. This is
/// the branch list in the order it was recorded: the last branch is the first
/// generator applied to 0. The replay is verified before returning.
/// Throws NotTerminated for an orbit that did not reach 0.
std::vector<Branch> orbit_to_word(const OrbitRecord& rec);

/// w1 o ... o wn (x), applied innermost (wn) first.
Rational replay_word(std::span<const Branch> word, const Rational& x = Rational{});

/// [a, b; c, d] with a, c >= 0 minimal and ad - bc = 1. Requires b, d >= 1
/// coprime; throws NotCoprime (or NegativeInput for b or d < 1).
Mat2 complete_to_sl2(const Integer& b, const Integer& d);

/// Unique word over F = [1,1;0,1] and G = [1,0;1,1] whose product is m, by
/// subtractive Euclid on the rows. Throws NotFactorable unless m has
/// nonnegative entries and determinant 1.
std::vector<Branch> sl2_factor(Mat2 m);

Mat2 word_product(std::span<const Branch> word);

struct SweepEntry {
  Integer p;
  Integer q;
  std::uint64_t stopping_time = 0;  // steps taken when not terminated
  bool terminated = false;
};

struct SweepReport {
  std::uint64_t height_bound = 0;
  std::uint64_t step_cap = 0;
  std::uint64_t total_tested = 0;
  bool all_terminated = true;
  std::uint64_t max_stopping_time = 0;
  Rational argmax;
  std::vector<Rational> nonterminated;
};

/// Every reduced p/q with p >= 0, q >= 1, p + q <= height_bound, ordered by
/// p + q then p.
std::vector<Rational> reduced_fractions_by_height(std::uint64_t height_bound);

struct SweepOptions {
  MapKind map = MapKind::Theta;
  unsigned threads = 1;
  // Called once per orbit, in enumeration order, after the sweep completes.
  std::function<void(const SweepEntry&)> on_entry;
  // Called once per terminated orbit, in enumeration order; used for
  // word-replay checks without keeping every orbit alive.
  std::function<void(const OrbitRecord&)> on_orbit;
};

/// Runs the chosen map over every start of reduced_fractions_by_height.
/// x = 0 is included with stopping time 0.
SweepReport conjecture1_sweep(std::uint64_t height_bound, std::uint64_t step_cap,
                              const SweepOptions& options = {});

}  // namespace rsc
