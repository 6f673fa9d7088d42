// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "oracles.hpp"
#include "rscensus/census.hpp"
#include "rscensus/cli.hpp"
#include "rscensus/dynamics.hpp"
#include "rscensus/spectral.hpp"

namespace {

using namespace rsc;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0: no runtime limit
  std::function<Outcome()> body;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Words exercised by criteria 1 and 2, reused by criterion 3.
std::vector<Word> g_checked_words;

Outcome oracle_equality() {
  std::uint64_t words = 0, canonical_k2 = 0, mismatches = 0;
  std::string first;
  for (std::uint32_t k = 1; k <= 2; ++k) {
    std::vector<Exponent> t(2 * k, 0);
    while (true) {
      const Word w = Word::from_tuple(t);
      ++words;
      if (k == 2 && w.is_canonical()) ++canonical_k2;
      const Mat2 direct = oracle::word_by_letters(w);
      const Mat2 via_u = entries_from_u(u_quantities(w));
      if (via_u != direct || word_eval(w) != direct) {
        if (!mismatches++) first = format_word(w);
      }
      g_checked_words.push_back(w);
      std::size_t pos = 0;
      while (pos < t.size() && t[pos] == 4) t[pos++] = 0;
      if (pos == t.size()) break;
      ++t[pos];
    }
  }
  std::ostringstream d;
  d << words << " words (all tuples with exponents <= 4; " << canonical_k2
    << " canonical at k=2), " << mismatches << " mismatches";
  if (mismatches) d << ", first " << first;
  return {mismatches == 0, d.str()};
}

Outcome trace_equality() {
  std::mt19937_64 rng(20240501);
  std::uint64_t mismatches = 0;
  for (std::uint32_t k : {3u, 4u}) {
    for (int i = 0; i < 500; ++i) {
      const Word w = oracle::random_lambda_word(rng, k, 5);
      const Integer direct = oracle::trace_of(oracle::word_by_letters(w));
      if (trace_subsetpair(w) != direct || trace_fast(w) != direct || trace(word_eval(w)) != direct) {
        ++mismatches;
      }
      g_checked_words.push_back(w);
    }
  }
  const Word rsrs = Word::from_tuple({1, 1, 1, 1});
  const bool pinned = word_eval(rsrs) == Mat2{18, 12, 6, 6} && trace_subsetpair(rsrs) == 24 &&
                      trace_fast(rsrs) == 24;
  std::ostringstream d;
  d << "1000 sampled words (k=3,4, seed 20240501), " << mismatches << " mismatches; RSRS -> "
    << to_string(word_eval(rsrs)) << " trace " << trace_fast(rsrs);
  return {mismatches == 0 && pinned, d.str()};
}

Outcome trace_bounds() {
  std::uint64_t violations = 0;
  for (const Word& w : g_checked_words) {
    const BoundsWitness b = bounds_check(w);
    if (!b.lhs_ok || !b.rhs_ok) ++violations;
  }
  const BoundsWitness rs = bounds_check(Word::from_tuple({1, 1}));
  const bool tight = rs.scaled_trace == 12 && rs.upper == 12;
  std::ostringstream d;
  d << g_checked_words.size() << " words, " << violations << " violations; RS: 2^k tr = "
    << rs.scaled_trace << ", product = " << rs.upper;
  return {violations == 0 && tight && !g_checked_words.empty(), d.str()};
}

Outcome counting_and_freeness() {
  bool ok = true;
  std::ostringstream d;
  for (auto [k, m] : {std::pair<std::uint32_t, Exponent>{2, 3}, {1, 5}, {3, 2}}) {
    const LambdaBox box(k, m);
    std::set<Mat2> distinct;
    std::uint64_t n = 0;
    for (const Word& w : box) {
      ++n;
      distinct.insert(oracle::word_by_letters(w));
    }
    const Integer formula = Integer(m + 1) * Integer(m + 1) * pow_ui(m, 2 * k - 2);
    const FreenessReport f = freeness_check(k, m);
    const bool row_ok = Integer(static_cast<unsigned long>(n)) == formula &&
                        lambda_count(k, m) == formula && distinct.size() == n && f.free &&
                        f.top_tuples == n && f.top_distinct_matrices == n;
    ok = ok && row_ok;
    d << "(" << k << "," << m << "): " << n << " words, " << distinct.size() << " matrices; ";
  }
  return {ok, d.str()};
}

Outcome theta_sweep() {
  SweepOptions opts;
  opts.threads = workers();
  const SweepReport r = conjecture1_sweep(300, 10'000, opts);
  std::ostringstream d;
  d << r.total_tested << " starts, all_terminated=" << (r.all_terminated ? "true" : "false")
    << ", max stopping time " << r.max_stopping_time << " at " << r.argmax.to_string();
  for (const auto& x : r.nonterminated) d << "; candidate counterexample " << x.to_string();
  return {r.all_terminated, d.str()};
}

Outcome phi_monotone() {
  std::uint64_t bad = 0;
  SweepOptions opts;
  opts.map = MapKind::Phi;
  opts.threads = workers();
  opts.on_orbit = [&](const OrbitRecord& rec) {
    Integer previous = rec.points.front().num() + rec.points.front().den();
    const Integer start = previous;
    for (const Rational& x : rec.points) {
      const Integer h = x.num() + x.den();
      if (h > previous) ++bad;
      previous = h;
    }
    if (Integer(static_cast<unsigned long>(*rec.stopping_time)) > start) ++bad;
  };
  const SweepReport r = conjecture1_sweep(1000, 10'000, opts);
  std::ostringstream d;
  d << r.total_tested << " starts, " << bad << " violations, max stopping time "
    << r.max_stopping_time << " at " << r.argmax.to_string();
  return {r.all_terminated && bad == 0, d.str()};
}

Outcome word_recovery() {
  std::uint64_t checked = 0, bad = 0;
  auto replay = [&](const OrbitRecord& rec) {
    ++checked;
    const auto word = orbit_to_word(rec);
    for (Branch b : word) {
      const bool theta_letter = b == Branch::R || b == Branch::S;
      if (theta_letter != (rec.map == MapKind::Theta)) ++bad;
    }
    if (replay_word(word) != rec.points.front()) ++bad;
  };
  SweepOptions theta;
  theta.threads = workers();
  theta.on_orbit = replay;
  conjecture1_sweep(300, 10'000, theta);
  SweepOptions phi = theta;
  phi.map = MapKind::Phi;
  conjecture1_sweep(1000, 10'000, phi);
  std::ostringstream d;
  d << checked << " orbits replayed (theta H=300, phi H=1000), " << bad << " mismatches";
  return {bad == 0 && checked > 0, d.str()};
}

Outcome desk_census() {
  CensusOptions opts;
  opts.threads = workers();
  bool ok = true;
  std::ostringstream d;
  d << "k=2 omega counts:";
  for (Exponent m = 1; m <= 6; ++m) {
    const DensityRow row = census(2, m, opts);
    d << ' ' << row.omega_count;
    if (row.omega_count != 0) {
      ok = false;
      for (const auto& om : row.omega_members) d << " [counterexample " << format_word(om.word) << "]";
    }
  }
  d << "; k=1 densities:";
  Rational previous(2);
  for (Exponent m = 1; m <= 8; ++m) {
    const DensityRow row = census(1, m, opts);
    d << ' ' << row.density.to_string();
    ok = ok && row.omega_count == 2 * m + 1 &&
         row.density == make_rational(2 * m + 1, (m + 1) * (m + 1)) && row.density < previous;
    previous = row.density;
  }
  return {ok, d.str()};
}

Outcome nk_certificate() {
  const NkCertificate c = compute_nk(2);
  const Rational f = make_rational(16, 17) * make_rational(81, 82);
  const Rational witness = Rational(4) * f * f;
  bool ok = c.n == 3 && c.at_n.eigen_floor == witness && witness > Rational(3) &&
            c.at_n.eigen_ok && c.at_n.det_ok && c.below && c.below->n == 2 &&
            !(c.below->eigen_ok && c.below->det_ok);

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<Exponent> e(4, 20);
  std::uint64_t excluded = 0, unsound = 0;
  for (int i = 0; i < 10'000; ++i) {
    const Word w({e(rng), e(rng)}, {e(rng), e(rng)});
    if (!prefilter_excludes(w, c)) continue;
    ++excluded;
    if (integer_eigenvalues(word_eval(w))) ++unsound;
  }
  ok = ok && unsound == 0 && excluded == 10'000;
  std::ostringstream d;
  d << "N(2)=" << c.n << ", 4(16/17*81/82)^2 = " << c.at_n.eigen_floor.to_string()
    << " > 3, at n=2: " << (c.below ? c.below->eigen_floor.to_string() : "-") << "; "
    << excluded << " prefiltered words, " << unsound << " with integer eigenvalues";
  return {ok, d.str()};
}

Outcome fixed_point_correspondence() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> entry(-20, 20);
  std::uint64_t mismatches = 0;
  for (int i = 0; i < 10'000; ++i) {
    long c;
    do c = entry(rng); while (c == 0);
    const Mat2 m{entry(rng), entry(rng), c, entry(rng)};
    if (integer_eigenvalues(m).has_value() != std::holds_alternative<FixedPoints>(rational_fixed_points(m))) {
      ++mismatches;
    }
  }
  std::uint64_t branch[3] = {0, 0, 0}, c0_bad = 0;
  for (int i = 0; i < 10'000; ++i) {
    const long a = entry(rng), d = (i % 4 == 0) ? a : entry(rng);
    const long b = (i % 8 == 0) ? 0 : entry(rng);
    if (d == 0) continue;  // c = d = 0 is not a map
    const Mat2 m{a, b, 0, d};
    if (!integer_eigenvalues(m)) ++c0_bad;
    const auto fp = rational_fixed_points(m);
    if (a != d) {
      ++branch[0];
      c0_bad += !std::holds_alternative<FixedPoints>(fp);
    } else if (b != 0) {
      ++branch[1];
      c0_bad += !std::holds_alternative<NoFixedPoint>(fp);
    } else {
      ++branch[2];
      c0_bad += !std::holds_alternative<AllPointsFixed>(fp);
    }
  }
  std::ostringstream d;
  d << "c!=0: 10000 matrices, " << mismatches << " mismatches; c=0 branches " << branch[0] << "/"
    << branch[1] << "/" << branch[2] << ", " << c0_bad << " violations";
  return {mismatches == 0 && c0_bad == 0 && branch[0] && branch[1] && branch[2], d.str()};
}

Outcome determinism() {
  auto invoke = [](const std::string& threads) {
    std::ostringstream out, err;
    const int code = cli::run({"density", "--k", "2", "--m-range", "1..4", "--threads", threads}, out, err);
    return std::make_pair(code, out.str());
  };
  const auto one = invoke("1");
  const auto eight = invoke("8");
  std::ostringstream d;
  d << one.second.size() << " bytes at --threads 1, " << eight.second.size()
    << " bytes at --threads 8, " << (one.second == eight.second ? "identical" : "different");
  return {one.first == 0 && eight.first == 0 && one.second == eight.second, d.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "oracle equality, k<=2, exponents<=4", 10, oracle_equality},
      {2, "trace formulas, k in {3,4}, exponents<=5", 60, trace_equality},
      {3, "trace bounds on criteria 1-2 words", 0, trace_bounds},
      {4, "counting and freeness", 5, counting_and_freeness},
      {5, "theta sweep p+q<=300", 60, theta_sweep},
      {6, "phi monotonicity and termination p+q<=1000", 60, phi_monotone},
      {7, "word recovery round-trip", 0, word_recovery},
      {8, "desk-scale census", 120, desk_census},
      {9, "N(k) certificate and prefilter soundness", 60, nk_certificate},
      {10, "fixed point / eigenvalue correspondence", 30, fixed_point_correspondence},
      {11, "density output determinism across workers", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    char timing[64];
    if (c.limit_seconds > 0) {
      std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.limit_seconds);
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", secs);
    }
    std::cout << (pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << " [" << timing
              << "] " << o.detail << (in_time ? "" : " (over time limit)") << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
