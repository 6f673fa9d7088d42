#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rscensus/numeric.hpp"
#include "rscensus/spectral.hpp"
#include "rscensus/word.hpp"

namespace rsc {

struct OmegaMember {
  Word word;
  Mat2 matrix;
  EigenPair eigen;

  friend bool operator==(const OmegaMember&, const OmegaMember&) = default;
};

struct SampledMode {
  std::uint64_t sample_size = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SampledMode&, const SampledMode&) = default;
};

/// One census of Omega_{k,M} inside Lambda_{k,M}.
///
/// Exhaustive rows: density = omega_count / lambda_count. Sampled rows:
/// lambda_count is still the closed form but density = omega_count /
/// sample_size and omega_members holds the hits of the sample.
struct DensityRow {
  std::uint32_t k = 0;
  Exponent max_exponent = 0;
  Integer lambda_count;
  Integer omega_count;
  Rational density;
  std::vector<OmegaMember> omega_members;
  std::optional<SampledMode> sampled;

  bool exhaustive() const { return !sampled.has_value(); }
  /// `exhaustive` or `sampled:<size>:<seed>`
  std::string mode() const;

  friend bool operator==(const DensityRow&, const DensityRow&) = default;
};

struct CensusOptions {
  bool use_prefilter = true;
  unsigned threads = 1;
  std::uint64_t budget = 100'000'000;
};

/// Work counters; not part of the result, since the prefilter only changes
/// how much work is done.
struct CensusStats {
  std::uint64_t exact_tests = 0;
  std::uint64_t prefiltered = 0;
};

/// Resumable exhaustive census. Work is split into (b1, a1) prefix blocks;
/// blocks may run on any number of workers and are merged in prefix order,
/// so the result never depends on scheduling.
class CensusRunner {
 public:
  CensusRunner(std::uint32_t k, Exponent max_exponent, CensusOptions options = {});

  /// Reloads a checkpoint written by save(). Throws CorruptCheckpoint when
  /// the file fails its hash or was written for other parameters.
  static CensusRunner resume(const std::filesystem::path& file, std::uint32_t k,
                             Exponent max_exponent, CensusOptions options = {});

  std::uint64_t block_count() const { return block_count_; }
  std::uint64_t next_block() const { return next_block_; }
  bool done() const { return next_block_ >= block_count_; }
  const CensusStats& stats() const { return stats_; }

  /// Processes up to max_blocks further blocks (all remaining by default).
  void run(std::uint64_t max_blocks = UINT64_MAX);
  void save(const std::filesystem::path& file) const;
  /// Throws InvalidArgument when blocks remain.
  DensityRow finish() const;

 private:
  std::uint32_t k_;
  Exponent max_;
  CensusOptions options_;
  LambdaBox box_;
  NkCertificate cert_;
  std::uint64_t block_count_;
  std::uint64_t next_block_ = 0;
  std::vector<OmegaMember> members_;
  CensusStats stats_;
};

/// Exhaustive census; throws BudgetExceeded when |Lambda_{k,M}| exceeds
/// options.budget.
DensityRow census(std::uint32_t k, Exponent max_exponent, const CensusOptions& options = {});

/// Seeded uniform draw of `sample_size` tuples from the exponent box, each
/// digit drawn independently. Output depends only on the seed.
DensityRow census_sampled(std::uint32_t k, Exponent max_exponent, std::uint64_t sample_size,
                          std::uint64_t seed, const CensusOptions& options = {});

struct SweepRow {
  DensityRow row;
  std::uint32_t nk = 0;
  /// Only when M > N(k).
  std::optional<Rational> upper_bound;
};

/// One census per M in [m_first, m_last], ascending, handed to `sink` as
/// soon as it completes.
std::vector<SweepRow> density_sweep(std::uint32_t k, Exponent m_first, Exponent m_last,
                                    const CensusOptions& options = {},
                                    const std::function<void(const SweepRow&)>& sink = {});

struct SearchHit {
  Word word;
  Mat2 matrix;
  EigenPair eigen;
};

struct SearchResult {
  std::vector<SearchHit> hits;
  std::uint64_t examined = 0;  // words tested, pure powers excluded
  bool complete = true;
};

/// Every word of Lambda_{j,E} for j <= k (pure powers excluded), evaluated as
/// B^b1 A^a1 ... B^bk A^ak, whose matrix has integer eigenvalues. At most
/// `budget` tuples are enumerated; complete is false when the budget ran out.
SearchResult search_counterexamples(std::uint32_t k, Exponent exp_max,
                                    const GeneratorPair& generators,
                                    std::uint64_t budget = 100'000'000, unsigned threads = 1);

struct Checkpoint {
  std::uint32_t k = 0;
  Exponent max_exponent = 0;
  bool prefilter = true;
  std::uint64_t next_block = 0;
  std::uint64_t block_count = 0;
  std::uint64_t exact_tests = 0;
  std::uint64_t prefiltered = 0;
  std::vector<Word> members;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

/// Versioned text file closed by a SHA-256 of everything before it. Written
/// to a temporary and renamed into place.
void checkpoint_save(const Checkpoint& state, const std::filesystem::path& file);
/// Throws CorruptCheckpoint on a bad header, parse failure or hash mismatch.
Checkpoint checkpoint_load(const std::filesystem::path& file);

}  // namespace rsc
