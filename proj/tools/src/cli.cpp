#include "rscensus/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "rscensus/census.hpp"
#include "rscensus/dynamics.hpp"
#include "rscensus/error.hpp"
#include "rscensus/spectral.hpp"
#include "rscensus/word.hpp"
#include "verify.hpp"

namespace rsc::cli {
namespace {

using nlohmann::json;

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string header;
};

/// The invocation minus --threads, so output bytes do not depend on the
/// worker count.
std::string header_for(const std::vector<std::string>& args) {
  std::ostringstream h;
  h << "# rscensus " << version() << "\n# invocation: rscensus";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--threads") {
      ++i;
      continue;
    }
    if (args[i].rfind("--threads=", 0) == 0) continue;
    h << ' ' << args[i];
  }
  h << '\n';
  return h.str();
}

/// Output target: the file named by an --out style flag, else stdout. The
/// comment header is written on open.
class Sink {
 public:
  Sink(const std::string& path, const Context& ctx) {
    if (path.empty()) {
      os_ = &ctx.out;
    } else {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot open output file " + path);
      os_ = &file_;
    }
    *os_ << ctx.header;
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::string quoted(const std::string& s) { return json(s).dump(); }

std::string matrix_json(const Mat2& m) {
  return "[" + m.a.get_str() + "," + m.b.get_str() + "," + m.c.get_str() + "," + m.d.get_str() + "]";
}

template <typename T>
std::string list_json(const std::vector<T>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "]";
}

std::string word_json(const Word& w) {
  return "\"k\":" + std::to_string(w.k()) + ",\"betas\":" + list_json(w.betas()) +
         ",\"alphas\":" + list_json(w.alphas());
}

Mat2 parse_matrix(const std::string& text) {
  std::vector<Integer> entries;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    Integer v;
    if (part.empty() || v.set_str(part, 10) != 0) {
      throw Error(ErrorCode::ParseError, "--matrix expects a,b,c,d integers, got '" + text + "'");
    }
    entries.push_back(v);
  }
  if (entries.size() != 4) {
    throw Error(ErrorCode::ParseError, "--matrix expects four entries, got '" + text + "'");
  }
  return Mat2{entries[0], entries[1], entries[2], entries[3]};
}

std::pair<Exponent, Exponent> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  auto number = [&](const std::string& s) -> Exponent {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit) || s.size() > 9) {
      throw Error(ErrorCode::ParseError, "--m-range expects A..B, got '" + text + "'");
    }
    return static_cast<Exponent>(std::stoul(s));
  };
  const Exponent lo = number(text.substr(0, dots));
  const Exponent hi = dots == std::string::npos ? lo : number(text.substr(dots + 2));
  if (lo < 1 || hi < lo) {
    throw Error(ErrorCode::ParseError, "--m-range needs 1 <= A <= B, got '" + text + "'");
  }
  return {lo, hi};
}

MapKind parse_map(const std::string& s) { return s == "phi" ? MapKind::Phi : MapKind::Theta; }

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// orbit

struct OrbitArgs {
  std::string value, map = "theta", emit = "points", out;
  std::uint64_t max_steps = 10'000;
};

int cmd_orbit(const OrbitArgs& a, const Context& ctx) {
  const Rational x = Rational::parse(a.value);
  const OrbitRecord rec = orbit(x, parse_map(a.map), a.max_steps);
  Sink sink(a.out, ctx);
  auto& os = *sink;
  const std::string tail = rec.terminated
                               ? "# stopping_time " + std::to_string(*rec.stopping_time) + "\n"
                               : "# not terminated after " + std::to_string(a.max_steps) + " steps\n";
  if (a.emit == "points") {
    os << "step,point,branch\n";
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
      os << i << ',' << rec.points[i].to_string() << ',';
      if (i < rec.branches.size()) os << to_char(rec.branches[i]);
      os << '\n';
    }
    os << tail;
  } else if (a.emit == "word") {
    if (rec.terminated) os << to_string(orbit_to_word(rec)) << '\n';
    os << tail;
  } else {
    json j;
    j["value"] = x.to_string();
    j["map"] = a.map;
    j["points"] = json::array();
    for (const auto& p : rec.points) j["points"].push_back(p.to_string());
    j["branches"] = to_string(rec.branches);
    j["terminated"] = rec.terminated;
    j["stopping_time"] = rec.terminated ? json(*rec.stopping_time) : json(nullptr);
    os << j.dump() << '\n';
  }
  if (!rec.terminated) {
    ctx.err << "rscensus: orbit of " << x.to_string() << " did not reach 0 within "
            << a.max_steps << " steps\n";
    return kExitFindings;
  }
  return kExitOk;
}

// sweep

struct SweepArgs {
  std::uint64_t height = 0, max_steps = 10'000;
  std::string map = "theta", out;
  unsigned threads = default_threads();
};

int cmd_sweep(const SweepArgs& a, const Context& ctx) {
  Sink csv(a.out, ctx);
  *csv << "p,q,stopping_time,terminated\n";
  SweepOptions opts;
  opts.map = parse_map(a.map);
  opts.threads = a.threads;
  opts.on_entry = [&](const SweepEntry& e) {
    *csv << e.p.get_str() << ',' << e.q.get_str() << ',' << e.stopping_time << ','
         << (e.terminated ? "true" : "false") << '\n';
  };
  const SweepReport r = conjecture1_sweep(a.height, a.max_steps, opts);

  json j;
  j["height"] = r.height_bound;
  j["max_steps"] = r.step_cap;
  j["map"] = a.map;
  j["total_tested"] = r.total_tested;
  j["all_terminated"] = r.all_terminated;
  j["max_stopping_time"] = r.max_stopping_time;
  j["argmax"] = r.argmax.to_string();
  j["nonterminated"] = json::array();
  for (const auto& x : r.nonterminated) j["nonterminated"].push_back(x.to_string());
  if (a.out.empty()) {
    *csv << "# summary " << j.dump() << '\n';
  } else {
    Sink summary("", ctx);
    *summary << j.dump() << '\n';
  }
  if (!r.all_terminated) {
    ctx.err << "rscensus: " << r.nonterminated.size()
            << " start(s) did not terminate; candidate counterexamples listed in the summary\n";
    return kExitFindings;
  }
  return kExitOk;
}

// enumerate

struct EnumerateArgs {
  std::uint32_t k = 0;
  Exponent m = 0;
  std::string emit = "tuples", out;
  std::uint64_t budget = 10'000'000;
};

int cmd_enumerate(const EnumerateArgs& a, const Context& ctx) {
  const LambdaBox box(a.k, a.m);
  if (lambda_count(a.k, a.m) > Integer(static_cast<unsigned long>(a.budget))) {
    throw Error(ErrorCode::BudgetExceeded, "|Lambda| = " + lambda_count(a.k, a.m).get_str() +
                                               " exceeds --budget " + std::to_string(a.budget));
  }
  Sink sink(a.out, ctx);
  auto& os = *sink;
  for (std::uint32_t i = 1; i <= a.k; ++i) os << (i > 1 ? "," : "") << 'b' << i << ",a" << i;
  if (a.emit == "matrices") os << ",a,b,c,d";
  os << '\n';
  for (const Word& w : box) {
    os << format_tuple(w);
    if (a.emit == "matrices") {
      const Mat2 m = word_eval(w);
      os << ',' << m.a << ',' << m.b << ',' << m.c << ',' << m.d;
    }
    os << '\n';
  }
  return kExitOk;
}

// density

struct DensityArgs {
  std::uint32_t k = 0;
  std::string range, prefilter = "on", out, checkpoint, bounds_out, members_out;
  bool resume = false;
  unsigned threads = default_threads();
  std::uint64_t max_blocks = UINT64_MAX, checkpoint_every = 64, samples = 0, seed = 0;
  std::uint64_t budget = 100'000'000;
};

int cmd_density(const DensityArgs& a, const Context& ctx) {
  const auto [m_first, m_last] = parse_range(a.range);
  CensusOptions opts;
  opts.use_prefilter = a.prefilter == "on";
  opts.threads = a.threads;
  opts.budget = a.budget;
  const std::uint32_t nk = compute_nk(a.k).n;

  Sink csv(a.out, ctx);
  *csv << "k,M,lambda_count,omega_count,density_num,density_den,mode\n";
  std::optional<Sink> bounds, members;
  if (!a.bounds_out.empty()) {
    bounds.emplace(a.bounds_out, ctx);
    **bounds << "k,M,nk,bound_num,bound_den\n";
  }
  if (!a.members_out.empty()) members.emplace(a.members_out, ctx);

  bool finding = false;
  std::uint64_t blocks_left = a.max_blocks;
  for (Exponent m = m_first; m <= m_last; ++m) {
    DensityRow row;
    if (a.samples > 0) {
      row = census_sampled(a.k, m, a.samples, a.seed, opts);
    } else {
      const std::string file = a.checkpoint.empty() ? "" : a.checkpoint + ".M" + std::to_string(m);
      CensusRunner runner = (a.resume && std::filesystem::exists(file))
                                ? CensusRunner::resume(file, a.k, m, opts)
                                : CensusRunner(a.k, m, opts);
      while (!runner.done()) {
        if (blocks_left == 0) {
          if (!file.empty()) runner.save(file);
          ctx.err << "rscensus: stopped at M=" << m << " block " << runner.next_block() << "/"
                  << runner.block_count() << "\n";
          return finding ? kExitFindings : kExitOk;
        }
        const std::uint64_t before = runner.next_block();
        runner.run(std::min(blocks_left, file.empty() ? UINT64_MAX : a.checkpoint_every));
        blocks_left -= runner.next_block() - before;
        if (!file.empty()) runner.save(file);
      }
      row = runner.finish();
      ctx.err << "rscensus: k=" << a.k << " M=" << m << ": " << runner.stats().exact_tests
              << " exact tests, " << runner.stats().prefiltered << " prefiltered\n";
    }

    *csv << row.k << ',' << row.max_exponent << ',' << row.lambda_count << ',' << row.omega_count
         << ',' << row.density.num() << ',' << row.density.den() << ',' << row.mode() << '\n';
    if (bounds) {
      **bounds << a.k << ',' << m << ',' << nk << ',';
      if (m > nk) {
        const Rational b = density_upper_bound(a.k, m, nk);
        **bounds << b.num() << ',' << b.den();
      } else {
        **bounds << ',';
      }
      **bounds << '\n';
    }
    for (const OmegaMember& om : row.omega_members) {
      if (members) {
        **members << "{\"M\":" << m << ',' << word_json(om.word) << ",\"matrix\":"
                  << matrix_json(om.matrix) << ",\"lambda\":" << om.eigen.lambda
                  << ",\"mu\":" << om.eigen.mu << "}\n";
      }
      if (a.k >= 2) {
        finding = true;
        ctx.err << "rscensus: counterexample candidate " << format_word(om.word) << " -> "
                << to_string(om.matrix) << " with eigenvalues " << om.eigen.lambda << ", "
                << om.eigen.mu << "\n";
      }
    }
  }
  return finding ? kExitFindings : kExitOk;
}

// search

struct SearchArgs {
  std::uint32_t k = 0;
  Exponent exp_max = 0;
  std::string generators = "3,1,1,2", out;
  std::uint64_t budget = 100'000'000;
  unsigned threads = default_threads();
};

int cmd_search(const SearchArgs& a, const Context& ctx) {
  const GeneratorPair g = GeneratorPair::parse(a.generators);
  const SearchResult r = search_counterexamples(a.k, a.exp_max, g, a.budget, a.threads);
  Sink sink(a.out, ctx);
  for (const SearchHit& h : r.hits) {
    *sink << '{' << word_json(h.word) << ",\"matrix\":" << matrix_json(h.matrix)
          << ",\"lambda\":" << h.eigen.lambda << ",\"mu\":" << h.eigen.mu << "}\n";
  }
  *sink << "# examined " << r.examined << " complete " << (r.complete ? "true" : "false")
        << " hits " << r.hits.size() << '\n';
  if (!r.complete) ctx.err << "rscensus: budget exhausted before the search finished\n";
  if (r.hits.empty()) return kExitOk;
  ctx.err << "rscensus: " << r.hits.size() << " word(s) with integer eigenvalues for generators "
          << g.to_string() << (g.is_default() ? " (default pair: counterexample)" : "") << "\n";
  return kExitFindings;
}

// verify

struct VerifyArgs {
  VerifyOptions options;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, const Context& ctx) {
  const VerifyReport r = run_verify(a.options);
  json j;
  j["suite"] = a.options.suite;
  j["property"] = r.property;
  j["k"] = a.options.k;
  j["max_exp"] = a.options.max_exponent;
  j["seed"] = a.options.seed;
  j["samples"] = r.samples;
  j["failures"] = r.failures;
  j["first_failure_witness"] = r.first_failure_witness ? json(*r.first_failure_witness) : json(nullptr);
  Sink sink(a.out, ctx);
  *sink << j.dump() << '\n';
  return r.failures == 0 ? kExitOk : kExitFindings;
}

// nk, fixed-point, factor

std::string conditions_json(const NkConditions& c) {
  std::ostringstream s;
  s << "{\"n\":" << c.n << ",\"eigen_floor\":" << quoted(c.eigen_floor.to_string())
    << ",\"eigen_threshold\":" << c.eigen_threshold
    << ",\"eigen_ok\":" << (c.eigen_ok ? "true" : "false") << ",\"det_floor\":" << c.det_floor
    << ",\"det_bound\":" << c.det_bound << ",\"det_ok\":" << (c.det_ok ? "true" : "false") << '}';
  return s.str();
}

int cmd_nk(std::uint32_t k, const std::string& out, const Context& ctx) {
  const NkCertificate cert = compute_nk(k);
  Sink sink(out, ctx);
  *sink << "{\"k\":" << cert.k << ",\"n\":" << cert.n << ",\"at_n\":" << conditions_json(cert.at_n)
        << ",\"below\":" << (cert.below ? conditions_json(*cert.below) : "null") << "}\n";
  return kExitOk;
}

int cmd_fixed_point(const std::string& matrix, const std::string& out, const Context& ctx) {
  const Mat2 m = parse_matrix(matrix);
  const auto eig = integer_eigenvalues(m);
  const auto fp = rational_fixed_points(m);
  std::string points;
  if (const auto* p = std::get_if<FixedPoints>(&fp)) {
    points = "{\"kind\":\"points\",\"points\":[";
    for (std::size_t i = 0; i < p->points.size(); ++i) {
      points += (i ? "," : "") + quoted(p->points[i].to_string());
    }
    points += "]}";
  } else if (std::holds_alternative<NoFixedPoint>(fp)) {
    points = "{\"kind\":\"none\"}";
  } else {
    points = "{\"kind\":\"all\"}";
  }
  Sink sink(out, ctx);
  *sink << "{\"matrix\":" << matrix_json(m) << ",\"eigenvalues\":"
        << (eig ? "[" + eig->lambda.get_str() + "," + eig->mu.get_str() + "]" : "null")
        << ",\"fixed_points\":" << points << "}\n";
  return kExitOk;
}

int cmd_factor(const std::string& matrix, const std::string& out, const Context& ctx) {
  const Mat2 m = parse_matrix(matrix);
  const auto word = sl2_factor(m);
  Sink sink(out, ctx);
  *sink << "{\"matrix\":" << matrix_json(m) << ",\"word\":" << quoted(to_string(word))
        << ",\"length\":" << word.size() << "}\n";
  return kExitOk;
}

}  // namespace

const char* version() { return RSCENSUS_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact experiments on the R, S semigroup and the theta/phi maps", "rscensus"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  auto positive = CLI::PositiveNumber;

  OrbitArgs orbit_args;
  auto* orbit_cmd = app.add_subcommand("orbit", "Iterate theta or phi from a nonnegative rational");
  orbit_cmd->add_option("--value", orbit_args.value, "Start value P/Q")->required();
  orbit_cmd->add_option("--map", orbit_args.map)->check(CLI::IsMember({"theta", "phi"}));
  orbit_cmd->add_option("--max-steps", orbit_args.max_steps)->check(positive);
  orbit_cmd->add_option("--emit", orbit_args.emit)->check(CLI::IsMember({"points", "word", "json"}));
  orbit_cmd->add_option("--out", orbit_args.out);

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Orbit every reduced p/q with p+q <= H");
  sweep_cmd->add_option("--height", sweep_args.height)->required()->check(positive);
  sweep_cmd->add_option("--max-steps", sweep_args.max_steps)->check(positive);
  sweep_cmd->add_option("--map", sweep_args.map)->check(CLI::IsMember({"theta", "phi"}));
  sweep_cmd->add_option("--threads", sweep_args.threads)->check(positive);
  sweep_cmd->add_option("--out", sweep_args.out, "CSV rows; the JSON summary then goes to stdout");

  EnumerateArgs enum_args;
  auto* enum_cmd = app.add_subcommand("enumerate", "List the exponent box Lambda_{k,M}");
  enum_cmd->add_option("--k", enum_args.k)->required()->check(positive);
  enum_cmd->add_option("--m", enum_args.m)->required()->check(positive);
  enum_cmd->add_option("--emit", enum_args.emit)->check(CLI::IsMember({"tuples", "matrices"}));
  enum_cmd->add_option("--budget", enum_args.budget)->check(positive);
  enum_cmd->add_option("--out", enum_args.out);

  DensityArgs dens_args;
  auto* dens_cmd = app.add_subcommand("density", "Census of integer-eigenvalue words per M");
  dens_cmd->add_option("--k", dens_args.k)->required()->check(positive);
  dens_cmd->add_option("--m-range", dens_args.range, "A..B")->required();
  dens_cmd->add_option("--threads", dens_args.threads)->check(positive);
  dens_cmd->add_option("--prefilter", dens_args.prefilter)->check(CLI::IsMember({"on", "off"}));
  dens_cmd->add_option("--out", dens_args.out);
  dens_cmd->add_option("--bounds-out", dens_args.bounds_out, "CSV of the density upper bound");
  dens_cmd->add_option("--members-out", dens_args.members_out, "JSONL of every member found");
  dens_cmd->add_option("--budget", dens_args.budget)->check(positive);
  auto* samples_opt = dens_cmd->add_option("--samples", dens_args.samples, "Sampled mode")
                          ->check(positive);
  dens_cmd->add_option("--seed", dens_args.seed)->needs(samples_opt);
  auto* ckpt_opt = dens_cmd->add_option("--checkpoint", dens_args.checkpoint,
                                        "Checkpoint stem; one file FILE.M<m> per M")
                       ->excludes(samples_opt);
  dens_cmd->add_flag("--resume", dens_args.resume)->needs(ckpt_opt);
  dens_cmd->add_option("--checkpoint-every", dens_args.checkpoint_every)->check(positive);
  dens_cmd->add_option("--max-blocks", dens_args.max_blocks)->group("");

  SearchArgs search_args;
  auto* search_cmd = app.add_subcommand("search", "Look for non-pure words with integer eigenvalues");
  search_cmd->add_option("--k", search_args.k)->required()->check(positive);
  search_cmd->add_option("--exp-max", search_args.exp_max)->required()->check(positive);
  search_cmd->add_option("--generators", search_args.generators, "a,u,v,b");
  search_cmd->add_option("--budget", search_args.budget)->check(positive);
  search_cmd->add_option("--threads", search_args.threads)->check(positive);
  search_cmd->add_option("--out", search_args.out, "JSONL");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Seeded property suites");
  verify_cmd->add_option("--suite", verify_args.options.suite)
      ->required()
      ->check(CLI::IsMember({"trace", "entries", "bounds", "freeness", "prefilter", "fixedpoint"}));
  verify_cmd->add_option("--k", verify_args.options.k)->check(positive);
  verify_cmd->add_option("--max-exp", verify_args.options.max_exponent)->check(positive);
  verify_cmd->add_option("--samples", verify_args.options.samples)->check(positive);
  verify_cmd->add_option("--seed", verify_args.options.seed);
  verify_cmd->add_option("--out", verify_args.out);

  std::uint32_t nk_k = 0;
  std::string nk_out;
  auto* nk_cmd = app.add_subcommand("nk", "Exponent threshold N(k) with its witnesses");
  nk_cmd->add_option("--k", nk_k)->required()->check(positive);
  nk_cmd->add_option("--out", nk_out);

  std::string fp_matrix, fp_out;
  auto* fp_cmd = app.add_subcommand("fixed-point", "Rational fixed points and integer eigenvalues");
  fp_cmd->add_option("--matrix", fp_matrix, "a,b,c,d")->required();
  fp_cmd->add_option("--out", fp_out);

  std::string factor_matrix, factor_out;
  auto* factor_cmd = app.add_subcommand("factor", "Factor a nonnegative SL2 matrix into F and G");
  factor_cmd->add_option("--matrix", factor_matrix, "a,b,c,d")->required();
  factor_cmd->add_option("--out", factor_out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const Context ctx{out, err, header_for(args)};
  try {
    if (orbit_cmd->parsed()) return cmd_orbit(orbit_args, ctx);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_args, ctx);
    if (enum_cmd->parsed()) return cmd_enumerate(enum_args, ctx);
    if (dens_cmd->parsed()) return cmd_density(dens_args, ctx);
    if (search_cmd->parsed()) return cmd_search(search_args, ctx);
    if (verify_cmd->parsed()) return cmd_verify(verify_args, ctx);
    if (nk_cmd->parsed()) return cmd_nk(nk_k, nk_out, ctx);
    if (fp_cmd->parsed()) return cmd_fixed_point(fp_matrix, fp_out, ctx);
    if (factor_cmd->parsed()) return cmd_factor(factor_matrix, factor_out, ctx);
  } catch (const Error& e) {
    err << "rscensus: error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rsc::cli
